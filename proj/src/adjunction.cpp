#include "lgmf/adjunction.hpp"

#include <algorithm>
#include <stdexcept>

#include "lgmf/residue.hpp"

namespace lgmf {

namespace {

MatrixFactorisation reparity(MatrixFactorisation D, int shift, int dsign) {
  for (auto& b : D.basis) b.parity = (b.parity + shift) % 2;
  if (dsign < 0) D.d = -D.d;
  return D;
}

PolyMatrix difference_product(const KoszulUnit& u, const PolyMatrix& m, Subset s, bool reversed) {
  auto idx = elements(s);
  if (reversed) std::reverse(idx.begin(), idx.end());
  PolyMatrix r = PolyMatrix::identity(m.rows(), u.ctx);
  for (auto i : idx) r = r * m.map([&](const Poly& p) { return u.difference(p, i); });
  return r;
}

Subset full_set(std::size_t n) { return n ? (Subset(1) << n) - 1 : 0; }

PolyMatrix product_of(const std::vector<PolyMatrix>& ms, std::size_t rank, const Ctx& ctx) {
  PolyMatrix r = PolyMatrix::identity(rank, ctx);
  for (const auto& m : ms) r = r * m;
  return r;
}

std::vector<Poly> jacobian(const Poly& f, const std::vector<std::size_t>& vars) {
  std::vector<Poly> r;
  for (auto v : vars) r.push_back(partial_derivative(f, v));
  return r;
}

// evaluation-type map: column (mono, q) of the reduced source goes to
// sum over subsets T of plan(kernel[T][q] * mono) theta_T
ResidueMorphism assemble(const MatrixFactorisation& source, const MatrixFactorisation& target,
                         const std::vector<Poly>& jac, const std::vector<std::size_t>& vars,
                         const std::vector<std::vector<Poly>>& kernel) {
  ResidueMorphism f;
  f.full_source = source;
  f.target = target;
  f.source = finite_rank_reduction(source, jac, vars);
  ResiduePlan plan(jac, vars);
  const Ctx& ctx = source.ctx;
  const std::size_t N = f.source.mf.rank();
  f.map = PolyMatrix(target.rank(), N, ctx);
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t mono = col / source.rank(), q = col % source.rank();
    Poly mo = Poly::monomial(ctx, f.source.monomials[mono]);
    for (std::size_t t = 0; t < target.rank(); ++t)
      if (!kernel[t][q].is_zero()) f.map(t, col) = plan(kernel[t][q] * mo).with_context(ctx);
  }
  return f;
}

}  // namespace

MatrixFactorisation right_adjoint(const MatrixFactorisation& X) {
  const int n = static_cast<int>(X.source_vars.size());
  return reparity(dual(X), n, sign_of(n));
}

MatrixFactorisation left_adjoint(const MatrixFactorisation& X) {
  const int m = static_cast<int>(X.target_vars.size());
  return reparity(dual(X), m, 1);
}

AdjointData adjoints(const MatrixFactorisation& X) {
  return {X, right_adjoint(X), left_adjoint(X), X.source_vars.size(), X.target_vars.size()};
}

// ------------------------------------------------------------------ ring with copies

AdjunctionRing adjunction_ring(const MatrixFactorisation& X) {
  AdjunctionRing A;
  std::vector<std::size_t> both = X.source_vars;
  both.insert(both.end(), X.target_vars.begin(), X.target_vars.end());
  std::vector<std::size_t> fresh;
  A.ctx = with_fresh_copies(X.ctx, both, fresh);
  A.X = embed(X, A.ctx);
  A.x = X.source_vars;
  A.z = X.target_vars;
  A.xh.assign(fresh.begin(), fresh.begin() + static_cast<long>(A.x.size()));
  A.zh.assign(fresh.begin() + static_cast<long>(A.x.size()), fresh.end());
  A.W = A.X.source_potential.with_context(A.ctx);
  A.V = A.X.target_potential.with_context(A.ctx);
  return A;
}

Poly AdjunctionRing::role(const Poly& f, const std::vector<std::size_t>& xs,
                          const std::vector<std::size_t>& zs) const {
  std::vector<Poly> images;
  for (std::size_t i = 0; i < ctx->size(); ++i) images.push_back(Poly::var(ctx, i));
  for (std::size_t k = 0; k < x.size(); ++k) images[x[k]] = Poly::var(ctx, xs.at(k));
  for (std::size_t k = 0; k < z.size(); ++k) images[z[k]] = Poly::var(ctx, zs.at(k));
  Poly g = f.context() && !same_context(f.context(), ctx) ? embed(f, ctx) : f.with_context(ctx);
  return substitute(g, images, ctx);
}

MatrixFactorisation AdjunctionRing::copy(const std::vector<std::size_t>& xs, const std::vector<std::size_t>& zs) const {
  MatrixFactorisation Y = X;
  auto r = [&](const Poly& p) { return role(p, xs, zs); };
  Y.d = X.d.map(r);
  Y.potential = r(X.potential);
  Y.source_vars = xs;
  Y.target_vars = zs;
  Y.source_potential = r(X.source_potential);
  Y.target_potential = r(X.target_potential);
  return Y;
}

MatrixFactorisation AdjunctionRing::right_copy(const std::vector<std::size_t>& xs,
                                               const std::vector<std::size_t>& zs) const {
  return right_adjoint(copy(xs, zs));
}

MatrixFactorisation AdjunctionRing::left_copy(const std::vector<std::size_t>& xs,
                                              const std::vector<std::size_t>& zs) const {
  return left_adjoint(copy(xs, zs));
}

KoszulUnit AdjunctionRing::unit_W(const std::vector<std::size_t>& a, const std::vector<std::size_t>& ap) const {
  PairBlock block;
  for (std::size_t k = 0; k < a.size(); ++k) block.emplace_back(a[k], ap[k]);
  return koszul_unit(role(W, a, z), block);
}

KoszulUnit AdjunctionRing::unit_V(const std::vector<std::size_t>& c, const std::vector<std::size_t>& cp) const {
  PairBlock block;
  for (std::size_t k = 0; k < c.size(); ++k) block.emplace_back(c[k], cp[k]);
  return koszul_unit(role(V, x, c), block);
}

// ------------------------------------------------------------------ homotopies

HomotopyChoice default_homotopies(const MatrixFactorisation& X) {
  HomotopyChoice h;
  for (auto v : X.source_vars) h.lambda.push_back(-X.d.map([&](const Poly& p) { return partial_derivative(p, v); }));
  for (auto v : X.target_vars) h.mu.push_back(X.d.map([&](const Poly& p) { return partial_derivative(p, v); }));
  return h;
}

void verify_homotopies(const MatrixFactorisation& X, const HomotopyChoice& h) {
  if (h.lambda.size() != X.source_vars.size() || h.mu.size() != X.target_vars.size())
    throw std::invalid_argument("one homotopy per variable expected");
  for (std::size_t k = 0; k < h.lambda.size(); ++k)
    verify_null_homotopy(X, h.lambda[k], partial_derivative(X.source_potential.with_context(X.ctx), X.source_vars[k]));
  for (std::size_t k = 0; k < h.mu.size(); ++k)
    verify_null_homotopy(X, h.mu[k], partial_derivative(X.target_potential.with_context(X.ctx), X.target_vars[k]));
}

PolyMatrix ResidueMorphism::differential() const { return target.d * map - map * source.mf.d; }

bool ResidueMorphism::is_closed() const { return differential().is_zero(); }

// ------------------------------------------------------------------ the four maps

Morphism coev_tilde(const AdjunctionRing& A, const std::vector<std::size_t>& a, const std::vector<std::size_t>& ap,
                    const std::vector<std::size_t>& b) {
  KoszulUnit U = A.unit_W(a, ap);
  MatrixFactorisation Xd = A.right_copy(a, b), Xc = A.copy(ap, b);
  PolyMatrix d = A.copy(a, b).d;
  const std::size_t r = A.X.rank(), n = U.n();
  Morphism f;
  f.source = U.mf;
  f.target = tensor(Xd, Xc);
  f.parity = 0;
  f.map = PolyMatrix(f.target.rank(), U.subsets.size(), A.ctx);
  for (auto g : U.subsets) {
    Subset B = full_set(n) & ~g;
    const long l = popcount(B);
    const int s = wedge_sign(g, B);
    PolyMatrix M = difference_product(U, d, B, true);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        f.map(i * r + j, U.position(g)) = M(j, i) * (s * sign_of((l + 1) * A.X.parity(j)));
  }
  return f;
}

Morphism coev(const AdjunctionRing& A, const std::vector<std::size_t>& c, const std::vector<std::size_t>& a,
              const std::vector<std::size_t>& cp) {
  KoszulUnit U = A.unit_V(c, cp);
  MatrixFactorisation Xc = A.copy(a, c), Xl = A.left_copy(a, cp);
  const PolyMatrix& d = Xc.d;
  const std::size_t r = A.X.rank();
  const long m = static_cast<long>(U.n());
  Morphism f;
  f.source = U.mf;
  f.target = tensor(Xc, Xl);
  f.parity = 0;
  f.map = PolyMatrix(f.target.rank(), U.subsets.size(), A.ctx);
  for (auto g : U.subsets) {
    Subset B = full_set(U.n()) & ~g;
    const long l = popcount(B);
    const int s = wedge_sign(g, B);
    PolyMatrix M = difference_product(U, d, B, false);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        f.map(i * r + j, U.position(g)) = M(i, j) * (s * sign_of(binom2(l + 1) + m + m * l));
  }
  return f;
}

ResidueMorphism ev_tilde(const AdjunctionRing& A, const std::vector<std::size_t>& c, const std::vector<std::size_t>& a,
                         const std::vector<std::size_t>& cp, const HomotopyChoice& h) {
  KoszulUnit U = A.unit_V(c, cp);
  MatrixFactorisation Xc = A.copy(a, c);
  MatrixFactorisation source = tensor(Xc, A.right_copy(a, cp));
  const std::size_t r = A.X.rank();
  const long n = static_cast<long>(a.size());
  std::vector<PolyMatrix> lambdas;
  for (const auto& lam : h.lambda) lambdas.push_back(lam.map([&](const Poly& p) { return A.role(p, a, c); }));
  PolyMatrix Lambda = product_of(lambdas, r, A.ctx);
  std::vector<std::vector<Poly>> kernel(U.subsets.size(), std::vector<Poly>(r * r, Poly(A.ctx, 0)));
  for (auto I : U.subsets) {
    const long l = popcount(I);
    PolyMatrix M = difference_product(U, Xc.d, I, true) * Lambda;
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t i = 0; i < r; ++i)
        kernel[U.position(I)][j * r + i] = M(i, j) * sign_of(l + (n + 1) * A.X.parity(j));
  }
  return assemble(source, U.mf, jacobian(A.role(A.W, a, c), a), a, kernel);
}

ResidueMorphism ev(const AdjunctionRing& A, const std::vector<std::size_t>& a, const std::vector<std::size_t>& c,
                   const std::vector<std::size_t>& ap, const HomotopyChoice& h) {
  KoszulUnit U = A.unit_W(a, ap);
  MatrixFactorisation Xc = A.copy(a, c);
  MatrixFactorisation source = tensor(A.left_copy(a, c), A.copy(ap, c));
  const std::size_t r = A.X.rank();
  const long m = static_cast<long>(c.size());
  std::vector<PolyMatrix> mus;
  for (const auto& mu : h.mu) mus.push_back(mu.map([&](const Poly& p) { return A.role(p, a, c); }));
  PolyMatrix Lambda = product_of(mus, r, A.ctx);
  std::vector<std::vector<Poly>> kernel(U.subsets.size(), std::vector<Poly>(r * r, Poly(A.ctx, 0)));
  for (auto I : U.subsets) {
    const long l = popcount(I);
    PolyMatrix M = Lambda * difference_product(U, Xc.d, I, false);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        kernel[U.position(I)][i * r + j] = M(i, j) * sign_of(binom2(l) + l * A.X.parity(j) + m);
  }
  return assemble(source, U.mf, jacobian(A.role(A.V, a, c), c), c, kernel);
}

EvCoevMaps ev_coev(const MatrixFactorisation& X, std::optional<HomotopyChoice> h) {
  AdjunctionRing A = adjunction_ring(X);
  HomotopyChoice hc = h ? *h : default_homotopies(X);
  verify_homotopies(X, hc);
  Morphism ct = coev_tilde(A, A.x, A.xh, A.z);
  Morphism co = coev(A, A.z, A.x, A.zh);
  ResidueMorphism et = ev_tilde(A, A.z, A.x, A.zh, hc);
  ResidueMorphism e = ev(A, A.x, A.z, A.xh, hc);
  return {std::move(A), std::move(hc), std::move(ct), std::move(co), std::move(et), std::move(e)};
}

// ------------------------------------------------------------------ Zorro

PolyMatrix zorro_composite(const MatrixFactorisation& X, ZorroVariant variant, std::optional<HomotopyChoice> h) {
  HomotopyChoice hc = h ? *h : default_homotopies(X);
  verify_homotopies(X, hc);
  AdjunctionRing A = adjunction_ring(X);
  const Ctx& ctx = A.ctx;
  const std::size_t r = X.rank();
  UnitAction right = unit_action_right(A.X, A.xh, {});
  UnitAction left = unit_action_left(A.X, A.zh, {});
  const std::size_t Nn = right.unit.subsets.size(), Nm = left.unit.subsets.size();
  PolyMatrix out(r, r, X.ctx);
  if (variant == ZorroVariant::Right) {
    Morphism C = coev_tilde(A, A.xh, A.x, A.zh);
    ResidueMorphism E = ev_tilde(A, A.z, A.xh, A.zh, hc);
    PolyMatrix step = kronecker(PolyMatrix::identity(r, ctx), C.map) * right.inverse;
    for (std::size_t col = 0; col < r; ++col) {
      std::vector<Poly> v2(Nm * r, Poly(ctx, 0));
      for (std::size_t jp = 0; jp < r; ++jp) {
        std::vector<Poly> sub(r * r);
        for (std::size_t q = 0; q < r * r; ++q) sub[q] = step(q * r + jp, col);
        auto img = E.apply(sub);
        for (std::size_t t = 0; t < Nm; ++t) v2[t * r + jp] = img[t];
      }
      auto res = left.apply(v2);
      for (std::size_t j = 0; j < r; ++j) out(j, col) = embed(res[j], X.ctx);
    }
  } else {
    Morphism K = coev(A, A.z, A.xh, A.zh);
    ResidueMorphism E = ev(A, A.xh, A.zh, A.x, hc);
    PolyMatrix step = kronecker(K.map, PolyMatrix::identity(r, ctx)) * left.inverse;
    for (std::size_t col = 0; col < r; ++col) {
      std::vector<Poly> v2(r * Nn, Poly(ctx, 0));
      for (std::size_t p = 0; p < r; ++p) {
        std::vector<Poly> sub(r * r);
        for (std::size_t q = 0; q < r * r; ++q) sub[q] = step(p * r * r + q, col);
        auto img = E.apply(sub);
        for (std::size_t t = 0; t < Nn; ++t) v2[p * Nn + t] = img[t];
      }
      auto res = right.apply(v2);
      for (std::size_t j = 0; j < r; ++j) out(j, col) = embed(res[j], X.ctx);
    }
  }
  return out;
}

ZorroResult zorro_check(const MatrixFactorisation& X, ZorroVariant variant, int degree_bound) {
  ZorroResult z;
  z.composite = zorro_composite(X, variant);
  z.degree_bound = degree_bound < 0 ? default_degree_bound(X, X) : degree_bound;
  z.witness = homotopy_between(X, X, z.composite, PolyMatrix::identity(X.rank(), X.ctx), z.degree_bound);
  return z;
}

std::optional<Homotopy> residue_null_homotopy(const ResidueMorphism& f, const PolyMatrix& map, int degree_bound) {
  return null_homotopy_search(f.source.mf, f.target, map, 0, degree_bound);
}

std::optional<Homotopy> residue_homotopy(const ResidueMorphism& f, const ResidueMorphism& g, int degree_bound) {
  if (f.map.rows() != g.map.rows() || f.map.cols() != g.map.cols())
    throw std::invalid_argument("residue morphisms with different shapes");
  return residue_null_homotopy(f, f.map - g.map, degree_bound);
}

// ------------------------------------------------------------------ naturality

PolyMatrix left_adjoint_map(const MatrixFactorisation& X, const MatrixFactorisation& Y, const PolyMatrix& phi,
                            int parity) {
  if (phi.rows() != Y.rank() || phi.cols() != X.rank()) throw std::invalid_argument("map has the wrong shape");
  PolyMatrix t(X.rank(), Y.rank(), X.ctx);
  for (std::size_t i = 0; i < Y.rank(); ++i)
    for (std::size_t k = 0; k < X.rank(); ++k) t(k, i) = phi(i, k) * sign_of(parity * Y.parity(i));
  return t;
}

NaturalityReport naturality_check(const MatrixFactorisation& X, const MatrixFactorisation& Y, const PolyMatrix& phi,
                                  int degree_bound) {
  if (!same_context(X.ctx, Y.ctx) || X.source_vars != Y.source_vars || X.target_vars != Y.target_vars)
    throw std::invalid_argument("naturality needs two defects between the same theories");
  NaturalityReport rep;
  AdjunctionRing AX = adjunction_ring(X), AY = adjunction_ring(Y);
  PolyMatrix tphi = left_adjoint_map(X, Y, phi, 0);
  auto in_role = [&](const PolyMatrix& m, const std::vector<std::size_t>& xs, const std::vector<std::size_t>& zs) {
    return m.map([&](const Poly& p) { return AX.role(p, xs, zs); });
  };
  const std::size_t rx = X.rank(), ry = Y.rank();
  {
    Morphism cx = coev(AX, AX.z, AX.xh, AX.zh), cy = coev(AY, AY.z, AY.xh, AY.zh);
    PolyMatrix lhs = kronecker(in_role(phi, AX.xh, AX.z), PolyMatrix::identity(rx, AX.ctx)) * cx.map;
    PolyMatrix rhs = kronecker(PolyMatrix::identity(ry, AX.ctx), in_role(tphi, AX.xh, AX.zh)) * cy.map;
    MatrixFactorisation target = tensor(AY.copy(AY.xh, AY.z), AX.left_copy(AX.xh, AX.zh));
    int bound = degree_bound < 0 ? default_degree_bound(cx.source, target) : degree_bound;
    rep.coev_square = homotopy_between(cx.source, target, lhs, rhs, bound);
  }
  {
    HomotopyChoice hx = default_homotopies(X), hy = default_homotopies(Y);
    ResidueMorphism ex = ev(AX, AX.x, AX.z, AX.xh, hx), ey = ev(AY, AY.x, AY.z, AY.xh, hy);
    MatrixFactorisation source = tensor(AY.left_copy(AY.x, AY.z), AX.copy(AX.xh, AX.z));
    ResidueMorphism shape;
    shape.full_source = source;
    shape.source = finite_rank_reduction(source, jacobian(AX.V, AX.z), AX.z);
    shape.target = ex.target;
    PolyMatrix one_phi = kronecker(PolyMatrix::identity(ry, AX.ctx), in_role(phi, AX.xh, AX.z));
    PolyMatrix tphi_one = kronecker(in_role(tphi, AX.x, AX.z), PolyMatrix::identity(rx, AX.ctx));
    const std::size_t N = shape.source.mf.rank();
    shape.map = PolyMatrix(ex.target.rank(), N, AX.ctx);
    for (std::size_t col = 0; col < N; ++col) {
      std::vector<Poly> v(source.rank(), Poly(AX.ctx, 0));
      v[col % source.rank()] = Poly::monomial(AX.ctx, shape.source.monomials[col / source.rank()]);
      auto a = ey.apply(one_phi.apply(v));
      auto b = ex.apply(tphi_one.apply(v));
      for (std::size_t t = 0; t < a.size(); ++t) shape.map(t, col) = a[t] - b[t];
    }
    int bound = degree_bound < 0 ? default_degree_bound(shape.source.mf, shape.target) : degree_bound;
    rep.ev_square = residue_null_homotopy(shape, shape.map, bound);
  }
  return rep;
}

}  // namespace lgmf
