#include "lgmf/tft.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

namespace lgmf {

namespace {

JacobiRing make_jacobi(const Poly& W, const std::vector<std::size_t>& vars, const Ctx& ctx) {
  JacobiRing J;
  J.ctx = ctx;
  J.vars = vars;
  J.W = W.with_context(ctx);
  if (vars.empty()) {
    J.gb.ctx = ctx;
    J.basis.push_back(Exponents(ctx ? ctx->size() : 0, 0));
    return J;
  }
  auto cert = check_potential(J.W, vars);
  if (!cert.is_potential) throw std::invalid_argument("not a potential: " + cert.witness);
  J.partials = cert.partials;
  J.gb = cert.gb;
  J.basis = cert.basis.monomials;
  return J;
}

bool in_vars(const std::vector<std::size_t>& vs, std::size_t v) { return std::find(vs.begin(), vs.end(), v) != vs.end(); }

std::vector<std::size_t> all_vars(const MatrixFactorisation& X) {
  std::vector<std::size_t> vs = X.source_vars;
  for (auto v : X.target_vars)
    if (!in_vars(vs, v)) vs.push_back(v);
  return vs;
}

PolyMatrix derivative_product(const MatrixFactorisation& X, const std::vector<std::size_t>& vars) {
  PolyMatrix M = PolyMatrix::identity(X.rank(), X.ctx);
  for (auto v : vars) M = M * X.d.map([&](const Poly& p) { return partial_derivative(p, v).with_context(X.ctx); });
  return M;
}

Rational constant_of(const Poly& p, const char* what) {
  if (!p.is_constant()) throw std::logic_error(std::string(what) + " is not a constant: " + p.to_string());
  return p.constant_term();
}

std::vector<Exponents> monomials_up_to(std::size_t nvars, const std::vector<std::size_t>& vars, int bound) {
  std::vector<Exponents> out;
  Exponents e(nvars, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k == vars.size()) {
      out.push_back(e);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      e[vars[k]] = a;
      rec(k + 1, left - a);
    }
    e[vars[k]] = 0;
  };
  if (bound >= 0) rec(0, bound);
  return out;
}

// Hom^p(X, Y) with entries of degree <= bound as a Q-vector space.
struct Cochains {
  const MatrixFactorisation* X = nullptr;
  const MatrixFactorisation* Y = nullptr;
  int parity = 0;
  int bound = 0;
  std::vector<Exponents> monos;
  struct Unknown {
    std::size_t i, j, m;
  };
  std::vector<Unknown> unknowns;
  std::map<std::tuple<std::size_t, std::size_t, Exponents>, std::size_t> index;

  Cochains(const MatrixFactorisation& x, const MatrixFactorisation& y, int p, int b) : X(&x), Y(&y), parity(p % 2), bound(b) {
    const std::size_t nv = X->ctx ? X->ctx->size() : 0;
    monos = monomials_up_to(nv, all_vars(*X), bound);
    for (std::size_t i = 0; i < Y->rank(); ++i)
      for (std::size_t j = 0; j < X->rank(); ++j)
        if ((Y->parity(i) + X->parity(j)) % 2 == parity)
          for (std::size_t m = 0; m < monos.size(); ++m) {
            index[{i, j, monos[m]}] = unknowns.size();
            unknowns.push_back({i, j, m});
          }
  }
  std::size_t size() const { return unknowns.size(); }

  PolyMatrix matrix(const std::vector<Rational>& v) const {
    PolyMatrix M(Y->rank(), X->rank(), X->ctx);
    for (std::size_t u = 0; u < unknowns.size(); ++u)
      if (v[u] != 0) M(unknowns[u].i, unknowns[u].j).add_term(monos[unknowns[u].m], v[u]);
    return M;
  }
  PolyMatrix basis_matrix(std::size_t u) const {
    std::vector<Rational> v(size(), 0);
    v[u] = 1;
    return matrix(v);
  }
  std::optional<std::vector<Rational>> vector(const PolyMatrix& M) const {
    std::vector<Rational> v(size(), 0);
    for (std::size_t i = 0; i < M.rows(); ++i)
      for (std::size_t j = 0; j < M.cols(); ++j) {
        const Poly q = M(i, j).with_context(X->ctx);
        for (const auto& [e, c] : q.terms()) {
          auto it = index.find({i, j, e});
          if (it == index.end()) return std::nullopt;
          v[it->second] = c;
        }
      }
    return v;
  }
};

// Boundaries of degree <= bound in parity p: images of degree-bounded
// (p+1)-cochains whose high-degree part vanishes.
std::vector<std::vector<Rational>> boundaries(const Cochains& low, const Cochains& source) {
  std::map<std::tuple<std::size_t, std::size_t, Exponents>, std::size_t> high;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> hi_cols(source.size()), lo_cols(source.size());
  for (std::size_t u = 0; u < source.size(); ++u) {
    PolyMatrix Dh = hom_differential(*source.X, *source.Y, source.basis_matrix(u), source.parity);
    for (std::size_t i = 0; i < Dh.rows(); ++i)
      for (std::size_t j = 0; j < Dh.cols(); ++j) {
        const Poly q = Dh(i, j).with_context(source.X->ctx);
        for (const auto& [e, c] : q.terms()) {
          auto it = low.index.find({i, j, e});
          if (it != low.index.end()) {
            lo_cols[u].emplace_back(it->second, c);
          } else {
            auto [h, ins] = high.try_emplace({i, j, e}, high.size());
            hi_cols[u].emplace_back(h->second, c);
          }
        }
      }
  }
  std::vector<std::vector<Rational>> combos;
  if (high.empty()) {
    for (std::size_t u = 0; u < source.size(); ++u) {
      std::vector<Rational> c(source.size(), 0);
      c[u] = 1;
      combos.push_back(c);
    }
  } else {
    DenseMatrix H = dense_zero(high.size(), source.size());
    for (std::size_t u = 0; u < source.size(); ++u)
      for (const auto& [r, c] : hi_cols[u]) H[r][u] += c;
    combos = kernel_basis(H, source.size());
  }
  std::vector<std::vector<Rational>> out;
  for (const auto& k : combos) {
    std::vector<Rational> v(low.size(), 0);
    for (std::size_t u = 0; u < source.size(); ++u)
      if (k[u] != 0)
        for (const auto& [r, c] : lo_cols[u]) v[r] += k[u] * c;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<Rational>> cocycles(const Cochains& C) {
  std::map<std::tuple<std::size_t, std::size_t, Exponents>, std::size_t> rows;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(C.size());
  for (std::size_t u = 0; u < C.size(); ++u) {
    PolyMatrix D = hom_differential(*C.X, *C.Y, C.basis_matrix(u), C.parity);
    for (std::size_t i = 0; i < D.rows(); ++i)
      for (std::size_t j = 0; j < D.cols(); ++j) {
        const Poly q = D(i, j).with_context(C.X->ctx);
        for (const auto& [e, c] : q.terms()) {
          auto [it, ins] = rows.try_emplace({i, j, e}, rows.size());
          cols[u].emplace_back(it->second, c);
        }
      }
  }
  DenseMatrix M = dense_zero(rows.size(), C.size());
  for (std::size_t u = 0; u < C.size(); ++u)
    for (const auto& [r, c] : cols[u]) M[r][u] += c;
  if (rows.empty()) {
    std::vector<std::vector<Rational>> all;
    for (std::size_t u = 0; u < C.size(); ++u) {
      std::vector<Rational> v(C.size(), 0);
      v[u] = 1;
      all.push_back(v);
    }
    return all;
  }
  return kernel_basis(M, C.size());
}

// rows of `base` followed by those rows of `extra` that raise the rank
std::vector<std::size_t> extend_basis(const std::vector<std::vector<Rational>>& base,
                                      const std::vector<std::vector<Rational>>& extra, std::size_t dim) {
  DenseMatrix M;
  for (const auto& b : base) M.push_back(b);
  std::size_t r = M.empty() ? 0 : dense_rank(M);
  std::vector<std::size_t> chosen;
  for (std::size_t k = 0; k < extra.size(); ++k) {
    M.push_back(extra[k]);
    std::size_t r2 = dense_rank(M);
    if (r2 > r) {
      chosen.push_back(k);
      r = r2;
    } else {
      M.pop_back();
    }
    if (r == dim) break;
  }
  return chosen;
}

struct Level {
  std::vector<PolyMatrix> reps[2];
};

Level cohomology_level(const MatrixFactorisation& X, const MatrixFactorisation& Y, int bound) {
  Level L;
  for (int p = 0; p < 2; ++p) {
    Cochains C(X, Y, p, bound), S(X, Y, p + 1, bound);
    auto Z = cocycles(C);
    auto B = boundaries(C, S);
    for (auto k : extend_basis(B, Z, C.size())) L.reps[p].push_back(C.matrix(Z[k]));
  }
  return L;
}

}  // namespace

Poly JacobiRing::reduce(const Poly& p) const {
  Poly q = p.with_context(ctx);
  for (const auto& [e, c] : q.terms())
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] && !in_vars(vars, i))
        throw std::invalid_argument("element involves a variable outside the Jacobi ring: " + ctx->name(i));
  if (vars.empty()) return q;
  return normal_form(q, gb);
}

std::vector<Rational> JacobiRing::coordinates(const Poly& p) const {
  Poly r = reduce(p);
  std::vector<Rational> out(basis.size(), 0);
  for (const auto& [e, c] : r.terms()) {
    auto it = std::find(basis.begin(), basis.end(), e);
    if (it == basis.end()) throw std::logic_error("normal form outside the standard monomials");
    out[static_cast<std::size_t>(it - basis.begin())] = c;
  }
  return out;
}

Poly JacobiRing::element(const std::vector<Rational>& coords) const {
  Poly p(ctx, 0);
  for (std::size_t i = 0; i < basis.size() && i < coords.size(); ++i)
    if (coords[i] != 0) p.add_term(basis[i], coords[i]);
  return p;
}

Poly JacobiRing::basis_element(std::size_t i) const { return Poly::monomial(ctx, basis.at(i)); }

JacobiRing jacobi_ring(const Poly& W, const std::vector<std::size_t>& vars) { return make_jacobi(W, vars, W.context()); }

JacobiRing jacobi_ring(const Poly& W) {
  std::vector<std::size_t> vars;
  if (W.context())
    for (std::size_t i = 0; i < W.context()->size(); ++i) vars.push_back(i);
  return make_jacobi(W, vars, W.context());
}

Poly jacobi_class(const Poly& p, const JacobiRing& J) { return J.reduce(p); }

Poly DefectOperator::apply(const Poly& p) const {
  auto c = source.coordinates(p);
  std::vector<Rational> out(target.dimension(), 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) out[i] += matrix[i][j] * c[j];
  return target.element(out);
}

Poly defect_integrand(const MatrixFactorisation& X, const std::optional<PolyMatrix>& Phi) {
  std::vector<std::size_t> vars = X.source_vars;
  vars.insert(vars.end(), X.target_vars.begin(), X.target_vars.end());
  PolyMatrix M = derivative_product(X, vars);
  if (Phi) M = *Phi * M;
  return supertrace(X, M);
}

namespace {

struct DefectSetup {
  JacobiRing from, to;               // integrate over from's variables, land in to
  std::vector<std::size_t> integrate;
  Poly integrand;
  int sign = 1;
};

DefectSetup defect_setup(const MatrixFactorisation& X, Side side, const std::optional<PolyMatrix>& Phi) {
  DefectSetup s;
  const long n = static_cast<long>(X.source_vars.size()), m = static_cast<long>(X.target_vars.size());
  JacobiRing JW = make_jacobi(X.source_potential, X.source_vars, X.ctx);
  JacobiRing JV = make_jacobi(X.target_potential, X.target_vars, X.ctx);
  if (side == Side::Right) {
    s.from = JW;
    s.to = JV;
    s.sign = sign_of(binom2(m + 1));
  } else {
    s.from = JV;
    s.to = JW;
    s.sign = sign_of(binom2(n + 1));
  }
  s.integrate = s.from.vars;
  s.integrand = defect_integrand(X, Phi);
  return s;
}

Poly defect_value(const DefectSetup& s, const ResiduePlan& plan, const Poly& field) {
  Poly r = plan(field.with_context(s.from.ctx) * s.integrand);
  return s.to.reduce(s.sign * r);
}

void check_endomorphism(const MatrixFactorisation& X, const std::optional<PolyMatrix>& Phi) {
  if (!Phi) return;
  if (Phi->rows() != X.rank() || Phi->cols() != X.rank()) throw std::invalid_argument("Phi: shape mismatch");
  if (!has_parity(X, X, *Phi, 0)) throw std::invalid_argument("Phi must be even");
  if (!hom_differential(X, X, *Phi, 0).is_zero()) throw std::invalid_argument("Phi must be closed");
}

}  // namespace

Poly defect_action_right(const MatrixFactorisation& X, const Poly& psi, const std::optional<PolyMatrix>& Phi) {
  check_endomorphism(X, Phi);
  auto s = defect_setup(X, Side::Right, Phi);
  ResiduePlan plan(s.from.partials, s.integrate);
  return defect_value(s, plan, psi);
}

Poly defect_action_left(const MatrixFactorisation& X, const Poly& phi, const std::optional<PolyMatrix>& Phi) {
  check_endomorphism(X, Phi);
  auto s = defect_setup(X, Side::Left, Phi);
  ResiduePlan plan(s.from.partials, s.integrate);
  return defect_value(s, plan, phi);
}

DefectOperator defect_operator(const MatrixFactorisation& X, Side side, const std::optional<PolyMatrix>& Phi,
                               unsigned jobs) {
  check_endomorphism(X, Phi);
  auto s = defect_setup(X, side, Phi);
  ResiduePlan plan(s.from.partials, s.integrate);
  DefectOperator D;
  D.source = s.from;
  D.target = s.to;
  const std::size_t cols = s.from.dimension();
  std::vector<std::vector<Rational>> images(cols);
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t j = begin; j < cols; j += step)
      images[j] = s.to.coordinates(defect_value(s, plan, s.from.basis_element(j)));
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cols)));
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work, t, jobs);
    for (auto& t : pool) t.join();
  }
  D.matrix = dense_zero(s.to.dimension(), cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < s.to.dimension(); ++i) D.matrix[i][j] = images[j][i];
  if (X.source_vars.size() % 2 || X.target_vars.size() % 2)
    D.warnings.push_back("odd number of variables on a side; the closed formula is asserted only for even n and m");
  return D;
}

Poly quantum_dim(const MatrixFactorisation& X, Side side) {
  return side == Side::Right ? defect_action_right(X, Poly(1)) : defect_action_left(X, Poly(1));
}

Poly boundary_bulk(const MatrixFactorisation& X, const PolyMatrix& psi) {
  auto vars = all_vars(X);
  JacobiRing J = make_jacobi(X.potential, vars, X.ctx);
  PolyMatrix M = psi * derivative_product(X, vars);
  return J.reduce(sign_of(binom2(static_cast<long>(vars.size()) + 1)) * supertrace(X, M));
}

Poly chern_character(const MatrixFactorisation& X) { return boundary_bulk(X, PolyMatrix::identity(X.rank(), X.ctx)); }

PolyMatrix bulk_boundary(const MatrixFactorisation& X, const Poly& phi) {
  return phi.with_context(X.ctx) * PolyMatrix::identity(X.rank(), X.ctx);
}

std::optional<Homotopy> bulk_boundary_witness(const MatrixFactorisation& X, const Poly& phi) {
  auto vars = all_vars(X);
  JacobiRing J = make_jacobi(X.potential, vars, X.ctx);
  if (vars.empty()) return std::nullopt;
  Membership mem = membership_with_cofactors(phi.with_context(X.ctx), J.gb);
  if (!mem.remainder.is_zero()) return std::nullopt;
  PolyMatrix h(X.rank(), X.rank(), X.ctx);
  for (std::size_t k = 0; k < vars.size(); ++k) {
    // [d, d_v d] = d_v W for every variable
    PolyMatrix dv = X.d.map([&](const Poly& p) { return partial_derivative(p, vars[k]).with_context(X.ctx); });
    h += mem.cofactors[k] * dv;
  }
  if (hom_differential(X, X, h, 1) != bulk_boundary(X, phi)) return std::nullopt;
  return Homotopy{h, 1, h.max_degree()};
}

Rational bulk_pairing(const Poly& phi1, const Poly& phi2, const JacobiRing& J) {
  ResiduePlan plan(J.partials, J.vars);
  return constant_of(plan(phi1.with_context(J.ctx) * phi2.with_context(J.ctx)), "bulk pairing");
}

DenseMatrix bulk_gram(const JacobiRing& J) {
  ResiduePlan plan(J.partials, J.vars);
  DenseMatrix G = dense_zero(J.dimension(), J.dimension());
  for (std::size_t i = 0; i < J.dimension(); ++i)
    for (std::size_t j = 0; j < J.dimension(); ++j)
      G[i][j] = constant_of(plan(J.basis_element(i) * J.basis_element(j)), "bulk pairing");
  return G;
}

Rational kapustin_li_pairing(const PolyMatrix& psi1, const PolyMatrix& psi2, const MatrixFactorisation& X) {
  auto vars = all_vars(X);
  JacobiRing J = make_jacobi(X.potential, vars, X.ctx);
  ResiduePlan plan(J.partials, vars);
  Poly s = supertrace(X, psi1 * psi2 * derivative_product(X, vars));
  return constant_of(plan(s), "Kapustin-Li pairing");
}

HomCohomology hom_cohomology(const MatrixFactorisation& X, const MatrixFactorisation& Y, int degree_bound) {
  if (X.potential != Y.potential) throw std::invalid_argument("hom_cohomology: potentials differ");
  HomCohomology H;
  H.X = X;
  H.Y = Y;
  H.degree_bound = degree_bound;
  Level L = cohomology_level(X, Y, degree_bound);
  H.even = L.reps[0];
  H.odd = L.reps[1];
  Level next = cohomology_level(X, Y, degree_bound + 1);
  H.stable = next.reps[0].size() == H.even.size() && next.reps[1].size() == H.odd.size();
  return H;
}

std::optional<std::vector<Rational>> cohomology_coordinates(const HomCohomology& H, int parity, const PolyMatrix& alpha,
                                                            int degree_bound) {
  const auto& reps = parity % 2 ? H.odd : H.even;
  Cochains C(H.X, H.Y, parity, degree_bound), S(H.X, H.Y, parity + 1, degree_bound);
  auto a = C.vector(alpha);
  if (!a) return std::nullopt;
  auto B = boundaries(C, S);
  // unknowns: coefficients of reps, then of boundary vectors
  const std::size_t k = reps.size();
  SparseLinearSystem sys(k + B.size());
  std::vector<std::vector<Rational>> rv;
  for (const auto& r : reps) {
    auto v = C.vector(r);
    if (!v) return std::nullopt;
    rv.push_back(*v);
  }
  // reps must stay independent modulo the boundaries at this bound
  DenseMatrix M;
  for (const auto& b : B) M.push_back(b);
  const std::size_t rb = M.empty() ? 0 : dense_rank(M);
  for (const auto& v : rv) M.push_back(v);
  if ((M.empty() ? 0 : dense_rank(M)) != rb + k) return std::nullopt;
  for (std::size_t row = 0; row < C.size(); ++row) {
    SparseRow eq;
    for (std::size_t i = 0; i < k; ++i)
      if (rv[i][row] != 0) eq.emplace_back(i, rv[i][row]);
    for (std::size_t j = 0; j < B.size(); ++j)
      if (B[j][row] != 0) eq.emplace_back(k + j, B[j][row]);
    if (!sys.add_equation(eq, (*a)[row])) return std::nullopt;
  }
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  return std::vector<Rational>(sol->begin(), sol->begin() + static_cast<long>(k));
}

CardyResult cardy_check(const MatrixFactorisation& X, const MatrixFactorisation& Y, const PolyMatrix& phi,
                        const PolyMatrix& psi, int degree_bound) {
  CardyResult R;
  auto vars = all_vars(X);
  if (degree_bound < 0) degree_bound = 2 * std::max(0, X.potential.degree());
  R.degree_bound = degree_bound;
  HomCohomology H = hom_cohomology(X, Y, degree_bound);
  R.stable = H.stable;
  if (!H.stable) R.warnings.push_back("cohomology dimensions change at bound " + std::to_string(degree_bound + 1));
  const int wide = degree_bound + std::max(0, phi.max_degree()) + std::max(0, psi.max_degree());
  R.lhs = 0;
  for (int p = 0; p < 2; ++p) {
    const auto& reps = p ? H.odd : H.even;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      auto c = cohomology_coordinates(H, p, psi * reps[i] * phi, wide);
      if (!c) {
        R.stable = false;
        R.warnings.push_back("image of a representative could not be expressed at bound " + std::to_string(wide));
        continue;
      }
      R.lhs += p ? -(*c)[i] : (*c)[i];
    }
  }
  JacobiRing J = make_jacobi(X.potential, vars, X.ctx);
  Poly bX = boundary_bulk(X, phi), bY = boundary_bulk(Y, psi);
  R.rhs = sign_of(binom2(static_cast<long>(vars.size()) + 1)) * bulk_pairing(bX, bY, J);
  R.equal = R.lhs == R.rhs;
  return R;
}

Shadow shadow_of_unit(const Poly& W) {
  Shadow s;
  s.jacobi = jacobi_ring(W);
  s.parity = static_cast<int>(s.jacobi.vars.size() % 2);
  return s;
}

Poly generalized_boundary_bulk(const MatrixFactorisation& X, const PolyMatrix& psi) {
  auto s = defect_setup(X, Side::Left, psi);
  s.sign = sign_of(binom2(static_cast<long>(X.target_vars.size()) + 1));
  ResiduePlan plan(s.from.partials, s.integrate);
  return defect_value(s, plan, Poly(1));
}

}  // namespace lgmf
