#include "lgmf/mf.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "lgmf/linalg.hpp"
#include "lgmf/signs.hpp"

namespace lgmf {

std::size_t MatrixFactorisation::rank_even() const {
  return static_cast<std::size_t>(std::count_if(basis.begin(), basis.end(), [](const auto& b) { return b.parity == 0; }));
}

std::size_t MatrixFactorisation::rank_odd() const { return rank() - rank_even(); }

std::vector<std::size_t> MatrixFactorisation::even_indices() const {
  std::vector<std::size_t> r;
  for (std::size_t i = 0; i < rank(); ++i)
    if (parity(i) == 0) r.push_back(i);
  return r;
}

std::vector<std::size_t> MatrixFactorisation::odd_indices() const {
  std::vector<std::size_t> r;
  for (std::size_t i = 0; i < rank(); ++i)
    if (parity(i) == 1) r.push_back(i);
  return r;
}

namespace {

PolyMatrix select(const PolyMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  PolyMatrix r(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = m(rows[i], cols[j]);
  return r;
}

std::vector<std::size_t> all_vars(const Ctx& ctx) {
  std::vector<std::size_t> v;
  for (std::size_t i = 0; i < ctx->size(); ++i) v.push_back(i);
  return v;
}

void collect_vars(const PolyMatrix& m, std::set<std::size_t>& vars) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (const auto& [e, c] : m(i, j).terms())
        for (std::size_t k = 0; k < e.size(); ++k)
          if (e[k]) vars.insert(k);
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

}  // namespace

PolyMatrix MatrixFactorisation::d0() const { return select(d, odd_indices(), even_indices()); }
PolyMatrix MatrixFactorisation::d1() const { return select(d, even_indices(), odd_indices()); }

std::vector<std::string> MatrixFactorisation::defects() const {
  std::vector<std::string> out;
  if (d.rows() != rank() || d.cols() != rank()) {
    out.push_back("differential has shape " + std::to_string(d.rows()) + "x" + std::to_string(d.cols()) +
                  " but rank is " + std::to_string(rank()));
    return out;
  }
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j)
      if (parity(i) == parity(j) && !d(i, j).is_zero())
        out.push_back("d entry (" + basis[i].label + ", " + basis[j].label + ") must vanish by parity");
  PolyMatrix sq = d * d;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) {
      Poly want = i == j ? potential : Poly();
      Poly diff = sq(i, j) - want;
      if (!diff.is_zero())
        out.push_back("(d^2 - W)(" + basis[i].label + ", " + basis[j].label + ") = " + diff.to_string());
    }
  return out;
}

bool MatrixFactorisation::is_valid() const { return defects().empty(); }

void MatrixFactorisation::validate() const {
  auto bad = defects();
  if (!bad.empty()) throw InvalidFactorisation("not a matrix factorisation: " + bad.front(), bad);
}

MatrixFactorisation make_mf(const Ctx& ctx, const Poly& W, std::vector<BasisElement> basis, PolyMatrix d) {
  MatrixFactorisation X;
  X.ctx = ctx;
  X.potential = W.with_context(ctx);
  X.basis = std::move(basis);
  X.d = d.map([&](const Poly& p) { return p.with_context(ctx); });
  X.target_vars = all_vars(ctx);
  X.target_potential = X.potential;
  X.source_potential = Poly(ctx, 0);
  X.validate();
  return X;
}

MatrixFactorisation new_mf(const Ctx& ctx, const Poly& W, const PolyMatrix& d0, const PolyMatrix& d1) {
  const std::size_t r0 = d0.cols(), r1 = d0.rows();
  if (d1.rows() != r0 || d1.cols() != r1)
    throw InvalidFactorisation("block shapes do not match",
                               {"d0 is " + std::to_string(d0.rows()) + "x" + std::to_string(d0.cols()) + ", d1 is " +
                                std::to_string(d1.rows()) + "x" + std::to_string(d1.cols())});
  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < r0; ++i) basis.push_back({"e" + std::to_string(i), 0});
  for (std::size_t i = 0; i < r1; ++i) basis.push_back({"f" + std::to_string(i), 1});
  PolyMatrix d(r0 + r1, r0 + r1, ctx);
  for (std::size_t i = 0; i < r1; ++i)
    for (std::size_t j = 0; j < r0; ++j) d(r0 + i, j) = d0(i, j).with_context(ctx);
  for (std::size_t i = 0; i < r0; ++i)
    for (std::size_t j = 0; j < r1; ++j) d(i, r0 + j) = d1(i, j).with_context(ctx);
  return make_mf(ctx, W, std::move(basis), std::move(d));
}

MatrixFactorisation with_sides(MatrixFactorisation X, std::vector<std::size_t> source_vars, const Poly& W,
                               std::vector<std::size_t> target_vars, const Poly& V) {
  Poly w = W.with_context(X.ctx), v = V.with_context(X.ctx);
  if (v - w != X.potential)
    throw InvalidFactorisation("potential is not V - W", {"V - W = " + (v - w).to_string() +
                                                          ", potential = " + X.potential.to_string()});
  X.source_vars = std::move(source_vars);
  X.target_vars = std::move(target_vars);
  X.source_potential = w;
  X.target_potential = v;
  return X;
}

MatrixFactorisation embed(const MatrixFactorisation& X, const Ctx& target,
                          const std::vector<std::pair<std::string, std::string>>& renaming) {
  auto mv = [&](const Poly& p) { return rename(p.with_context(X.ctx), renaming, target); };
  auto mv_var = [&](std::size_t i) {
    std::string name = X.ctx->name(i);
    for (const auto& [a, b] : renaming)
      if (a == name) name = b;
    return target->index(name);
  };
  MatrixFactorisation Y;
  Y.ctx = target;
  Y.potential = mv(X.potential);
  Y.basis = X.basis;
  Y.d = X.d.map(mv);
  for (auto v : X.source_vars) Y.source_vars.push_back(mv_var(v));
  for (auto v : X.target_vars) Y.target_vars.push_back(mv_var(v));
  Y.source_potential = mv(X.source_potential);
  Y.target_potential = mv(X.target_potential);
  return Y;
}

MatrixFactorisation dual(const MatrixFactorisation& X) {
  MatrixFactorisation D;
  D.ctx = X.ctx;
  D.potential = -X.potential;
  for (const auto& b : X.basis) D.basis.push_back({b.label + "*", b.parity});
  D.d = PolyMatrix(X.rank(), X.rank(), X.ctx);
  for (std::size_t j = 0; j < X.rank(); ++j)
    for (std::size_t k = 0; k < X.rank(); ++k)
      if (!X.d(j, k).is_zero()) D.d(k, j) = X.d(j, k) * Rational(-sign_of(X.parity(j)));
  D.source_vars = X.target_vars;
  D.target_vars = X.source_vars;
  D.source_potential = X.target_potential;
  D.target_potential = X.source_potential;
  return D;
}

MatrixFactorisation shift(const MatrixFactorisation& X, int k) {
  if (k % 2 == 0) return X;
  MatrixFactorisation S = X;
  for (auto& b : S.basis) b.parity ^= 1;
  S.d = -X.d;
  return S;
}

MatrixFactorisation tensor(const MatrixFactorisation& Y, const MatrixFactorisation& X) {
  if (!same_context(X.ctx, Y.ctx)) throw ContextMismatch("tensor factors must share a ring");
  MatrixFactorisation T;
  T.ctx = X.ctx;
  T.potential = Y.potential + X.potential;
  const std::size_t rx = X.rank(), ry = Y.rank();
  for (std::size_t a = 0; a < ry; ++a)
    for (std::size_t b = 0; b < rx; ++b)
      T.basis.push_back({Y.basis[a].label + "(x)" + X.basis[b].label, (Y.parity(a) + X.parity(b)) % 2});
  T.d = PolyMatrix(rx * ry, rx * ry, X.ctx);
  for (std::size_t a = 0; a < ry; ++a)
    for (std::size_t b = 0; b < rx; ++b) {
      std::size_t col = a * rx + b;
      for (std::size_t a2 = 0; a2 < ry; ++a2)
        if (!Y.d(a2, a).is_zero()) T.d(a2 * rx + b, col) += Y.d(a2, a);
      int s = sign_of(Y.parity(a));
      for (std::size_t b2 = 0; b2 < rx; ++b2)
        if (!X.d(b2, b).is_zero()) T.d(a * rx + b2, col) += X.d(b2, b) * Rational(s);
    }
  T.source_vars = X.source_vars;
  T.target_vars = Y.target_vars;
  T.source_potential = X.source_potential;
  T.target_potential = Y.target_potential;
  return T;
}

MatrixFactorisation trivial_mf(const Ctx& ctx) {
  PolyMatrix d(1, 1, ctx);
  MatrixFactorisation X = make_mf(ctx, Poly(ctx, 0), {{"1", 0}}, d);
  X.target_vars.clear();
  return X;
}

bool Morphism::is_homogeneous() const { return has_parity(source, target, map, parity); }

PolyMatrix Morphism::differential() const { return hom_differential(source, target, map, parity); }

PolyMatrix hom_differential(const MatrixFactorisation& X, const MatrixFactorisation& Y, const PolyMatrix& phi,
                            int parity) {
  PolyMatrix r = Y.d * phi;
  PolyMatrix s = phi * X.d;
  if (parity % 2) r += s;
  else r -= s;
  return r;
}

bool has_parity(const MatrixFactorisation& X, const MatrixFactorisation& Y, const PolyMatrix& phi, int parity) {
  if (phi.rows() != Y.rank() || phi.cols() != X.rank()) return false;
  for (std::size_t i = 0; i < Y.rank(); ++i)
    for (std::size_t j = 0; j < X.rank(); ++j)
      if ((Y.parity(i) + X.parity(j) + parity) % 2 && !phi(i, j).is_zero()) return false;
  return true;
}

Poly supertrace(const MatrixFactorisation& X, const PolyMatrix& phi) {
  if (phi.rows() != X.rank() || phi.cols() != X.rank()) throw std::invalid_argument("supertrace: shape mismatch");
  Poly s(X.ctx, 0);
  for (std::size_t i = 0; i < X.rank(); ++i) {
    if (X.parity(i)) s -= phi(i, i);
    else s += phi(i, i);
  }
  return s;
}

Poly supertrace(const Morphism& phi) {
  if (phi.parity % 2) throw std::invalid_argument("supertrace of an odd morphism");
  if (phi.source.rank() != phi.target.rank() || phi.source.basis.size() != phi.target.basis.size())
    throw std::invalid_argument("supertrace needs an endomorphism");
  for (std::size_t i = 0; i < phi.source.rank(); ++i)
    if (phi.source.parity(i) != phi.target.parity(i)) throw std::invalid_argument("supertrace needs an endomorphism");
  return supertrace(phi.source, phi.map);
}

int default_degree_bound(const MatrixFactorisation& X, const MatrixFactorisation& Y) {
  int w = std::max(X.potential.degree(), Y.potential.degree());
  int e = std::max(X.d.max_degree(), Y.d.max_degree());
  return std::max(0, w) + std::max(0, e);
}

std::optional<Homotopy> null_homotopy_search(const MatrixFactorisation& X, const MatrixFactorisation& Y,
                                             const PolyMatrix& phi, int parity, int degree_bound,
                                             std::vector<std::size_t> variables) {
  const Ctx& ctx = X.ctx;
  const int hp = (parity + 1) % 2;
  Homotopy out;
  out.parity = hp;
  out.degree_bound = degree_bound;
  out.h = PolyMatrix(Y.rank(), X.rank(), ctx);
  if (phi.is_zero()) return out;
  if (variables.empty()) {
    std::set<std::size_t> vs;
    collect_vars(X.d, vs);
    collect_vars(Y.d, vs);
    collect_vars(phi, vs);
    variables.assign(vs.begin(), vs.end());
  }
  const std::size_t nv = ctx ? ctx->size() : 0;
  const auto monos = monomials_up_to(nv, variables, degree_bound);
  const int s = sign_of(hp);

  struct Unknown {
    std::size_t i, j, m;
  };
  std::vector<Unknown> unknowns;
  for (std::size_t i = 0; i < Y.rank(); ++i)
    for (std::size_t j = 0; j < X.rank(); ++j)
      if ((Y.parity(i) + X.parity(j)) % 2 == hp)
        for (std::size_t m = 0; m < monos.size(); ++m) unknowns.push_back({i, j, m});

  std::map<std::pair<std::size_t, Exponents>, std::size_t> row_of;
  std::vector<SparseRow> rows;
  std::vector<Rational> rhs;
  auto row_index = [&](std::size_t entry, const Exponents& e) {
    auto [it, ins] = row_of.try_emplace({entry, e}, rows.size());
    if (ins) {
      rows.emplace_back();
      rhs.emplace_back(0);
    }
    return it->second;
  };
  Exponents f;
  auto contribute = [&](std::size_t u, std::size_t entry, const Poly& coeff, const Exponents& m, const Rational& sc) {
    for (const auto& [e, c] : coeff.terms()) {
      f = e;
      for (std::size_t k = 0; k < f.size(); ++k) f[k] += m[k];
      rows[row_index(entry, f)].emplace_back(u, c * sc);
    }
  };
  const std::size_t cols = X.rank();
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const auto& [i, j, m] = unknowns[u];
    for (std::size_t k = 0; k < Y.rank(); ++k)
      if (!Y.d(k, i).is_zero()) contribute(u, k * cols + j, Y.d(k, i).with_context(ctx), monos[m], 1);
    for (std::size_t l = 0; l < X.rank(); ++l)
      if (!X.d(j, l).is_zero()) contribute(u, i * cols + l, X.d(j, l).with_context(ctx), monos[m], Rational(-s));
  }
  for (std::size_t i = 0; i < phi.rows(); ++i)
    for (std::size_t j = 0; j < phi.cols(); ++j) {
      Poly p = phi(i, j).with_context(ctx);
      for (const auto& [e, c] : p.terms()) rhs[row_index(i * cols + j, e)] += c;
    }

  SparseLinearSystem sys(unknowns.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (!sys.add_equation(rows[r], rhs[r])) return std::nullopt;
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const Rational& c = (*sol)[u];
    if (c == 0) continue;
    const auto& [i, j, m] = unknowns[u];
    out.h(i, j).add_term(monos[m], c);
  }
  if (hom_differential(X, Y, out.h, hp) != phi.map([&](const Poly& p) { return p.with_context(ctx); }))
    throw std::logic_error("homotopy witness failed verification");
  return out;
}

std::optional<Homotopy> null_homotopy_search(const Morphism& phi, int degree_bound) {
  return null_homotopy_search(phi.source, phi.target, phi.map, phi.parity, degree_bound);
}

std::optional<Homotopy> homotopy_between(const MatrixFactorisation& X, const MatrixFactorisation& Y,
                                         const PolyMatrix& phi, const PolyMatrix& psi, int degree_bound) {
  return null_homotopy_search(X, Y, phi - psi, 0, degree_bound);
}

void verify_null_homotopy(const MatrixFactorisation& X, const PolyMatrix& h, const Poly& f) {
  PolyMatrix c = hom_differential(X, X, h, 1);
  PolyMatrix want = f.with_context(X.ctx) * PolyMatrix::identity(X.rank(), X.ctx);
  if (c != want) throw InvalidFactorisation("null-homotopy fails [d, h] = " + f.to_string(), {c.to_string()});
}

std::vector<NullHomotopy> default_null_homotopies(const MatrixFactorisation& X, const std::vector<std::size_t>& vars) {
  std::vector<NullHomotopy> out;
  for (auto v : vars) {
    bool src = std::find(X.source_vars.begin(), X.source_vars.end(), v) != X.source_vars.end();
    bool tgt = std::find(X.target_vars.begin(), X.target_vars.end(), v) != X.target_vars.end();
    if (!src && !tgt) throw std::invalid_argument("variable " + X.ctx->name(v) + " is on neither side");
    NullHomotopy nh;
    nh.variable = v;
    PolyMatrix dd = X.d.map([&](const Poly& p) { return partial_derivative(p, v); });
    if (src) {
      nh.matrix = -dd;
      nh.commutator = partial_derivative(X.source_potential, v);
    } else {
      nh.matrix = dd;
      nh.commutator = partial_derivative(X.target_potential, v);
    }
    verify_null_homotopy(X, nh.matrix, nh.commutator);
    out.push_back(std::move(nh));
  }
  return out;
}

std::vector<Poly> ReducedFactorisation::project(const std::vector<Poly>& element) const {
  if (element.size() != base_rank) throw std::invalid_argument("element size mismatch");
  std::vector<Poly> out(mf.rank(), Poly(mf.ctx, 0));
  std::map<Exponents, std::size_t> pos;
  for (std::size_t k = 0; k < monomials.size(); ++k) pos[monomials[k]] = k;
  for (std::size_t j = 0; j < base_rank; ++j) {
    if (element[j].is_zero()) continue;
    Poly nf = normal_form(element[j], gb);
    for (const auto& [e, c] : nf.terms()) {
      Exponents inner(e.size(), 0), outer = e;
      for (auto v : gb.variables) {
        inner[v] = e[v];
        outer[v] = 0;
      }
      out[pos.at(inner) * base_rank + j].add_term(outer, c);
    }
  }
  return out;
}

ReducedFactorisation finite_rank_reduction(const MatrixFactorisation& Z, const std::vector<Poly>& fs,
                                           std::vector<std::size_t> variables) {
  ReducedFactorisation R;
  if (fs.empty()) {
    // nothing to reduce: the zero ideal in no variables
    R.gb.ctx = Z.ctx;
  } else {
    R.gb = groebner(fs, {}, std::move(variables));
  }
  QuotientBasis qb = quotient_monomial_basis(R.gb);
  if (!qb.finite) throw CapExceeded("finite_rank_reduction: quotient is not finite-dimensional");
  R.monomials = qb.monomials;
  R.base_rank = Z.rank();
  MatrixFactorisation& M = R.mf;
  M.ctx = Z.ctx;
  M.potential = normal_form(Z.potential, R.gb);
  for (const auto& mono : R.monomials) {
    std::string ml = Poly::monomial(Z.ctx, mono).to_string();
    for (const auto& b : Z.basis) M.basis.push_back({ml + "*" + b.label, b.parity});
  }
  const std::size_t N = M.basis.size();
  M.d = PolyMatrix(N, N, Z.ctx);
  for (std::size_t a = 0; a < R.monomials.size(); ++a) {
    Poly mono = Poly::monomial(Z.ctx, R.monomials[a]);
    for (std::size_t j = 0; j < Z.rank(); ++j) {
      std::vector<Poly> col(Z.rank());
      for (std::size_t i = 0; i < Z.rank(); ++i) col[i] = mono * Z.d(i, j);
      auto img = R.project(col);
      for (std::size_t r = 0; r < N; ++r) M.d(r, a * Z.rank() + j) = img[r];
    }
  }
  M.source_vars = Z.source_vars;
  M.target_vars = Z.target_vars;
  M.source_potential = normal_form(Z.source_potential, R.gb);
  M.target_potential = normal_form(Z.target_potential, R.gb);
  return R;
}

}  // namespace lgmf
