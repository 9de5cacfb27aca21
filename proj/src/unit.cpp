#include "lgmf/unit.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace lgmf {

namespace {

std::vector<std::size_t> identity_permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

void check_permutation(const std::vector<std::size_t>& sigma, std::size_t n) {
  if (sigma.size() != n) throw std::invalid_argument("ordering has the wrong length");
  std::vector<std::size_t> s = sigma;
  std::sort(s.begin(), s.end());
  if (s != identity_permutation(n)) throw std::invalid_argument("ordering is not a permutation");
}

std::string subset_label(Subset s) {
  if (s == 0) return "1";
  std::string r;
  for (auto i : elements(s)) {
    if (!r.empty()) r += "^";
    r += "t" + std::to_string(i + 1);
  }
  return r;
}

void accumulate(KoszulElement& out, Subset s, const Poly& c) {
  if (c.is_zero()) return;
  auto it = out.find(s);
  if (it == out.end()) {
    out.emplace(s, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) out.erase(it);
}

// d^sigma_[i_1] M ... d^sigma_[i_l] M for the elements of s in increasing
// order, or decreasing order when reversed
PolyMatrix difference_product(const KoszulUnit& u, const PolyMatrix& m, Subset s, bool reversed) {
  auto idx = elements(s);
  if (reversed) std::reverse(idx.begin(), idx.end());
  PolyMatrix r = PolyMatrix::identity(m.rows(), u.ctx);
  for (auto i : idx) r = r * m.map([&](const Poly& p) { return u.difference(p, i); });
  return r;
}

std::vector<std::pair<std::string, std::string>> renaming(const Ctx& ctx, const std::vector<std::size_t>& from,
                                                          const std::vector<std::size_t>& to) {
  std::vector<std::pair<std::string, std::string>> r;
  for (std::size_t k = 0; k < from.size(); ++k) r.emplace_back(ctx->name(from[k]), ctx->name(to[k]));
  return r;
}

Poly rename_all(const Poly& f, const Ctx& ctx, const std::vector<std::size_t>& from,
                const std::vector<std::size_t>& to) {
  std::vector<Poly> images;
  for (std::size_t i = 0; i < ctx->size(); ++i) images.push_back(Poly::var(ctx, i));
  for (std::size_t k = 0; k < from.size(); ++k) images[from[k]] = Poly::var(ctx, to[k]);
  return substitute(f.with_context(ctx), images, ctx);
}

}  // namespace

// ------------------------------------------------------------------ Koszul unit

std::size_t KoszulUnit::position(Subset s) const {
  auto it = std::find(subsets.begin(), subsets.end(), s);
  if (it == subsets.end()) throw std::out_of_range("subset out of range");
  return static_cast<std::size_t>(it - subsets.begin());
}

Poly KoszulUnit::difference(const Poly& f, std::size_t i) const {
  return divided_difference_ordered(f.with_context(ctx), block, i, sigma);
}

std::vector<std::size_t> KoszulUnit::unprimed() const {
  std::vector<std::size_t> r;
  for (auto [a, b] : block) r.push_back(a);
  return r;
}

std::vector<std::size_t> KoszulUnit::primed() const {
  std::vector<std::size_t> r;
  for (auto [a, b] : block) r.push_back(b);
  return r;
}

Poly KoszulUnit::contract(const Poly& f) const { return rename_all(f, ctx, primed(), unprimed()); }

KoszulUnit koszul_unit(const Poly& W, const PairBlock& block, std::vector<std::size_t> sigma) {
  if (!W.context()) throw std::invalid_argument("potential needs a ring");
  KoszulUnit u;
  u.ctx = W.context();
  u.block = block;
  u.W = W;
  const std::size_t n = block.size();
  if (sigma.empty()) sigma = identity_permutation(n);
  check_permutation(sigma, n);
  u.sigma = sigma;
  for (auto [a, b] : block)
    if (W.involves(b)) throw std::invalid_argument("potential must be written in the unprimed variables");
  u.subsets = ordered_subsets(n);
  const std::size_t N = u.subsets.size();
  std::vector<Poly> plus(n), minus(n);
  for (std::size_t i = 0; i < n; ++i) {
    plus[i] = u.difference(W, i);
    auto [a, b] = block[sigma[i]];
    minus[i] = Poly::var(u.ctx, a) - Poly::var(u.ctx, b);
  }
  std::vector<BasisElement> basis;
  for (auto s : u.subsets) basis.push_back({subset_label(s), popcount(s) % 2});
  PolyMatrix d(N, N, u.ctx);
  for (std::size_t c = 0; c < N; ++c) {
    Subset s = u.subsets[c];
    for (std::size_t i = 0; i < n; ++i) {
      if (int w = wedge_sign(i, s)) d(u.position(s | (Subset(1) << i)), c) += plus[i] * w;
      if (int k = contraction_sign(i, s)) d(u.position(s & ~(Subset(1) << i)), c) += minus[i] * k;
    }
  }
  Poly Wp = rename_all(W, u.ctx, u.unprimed(), u.primed());
  u.mf = make_mf(u.ctx, W - Wp, std::move(basis), std::move(d));
  u.mf = with_sides(u.mf, u.primed(), Wp, u.unprimed(), W);
  return u;
}

KoszulUnit koszul_unit(const Poly& W, std::vector<std::size_t> sigma) {
  if (!W.context()) throw std::invalid_argument("potential needs a ring");
  Ctx big = RingContext::doubled(W.context()->names());
  return koszul_unit(embed(W, big), big->primed_pairs(), std::move(sigma));
}

KoszulElement wedge(const KoszulElement& a, const KoszulElement& b) {
  KoszulElement r;
  for (const auto& [s, p] : a)
    for (const auto& [t, q] : b)
      if (int w = wedge_sign(s, t)) accumulate(r, s | t, p * q * w);
  return r;
}

std::vector<Poly> to_vector(const KoszulUnit& u, const KoszulElement& a) {
  std::vector<Poly> v(u.subsets.size(), Poly(u.ctx, 0));
  for (const auto& [s, p] : a) v[u.position(s)] += p;
  return v;
}

KoszulElement to_element(const KoszulUnit& u, const std::vector<Poly>& v) {
  if (v.size() != u.subsets.size()) throw std::invalid_argument("vector length does not match the unit");
  KoszulElement r;
  for (std::size_t i = 0; i < v.size(); ++i) accumulate(r, u.subsets[i], v[i]);
  return r;
}

KoszulElement delta_plus(const KoszulUnit& u, const KoszulElement& a) {
  KoszulElement r;
  for (const auto& [s, p] : a)
    for (std::size_t i = 0; i < u.n(); ++i)
      if (int w = wedge_sign(i, s)) accumulate(r, s | (Subset(1) << i), u.difference(u.W, i) * p * w);
  return r;
}

KoszulElement delta_minus(const KoszulUnit& u, const KoszulElement& a) {
  KoszulElement r;
  for (const auto& [s, p] : a)
    for (std::size_t i = 0; i < u.n(); ++i)
      if (int k = contraction_sign(i, s)) {
        auto [x, xp] = u.block[u.sigma[i]];
        accumulate(r, s & ~(Subset(1) << i), (Poly::var(u.ctx, x) - Poly::var(u.ctx, xp)) * p * k);
      }
  return r;
}

Poly stab_pi(const KoszulUnit& u, const KoszulElement& a) {
  auto it = a.find(0);
  if (it == a.end()) return Poly(u.ctx, 0);
  return u.contract(it->second);
}

Poly epsilon(const KoszulUnit& u, const KoszulElement& a) {
  Subset top = u.n() ? ((Subset(1) << u.n()) - 1) : 0;
  auto it = a.find(top);
  return it == a.end() ? Poly(u.ctx, 0) : it->second;
}

// ------------------------------------------------------------------ bar complex

KoszulElement psi(const KoszulUnit& u, const BarTerm& t) {
  const std::size_t p = t.forms.size();
  KoszulElement r;
  if (p > u.n()) return r;
  std::vector<std::vector<Poly>> dd(p);
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t i = 0; i < u.n(); ++i) dd[k].push_back(u.difference(t.forms[k], i));
  for (auto s : u.subsets) {
    if (static_cast<std::size_t>(popcount(s)) != p) continue;
    auto idx = elements(s);
    Poly c = t.coefficient.with_context(u.ctx);
    for (std::size_t k = 0; k < p && !c.is_zero(); ++k) c *= dd[k][idx[k]];
    accumulate(r, s, c);
  }
  return r;
}

KoszulElement psi(const KoszulUnit& u, const BarChain& c) {
  KoszulElement r;
  for (const auto& t : c)
    for (const auto& [s, p] : psi(u, t)) accumulate(r, s, p);
  return r;
}

BarChain phi(const KoszulUnit& u, const KoszulElement& a) {
  BarChain r;
  for (const auto& [s, c] : a) {
    auto idx = elements(s);
    std::vector<std::size_t> perm = identity_permutation(idx.size());
    do {
      BarTerm t;
      t.coefficient = c * permutation_sign(perm);
      for (auto k : perm) t.forms.push_back(Poly::var(u.ctx, u.block[u.sigma[idx[k]]].first));
      r.push_back(std::move(t));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return r;
}

BarChain shuffle(const BarTerm& a, const BarTerm& b) {
  const std::size_t p = a.forms.size(), q = b.forms.size();
  BarChain r;
  // choose the positions of a's letters; the sign counts crossings
  std::vector<bool> mask(p + q, false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(p), true);
  std::sort(mask.begin(), mask.end());
  do {
    BarTerm t;
    long crossings = 0, seen_b = 0;
    std::size_t ia = 0, ib = 0;
    for (bool from_a : mask) {
      if (from_a) {
        t.forms.push_back(a.forms[ia++]);
        crossings += seen_b;
      } else {
        t.forms.push_back(b.forms[ib++]);
        ++seen_b;
      }
    }
    t.coefficient = a.coefficient * b.coefficient * sign_of(crossings);
    r.push_back(std::move(t));
  } while (std::next_permutation(mask.begin(), mask.end()));
  return r;
}

// ------------------------------------------------------------------ lifting

bool is_closed_to_ring(const KoszulUnit& u, const MatrixFactorisation& Y, const std::vector<Poly>& values) {
  if (values.size() != Y.rank()) throw std::invalid_argument("one value per basis element expected");
  for (std::size_t j = 0; j < Y.rank(); ++j) {
    Poly s(u.ctx, 0);
    for (std::size_t k = 0; k < Y.rank(); ++k) s += values[k].with_context(u.ctx) * Y.d(k, j).with_context(u.ctx);
    if (!u.contract(s).is_zero()) return false;
  }
  return true;
}

Morphism lift_to_diagonal(const KoszulUnit& u, const MatrixFactorisation& Y, const std::vector<Poly>& values) {
  if (!same_context(Y.ctx, u.ctx)) throw ContextMismatch("factorisation and unit live in different rings");
  if (Y.potential != u.mf.potential) throw std::invalid_argument("factorisation is not one of W(x) - W(x')");
  if (values.size() != Y.rank()) throw std::invalid_argument("one value per basis element expected");
  for (std::size_t k = 0; k < Y.rank(); ++k)
    if (Y.parity(k) && !values[k].is_zero()) throw std::invalid_argument("an even map to R vanishes on odd elements");
  // phi(e_k) in the primed variables
  std::vector<Poly> primed;
  for (const auto& v : values) primed.push_back(rename_all(v, u.ctx, u.unprimed(), u.primed()));
  Morphism m;
  m.source = Y;
  m.target = u.mf;
  m.parity = 0;
  m.map = PolyMatrix(u.subsets.size(), Y.rank(), u.ctx);
  for (auto s : u.subsets) {
    const int l = popcount(s);
    PolyMatrix M = difference_product(u, Y.d, s, true);
    for (std::size_t j = 0; j < Y.rank(); ++j) {
      Poly c(u.ctx, 0);
      for (std::size_t k = 0; k < Y.rank(); ++k) c += primed[k] * M(k, j);
      m.map(u.position(s), j) = c * sign_of(static_cast<long>(l) * (Y.parity(j) + 1));
    }
  }
  return m;
}

// ------------------------------------------------------------------ unit actions

Poly UnitAction::contract(const Poly& f) const { return rename_all(f, product.ctx, inner, outer); }

std::size_t UnitAction::index(std::size_t j, Subset s) const {
  std::size_t p = unit.position(s);
  return side == Side::Right ? j * unit.subsets.size() + p : p * base.rank() + j;
}

std::vector<Poly> UnitAction::apply(const std::vector<Poly>& v) const {
  if (v.size() != product.rank()) throw std::invalid_argument("vector length does not match the product");
  std::vector<Poly> r(base.rank(), Poly(product.ctx, 0));
  for (std::size_t j = 0; j < base.rank(); ++j) r[j] = contract(v[index(j, 0)]);
  return r;
}

Morphism UnitAction::inverse_morphism() const {
  Morphism m;
  m.source = base;
  m.target = product;
  m.parity = 0;
  m.map = inverse;
  return m;
}

bool UnitAction::action_is_closed() const {
  for (std::size_t c = 0; c < product.rank(); ++c) {
    std::vector<Poly> col(product.rank(), Poly(product.ctx, 0));
    for (std::size_t r = 0; r < product.rank(); ++r) col[r] = product.d(r, c);
    std::vector<Poly> lhs = apply(col);
    std::vector<Poly> e(product.rank(), Poly(product.ctx, 0));
    e[c] = Poly(product.ctx, 1);
    std::vector<Poly> rhs = base.d.apply(apply(e));
    for (std::size_t j = 0; j < base.rank(); ++j)
      if (lhs[j] != rhs[j]) return false;
  }
  return true;
}

PolyMatrix UnitAction::retraction() const {
  PolyMatrix r(base.rank(), base.rank(), product.ctx);
  for (std::size_t i = 0; i < base.rank(); ++i) {
    std::vector<Poly> col(product.rank());
    for (std::size_t k = 0; k < product.rank(); ++k) col[k] = inverse(k, i);
    auto img = apply(col);
    for (std::size_t j = 0; j < base.rank(); ++j) r(j, i) = img[j];
  }
  return r;
}

namespace {

UnitAction build_action(const MatrixFactorisation& X, const std::vector<std::size_t>& inner,
                        std::vector<std::size_t> sigma, Side side) {
  UnitAction a;
  a.side = side;
  a.base = X;
  a.inner = inner;
  a.outer = side == Side::Right ? X.source_vars : X.target_vars;
  if (inner.size() != a.outer.size()) throw std::invalid_argument("one inner variable per glued variable expected");
  const Ctx& ctx = X.ctx;
  for (auto v : inner)
    if (std::find(X.source_vars.begin(), X.source_vars.end(), v) != X.source_vars.end() ||
        std::find(X.target_vars.begin(), X.target_vars.end(), v) != X.target_vars.end())
      throw std::invalid_argument("inner variables must be fresh");
  a.glued = embed(X, ctx, renaming(ctx, a.outer, inner));
  PairBlock block;
  if (side == Side::Right) {
    for (std::size_t k = 0; k < inner.size(); ++k) block.emplace_back(inner[k], a.outer[k]);
    a.unit = koszul_unit(rename_all(X.source_potential, ctx, a.outer, inner), block, std::move(sigma));
    a.product = tensor(a.glued, a.unit.mf);
  } else {
    for (std::size_t k = 0; k < inner.size(); ++k) block.emplace_back(a.outer[k], inner[k]);
    a.unit = koszul_unit(X.target_potential.with_context(ctx), block, std::move(sigma));
    a.product = tensor(a.unit.mf, a.glued);
  }
  const std::size_t r = X.rank();
  a.inverse = PolyMatrix(a.product.rank(), r, ctx);
  for (auto s : a.unit.subsets) {
    const long l = popcount(s);
    if (side == Side::Right) {
      PolyMatrix M = difference_product(a.unit, a.glued.d, s, false);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
          a.inverse(a.index(j, s), i) = M(j, i) * sign_of(binom2(l) + l * X.parity(i));
    } else {
      PolyMatrix M = difference_product(a.unit, X.d, s, true);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) a.inverse(a.index(j, s), i) = M(j, i);
    }
  }
  return a;
}

MatrixFactorisation with_fresh(const MatrixFactorisation& X, const std::vector<std::size_t>& vars,
                               std::vector<std::size_t>& fresh) {
  Ctx big = with_fresh_copies(X.ctx, vars, fresh);
  return embed(X, big);
}

}  // namespace

UnitAction unit_action_right(const MatrixFactorisation& X, const std::vector<std::size_t>& inner,
                             std::vector<std::size_t> sigma) {
  return build_action(X, inner, std::move(sigma), Side::Right);
}

UnitAction unit_action_left(const MatrixFactorisation& X, const std::vector<std::size_t>& inner,
                            std::vector<std::size_t> sigma) {
  return build_action(X, inner, std::move(sigma), Side::Left);
}

UnitAction unit_action_right(const MatrixFactorisation& X, std::vector<std::size_t> sigma) {
  std::vector<std::size_t> fresh;
  MatrixFactorisation big = with_fresh(X, X.source_vars, fresh);
  return build_action(big, fresh, std::move(sigma), Side::Right);
}

UnitAction unit_action_left(const MatrixFactorisation& X, std::vector<std::size_t> sigma) {
  std::vector<std::size_t> fresh;
  MatrixFactorisation big = with_fresh(X, X.target_vars, fresh);
  return build_action(big, fresh, std::move(sigma), Side::Left);
}

namespace {

bool is_zero_vector(const std::vector<Poly>& v) {
  return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); });
}

// Theta indices in the order the contraction moves inner variables to outer
// ones; theta_i belongs to the variable sigma(i).  The unit substitutes
// inner -> outer in theta order on the right and outer -> inner on the left,
// and the latter equals inner -> outer in the reversed order.
std::vector<std::size_t> contraction_order(const UnitAction& a) {
  std::vector<std::size_t> ord = identity_permutation(a.unit.n());
  if (a.side == Side::Left) std::reverse(ord.begin(), ord.end());
  return ord;
}

// (t_{o(0..k-1)} g - t_{o(0..k)} g) / (inner - outer) for the variable of theta_{o(k)}, t: inner -> outer
Poly inner_difference(const UnitAction& a, const Poly& g, std::size_t k, const std::vector<std::size_t>& ord) {
  PairBlock block;
  for (std::size_t i = 0; i < a.inner.size(); ++i) block.emplace_back(a.inner[i], a.outer[i]);
  std::vector<std::size_t> vars;
  for (auto t : ord) vars.push_back(a.unit.sigma[t]);
  return divided_difference_ordered(g, block, k, vars);
}

// the part of the product differential that does not lower theta-degree
PolyMatrix perturbation(const UnitAction& a) {
  PolyMatrix delta = a.product.d;
  const std::size_t r = a.base.rank();
  for (std::size_t j = 0; j < r; ++j)
    for (auto s : a.unit.subsets)
      for (auto t : a.unit.subsets)
        if (popcount(t) < popcount(s)) delta(a.index(j, t), a.index(j, s)) = Poly(a.product.ctx, 0);
  return delta;
}

}  // namespace

std::vector<Poly> koszul_contraction(const UnitAction& a, const std::vector<Poly>& v) {
  if (v.size() != a.product.rank()) throw std::invalid_argument("vector length does not match the product");
  const Ctx& ctx = a.product.ctx;
  std::vector<Poly> out(v.size(), Poly(ctx, 0));
  const std::size_t n = a.unit.n();
  const auto ord = contraction_order(a);
  for (std::size_t j = 0; j < a.base.rank(); ++j)
    for (auto s : a.unit.subsets) {
      const Poly& g = v[a.index(j, s)];
      if (g.is_zero()) continue;
      // delta_- has coefficients inner - outer on the right, outer - inner on the left
      int sign = a.side == Side::Right ? -sign_of(a.base.parity(j)) : 1;
      // theta_{o(k)} ^ theta_S for every position k before all of S
      for (std::size_t k = 0; k < n && !(s & (Subset(1) << ord[k])); ++k) {
        const std::size_t v_k = ord[k];
        const int below = popcount(s & ((Subset(1) << v_k) - 1));
        out[a.index(j, s | (Subset(1) << v_k))] += inner_difference(a, g, k, ord) * (sign * sign_of(below));
      }
    }
  return out;
}

std::vector<Poly> reversed_homotopy(const UnitAction& a, const std::vector<Poly>& v) {
  PolyMatrix delta = perturbation(a);
  std::vector<Poly> w = koszul_contraction(a, v), acc = w;
  while (!is_zero_vector(w)) {
    w = koszul_contraction(a, delta.apply(w));
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w[i];
  }
  return acc;
}

PolyMatrix perturbed_inclusion(const UnitAction& a) {
  PolyMatrix delta = perturbation(a);
  const Ctx& ctx = a.product.ctx;
  PolyMatrix m(a.product.rank(), a.base.rank(), ctx);
  for (std::size_t i = 0; i < a.base.rank(); ++i) {
    std::vector<Poly> w(a.product.rank(), Poly(ctx, 0));
    w[a.index(i, 0)] = Poly(ctx, 1);
    std::vector<Poly> acc = w;
    while (!is_zero_vector(w)) {
      w = koszul_contraction(a, delta.apply(w));
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += w[k];
    }
    for (std::size_t k = 0; k < acc.size(); ++k) m(k, i) = acc[k];
  }
  return m;
}

ReversedCompositeCheck reversed_composite_check(const UnitAction& a, int degree_bound) {
  ReversedCompositeCheck out;
  out.degree_bound = degree_bound < 0 ? default_degree_bound(a.base, a.base) : degree_bound;
  out.inclusion_matches = perturbed_inclusion(a) == a.inverse;
  const Ctx& ctx = a.product.ctx;
  // inner monomials of degree <= bound
  std::vector<Exponents> monos = {Exponents(ctx->size(), 0)};
  for (int d = 1; d <= out.degree_bound; ++d) {
    std::vector<Exponents> next;
    for (const auto& e : monos) {
      if (total_degree(e) != d - 1) continue;
      for (std::size_t k = 0; k < a.inner.size(); ++k) {
        // raise only variables at or after the last raised one, so each monomial appears once
        bool ok = true;
        for (std::size_t q = k + 1; q < a.inner.size(); ++q)
          if (e[a.inner[q]]) ok = false;
        if (!ok) continue;
        Exponents f = e;
        ++f[a.inner[k]];
        next.push_back(f);
      }
    }
    monos.insert(monos.end(), next.begin(), next.end());
  }
  out.witness_holds = true;
  for (const auto& e : monos)
    for (std::size_t c = 0; c < a.product.rank(); ++c) {
      std::vector<Poly> v(a.product.rank(), Poly(ctx, 0));
      v[c] = Poly::monomial(ctx, e);
      std::vector<Poly> lhs = a.product.d.apply(reversed_homotopy(a, v));
      std::vector<Poly> rhs2 = reversed_homotopy(a, a.product.d.apply(v));
      std::vector<Poly> rhs = a.inverse.apply(a.apply(v));
      ++out.generators;
      for (std::size_t k = 0; k < v.size(); ++k)
        if (lhs[k] + rhs2[k] != rhs[k] - v[k]) out.witness_holds = false;
    }
  return out;
}

Morphism permute_unit(const KoszulUnit& u, const std::vector<std::size_t>& sigma) {
  UnitAction left = unit_action_left(u.mf, sigma);
  // the second factor of Delta^sigma (x) Delta acts as a right unit on Delta^sigma
  const Ctx& big = left.product.ctx;
  const std::size_t N = u.subsets.size();
  Morphism m;
  m.source = u.mf;
  m.target = koszul_unit(u.W, u.block, sigma).mf;
  m.parity = 0;
  m.map = PolyMatrix(N, N, u.ctx);
  for (std::size_t c = 0; c < N; ++c)
    for (std::size_t r = 0; r < N; ++r) {
      Poly entry = left.inverse(r * N + u.position(0), c);
      // inner variables of the left action are the source side of Delta
      Poly contracted = rename_all(entry, big, left.inner, u.primed());
      m.map(r, c) = embed(contracted, u.ctx);
    }
  return m;
}

}  // namespace lgmf
