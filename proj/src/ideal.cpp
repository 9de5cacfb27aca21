#include "lgmf/ideal.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "lgmf/linalg.hpp"

namespace lgmf {

bool MonomialOrder::greater(const Exponents& a, const Exponents& b) const {
  if (kind == OrderKind::GradedLex) return GrlexGreater{}(a, b);
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::string MonomialOrder::name() const { return kind == OrderKind::Lex ? "lex" : "grlex"; }

namespace {

struct OrderGreater {
  MonomialOrder order;
  bool operator()(const Exponents& a, const Exponents& b) const { return order.greater(a, b); }
};

using OTerms = std::map<Exponents, Rational, OrderGreater>;

// terms sorted by the order, greatest first
struct SortedPoly {
  std::vector<std::pair<Exponents, Rational>> terms;
};

SortedPoly sorted(const Poly& p, const MonomialOrder& ord) {
  SortedPoly s;
  s.terms.assign(p.terms().begin(), p.terms().end());
  std::sort(s.terms.begin(), s.terms.end(),
            [&](const auto& a, const auto& b) { return ord.greater(a.first, b.first); });
  return s;
}

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Exponents quotient(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

void subtract_multiple(OTerms& acc, const SortedPoly& g, const Exponents& m, const Rational& c) {
  Exponents e;
  for (const auto& [ge, gc] : g.terms) {
    e = ge;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += m[i];
    auto [it, ins] = acc.try_emplace(e, -c * gc);
    if (!ins) {
      it->second -= c * gc;
      if (it->second == 0) acc.erase(it);
    }
  }
}

Poly to_poly(const OTerms& t, const Ctx& ctx) {
  Poly p(ctx, 0);
  for (const auto& [e, c] : t) p.add_term(e, c);
  return p;
}

struct Element {
  Poly poly;
  SortedPoly sp;
  std::vector<Poly> cof;
  int sugar = 0;
  Exponents lt() const { return sp.terms.front().first; }
  Rational lc() const { return sp.terms.front().second; }
};

// Full reduction of p against elements; returns remainder and quotients.
OTerms reduce_full(const Poly& p, const std::vector<const Element*>& basis, const MonomialOrder& ord,
                   std::vector<Poly>* quotients, const Ctx& ctx) {
  OTerms work{OrderGreater{ord}};
  for (const auto& [e, c] : p.terms()) work.emplace(e, c);
  OTerms rem{OrderGreater{ord}};
  if (quotients) quotients->assign(basis.size(), Poly(ctx, 0));
  while (!work.empty()) {
    auto it = work.begin();
    Exponents e = it->first;
    Rational c = it->second;
    bool reduced = false;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      Exponents lt = basis[k]->lt();
      if (!divides(lt, e)) continue;
      Exponents m = quotient(e, lt);
      Rational f = c / basis[k]->lc();
      subtract_multiple(work, basis[k]->sp, m, f);
      if (quotients) (*quotients)[k].add_term(m, f);
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.emplace(e, c);
      work.erase(work.begin());
    }
  }
  return rem;
}

void check_gens(const std::vector<Poly>& gens, const Ctx& ctx, const std::vector<std::size_t>& vars) {
  std::vector<bool> allowed(ctx->size(), false);
  for (auto v : vars) allowed.at(v) = true;
  for (const auto& g : gens) {
    if (!same_context(g.context(), ctx) && g.context()) throw ContextMismatch("generators from different rings");
    for (const auto& [e, c] : g.terms())
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] && !allowed[i])
          throw std::invalid_argument("generator involves parameter variable " + ctx->name(i));
  }
}

}  // namespace

Exponents GroebnerBasis::leading_monomial(std::size_t k) const {
  return sorted(generators.at(k), order).terms.front().first;
}

bool GroebnerBasis::is_unit_ideal() const {
  return generators.size() == 1 && generators[0].is_constant() && !generators[0].is_zero();
}

GroebnerBasis groebner(const std::vector<Poly>& gens, MonomialOrder order, std::vector<std::size_t> variables) {
  if (gens.empty()) throw std::invalid_argument("empty generator list");
  Ctx ctx;
  for (const auto& g : gens)
    if (g.context()) ctx = g.context();
  if (!ctx) ctx = RingContext::make({});
  if (variables.empty())
    for (std::size_t i = 0; i < ctx->size(); ++i) variables.push_back(i);
  check_gens(gens, ctx, variables);

  GroebnerBasis gb;
  gb.ctx = ctx;
  gb.order = order;
  gb.variables = variables;
  for (const auto& g : gens) gb.original_gens.push_back(g.with_context(ctx));
  const std::size_t m = gens.size();

  std::vector<Element> basis;
  auto unit_cof = [&](std::size_t j) {
    std::vector<Poly> c(m, Poly(ctx, 0));
    c[j] = Poly(ctx, 1);
    return c;
  };

  struct Pair {
    std::size_t i, j;
    int sugar;
    Exponents lcm;
  };
  std::vector<Pair> pairs;
  MonomialOrder ord = order;

  auto add_element = [&](Element el) {
    std::size_t k = basis.size();
    for (std::size_t i = 0; i < k; ++i) {
      Exponents l = lcm(basis[i].lt(), el.lt());
      int si = basis[i].sugar + total_degree(quotient(l, basis[i].lt()));
      int sk = el.sugar + total_degree(quotient(l, el.lt()));
      pairs.push_back({i, k, std::max(si, sk), l});
    }
    basis.push_back(std::move(el));
  };

  auto basis_ptrs = [&]() {
    std::vector<const Element*> v;
    for (const auto& e : basis) v.push_back(&e);
    return v;
  };

  auto reduce_element = [&](const Poly& p, std::vector<Poly> cof, int sugar) -> std::optional<Element> {
    std::vector<Poly> q;
    auto ptrs = basis_ptrs();
    OTerms r = reduce_full(p, ptrs, ord, &q, ctx);
    if (r.empty()) return std::nullopt;
    for (std::size_t k = 0; k < ptrs.size(); ++k)
      if (!q[k].is_zero())
        for (std::size_t j = 0; j < m; ++j) cof[j] -= q[k] * ptrs[k]->cof[j];
    Element el;
    el.poly = to_poly(r, ctx);
    Rational lc = r.begin()->second;
    el.poly *= Rational(1) / lc;
    for (auto& c : cof) c *= Rational(1) / lc;
    el.sp = sorted(el.poly, ord);
    el.cof = std::move(cof);
    el.sugar = sugar;
    return el;
  };

  for (std::size_t j = 0; j < m; ++j) {
    const Poly& g = gb.original_gens[j];
    if (g.is_zero()) continue;
    auto el = reduce_element(g, unit_cof(j), g.degree());
    if (el) add_element(std::move(*el));
  }

  std::set<std::pair<std::size_t, std::size_t>> done;
  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      if (a.lcm != b.lcm) return ord.greater(b.lcm, a.lcm);
      return std::make_pair(a.i, a.j) < std::make_pair(b.i, b.j);
    });
    Pair pr = *best;
    pairs.erase(best);
    done.insert({pr.i, pr.j});
    const Element& a = basis[pr.i];
    const Element& b = basis[pr.j];
    if (coprime(a.lt(), b.lt())) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!divides(basis[k].lt(), pr.lcm)) continue;
      auto key = [](std::size_t u, std::size_t v) { return std::make_pair(std::min(u, v), std::max(u, v)); };
      if (done.count(key(pr.i, k)) && done.count(key(pr.j, k))) chain = true;
    }
    if (chain) continue;
    Exponents ma = quotient(pr.lcm, a.lt());
    Exponents mb = quotient(pr.lcm, b.lt());
    Poly ta = Poly::monomial(ctx, ma, Rational(1) / a.lc());
    Poly tb = Poly::monomial(ctx, mb, Rational(1) / b.lc());
    Poly s = ta * a.poly - tb * b.poly;
    std::vector<Poly> cof(m);
    for (std::size_t j = 0; j < m; ++j) cof[j] = ta * a.cof[j] - tb * b.cof[j];
    auto el = reduce_element(s, std::move(cof), pr.sugar);
    if (el) add_element(std::move(*el));
  }

  // minimal basis
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      if (divides(basis[j].lt(), basis[i].lt()) && (basis[j].lt() != basis[i].lt() || j < i)) redundant = true;
    }
    if (!redundant) keep.push_back(i);
  }
  std::vector<Element> minimal;
  for (auto i : keep) minimal.push_back(basis[i]);
  // interreduce
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<const Element*> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(&minimal[j]);
    std::vector<Poly> q;
    OTerms r = reduce_full(minimal[i].poly, others, ord, &q, ctx);
    std::vector<Poly> cof = minimal[i].cof;
    for (std::size_t k = 0; k < others.size(); ++k)
      if (!q[k].is_zero())
        for (std::size_t j = 0; j < m; ++j) cof[j] -= q[k] * others[k]->cof[j];
    Rational lc = r.begin()->second;
    minimal[i].poly = to_poly(r, ctx) * (Rational(1) / lc);
    for (auto& c : cof) c *= Rational(1) / lc;
    minimal[i].cof = std::move(cof);
    minimal[i].sp = sorted(minimal[i].poly, ord);
  }
  std::sort(minimal.begin(), minimal.end(),
            [&](const Element& a, const Element& b) { return ord.greater(b.lt(), a.lt()); });
  for (auto& e : minimal) {
    gb.generators.push_back(e.poly);
    gb.cofactors.push_back(e.cof);
  }
  return gb;
}

Division divide(const Poly& g, const GroebnerBasis& gb) {
  std::vector<Element> els;
  for (const auto& p : gb.generators) {
    Element e;
    e.poly = p;
    e.sp = sorted(p, gb.order);
    els.push_back(std::move(e));
  }
  std::vector<const Element*> ptrs;
  for (const auto& e : els) ptrs.push_back(&e);
  Division d;
  Poly gg = g.with_context(gb.ctx);
  if (gg.context() && !same_context(gg.context(), gb.ctx)) throw ContextMismatch("polynomial from a different ring");
  OTerms r = reduce_full(gg, ptrs, gb.order, &d.quotients, gb.ctx);
  d.remainder = to_poly(r, gb.ctx);
  return d;
}

Poly normal_form(const Poly& g, const GroebnerBasis& gb) { return divide(g, gb).remainder; }

Membership membership_with_cofactors(const Poly& g, const GroebnerBasis& gb) {
  Division d = divide(g, gb);
  Membership m;
  m.remainder = d.remainder;
  m.cofactors.assign(gb.original_gens.size(), Poly(gb.ctx, 0));
  for (std::size_t k = 0; k < d.quotients.size(); ++k) {
    if (d.quotients[k].is_zero()) continue;
    for (std::size_t j = 0; j < m.cofactors.size(); ++j) m.cofactors[j] += d.quotients[k] * gb.cofactors[k][j];
  }
  return m;
}

Membership membership_with_cofactors(const Poly& g, const std::vector<Poly>& gens, MonomialOrder order) {
  return membership_with_cofactors(g, groebner(gens, order));
}

int QuotientBasis::top_degree() const {
  int d = 0;
  for (const auto& e : monomials) d = std::max(d, total_degree(e));
  return d;
}

QuotientBasis quotient_monomial_basis(const GroebnerBasis& gb) {
  QuotientBasis qb;
  const std::size_t nv = gb.ctx->size();
  std::vector<Exponents> lts;
  for (std::size_t k = 0; k < gb.generators.size(); ++k) lts.push_back(gb.leading_monomial(k));
  if (gb.is_unit_ideal()) {
    qb.finite = true;
    return qb;
  }
  std::vector<int> bound(nv, 0);
  for (auto v : gb.variables) {
    int best = -1;
    for (const auto& lt : lts) {
      bool pure = lt[v] > 0;
      for (std::size_t i = 0; i < nv && pure; ++i)
        if (i != v && lt[i] > 0) pure = false;
      if (pure && (best < 0 || lt[v] < best)) best = lt[v];
    }
    if (best < 0) {
      qb.finite = false;
      qb.unbounded = v;
      return qb;
    }
    bound[v] = best;
  }
  qb.finite = true;
  Exponents e(nv, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == gb.variables.size()) {
      for (const auto& lt : lts)
        if (divides(lt, e)) return;
      qb.monomials.push_back(e);
      return;
    }
    std::size_t v = gb.variables[k];
    for (int a = 0; a < bound[v]; ++a) {
      e[v] = a;
      rec(k + 1);
    }
    e[v] = 0;
  };
  rec(0);
  std::sort(qb.monomials.begin(), qb.monomials.end(), [](const Exponents& a, const Exponents& b) {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  });
  return qb;
}

PotentialCertificate check_potential(const Poly& W, std::vector<std::size_t> variables) {
  PotentialCertificate cert;
  cert.W = W;
  Ctx ctx = W.context() ? W.context() : RingContext::make({});
  if (variables.empty())
    for (std::size_t i = 0; i < ctx->size(); ++i) variables.push_back(i);
  cert.variables = variables;
  for (const auto& [e, c] : W.terms())
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] && std::find(variables.begin(), variables.end(), i) == variables.end())
        throw std::invalid_argument("potential involves variable outside its ring: " + ctx->name(i));
  for (auto v : variables) cert.partials.push_back(partial_derivative(W, v).with_context(ctx));
  if (variables.empty()) {
    cert.gb.ctx = ctx;
    cert.gb.variables = variables;
    cert.basis.finite = true;
    cert.basis.monomials.push_back(Exponents(ctx->size(), 0));
    cert.is_potential = true;
    return cert;
  }
  cert.gb = groebner(cert.partials, {}, variables);
  cert.basis = quotient_monomial_basis(cert.gb);
  cert.is_potential = cert.basis.finite;
  if (!cert.basis.finite) {
    std::size_t v = *cert.basis.unbounded;
    cert.witness = "no leading term is a pure power of " + ctx->name(v) + ", so every power of " +
                   ctx->name(v) + " is a standard monomial";
  }
  return cert;
}

int default_power_cap(const GroebnerBasis& gb) {
  QuotientBasis qb = quotient_monomial_basis(gb);
  return 4 * std::max(1, qb.top_degree());
}

PowerMembership power_membership(std::size_t var, const GroebnerBasis& gb, int cap) {
  Poly v = Poly::var(gb.ctx, var);
  Poly p(gb.ctx, 1);
  for (int a = 1; a <= cap; ++a) {
    p = p * v;
    Membership m = membership_with_cofactors(p, gb);
    if (m.remainder.is_zero()) return {a, m.cofactors};
  }
  throw CapExceeded("no power " + gb.ctx->name(var) + "^a with a <= " + std::to_string(cap) +
                    " lies in the ideal");
}

PowerMembership power_membership(std::size_t var, const GroebnerBasis& gb) {
  return power_membership(var, gb, default_power_cap(gb));
}

UnivariateMembership univariate_membership(std::size_t var, const GroebnerBasis& gb) {
  QuotientBasis qb = quotient_monomial_basis(gb);
  if (!qb.finite) throw CapExceeded("quotient is not finite-dimensional");
  std::map<Exponents, std::size_t> pos;
  for (std::size_t i = 0; i < qb.monomials.size(); ++i) pos[qb.monomials[i]] = i;
  const std::size_t dim = qb.monomials.size();
  Poly v = Poly::var(gb.ctx, var);
  std::vector<std::vector<Rational>> cols;
  Poly pw(gb.ctx, 1);
  for (std::size_t k = 0; k <= dim; ++k) {
    Poly nf = normal_form(pw, gb);
    std::vector<Rational> col(dim, 0);
    for (const auto& [e, c] : nf.terms()) col[pos.at(e)] = c;
    // does col lie in the span of previous columns?
    DenseMatrix a = dense_zero(dim, k + 1);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < k; ++j) a[i][j] = cols[j][i];
      a[i][k] = col[i];
    }
    auto ker = kernel_basis(a, k + 1);
    if (!ker.empty()) {
      // the kernel vector has last entry nonzero since earlier columns are independent
      const auto& kv = ker.front();
      Rational lead = kv[k];
      Poly p(gb.ctx, 0);
      Poly vp(gb.ctx, 1);
      for (std::size_t j = 0; j <= k; ++j) {
        p += vp * (kv[j] / lead);
        vp = vp * v;
      }
      Membership m = membership_with_cofactors(p, gb);
      if (!m.remainder.is_zero()) throw std::logic_error("univariate membership failed");
      return {p, m.cofactors};
    }
    cols.push_back(col);
    pw = pw * v;
  }
  throw std::logic_error("no univariate relation found");
}

}  // namespace lgmf
