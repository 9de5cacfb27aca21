#include "lgmf/residue.hpp"

#include <algorithm>
#include <stdexcept>

namespace lgmf {

namespace {

Exponents restrict_to(const Exponents& e, const std::vector<std::size_t>& vars) {
  Exponents r(vars.size());
  for (std::size_t k = 0; k < vars.size(); ++k) r[k] = e[vars[k]];
  return r;
}

Exponents without(const Exponents& e, const std::vector<std::size_t>& vars) {
  Exponents r = e;
  for (auto v : vars) r[v] = 0;
  return r;
}

Ctx context_of(const Poly& g, const std::vector<Poly>& fs) {
  if (g.context()) return g.context();
  for (const auto& f : fs)
    if (f.context()) return f.context();
  throw std::invalid_argument("residue needs a polynomial ring");
}

}  // namespace

Poly monomial_residue(const Poly& g, const std::vector<int>& exponents, const std::vector<std::size_t>& vars) {
  if (exponents.size() != vars.size()) throw std::invalid_argument("one exponent per variable expected");
  for (int a : exponents)
    if (a < 1) throw std::invalid_argument("residue exponents must be positive");
  Poly r(g.context(), 0);
  for (const auto& [e, c] : g.terms()) {
    bool hit = true;
    for (std::size_t k = 0; k < vars.size() && hit; ++k)
      if (e[vars[k]] != exponents[k] - 1) hit = false;
    if (hit) r.add_term(without(e, vars), c);
  }
  return r;
}

ResiduePlan::ResiduePlan(const std::vector<Poly>& denominators, const std::vector<std::size_t>& vars)
    : vars_(vars), dens_(denominators) {
  if (denominators.size() != vars.size())
    throw std::invalid_argument("number of denominators must equal number of integration variables");
  if (vars.empty()) {
    det_ = Poly(1);
    return;
  }
  ctx_ = context_of(Poly(), denominators);
  for (auto& d : dens_) d = d.with_context(ctx_);
  std::vector<bool> is_var(ctx_->size(), false);
  for (auto v : vars) is_var.at(v) = true;
  for (const auto& d : dens_)
    for (const auto& [e, c] : d.terms())
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] && !is_var[i])
          throw std::invalid_argument("residue denominator involves parameter variable " + ctx_->name(i));
  gb_ = groebner(dens_, {}, vars_);
  QuotientBasis qb = quotient_monomial_basis(gb_);
  if (!qb.finite) throw CapExceeded("residue denominators do not generate a finite-colength ideal");
  const std::size_t n = vars.size();
  C_ = PolyMatrix(n, n, ctx_);
  bool all_powers = true;
  int cap = default_power_cap(gb_);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Poly> cof;
    Poly rel;
    try {
      PowerMembership pm = power_membership(vars[i], gb_, cap);
      rel = Poly::var(ctx_, vars[i]).pow(pm.exponent);
      cof = pm.cofactors;
      powers_.push_back(pm.exponent);
    } catch (const CapExceeded&) {
      UnivariateMembership um = univariate_membership(vars[i], gb_);
      rel = um.poly;
      cof = um.cofactors;
      all_powers = false;
    }
    relations_.push_back(rel);
    degrees_.push_back(rel.degree());
    for (std::size_t j = 0; j < n; ++j) C_(i, j) = cof[j];
  }
  if (!all_powers) powers_.clear();
  det_ = determinant(C_).with_context(ctx_);
  for (const auto& [e, c] : det_.terms()) det_by_vars_[restrict_to(e, vars_)].emplace_back(e, c);
}

Poly ResiduePlan::reduce(const Poly& h) const {
  // h modulo the monic univariate relations, variable by variable
  Poly cur = h;
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    std::size_t v = vars_[k];
    int N = degrees_[k];
    Poly tail = Poly::var(ctx_, v).pow(N) - relations_[k];  // x^N == tail
    while (true) {
      Poly next(ctx_, 0);
      bool changed = false;
      for (const auto& [e, c] : cur.terms()) {
        if (e[v] < N) {
          next.add_term(e, c);
          continue;
        }
        Exponents f = e;
        f[v] -= N;
        next += Poly::monomial(ctx_, f, c) * tail;
        changed = true;
      }
      cur = std::move(next);
      if (!changed) break;
    }
  }
  return cur;
}

Poly ResiduePlan::operator()(const Poly& numerator) const {
  if (vars_.empty()) return numerator;
  Poly g = numerator.with_context(ctx_);
  if (!same_context(g.context(), ctx_)) throw ContextMismatch("numerator from a different ring");
  Poly r(ctx_, 0);
  if (!powers_.empty()) {
    // coefficient of x^{a-1} in det(C) * g without forming the product
    Exponents target(vars_.size());
    for (std::size_t k = 0; k < vars_.size(); ++k) target[k] = powers_[k] - 1;
    Exponents need(vars_.size());
    for (const auto& [e, c] : g.terms()) {
      bool ok = true;
      for (std::size_t k = 0; k < vars_.size(); ++k) {
        need[k] = target[k] - e[vars_[k]];
        if (need[k] < 0) ok = false;
      }
      if (!ok) continue;
      auto it = det_by_vars_.find(need);
      if (it == det_by_vars_.end()) continue;
      Exponents rest = without(e, vars_);
      for (const auto& [de, dc] : it->second) {
        Exponents f = rest;
        for (std::size_t i = 0; i < f.size(); ++i) f[i] += de[i];
        for (auto v : vars_) f[v] = 0;
        r.add_term(f, c * dc);
      }
    }
    return r;
  }
  Poly h = reduce(det_ * reduce(g));
  std::vector<int> a;
  for (int d : degrees_) a.push_back(d);
  return monomial_residue(h, a, vars_);
}

Poly grothendieck_residue(const ResidueQuery& q) {
  ResiduePlan plan(q.denominators, q.integration_vars);
  return plan(q.numerator);
}

Poly jacobian_delta(const std::vector<Poly>& fs, const PairBlock& block) {
  if (fs.size() != block.size()) throw std::invalid_argument("jacobian_delta needs one polynomial per variable");
  const std::size_t n = fs.size();
  PolyMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = divided_difference(fs[j], block, i);
  return determinant(m);
}

TransitivityReport residue_transitivity_check(const Poly& g, const std::vector<std::size_t>& inner_vars,
                                              const std::vector<std::size_t>& outer_vars,
                                              const std::vector<Poly>& fs_inner,
                                              const std::vector<Poly>& fs_outer) {
  TransitivityReport rep;
  std::vector<std::size_t> all = inner_vars;
  all.insert(all.end(), outer_vars.begin(), outer_vars.end());
  std::vector<Poly> fs = fs_inner;
  fs.insert(fs.end(), fs_outer.begin(), fs_outer.end());
  rep.total = ResiduePlan(fs, all)(g);
  Poly inner = ResiduePlan(fs_inner, inner_vars)(g);
  rep.nested = ResiduePlan(fs_outer, outer_vars)(inner);
  rep.equal = rep.total == rep.nested;
  return rep;
}

}  // namespace lgmf
