#pragma once

#include <map>
#include <vector>

#include "lgmf/ideal.hpp"
#include "lgmf/matrix.hpp"

namespace lgmf {

struct ResidueQuery {
  Poly numerator;
  std::vector<Poly> denominators;
  std::vector<std::size_t> integration_vars;
  // informational; every context variable outside integration_vars is a parameter
  std::vector<std::size_t> parameter_vars;
};

// Coefficient of prod x_i^{a_i - 1} in g, as a polynomial in the other variables.
Poly monomial_residue(const Poly& g, const std::vector<int>& exponents, const std::vector<std::size_t>& vars);

// Precomputed transformation data for fixed denominators: univariate
// relations p_i(x_i) = sum_j C_ij f_j and det(C).
class ResiduePlan {
 public:
  ResiduePlan(const std::vector<Poly>& denominators, const std::vector<std::size_t>& vars);

  Poly operator()(const Poly& numerator) const;

  const GroebnerBasis& groebner_basis() const { return gb_; }
  const PolyMatrix& transition() const { return C_; }
  const Poly& transition_determinant() const { return det_; }
  // exponents a_i when every relation is a pure power, empty otherwise
  const std::vector<int>& power_exponents() const { return powers_; }
  const std::vector<std::size_t>& variables() const { return vars_; }

 private:
  Poly reduce(const Poly& h) const;

  Ctx ctx_;
  std::vector<std::size_t> vars_;
  std::vector<Poly> dens_;
  GroebnerBasis gb_;
  std::vector<Poly> relations_;  // monic univariate p_i(x_i)
  std::vector<int> degrees_;
  std::vector<int> powers_;
  PolyMatrix C_;
  Poly det_;
  std::map<Exponents, std::vector<std::pair<Exponents, Rational>>> det_by_vars_;
};

Poly grothendieck_residue(const ResidueQuery& q);

// det(d_{[i]} f_j) over the doubled block.
Poly jacobian_delta(const std::vector<Poly>& fs, const PairBlock& block);

struct TransitivityReport {
  Poly total;   // residue over all variables
  Poly nested;  // outer residue of the inner residue
  bool equal = false;
};

TransitivityReport residue_transitivity_check(const Poly& g, const std::vector<std::size_t>& inner_vars,
                                              const std::vector<std::size_t>& outer_vars,
                                              const std::vector<Poly>& fs_inner,
                                              const std::vector<Poly>& fs_outer);

}  // namespace lgmf
