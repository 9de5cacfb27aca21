#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lgmf/ring.hpp"

namespace lgmf {

enum class OrderKind { GradedLex, Lex };

struct MonomialOrder {
  OrderKind kind = OrderKind::GradedLex;
  // true if a is strictly greater than b
  bool greater(const Exponents& a, const Exponents& b) const;
  std::string name() const;
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GroebnerBasis {
  Ctx ctx;
  MonomialOrder order;
  // variables of the ideal's ring; any other context variable is a parameter
  std::vector<std::size_t> variables;
  std::vector<Poly> original_gens;
  // reduced, monic, sorted by leading monomial (smallest first)
  std::vector<Poly> generators;
  // generators[k] = sum_j cofactors[k][j] * original_gens[j]
  std::vector<std::vector<Poly>> cofactors;

  Exponents leading_monomial(std::size_t k) const;
  bool is_unit_ideal() const;
};

GroebnerBasis groebner(const std::vector<Poly>& gens, MonomialOrder order = {},
                       std::vector<std::size_t> variables = {});

struct Division {
  std::vector<Poly> quotients;  // one per gb generator
  Poly remainder;
};

Division divide(const Poly& g, const GroebnerBasis& gb);
Poly normal_form(const Poly& g, const GroebnerBasis& gb);

struct Membership {
  std::vector<Poly> cofactors;  // one per original generator
  Poly remainder;
};

Membership membership_with_cofactors(const Poly& g, const GroebnerBasis& gb);
Membership membership_with_cofactors(const Poly& g, const std::vector<Poly>& gens,
                                     MonomialOrder order = {});

struct QuotientBasis {
  bool finite = false;
  std::vector<Exponents> monomials;        // ascending degree when finite
  std::optional<std::size_t> unbounded;    // variable whose powers all survive
  std::size_t dimension() const { return monomials.size(); }
  int top_degree() const;
};

QuotientBasis quotient_monomial_basis(const GroebnerBasis& gb);

struct PotentialCertificate {
  bool is_potential = false;
  Poly W;
  std::vector<std::size_t> variables;
  std::vector<Poly> partials;
  GroebnerBasis gb;
  QuotientBasis basis;
  std::string witness;  // reason for rejection

  std::size_t jacobi_dimension() const { return basis.dimension(); }
};

// Variables default to all context variables.
PotentialCertificate check_potential(const Poly& W, std::vector<std::size_t> variables = {});

struct PowerMembership {
  int exponent = 0;
  std::vector<Poly> cofactors;  // over the original generators
};

int default_power_cap(const GroebnerBasis& gb);
PowerMembership power_membership(std::size_t var, const GroebnerBasis& gb, int cap);
PowerMembership power_membership(std::size_t var, const GroebnerBasis& gb);

struct UnivariateMembership {
  Poly poly;                    // monic, in the single given variable
  std::vector<Poly> cofactors;  // over the original generators
};

// Minimal monic polynomial of the variable modulo a zero-dimensional ideal.
UnivariateMembership univariate_membership(std::size_t var, const GroebnerBasis& gb);

}  // namespace lgmf
