#pragma once

#include <map>
#include <vector>

#include "lgmf/mf.hpp"
#include "lgmf/signs.hpp"

namespace lgmf {

// Koszul factorisation of W(x) - W(x') on the exterior algebra in theta_1..theta_n:
// d = sum_i d^sigma_[i] W theta_i + sum_i (x_s(i) - x'_s(i)) theta_i^*,
// where d^sigma_[i] primes the variables in the order sigma.  The basis is
// ordered_subsets(n) with parity |S|.  As a 1-morphism it runs from the
// primed block (source) to the unprimed block (target).
struct KoszulUnit {
  Ctx ctx;
  PairBlock block;
  std::vector<std::size_t> sigma;
  Poly W;  // in the unprimed variables
  std::vector<Subset> subsets;
  MatrixFactorisation mf;

  std::size_t n() const { return block.size(); }
  std::size_t position(Subset s) const;
  // d^sigma_[i] f
  Poly difference(const Poly& f, std::size_t i) const;
  std::vector<std::size_t> unprimed() const;
  std::vector<std::size_t> primed() const;
  // x' -> x
  Poly contract(const Poly& f) const;
};

KoszulUnit koszul_unit(const Poly& W, const PairBlock& block, std::vector<std::size_t> sigma = {});
// W over its own ring, doubled to x, x'
KoszulUnit koszul_unit(const Poly& W, std::vector<std::size_t> sigma = {});

using KoszulElement = std::map<Subset, Poly>;

KoszulElement wedge(const KoszulElement& a, const KoszulElement& b);
std::vector<Poly> to_vector(const KoszulUnit& u, const KoszulElement& a);
KoszulElement to_element(const KoszulUnit& u, const std::vector<Poly>& v);
KoszulElement delta_plus(const KoszulUnit& u, const KoszulElement& a);
KoszulElement delta_minus(const KoszulUnit& u, const KoszulElement& a);

// pi: keep theta_0 and set x' = x
Poly stab_pi(const KoszulUnit& u, const KoszulElement& a);
// coefficient of theta_1 ... theta_n
Poly epsilon(const KoszulUnit& u, const KoszulElement& a);

// coefficient * df_1 ... df_p in the normalised bar complex, coefficient in R (x) R
struct BarTerm {
  Poly coefficient;
  std::vector<Poly> forms;
};
using BarChain = std::vector<BarTerm>;

KoszulElement psi(const KoszulUnit& u, const BarTerm& t);
KoszulElement psi(const KoszulUnit& u, const BarChain& c);
// theta_{i_1..i_p} -> sum over sigma of (-1)^sigma dx_{i_s(1)} ... dx_{i_s(p)}
BarChain phi(const KoszulUnit& u, const KoszulElement& a);
BarChain shuffle(const BarTerm& a, const BarTerm& b);

// Lift of a closed even phi: Y -> R, given by values phi(e_j) in the unprimed
// variables, to Y -> Delta with pi o lift = phi.  Y is a factorisation of
// W(x) - W(x') in u's ring.
Morphism lift_to_diagonal(const KoszulUnit& u, const MatrixFactorisation& Y, const std::vector<Poly>& values);
// Closedness of phi: Y -> R, i.e. phi o d_Y = 0 after x' = x.
bool is_closed_to_ring(const KoszulUnit& u, const MatrixFactorisation& Y, const std::vector<Poly>& values);

// X (x) Delta (right) or Delta (x) X (left) with the unit glued to the
// acted-on side of X through fresh inner variables.  X keeps its own
// variables; the unit pairs (inner, outer) on the right and (outer, inner)
// on the left.
enum class Side { Left, Right };

struct UnitAction {
  Side side = Side::Right;
  MatrixFactorisation base;     // X over the big ring
  MatrixFactorisation glued;    // the copy of X inside the product
  KoszulUnit unit;
  MatrixFactorisation product;
  std::vector<std::size_t> inner;
  std::vector<std::size_t> outer;
  PolyMatrix inverse;           // rho^-1 or lambda^-1: base -> product

  // inner -> outer
  Poly contract(const Poly& f) const;
  // product index of (e_j, theta_S)
  std::size_t index(std::size_t j, Subset s) const;
  // rho or lambda on a coefficient vector over the product basis
  std::vector<Poly> apply(const std::vector<Poly>& v) const;
  Morphism inverse_morphism() const;
  // d_X o act = act o d_product on every basis vector
  bool action_is_closed() const;
  // act o act^-1 (should be the identity)
  PolyMatrix retraction() const;
};

// X is first moved to a ring with fresh inner variables.
UnitAction unit_action_right(const MatrixFactorisation& X, std::vector<std::size_t> sigma = {});
UnitAction unit_action_left(const MatrixFactorisation& X, std::vector<std::size_t> sigma = {});
// X already lives in a ring containing the inner variables.
UnitAction unit_action_right(const MatrixFactorisation& X, const std::vector<std::size_t>& inner,
                             std::vector<std::size_t> sigma);
UnitAction unit_action_left(const MatrixFactorisation& X, const std::vector<std::size_t>& inner,
                            std::vector<std::size_t> sigma);

// Homological perturbation of the Koszul contraction of the unit: h is the
// contraction of (product, 1 (x) delta_-) onto base, H = sum (h delta)^k h its
// perturbation, so that act^-1 o act - 1 = d H + H d.
std::vector<Poly> koszul_contraction(const UnitAction& a, const std::vector<Poly>& v);
std::vector<Poly> reversed_homotopy(const UnitAction& a, const std::vector<Poly>& v);
// sum (h delta)^k applied to the inclusion of e_i
PolyMatrix perturbed_inclusion(const UnitAction& a);

struct ReversedCompositeCheck {
  bool inclusion_matches = false;  // perturbed inclusion == act^-1
  bool witness_holds = false;      // d H + H d == act^-1 act - 1 on the checked generators
  std::size_t generators = 0;
  int degree_bound = 0;
};
// Checks on the generators m e_(j, S), m an inner monomial of degree <= bound;
// every map involved is linear over the outer variables.  bound < 0 selects
// default_degree_bound(base, base).
ReversedCompositeCheck reversed_composite_check(const UnitAction& a, int degree_bound = -1);

// xi = rho_{Delta^sigma} o lambda^-1: Delta -> Delta^sigma, as a matrix over
// the ring of u (columns Delta, rows Delta^sigma).
Morphism permute_unit(const KoszulUnit& u, const std::vector<std::size_t>& sigma);

}  // namespace lgmf
