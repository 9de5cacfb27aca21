#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lgmf/ideal.hpp"
#include "lgmf/matrix.hpp"
#include "lgmf/ring.hpp"

namespace lgmf {

struct BasisElement {
  std::string label;
  int parity = 0;
};

class InvalidFactorisation : public std::runtime_error {
 public:
  InvalidFactorisation(const std::string& msg, std::vector<std::string> offending)
      : std::runtime_error(msg), offending_(std::move(offending)) {}
  const std::vector<std::string>& offending() const { return offending_; }

 private:
  std::vector<std::string> offending_;
};

// A free Z2-graded module with odd differential d, d^2 = potential * 1.
// As a 1-morphism it goes from (source_vars, source_potential) to
// (target_vars, target_potential) and potential = target - source.
struct MatrixFactorisation {
  Ctx ctx;
  Poly potential;
  std::vector<BasisElement> basis;
  PolyMatrix d;
  std::vector<std::size_t> source_vars;
  std::vector<std::size_t> target_vars;
  Poly source_potential;
  Poly target_potential;

  std::size_t rank() const { return basis.size(); }
  std::size_t rank_even() const;
  std::size_t rank_odd() const;
  int parity(std::size_t i) const { return basis.at(i).parity; }
  // d restricted to even -> odd (rows odd, columns even) and odd -> even
  PolyMatrix d0() const;
  PolyMatrix d1() const;
  std::vector<std::size_t> even_indices() const;
  std::vector<std::size_t> odd_indices() const;
  bool is_valid() const;
  // entries of d^2 - potential * 1 and parity violations; empty if valid
  std::vector<std::string> defects() const;
  void validate() const;
};

// Even basis e0.., odd basis f0.., d = [[0, d1], [d0, 0]].  By default the
// factorisation is read as a boundary condition: every variable on the
// target side, potential W.
MatrixFactorisation new_mf(const Ctx& ctx, const Poly& W, const PolyMatrix& d0, const PolyMatrix& d1);
MatrixFactorisation make_mf(const Ctx& ctx, const Poly& W, std::vector<BasisElement> basis, PolyMatrix d);

// Declare the 1-morphism sides; checks potential == V - W.
MatrixFactorisation with_sides(MatrixFactorisation X, std::vector<std::size_t> source_vars, const Poly& W,
                               std::vector<std::size_t> target_vars, const Poly& V);

// Move a factorisation into a larger ring, renaming variables by name.
MatrixFactorisation embed(const MatrixFactorisation& X, const Ctx& target,
                          const std::vector<std::pair<std::string, std::string>>& renaming = {});

MatrixFactorisation dual(const MatrixFactorisation& X);
MatrixFactorisation shift(const MatrixFactorisation& X, int k);
// Y after X: basis pairs (y, x) with index y * rank(X) + x; both in one ring.
MatrixFactorisation tensor(const MatrixFactorisation& Y, const MatrixFactorisation& X);
// the rank-one factorisation of zero with d = 0
MatrixFactorisation trivial_mf(const Ctx& ctx);

struct Morphism {
  MatrixFactorisation source;
  MatrixFactorisation target;
  int parity = 0;
  PolyMatrix map;  // rows index target basis, columns source basis

  bool is_homogeneous() const;
  PolyMatrix differential() const;
  bool is_closed() const { return differential().is_zero(); }
};

// d_Y phi - (-1)^{|phi|} phi d_X
PolyMatrix hom_differential(const MatrixFactorisation& X, const MatrixFactorisation& Y, const PolyMatrix& phi,
                            int parity);
// true if phi only has entries between basis elements of the given relative parity
bool has_parity(const MatrixFactorisation& X, const MatrixFactorisation& Y, const PolyMatrix& phi, int parity);

Poly supertrace(const MatrixFactorisation& X, const PolyMatrix& phi);
Poly supertrace(const Morphism& phi);

struct Homotopy {
  PolyMatrix h;
  int parity = 1;
  int degree_bound = 0;
};

int default_degree_bound(const MatrixFactorisation& X, const MatrixFactorisation& Y);

// Searches an h of parity |phi|+1 with d_Y h - (-1)^{|h|} h d_X = phi whose
// entries have degree <= degree_bound in the variables of the data.
std::optional<Homotopy> null_homotopy_search(const MatrixFactorisation& X, const MatrixFactorisation& Y,
                                             const PolyMatrix& phi, int parity, int degree_bound,
                                             std::vector<std::size_t> variables = {});
std::optional<Homotopy> null_homotopy_search(const Morphism& phi, int degree_bound);
// phi ~ psi via a witness for phi - psi
std::optional<Homotopy> homotopy_between(const MatrixFactorisation& X, const MatrixFactorisation& Y,
                                         const PolyMatrix& phi, const PolyMatrix& psi, int degree_bound);

struct NullHomotopy {
  std::size_t variable = 0;
  PolyMatrix matrix;
  Poly commutator;  // d h + h d
};

// -d_v(d) for source variables and +d_v(d) for target variables; both
// satisfy [d, h] = d_v(W) resp. d_v(V).  Each is verified.
std::vector<NullHomotopy> default_null_homotopies(const MatrixFactorisation& X, const std::vector<std::size_t>& vars);
// Throws unless [d, h] = f * 1.
void verify_null_homotopy(const MatrixFactorisation& X, const PolyMatrix& h, const Poly& f);

struct ReducedFactorisation {
  MatrixFactorisation mf;                // basis (monomial, e_j), index mono * rank + j
  std::vector<Exponents> monomials;      // standard monomials of R/(fs)
  GroebnerBasis gb;
  std::size_t base_rank = 0;
  // coordinates of an element of Z (coefficients over Z's basis) in the quotient
  std::vector<Poly> project(const std::vector<Poly>& element) const;
};

// Z (x) R/(fs) for fs in the given variables; the other variables remain.
ReducedFactorisation finite_rank_reduction(const MatrixFactorisation& Z, const std::vector<Poly>& fs,
                                           std::vector<std::size_t> variables = {});

}  // namespace lgmf
