#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lgmf/linalg.hpp"
#include "lgmf/mf.hpp"
#include "lgmf/residue.hpp"
#include "lgmf/unit.hpp"

namespace lgmf {

// k[vars]/(d W) inside a larger context; other variables must not occur in
// its elements.
struct JacobiRing {
  Ctx ctx;
  std::vector<std::size_t> vars;
  Poly W;
  std::vector<Poly> partials;
  GroebnerBasis gb;
  std::vector<Exponents> basis;  // standard monomials, ascending degree

  std::size_t dimension() const { return basis.size(); }
  Poly reduce(const Poly& p) const;
  std::vector<Rational> coordinates(const Poly& p) const;
  Poly element(const std::vector<Rational>& coords) const;
  Poly basis_element(std::size_t i) const;
};

// throws std::invalid_argument if W is not a potential in vars
JacobiRing jacobi_ring(const Poly& W, const std::vector<std::size_t>& vars);
JacobiRing jacobi_ring(const Poly& W);

Poly jacobi_class(const Poly& p, const JacobiRing& J);

// columns are coordinates of the images of the source basis
struct DefectOperator {
  JacobiRing source;
  JacobiRing target;
  DenseMatrix matrix;  // target.dimension() x source.dimension()
  std::vector<std::string> warnings;

  Poly apply(const Poly& p) const;
};

// X a defect from (x, W) to (z, V), n = |x|, m = |z|.  Phi defaults to 1.
//   right: Jac(W) -> Jac(V), (-1)^C(m+1,2) Res_x[psi str(Phi dx1 d..dxn d dz1 d..dzm d) dx / dW]
//   left:  Jac(V) -> Jac(W), (-1)^C(n+1,2) Res_z[phi str(...) dz / dV]
Poly defect_action_right(const MatrixFactorisation& X, const Poly& psi,
                         const std::optional<PolyMatrix>& Phi = std::nullopt);
Poly defect_action_left(const MatrixFactorisation& X, const Poly& phi,
                        const std::optional<PolyMatrix>& Phi = std::nullopt);
// images of the basis are evaluated on up to `jobs` threads
DefectOperator defect_operator(const MatrixFactorisation& X, Side side,
                               const std::optional<PolyMatrix>& Phi = std::nullopt, unsigned jobs = 1);
Poly quantum_dim(const MatrixFactorisation& X, Side side);

// str(Phi dx1 d .. dxn d dz1 d .. dzm d), derivatives ordered by X's source
// then target variables
Poly defect_integrand(const MatrixFactorisation& X, const std::optional<PolyMatrix>& Phi = std::nullopt);

// X a factorisation of W over k[x] with every variable on the target side.
Poly boundary_bulk(const MatrixFactorisation& X, const PolyMatrix& psi);
Poly chern_character(const MatrixFactorisation& X);
PolyMatrix bulk_boundary(const MatrixFactorisation& X, const Poly& phi);
// a null-homotopy of phi * 1 when phi lies in (dW), built from d_v(d)
std::optional<Homotopy> bulk_boundary_witness(const MatrixFactorisation& X, const Poly& phi);

// Res[phi1 phi2 dx / dW]
Rational bulk_pairing(const Poly& phi1, const Poly& phi2, const JacobiRing& J);
DenseMatrix bulk_gram(const JacobiRing& J);
// Res[str(psi1 psi2 dx1 d .. dxn d) dx / dW]
Rational kapustin_li_pairing(const PolyMatrix& psi1, const PolyMatrix& psi2, const MatrixFactorisation& X);

// Degree-truncated H*Hom(X, Y): cocycles with entries of degree <= bound
// modulo coboundaries of cochains of degree <= bound.
struct HomCohomology {
  MatrixFactorisation X, Y;
  int degree_bound = 0;
  std::vector<PolyMatrix> even, odd;  // representatives
  bool stable = false;               // same dimensions at bound + 1
  std::size_t dim(int parity) const { return parity ? odd.size() : even.size(); }
};
HomCohomology hom_cohomology(const MatrixFactorisation& X, const MatrixFactorisation& Y, int degree_bound);

// coordinates of a cocycle in the representative basis of H^parity, searched
// with cochains of degree <= bound; nullopt if the class is not in the span
std::optional<std::vector<Rational>> cohomology_coordinates(const HomCohomology& H, int parity, const PolyMatrix& alpha,
                                                            int degree_bound);

struct CardyResult {
  Rational lhs, rhs;
  bool equal = false;
  bool stable = false;
  int degree_bound = 0;
  std::vector<std::string> warnings;
};
// bound < 0 selects 2 deg W
CardyResult cardy_check(const MatrixFactorisation& X, const MatrixFactorisation& Y, const PolyMatrix& phi,
                        const PolyMatrix& psi, int degree_bound = -1);

struct Shadow {
  JacobiRing jacobi;
  int parity = 0;
};
Shadow shadow_of_unit(const Poly& W);

// X a defect from (x, W) to (z, V): (-1)^C(m+1,2) Res_z[str(psi dx d.. dz d..) dz / dV] in Jac(W)
Poly generalized_boundary_bulk(const MatrixFactorisation& X, const PolyMatrix& psi);

}  // namespace lgmf
