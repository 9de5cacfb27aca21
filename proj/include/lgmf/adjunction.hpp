#pragma once

#include <optional>
#include <vector>

#include "lgmf/mf.hpp"
#include "lgmf/unit.hpp"

namespace lgmf {

// X is a defect from (x, W) on its source side to (z, V) on its target side,
// n = |x|, m = |z|.
//   X^dagger = R[n] (x) X^v : parities |e_i| + n, d = (-1)^n d_{X^v}
//   ^dagger X = X^v (x) S[m] : parities |e_i| + m, d = d_{X^v}
// Both are defects from z to x.
MatrixFactorisation right_adjoint(const MatrixFactorisation& X);
MatrixFactorisation left_adjoint(const MatrixFactorisation& X);

struct AdjointData {
  MatrixFactorisation base;
  MatrixFactorisation right;
  MatrixFactorisation left;
  std::size_t n = 0;
  std::size_t m = 0;
};
AdjointData adjoints(const MatrixFactorisation& X);

// X over a ring with one extra copy of each of its variables (x^, z^).  Copies
// of X, its adjoints and the units are addressed by which variables stand for
// x and for z.
struct AdjunctionRing {
  Ctx ctx;
  MatrixFactorisation X;  // original names
  std::vector<std::size_t> x, z, xh, zh;
  Poly W, V;              // in x and in z

  MatrixFactorisation copy(const std::vector<std::size_t>& xs, const std::vector<std::size_t>& zs) const;
  MatrixFactorisation right_copy(const std::vector<std::size_t>& xs, const std::vector<std::size_t>& zs) const;
  MatrixFactorisation left_copy(const std::vector<std::size_t>& xs, const std::vector<std::size_t>& zs) const;
  // rename x -> xs, z -> zs
  Poly role(const Poly& f, const std::vector<std::size_t>& xs, const std::vector<std::size_t>& zs) const;
  // Delta_W(a, a') and Delta_V(c, c')
  KoszulUnit unit_W(const std::vector<std::size_t>& a, const std::vector<std::size_t>& ap) const;
  KoszulUnit unit_V(const std::vector<std::size_t>& c, const std::vector<std::size_t>& cp) const;
};
AdjunctionRing adjunction_ring(const MatrixFactorisation& X);

// The null-homotopies entering Lambda^(x) = lambda_1 ... lambda_n and
// Lambda^(z) = mu_1 ... mu_m, with [d, lambda_i] = d_{x_i} W and
// [d, mu_j] = d_{z_j} V, as matrices over X's own ring.
struct HomotopyChoice {
  std::vector<PolyMatrix> lambda;
  std::vector<PolyMatrix> mu;
};
// lambda_i = -d_{x_i} d_X, mu_j = d_{z_j} d_X
HomotopyChoice default_homotopies(const MatrixFactorisation& X);
// throws unless every matrix is a null-homotopy of the right function
void verify_homotopies(const MatrixFactorisation& X, const HomotopyChoice& h);

// A map that factors through source (x) k[vars]/J, J the Jacobian ideal of
// the potential in the integrated variables; `map` is the resulting finite
// matrix (rows target basis, columns reduced basis).
struct ResidueMorphism {
  MatrixFactorisation full_source;
  ReducedFactorisation source;
  MatrixFactorisation target;
  PolyMatrix map;

  std::vector<Poly> apply(const std::vector<Poly>& v) const { return map.apply(source.project(v)); }
  bool is_closed() const;
  PolyMatrix differential() const;
};

// coev~: Delta_W(a, a') -> X^dagger(a, b) (x) X(b, a')
Morphism coev_tilde(const AdjunctionRing& A, const std::vector<std::size_t>& a, const std::vector<std::size_t>& ap,
                    const std::vector<std::size_t>& b);
// coev: Delta_V(c, c') -> X(c, a) (x) ^dagger X(a, c')
Morphism coev(const AdjunctionRing& A, const std::vector<std::size_t>& c, const std::vector<std::size_t>& a,
              const std::vector<std::size_t>& cp);
// ev~: X(c, a) (x) X^dagger(a, c') -> Delta_V(c, c'), residue over a
ResidueMorphism ev_tilde(const AdjunctionRing& A, const std::vector<std::size_t>& c, const std::vector<std::size_t>& a,
                         const std::vector<std::size_t>& cp, const HomotopyChoice& h);
// ev: ^dagger X(a, c) (x) X(c, a') -> Delta_W(a, a'), residue over c
ResidueMorphism ev(const AdjunctionRing& A, const std::vector<std::size_t>& a, const std::vector<std::size_t>& c,
                   const std::vector<std::size_t>& ap, const HomotopyChoice& h);

// The four maps in the standard naming: coev~ on Delta_W(x, x^), coev on
// Delta_V(z, z^), ev~ on X(z, x) (x) X^dagger(x, z^), ev on ^dagger X(x, z) (x) X(z, x^).
struct EvCoevMaps {
  AdjunctionRing ring;
  HomotopyChoice homotopies;
  Morphism coev_tilde;
  Morphism coev;
  ResidueMorphism ev_tilde;
  ResidueMorphism ev;
};
EvCoevMaps ev_coev(const MatrixFactorisation& X, std::optional<HomotopyChoice> h = std::nullopt);

enum class ZorroVariant {
  Right,  // lambda o (ev~ (x) 1) o (1 (x) coev~) o rho^-1
  Left,   // rho o (1 (x) ev) o (coev (x) 1) o lambda^-1
};

struct ZorroResult {
  PolyMatrix composite;  // over X's own ring
  std::optional<Homotopy> witness;  // for composite - 1
  int degree_bound = 0;
};
PolyMatrix zorro_composite(const MatrixFactorisation& X, ZorroVariant variant,
                           std::optional<HomotopyChoice> h = std::nullopt);
// bound < 0 selects default_degree_bound(X, X)
ZorroResult zorro_check(const MatrixFactorisation& X, ZorroVariant variant, int degree_bound = -1);

// Witness search for a difference of two residue morphisms with a common
// reduced source, over the reduced source.
std::optional<Homotopy> residue_homotopy(const ResidueMorphism& f, const ResidueMorphism& g, int degree_bound);
std::optional<Homotopy> residue_null_homotopy(const ResidueMorphism& f, const PolyMatrix& map, int degree_bound);

// Naturality for a closed even phi: X -> Y with X, Y defects between the same
// theories (both given over one ring).  Each entry is the witness of the
// corresponding square, if found.
struct NaturalityReport {
  std::optional<Homotopy> coev_square;  // (phi (x) 1) coev_X ~ (1 (x) ^dagger phi) coev_Y
  std::optional<Homotopy> ev_square;    // ev_Y (1 (x) phi) ~ ev_X (^dagger phi (x) 1)
};
NaturalityReport naturality_check(const MatrixFactorisation& X, const MatrixFactorisation& Y, const PolyMatrix& phi,
                                  int degree_bound = -1);

// ^dagger phi: ^dagger Y -> ^dagger X, the graded transpose of phi
PolyMatrix left_adjoint_map(const MatrixFactorisation& X, const MatrixFactorisation& Y, const PolyMatrix& phi,
                            int parity);

}  // namespace lgmf
