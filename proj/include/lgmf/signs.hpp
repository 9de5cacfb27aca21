#pragma once

#include <cstdint>
#include <vector>

// Sign conventions shared by every module.
//
// Exterior algebra: theta-subsets are bitmasks; the monomial theta_S means
// theta_{s_1} ... theta_{s_p} with s_1 < ... < s_p.  theta_i wedge acts from
// the left and theta_i^* is the left derivation with theta_i^*(theta_j) = delta_ij.
//
// Graded tensors: (f (x) g)(a (x) b) = (-1)^{|g||a|} f(a) (x) g(b), and the
// tensor differential is d (x) 1 + 1 (x) d with that rule.
//
// Duals: d_{X^v} = [[0, (d^0)^T], [-(d^1)^T, 0]] in (even, odd) blocks, i.e.
// the entry from e_j^* to e_k^* is -(-1)^{|e_j|} d_{jk}.
//
// Shift: X[1] swaps parities and negates d.

namespace lgmf {

using Subset = std::uint32_t;

inline int sign_of(long k) { return (k % 2 == 0) ? 1 : -1; }
inline long binom2(long l) { return l * (l - 1) / 2; }
int popcount(Subset s);
bool contains(Subset s, std::size_t i);
std::vector<std::size_t> elements(Subset s);
Subset subset_of(const std::vector<std::size_t>& elems);

// all subsets of {0..n-1}, ordered by cardinality then lexicographically
std::vector<Subset> ordered_subsets(std::size_t n);
std::size_t subset_position(Subset s, std::size_t n);

// theta_i wedge theta_S = wedge_sign(i, S) theta_{S+i}; 0 if i in S
int wedge_sign(std::size_t i, Subset s);
// theta_A wedge theta_B = wedge_sign(A, B) theta_{A+B}; 0 if they meet
int wedge_sign(Subset a, Subset b);
// theta_i^*(theta_S) = contraction_sign(i, S) theta_{S-i}; 0 if i not in S
int contraction_sign(std::size_t i, Subset s);

// sign of a permutation given as images of 0..n-1
int permutation_sign(const std::vector<std::size_t>& perm);

}  // namespace lgmf
