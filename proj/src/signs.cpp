#include "lgmf/signs.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace lgmf {

int popcount(Subset s) { return std::popcount(s); }

bool contains(Subset s, std::size_t i) { return (s >> i) & 1u; }

std::vector<std::size_t> elements(Subset s) {
  std::vector<std::size_t> r;
  for (std::size_t i = 0; s >> i; ++i)
    if (contains(s, i)) r.push_back(i);
  return r;
}

Subset subset_of(const std::vector<std::size_t>& elems) {
  Subset s = 0;
  for (auto e : elems) {
    if (e >= 32) throw std::out_of_range("too many exterior generators");
    s |= Subset(1) << e;
  }
  return s;
}

std::vector<Subset> ordered_subsets(std::size_t n) {
  if (n > 20) throw std::out_of_range("too many exterior generators");
  std::vector<Subset> all;
  for (Subset s = 0; s < (Subset(1) << n); ++s) all.push_back(s);
  std::sort(all.begin(), all.end(), [](Subset a, Subset b) {
    int pa = popcount(a), pb = popcount(b);
    if (pa != pb) return pa < pb;
    return elements(a) < elements(b);
  });
  return all;
}

std::size_t subset_position(Subset s, std::size_t n) {
  auto all = ordered_subsets(n);
  auto it = std::find(all.begin(), all.end(), s);
  if (it == all.end()) throw std::out_of_range("subset out of range");
  return static_cast<std::size_t>(it - all.begin());
}

int wedge_sign(std::size_t i, Subset s) {
  if (contains(s, i)) return 0;
  Subset below = s & ((Subset(1) << i) - 1);
  return sign_of(popcount(below));
}

int wedge_sign(Subset a, Subset b) {
  if (a & b) return 0;
  long inversions = 0;
  for (auto i : elements(a)) inversions += popcount(b & ((Subset(1) << i) - 1));
  return sign_of(inversions);
}

int contraction_sign(std::size_t i, Subset s) {
  if (!contains(s, i)) return 0;
  Subset below = s & ((Subset(1) << i) - 1);
  return sign_of(popcount(below));
}

int permutation_sign(const std::vector<std::size_t>& perm) {
  long inv = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inv;
  return sign_of(inv);
}

}  // namespace lgmf
