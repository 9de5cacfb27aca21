#pragma once

#include <random>
#include <vector>

#include "lgmf/ring.hpp"

namespace lgmf::testing {

// Random polynomial in the listed variables with small integer coefficients.
inline Poly random_poly(std::mt19937& rng, const Ctx& ctx, const std::vector<std::size_t>& vars, int max_degree,
                        int max_terms = 4) {
  std::uniform_int_distribution<int> coeff(-3, 3), nterms(0, max_terms), deg(0, max_degree);
  std::uniform_int_distribution<std::size_t> pick(0, vars.empty() ? 0 : vars.size() - 1);
  Poly p(ctx, 0);
  int t = nterms(rng);
  for (int k = 0; k < t; ++k) {
    Exponents e(ctx->size(), 0);
    int d = deg(rng);
    for (int j = 0; j < d && !vars.empty(); ++j) e[vars[pick(rng)]]++;
    p.add_term(e, coeff(rng));
  }
  return p;
}

inline std::vector<std::size_t> range(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace lgmf::testing
