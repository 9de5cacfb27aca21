#include "lgmf/linalg.hpp"

#include <stdexcept>

namespace lgmf {

bool SparseLinearSystem::add_equation(const SparseRow& row, const Rational& rhs) {
  if (!consistent_) return false;
  std::map<std::size_t, Rational> r;
  for (const auto& [c, v] : row) {
    if (c >= n_) throw std::out_of_range("unknown index out of range");
    if (v == 0) continue;
    auto [it, ins] = r.try_emplace(c, v);
    if (!ins) {
      it->second += v;
      if (it->second == 0) r.erase(it);
    }
  }
  Rational b = rhs;
  auto it = r.begin();
  while (it != r.end()) {
    auto piv = pivots_.find(it->first);
    if (piv == pivots_.end()) {
      ++it;
      continue;
    }
    Rational f = it->second;
    std::size_t col = it->first;
    for (const auto& [c, v] : piv->second.coeffs) {
      auto [jt, ins] = r.try_emplace(c, -f * v);
      if (!ins) {
        jt->second -= f * v;
        if (jt->second == 0) r.erase(jt);
      }
    }
    b -= f * piv->second.rhs;
    it = r.upper_bound(col);
  }
  if (r.empty()) {
    if (b != 0) consistent_ = false;
    return consistent_;
  }
  Rational lead = r.begin()->second;
  for (auto& [c, v] : r) v /= lead;
  b /= lead;
  std::size_t p = r.begin()->first;
  pivots_.emplace(p, PivotRow{std::move(r), b});
  return true;
}

std::optional<std::vector<Rational>> SparseLinearSystem::solve() const {
  if (!consistent_) return std::nullopt;
  std::vector<Rational> x(n_, 0);
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    Rational v = it->second.rhs;
    for (const auto& [c, a] : it->second.coeffs)
      if (c != it->first) v -= a * x[c];
    x[it->first] = v;
  }
  return x;
}

DenseMatrix dense_zero(std::size_t rows, std::size_t cols) {
  return DenseMatrix(rows, std::vector<Rational>(cols, 0));
}

std::vector<std::size_t> rref(DenseMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (m[r][j] != 0) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t dense_rank(DenseMatrix m) { return rref(m).size(); }

std::vector<std::vector<Rational>> kernel_basis(const DenseMatrix& m, std::size_t cols) {
  DenseMatrix a = m;
  auto piv = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<DenseMatrix> dense_inverse(const DenseMatrix& m) {
  std::size_t n = m.size();
  DenseMatrix a = dense_zero(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw std::invalid_argument("inverse of a non-square matrix");
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    a[i][n + i] = 1;
  }
  auto piv = rref(a);
  if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) return std::nullopt;
  DenseMatrix inv = dense_zero(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

Rational dense_determinant(DenseMatrix m) {
  std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

DenseMatrix dense_mul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.empty()) return {};
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  DenseMatrix r = dense_zero(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

}  // namespace lgmf
