#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lgmf/ring.hpp"

namespace lgmf {

class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  PolyMatrix(std::size_t rows, std::size_t cols, const Ctx& ctx);

  static PolyMatrix identity(std::size_t n, const Ctx& ctx = nullptr);
  static PolyMatrix from_rows(const std::vector<std::vector<Poly>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Poly& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const Poly& at(std::size_t i, std::size_t j) const;

  bool is_zero() const;
  PolyMatrix transpose() const;
  PolyMatrix map(const std::function<Poly(const Poly&)>& f) const;
  PolyMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  std::vector<Poly> apply(const std::vector<Poly>& v) const;
  int max_degree() const;

  PolyMatrix& operator+=(const PolyMatrix& o);
  PolyMatrix& operator-=(const PolyMatrix& o);
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const Poly& c, const PolyMatrix& a);
  friend PolyMatrix operator*(const PolyMatrix& a, const Poly& c) { return c * a; }
  PolyMatrix operator-() const;
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Poly> data_;
};

// Kronecker product with entries a(i,j) * b(k,l) at (i*b.rows()+k, j*b.cols()+l).
PolyMatrix kronecker(const PolyMatrix& a, const PolyMatrix& b);
Poly trace(const PolyMatrix& a);
// Cofactor expansion; fine for the small sizes used here.
Poly determinant(const PolyMatrix& a);

}  // namespace lgmf
