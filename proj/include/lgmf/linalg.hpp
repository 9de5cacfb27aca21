#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lgmf/ring.hpp"

namespace lgmf {

using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

// Incremental row echelon form over Q.  Equations are reduced against the
// current pivots on insertion, so inconsistency is detected early.
class SparseLinearSystem {
 public:
  explicit SparseLinearSystem(std::size_t unknowns) : n_(unknowns) {}

  std::size_t unknowns() const { return n_; }
  // returns false once the system has become inconsistent
  bool add_equation(const SparseRow& row, const Rational& rhs);
  bool consistent() const { return consistent_; }
  std::size_t rank() const { return pivots_.size(); }
  // a particular solution with free unknowns set to zero
  std::optional<std::vector<Rational>> solve() const;

 private:
  struct PivotRow {
    std::map<std::size_t, Rational> coeffs;  // first key is the pivot, value 1
    Rational rhs;
  };
  std::size_t n_;
  bool consistent_ = true;
  std::map<std::size_t, PivotRow> pivots_;
};

using DenseMatrix = std::vector<std::vector<Rational>>;

DenseMatrix dense_zero(std::size_t rows, std::size_t cols);
std::size_t dense_rank(DenseMatrix m);
// reduced row echelon form in place; returns pivot columns
std::vector<std::size_t> rref(DenseMatrix& m);
// basis of {v : m v = 0}
std::vector<std::vector<Rational>> kernel_basis(const DenseMatrix& m, std::size_t cols);
std::optional<DenseMatrix> dense_inverse(const DenseMatrix& m);
Rational dense_determinant(DenseMatrix m);
DenseMatrix dense_mul(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace lgmf
