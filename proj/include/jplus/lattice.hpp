#pragma once

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace jplus::lattice {

using BigInt = boost::multiprecision::cpp_int;
using Vector = std::vector<BigInt>;

/// Dense integer matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  BigInt& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const BigInt& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  Vector multiply(const Vector& v) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<BigInt> data_;
};

/// Integer solutions of M v = b. The column echelon form H = M U (U
/// unimodular) is computed once; each right-hand side is then a forward
/// substitution.
class IntegerSystem {
 public:
  explicit IntegerSystem(const Matrix& m);

  int rank() const { return rank_; }
  /// Some integer solution, or nullopt when none exists.
  std::optional<Vector> solve(const Vector& rhs) const;
  /// A basis of the integer kernel lattice (saturated).
  std::vector<Vector> kernel_basis() const;

 private:
  Matrix m_;
  Matrix h_;
  Matrix u_;
  std::vector<int> pivot_rows_;
  int rank_ = 0;
};

/// Row Hermite normal form of the lattice spanned by `rows`; zero rows are
/// dropped, pivots are positive and entries above a pivot are reduced into
/// [0, pivot).
std::vector<Vector> hermite_rows(std::vector<Vector> rows);

/// Column index of the leading nonzero entry of each row of a Hermite basis.
std::vector<int> pivot_columns(const std::vector<Vector>& hermite);

/// True iff some y with every entry strictly positive satisfies B y = 0,
/// where the rows of B are `rows` (all of length `cols`). By Stiemke's
/// alternative this fails exactly when a nonzero nonnegative vector lies in
/// the rational row space of B.
bool has_positive_kernel_vector(const std::vector<Vector>& rows, int cols);

}  // namespace jplus::lattice
