#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace jplus::gf2 {

/// Fixed-length vector over the two-element field.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i, bool v = true) {
    const std::uint64_t bit = std::uint64_t{1} << (i % 64);
    if (v) words_[i / 64] |= bit;
    else words_[i / 64] &= ~bit;
  }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
  BitVector& operator^=(const BitVector& o);
  bool any() const;
  /// Index of the lowest set bit, or nullopt for the zero vector.
  std::optional<std::size_t> lowest() const;
  std::size_t popcount() const;
  /// Parity of the bitwise AND.
  bool dot(const BitVector& o) const;
  bool operator==(const BitVector& o) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense matrix stored by rows; acts on column vectors.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { rows_[r].set(c, v); }
  void flip(std::size_t r, std::size_t c) { rows_[r].flip(c); }
  const BitVector& row(std::size_t r) const { return rows_[r]; }

  Matrix operator*(const Matrix& o) const;
  Matrix& operator+=(const Matrix& o);
  BitVector apply(const BitVector& v) const;
  bool is_zero() const;
  std::size_t rank() const;
  /// Basis of {v : M v = 0}.
  std::vector<BitVector> kernel() const;
  bool operator==(const Matrix& o) const = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

/// Incrementally built echelon basis of a subspace.
class Span {
 public:
  explicit Span(std::size_t dim) : dim_(dim) {}
  /// Returns true when v was independent of the span so far.
  bool insert(BitVector v);
  bool contains(BitVector v) const;
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<BitVector>& basis() const { return basis_; }

 private:
  BitVector reduce(BitVector v) const;
  std::size_t dim_;
  std::vector<BitVector> basis_;  // each with a distinct pivot (lowest bit)
  std::vector<std::size_t> pivots_;
};

}  // namespace jplus::gf2
