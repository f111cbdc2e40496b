#include "jplus/gf2.hpp"

#include <bit>

namespace jplus::gf2 {

BitVector& BitVector::operator^=(const BitVector& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

bool BitVector::any() const {
  for (auto w : words_)
    if (w) return true;
  return false;
}

std::optional<std::size_t> BitVector::lowest() const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
  return std::nullopt;
}

std::size_t BitVector::popcount() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool BitVector::dot(const BitVector& o) const {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & o.words_[i];
  return std::popcount(acc) % 2 == 1;
}

Matrix Matrix::operator*(const Matrix& o) const {
  Matrix out(rows(), o.cols());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t k = 0; k < cols_; ++k)
      if (get(r, k)) out.rows_[r] ^= o.rows_[k];
  return out;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  for (std::size_t r = 0; r < rows(); ++r) rows_[r] ^= o.rows_[r];
  return *this;
}

BitVector Matrix::apply(const BitVector& v) const {
  BitVector out(rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    if (rows_[r].dot(v)) out.set(r);
  }
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& r : rows_)
    if (r.any()) return false;
  return true;
}

std::size_t Matrix::rank() const {
  Span s(cols_);
  for (const auto& r : rows_) s.insert(r);
  return s.dimension();
}

std::vector<BitVector> Matrix::kernel() const {
  // reduced row echelon form, then one basis vector per free column
  std::vector<BitVector> rr = rows_;
  std::vector<std::size_t> pivot_col;
  std::size_t p = 0;
  for (std::size_t c = 0; c < cols_ && p < rr.size(); ++c) {
    std::size_t sel = p;
    while (sel < rr.size() && !rr[sel].get(c)) ++sel;
    if (sel == rr.size()) continue;
    std::swap(rr[p], rr[sel]);
    for (std::size_t i = 0; i < rr.size(); ++i)
      if (i != p && rr[i].get(c)) rr[i] ^= rr[p];
    pivot_col.push_back(c);
    ++p;
  }
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<BitVector> out;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    BitVector v(cols_);
    v.set(f);
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      if (rr[i].get(f)) v.set(pivot_col[i]);
    out.push_back(std::move(v));
  }
  return out;
}

BitVector Span::reduce(BitVector v) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (v.get(pivots_[i])) v ^= basis_[i];
  return v;
}

bool Span::insert(BitVector v) {
  v = reduce(std::move(v));
  auto low = v.lowest();
  if (!low) return false;
  // keep the basis fully reduced on pivots so a single pass reduces any vector
  for (auto& b : basis_)
    if (b.get(*low)) b ^= v;
  basis_.push_back(std::move(v));
  pivots_.push_back(*low);
  return true;
}

bool Span::contains(BitVector v) const { return !reduce(std::move(v)).any(); }

}  // namespace jplus::gf2
