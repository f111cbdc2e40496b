#include "jplus/lattice.hpp"

#include <algorithm>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace jplus::lattice {

namespace {

using Rational = boost::multiprecision::cpp_rational;

void add_column_multiple(Matrix& a, int dst, int src, const BigInt& q) {
  for (int r = 0; r < a.rows(); ++r)
    if (a(r, src) != 0) a(r, dst) -= q * a(r, src);
}

void swap_columns(Matrix& a, int i, int j) {
  if (i == j) return;
  for (int r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
}

void negate_column(Matrix& a, int c) {
  for (int r = 0; r < a.rows(); ++r) a(r, c) = -a(r, c);
}

}  // namespace

Vector Matrix::multiply(const Vector& v) const {
  Vector out(rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if ((*this)(r, c) != 0 && v[c] != 0) out[r] += (*this)(r, c) * v[c];
  return out;
}

IntegerSystem::IntegerSystem(const Matrix& m) : m_(m), h_(m), u_(m.cols(), m.cols()) {
  const int n = m.cols();
  for (int i = 0; i < n; ++i) u_(i, i) = 1;
  int c = 0;
  for (int r = 0; r < h_.rows() && c < n; ++r) {
    while (true) {
      int best = -1;
      for (int j = c; j < n; ++j)
        if (h_(r, j) != 0 && (best < 0 || abs(h_(r, j)) < abs(h_(r, best)))) best = j;
      if (best < 0) break;
      swap_columns(h_, c, best);
      swap_columns(u_, c, best);
      bool done = true;
      for (int j = c + 1; j < n; ++j) {
        if (h_(r, j) == 0) continue;
        const BigInt q = h_(r, j) / h_(r, c);
        add_column_multiple(h_, j, c, q);
        add_column_multiple(u_, j, c, q);
        if (h_(r, j) != 0) done = false;
      }
      if (done) break;
    }
    if (h_(r, c) == 0) continue;
    if (h_(r, c) < 0) {
      negate_column(h_, c);
      negate_column(u_, c);
    }
    pivot_rows_.push_back(r);
    ++c;
  }
  rank_ = c;
}

std::optional<Vector> IntegerSystem::solve(const Vector& rhs) const {
  Vector w(m_.cols());
  for (int k = 0; k < rank_; ++k) {
    const int r = pivot_rows_[k];
    BigInt acc = rhs[r];
    for (int l = 0; l < k; ++l)
      if (h_(r, l) != 0) acc -= h_(r, l) * w[l];
    if (acc % h_(r, k) != 0) return std::nullopt;
    w[k] = acc / h_(r, k);
  }
  Vector v = u_.multiply(w);
  if (m_.multiply(v) != rhs) return std::nullopt;
  return v;
}

std::vector<Vector> IntegerSystem::kernel_basis() const {
  std::vector<Vector> out;
  for (int k = rank_; k < m_.cols(); ++k) {
    Vector v(m_.cols());
    for (int i = 0; i < m_.cols(); ++i) v[i] = u_(i, k);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vector> hermite_rows(std::vector<Vector> rows) {
  if (rows.empty()) return rows;
  const int cols = static_cast<int>(rows.front().size());
  int p = 0;
  for (int c = 0; c < cols && p < static_cast<int>(rows.size()); ++c) {
    while (true) {
      int best = -1;
      for (int i = p; i < static_cast<int>(rows.size()); ++i)
        if (rows[i][c] != 0 && (best < 0 || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
      if (best < 0) break;
      std::swap(rows[p], rows[best]);
      bool done = true;
      for (int i = p + 1; i < static_cast<int>(rows.size()); ++i) {
        if (rows[i][c] == 0) continue;
        const BigInt q = rows[i][c] / rows[p][c];
        for (int j = c; j < cols; ++j) rows[i][j] -= q * rows[p][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[p][c] == 0) continue;
    if (rows[p][c] < 0)
      for (auto& x : rows[p]) x = -x;
    for (int i = 0; i < p; ++i) {
      BigInt q = rows[i][c] / rows[p][c];
      if (rows[i][c] - q * rows[p][c] < 0) q -= 1;
      if (q != 0)
        for (int j = c; j < cols; ++j) rows[i][j] -= q * rows[p][j];
    }
    ++p;
  }
  rows.resize(p);
  return rows;
}

std::vector<int> pivot_columns(const std::vector<Vector>& hermite) {
  std::vector<int> out;
  for (const auto& row : hermite) {
    int c = 0;
    while (c < static_cast<int>(row.size()) && row[c] == 0) ++c;
    out.push_back(c);
  }
  return out;
}

bool has_positive_kernel_vector(const std::vector<Vector>& rows, int cols) {
  if (rows.empty()) return true;
  // y = 1 + s, s >= 0, B s = -B 1. Phase one of the simplex method with one
  // artificial variable per row, Bland's rule, exact rationals.
  const int m = static_cast<int>(rows.size());
  const int width = cols + m;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(width + 1));
  for (int i = 0; i < m; ++i) {
    BigInt rhs = 0;
    for (int j = 0; j < cols; ++j) rhs -= rows[i][j];
    const int sign = rhs < 0 ? -1 : 1;
    for (int j = 0; j < cols; ++j) t[i][j] = Rational(rows[i][j] * sign);
    t[i][cols + i] = 1;
    t[i][width] = Rational(rhs * sign);
  }
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = cols + i;

  while (true) {
    // reduced cost of column j for minimising the sum of artificials
    int enter = -1;
    for (int j = 0; j < width && enter < 0; ++j) {
      if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
      Rational reduced = j >= cols ? Rational(1) : Rational(0);
      for (int i = 0; i < m; ++i)
        if (basis[i] >= cols) reduced -= t[i][j];
      if (reduced < 0) enter = j;
    }
    if (enter < 0) break;
    int leave = -1;
    Rational best_ratio;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      const Rational ratio = t[i][width] / t[i][enter];
      if (leave < 0 || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) break;  // unbounded direction cannot occur in phase one
    const Rational piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (int j = 0; j <= width; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  Rational infeasibility = 0;
  for (int i = 0; i < m; ++i)
    if (basis[i] >= cols) infeasibility += t[i][width];
  return infeasibility == 0;
}

}  // namespace jplus::lattice
