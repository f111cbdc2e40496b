#pragma once

#include <cstdint>
#include <compare>
#include <ostream>
#include <string>

namespace jplus {

/// Exact rational with denominator dividing 4, stored as a count of quarters.
/// Point measures and Euler measures of domains always live in this ring.
class Quarter {
 public:
  constexpr Quarter() = default;
  static constexpr Quarter from_quarters(std::int64_t q) { return Quarter(q); }
  static constexpr Quarter integer(std::int64_t n) { return Quarter(4 * n); }

  constexpr std::int64_t quarters() const { return q_; }
  constexpr bool is_integer() const { return q_ % 4 == 0; }
  constexpr bool is_half_integer() const { return q_ % 2 == 0; }
  /// Only meaningful when is_integer().
  constexpr std::int64_t to_integer() const { return q_ / 4; }

  constexpr Quarter operator+(Quarter o) const { return Quarter(q_ + o.q_); }
  constexpr Quarter operator-(Quarter o) const { return Quarter(q_ - o.q_); }
  constexpr Quarter operator-() const { return Quarter(-q_); }
  constexpr Quarter operator*(std::int64_t k) const { return Quarter(q_ * k); }
  constexpr Quarter& operator+=(Quarter o) { q_ += o.q_; return *this; }
  constexpr Quarter& operator-=(Quarter o) { q_ -= o.q_; return *this; }
  constexpr auto operator<=>(const Quarter&) const = default;

  /// "3", "-1/2", "5/4".
  std::string str() const;

 private:
  constexpr explicit Quarter(std::int64_t q) : q_(q) {}
  std::int64_t q_ = 0;
};

inline constexpr Quarter operator*(std::int64_t k, Quarter q) { return q * k; }

std::ostream& operator<<(std::ostream& os, Quarter q);

}  // namespace jplus
