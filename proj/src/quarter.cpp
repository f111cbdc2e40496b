#include "jplus/quarter.hpp"

#include <numeric>

namespace jplus {

std::string Quarter::str() const {
  if (q_ % 4 == 0) return std::to_string(q_ / 4);
  const std::int64_t g = std::gcd(q_, std::int64_t{4});
  return std::to_string(q_ / g) + "/" + std::to_string(4 / g);
}

std::ostream& operator<<(std::ostream& os, Quarter q) { return os << q.str(); }

}  // namespace jplus
