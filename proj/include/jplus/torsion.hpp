#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "jplus/floer.hpp"

namespace jplus {

/// Spectral sequence of the weight filtration, realized on C[t]/(t^N) with
/// total differential sum_k t^k d_k. Page r is read off in filtration
/// degree r-1, the lowest degree where truncation at t^0 plays no role.
class SpectralSequence {
 public:
  explicit SpectralSequence(const WeightedComplex& c);

  struct Page {
    std::size_t rank = 0;            // dim E^r
    std::optional<bool> vanishes;    // fate of t^{r-1} x when x was given
  };
  /// Page r >= 1. The optional x must be a cycle of every d_k.
  Page page(int r, const std::optional<gf2::BitVector>& x = std::nullopt) const;

 private:
  const WeightedComplex* c_;
};

struct TorsionReport {
  std::vector<std::size_t> pages;           // dim E^1, dim E^2, ...; the last entry is E^infinity
  std::vector<bool> contact_nonzero;        // per page, empty when no contact class
  std::optional<int> at;                    // nullopt means the class survives
  bool has_contact = false;
  bool stabilized = false;
  std::size_t total_rank = 0;
  std::vector<int> weights;                 // weights present in the complex
  std::vector<std::int64_t> periodic_j_plus;
  std::vector<std::string> messages;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Stabilization bound: generators times max weight, plus one.
int page_bound(const WeightedComplex& c);

/// Page ranks up to stabilization (or max_page). Throws LeibnizViolation,
/// DifferentialNotSquareZero.
TorsionReport pages(const WeightedComplex& c, int max_page);

/// Pages plus the fate of the contact class. Throws NotACycle when some d_k
/// does not kill theta, StabilizationFailed when the class is still alive
/// at max_page without a stabilization certificate.
TorsionReport at_order(const WeightedComplex& c, const Generator& theta, int max_page);

}  // namespace jplus
