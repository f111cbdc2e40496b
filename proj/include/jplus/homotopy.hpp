#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "jplus/diagram.hpp"
#include "jplus/lattice.hpp"

namespace jplus {

/// One intersection point on each alpha curve, on pairwise distinct beta
/// curves.
struct Generator {
  std::vector<int> points;  // points[i] = point index on alpha_i
  std::vector<int> sigma;   // sigma[i] = beta curve of points[i]
  int cycles = 0;
  auto operator<=>(const Generator&) const = default;
};

/// Number of cycles of a permutation, fixed points included.
int cycle_count(const std::vector<int>& sigma);
inline int cycle_count(const Generator& x) { return x.cycles; }

/// Throws InconsistentCurve unless the points form a generator.
Generator make_generator(const PointedDiagram& d, const std::vector<int>& point_indices);

/// All generators, ordered lexicographically by the ids of their points
/// listed by alpha curve.
std::vector<Generator> enumerate_generators(const PointedDiagram& d);

/// A domain from `source` (x+) to `target` (x-): region coefficients with
/// the basepoint region at 0.
struct Domain {
  Generator source;
  Generator target;
  RegionVector coeffs;
  bool is_positive() const;
};

/// Concatenation: a from x to y followed by b from y to z.
Domain compose(const Domain& a, const Domain& b);

/// Solves the corner condition. The complex is built on (S, beta, alpha), so
/// a domain D from x to y has boundary running along beta from x to y and
/// along alpha from y back to x.
class DomainSolver {
 public:
  explicit DomainSolver(const PointedDiagram& d);

  const PointedDiagram& diagram() const { return *d_; }
  /// Some domain from x to y, or nullopt if none exists.
  std::optional<Domain> domain_between(const Generator& x, const Generator& y) const;
  /// True iff the region coefficients satisfy the corner condition for x, y.
  bool satisfies_corner_condition(const Generator& x, const Generator& y, const RegionVector& coeffs) const;
  /// Hermite basis of the periodic domain lattice.
  const std::vector<RegionVector>& periodic_basis() const { return periodic_; }
  bool weakly_admissible() const;

 private:
  lattice::Vector boundary_rhs(const Generator& x, const Generator& y) const;

  const PointedDiagram* d_;
  std::vector<int> column_of_region_;  // -1 for the basepoint region
  int region_columns_ = 0;
  std::optional<lattice::IntegerSystem> system_;
  lattice::Matrix matrix_;
  std::vector<RegionVector> periodic_;
};

struct SpincPartition {
  std::vector<std::vector<int>> classes;  // indices into the generator list
  std::optional<int> contact_class;
};

SpincPartition spinc_classes(const DomainSolver& solver, const std::vector<Generator>& gens,
                             const std::optional<Generator>& contact = std::nullopt);

std::vector<RegionVector> periodic_domains(const PointedDiagram& d);
bool weak_admissibility(const PointedDiagram& d);

/// n_x(D): sum of the point measures at the points of x.
Quarter generator_measure(const PointedDiagram& d, const Generator& x, const RegionVector& coeffs);

/// mu = e + n_{x+} + n_{x-}. Throws NonIntegerIndex.
std::int64_t maslov(const PointedDiagram& d, const Domain& D);
/// n_{x+} + n_{x-} - e + |x+| - |x-|, computed directly.
Quarter j_plus_direct(const PointedDiagram& d, const Domain& D);
/// mu - 2e + |x+| - |x-|.
Quarter j_plus_via_maslov(const PointedDiagram& d, const Domain& D);
/// Both forms, which must agree (FormulaMismatch) and be integral
/// (NonIntegerIndex).
std::int64_t j_plus(const PointedDiagram& d, const Domain& D);
/// J+ of a periodic domain (x = y = the given generator).
std::int64_t j_plus_periodic(const PointedDiagram& d, const Generator& x, const RegionVector& P);

}  // namespace jplus
