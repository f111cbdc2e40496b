#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "jplus/gf2.hpp"
#include "jplus/homotopy.hpp"

namespace jplus {

struct NiceReport {
  bool nice = true;
  std::vector<int> offending;  // region ids
};

/// Every region except the basepoint region must be a disk with at most
/// four corners.
NiceReport is_nice(const PointedDiagram& d);

/// One empty embedded bigon or square counted by the differential.
struct CountedDomain {
  int from = 0;  // generator indices
  int to = 0;
  int weight = 0;
  std::int64_t j_plus = 0;
  bool bigon = true;
  Domain domain;
};

/// The hat complex over the two-element field on one Spin^c class, with the
/// differential split by weight: part(k) counts domains with J+ = 2k.
/// Matrices act on column vectors, so entry (y, x) is <d x, y>.
class WeightedComplex {
 public:
  WeightedComplex() = default;
  WeightedComplex(std::vector<Generator> gens, std::vector<gf2::Matrix> parts);

  int size() const { return static_cast<int>(generators_.size()); }
  const std::vector<Generator>& generators() const { return generators_; }
  /// Number of weight parts (max weight + 1); at least 1.
  int part_count() const { return static_cast<int>(parts_.size()); }
  const gf2::Matrix& part(int k) const { return parts_.at(k); }
  gf2::Matrix total() const;
  std::optional<int> index_of(const Generator& x) const;

  std::vector<CountedDomain> counted;  // empty when loaded from a dump
  std::vector<std::string> diagnostics;

 private:
  std::vector<Generator> generators_;
  std::vector<gf2::Matrix> parts_;
};

/// Builds the weighted differential on the given generators (one Spin^c
/// class). Throws NotNice, OddJPlus.
WeightedComplex differential(const DomainSolver& solver, const std::vector<Generator>& gens);

/// The generator {x_1, ..., x_G} recorded by the open book construction.
/// Throws NoProvenance.
Generator contact_generator(const PointedDiagram& d);

/// Throws DifferentialNotSquareZero when the total differential does not
/// square to zero, LeibnizViolation when some sum over i+j=k of d_i d_j is
/// nonzero.
void check_differential(const WeightedComplex& c);

/// Rank of the homology of the total complex (checks d^2 = 0 first).
std::size_t homology_rank(const WeightedComplex& c);

/// Text dump: header lines, generator lines, then one `x y weight` triplet
/// per nonzero entry.
std::string dump_matrix(const WeightedComplex& c, const PointedDiagram& d, const std::string& diagram_hash);
/// Reads a dump back. Throws Parse when the hash does not match.
WeightedComplex load_matrix(std::istream& in, const PointedDiagram& d, const std::string& diagram_hash);

}  // namespace jplus
