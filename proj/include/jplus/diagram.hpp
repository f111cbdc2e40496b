#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jplus/quarter.hpp"

namespace jplus {

enum class CurveKind { Alpha, Beta };
enum class Side { Left, Right };

/// Segment `segment` of a curve runs from the `segment`-th point of the
/// curve's cyclic order to the next one.
struct SegmentRef {
  CurveKind kind = CurveKind::Alpha;
  int curve = 0;    // 0-based
  int segment = 0;  // 0-based
  auto operator<=>(const SegmentRef&) const = default;
};

struct SegmentSide {
  SegmentRef segment;
  Side side = Side::Left;
  auto operator<=>(const SegmentSide&) const = default;
};

/// "a1.0:L" style text used by the diagram file format (curve numbers are
/// 1-based in text).
std::string format_segment_side(const SegmentSide& s);
std::optional<SegmentSide> parse_segment_side(const std::string& text);

struct RawPoint {
  int id = 0;
  int alpha = 0;  // 0-based
  int beta = 0;   // 0-based
  int sign = 1;   // +1 or -1
};

/// Groups several traced boundary cycles (each named by one segment side on
/// it) into a single region of the given genus.
struct RegionSpec {
  std::vector<SegmentSide> boundaries;
  int genus = 0;
};

/// Syntactic content of a diagram file; nothing here is checked yet.
struct RawDiagram {
  int g_count = 0;
  std::vector<RawPoint> points;
  std::vector<std::vector<int>> alpha_orders;  // point ids, cyclic
  std::vector<std::vector<int>> beta_orders;
  std::optional<SegmentSide> basepoint;
  std::vector<RegionSpec> regions;
  std::optional<std::vector<int>> contact;  // point ids x_1..x_G, open book provenance
  std::vector<std::string> notes;           // emitted as comments
};

RawDiagram parse_diagram(std::istream& in);
RawDiagram parse_diagram_string(const std::string& text);
std::string format_diagram(const RawDiagram& raw);

struct Point {
  int id = 0;
  int alpha = 0;
  int beta = 0;
  int sign = 1;
  int alpha_pos = 0;  // position in alpha order
  int beta_pos = 0;
};

struct Edge {
  SegmentRef ref;
  int from = 0;  // point index
  int to = 0;
};

/// Quadrant k of a point is the wedge swept counterclockwise from
/// rotation[k] to rotation[(k+1)%4].
struct Corner {
  int point = 0;
  int quadrant = 0;
  auto operator<=>(const Corner&) const = default;
};

struct Region {
  int id = 0;
  int genus = 0;
  int boundary_circles = 1;
  std::vector<std::vector<int>> boundary;  // dart cycles
  std::vector<Corner> corners;
  int euler_characteristic() const { return 2 - 2 * genus - boundary_circles; }
  Quarter euler_measure() const {
    return Quarter::from_quarters(4 * euler_characteristic() - static_cast<std::int64_t>(corners.size()));
  }
};

/// Integer coefficient per region, indexed by region id.
using RegionVector = std::vector<std::int64_t>;

/// A validated pointed Heegaard diagram given by a rotation system.
///
/// Darts are `2*edge + dir` with dir 0 running along the curve orientation.
/// Faces are traced with the face on the left of each dart, so side L of a
/// segment is the face of its forward dart.
class PointedDiagram {
 public:
  int g_count() const { return g_count_; }
  int point_count() const { return static_cast<int>(points_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int region_count() const { return static_cast<int>(regions_.size()); }
  int surface_genus() const { return surface_genus_; }

  const Point& point(int index) const { return points_.at(index); }
  const std::vector<Point>& points() const { return points_; }
  std::optional<int> point_index(int id) const;

  std::span<const int> alpha_order(int curve) const { return alpha_orders_.at(curve); }
  std::span<const int> beta_order(int curve) const { return beta_orders_.at(curve); }
  std::span<const int> order(CurveKind kind, int curve) const {
    return kind == CurveKind::Alpha ? alpha_order(curve) : beta_order(curve);
  }

  const Edge& edge(int e) const { return edges_.at(e); }
  int edge_index(const SegmentRef& ref) const;
  /// Edges of a curve in order, starting with segment 0.
  std::span<const int> curve_edges(CurveKind kind, int curve) const;

  static int reverse(int dart) { return dart ^ 1; }
  int tail(int dart) const;
  int head(int dart) const;

  /// Outgoing darts counterclockwise: sign + is (alpha-out, beta-out,
  /// alpha-in, beta-in); sign - swaps the two beta germs.
  const std::array<int, 4>& rotation(int point) const { return rotation_.at(point); }

  const std::vector<Region>& regions() const { return regions_; }
  const Region& region(int id) const { return regions_.at(id); }
  int face_count() const { return static_cast<int>(face_region_.size()); }
  int dart_region(int dart) const { return face_region_.at(dart_face_.at(dart)); }
  int dart_face(int dart) const { return dart_face_.at(dart); }
  int region_of(const SegmentSide& s) const;
  int quadrant_region(int point, int quadrant) const { return quadrant_region_.at(point).at(quadrant); }

  int basepoint_region() const { return basepoint_region_; }
  const std::optional<std::vector<int>>& contact_points() const { return contact_points_; }

  const RawDiagram& raw() const { return raw_; }

 private:
  friend PointedDiagram validate(const RawDiagram& raw);

  int g_count_ = 0;
  int surface_genus_ = 0;
  std::vector<Point> points_;
  std::vector<std::vector<int>> alpha_orders_;
  std::vector<std::vector<int>> beta_orders_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> alpha_edges_;
  std::vector<std::vector<int>> beta_edges_;
  std::vector<std::array<int, 4>> rotation_;
  std::vector<int> dart_face_;
  std::vector<int> face_region_;
  std::vector<Region> regions_;
  std::vector<std::array<int, 4>> quadrant_region_;
  int basepoint_region_ = 0;
  std::optional<std::vector<int>> contact_points_;
  RawDiagram raw_;
};

PointedDiagram validate(const RawDiagram& raw);

/// Boundary cycles of the ribbon surface traced from a raw rotation system,
/// before any region grouping. Used by constructions that need to name faces
/// before the diagram is complete.
std::vector<std::vector<SegmentSide>> trace_boundary_cycles(const RawDiagram& raw);

/// Sum of coeff(r) * e(r).
Quarter euler_measure(const PointedDiagram& d, std::span<const std::int64_t> coeffs);
/// Average of the coefficients of the four quadrants at a point.
Quarter point_measure(const PointedDiagram& d, int point, std::span<const std::int64_t> coeffs);

/// Rebuilds the rotation system from the traced faces alone.
std::vector<std::array<int, 4>> rotation_from_faces(const PointedDiagram& d);

}  // namespace jplus
