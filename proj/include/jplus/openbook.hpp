#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jplus/diagram.hpp"

namespace jplus::openbook {

/// One passage of a curve through the arc `arc` (0-based). dir = +1 means
/// the curve crosses from the right side of the arc to its left side.
struct Letter {
  int arc = 0;
  int dir = 1;
  Letter inverse() const { return {arc, -dir}; }
  auto operator<=>(const Letter&) const = default;
};

/// Crossing sequence of a curve with the arc basis (its normal coordinates).
using Word = std::vector<Letter>;

/// Cancels adjacent inverse letters.
Word reduce(Word w);
/// Cancels adjacent inverse letters cyclically.
Word reduce_cyclic(Word w);
/// "+1 -2 +1" with 1-based arcs.
std::string format_word(const Word& w);
Word parse_word(const std::string& text);

enum class SideType { Arc, Boundary };

/// A side of the polygon obtained by cutting the page along the arc basis.
/// Arc sides come in pairs; the left copy is traversed along the arc's
/// orientation when going counterclockwise around the polygon, the right
/// copy against it.
struct PolygonSide {
  SideType type = SideType::Arc;
  int arc = -1;
  bool left_copy = true;
};

/// The page S cut open along the arcs a_1..a_G: a 4G-gon whose sides
/// alternate between arc copies and pieces of the boundary of S.
class PageModel {
 public:
  /// Standard arc basis: interlaced pairs (x y x y) per handle followed by
  /// (z z) for each extra boundary component.
  static PageModel standard(int genus, int boundaries);
  /// Arc labels (1-based) in counterclockwise order; the first occurrence of
  /// a label is its left copy. Throws InvalidArcBasis.
  static PageModel from_labels(int genus, int boundaries, const std::vector<int>& labels);

  int genus() const { return genus_; }
  int boundaries() const { return boundaries_; }
  int arc_count() const { return arc_count_; }
  int side_count() const { return static_cast<int>(sides_.size()); }
  const PolygonSide& side(int s) const { return sides_.at(s); }
  int left_side(int arc) const { return left_.at(arc); }
  int right_side(int arc) const { return right_.at(arc); }
  /// The boundary piece following an arc side counterclockwise.
  int piece_after(int arc_side) const { return (arc_side + 1) % side_count(); }
  bool is_standard() const { return standard_; }
  const std::vector<int>& labels() const { return labels_; }

 private:
  int genus_ = 0;
  int boundaries_ = 0;
  int arc_count_ = 0;
  bool standard_ = false;
  std::vector<int> labels_;
  std::vector<PolygonSide> sides_;
  std::vector<int> left_, right_;
};

/// A properly embedded arc on the page, from a point near the start of one
/// boundary piece to a point near the start of another.
struct PageArc {
  int start_piece = 0;  // polygon side index
  int end_piece = 0;
  Word word;
  bool operator==(const PageArc&) const = default;
};

struct ClosedCurve {
  Word word;  // cyclically reduced
};

/// Position of every crossing of a family of curves along the arcs, derived
/// from the words alone.
class Arrangement {
 public:
  struct Strand {
    bool closed = false;
    int start_piece = -1;
    int end_piece = -1;
    Word word;
  };
  /// Crossing `letter` of curve `curve`.
  struct Crossing {
    int curve = 0;
    int letter = 0;
    auto operator<=>(const Crossing&) const = default;
  };
  struct Endpoint {
    int side = 0;
    int rank = 0;  // counterclockwise rank along the side
    std::optional<Crossing> crossing;
  };

  Arrangement(const PageModel& page, std::vector<Strand> strands);

  int strand_count() const { return static_cast<int>(strands_.size()); }
  const Strand& strand(int c) const { return strands_.at(c); }
  int chord_count(int c) const;
  Endpoint chord_entry(int c, int chord) const;
  Endpoint chord_exit(int c, int chord) const;
  /// Crossings on an arc, by increasing position along the arc orientation.
  const std::vector<Crossing>& along_arc(int arc) const { return along_.at(arc); }
  int coordinate_rank(const Crossing& x) const;
  bool chords_cross(int c1, int k1, int c2, int k2) const;
  /// Number of interior crossings between chords of the two strands.
  int intersection_count(int c1, int c2) const;
  /// Cyclic position of an endpoint around the polygon boundary.
  long position(const Endpoint& e) const;
  long perimeter() const;

 private:
  int side_of_exit(const Letter& l) const;
  int side_of_entry(const Letter& l) const;
  bool later_ccw(int side, Crossing x, Crossing y) const;
  std::pair<int, std::optional<Crossing>> other_end(const Crossing& x, int side) const;

  const PageModel* page_;
  std::vector<Strand> strands_;
  std::vector<std::vector<Crossing>> along_;
  std::map<Crossing, int> rank_;
};

/// b_i: endpoints of a_i pushed along the boundary orientation, meeting a_i
/// once, positively.
PageArc pushoff(const PageModel& page, int arc);
std::vector<PageArc> pushoff_arcs(const PageModel& page);

/// Named curves available for twisting: "c" on the annulus; "a", "b", "ab"
/// and the boundary-parallel "d" on the once-punctured torus.
ClosedCurve catalog_curve(const PageModel& page, const std::string& name);
std::vector<std::string> catalog_names(const PageModel& page);

/// Image of an arc under the power-th power of the right-handed Dehn twist
/// along a simple closed curve.
PageArc apply_twist(const PageModel& page, const PageArc& arc, const ClosedCurve& curve, int power);

struct Twist {
  std::string curve;
  int power = 1;
};

/// Applies the twists left to right (the first listed acts first).
std::vector<PageArc> apply_monodromy(const PageModel& page, std::vector<PageArc> arcs, const std::vector<Twist>& word);

/// Throws InvalidMonodromy unless the arcs are pairwise disjoint embedded
/// arcs with the endpoints of the pushoffs.
void check_embedded(const PageModel& page, const std::vector<PageArc>& arcs);

struct OpenBookSpec {
  int genus = 0;
  int boundaries = 1;
  std::optional<std::vector<int>> arc_labels;
  std::vector<Twist> twists;
  std::map<int, Word> phi_b;  // 0-based arc -> explicit image word
};

OpenBookSpec parse_openbook(std::istream& in);
OpenBookSpec parse_openbook_string(const std::string& text);
PageModel page_of(const OpenBookSpec& spec);

struct BuiltDiagram {
  PageModel page;
  std::vector<PageArc> phi_b;
  RawDiagram raw;
  PointedDiagram diagram;
};

/// The pointed Heegaard diagram of S x {1/2} u -S x {0} with alpha_i from
/// a_i on both halves and beta_i from b_i and phi(b_i); the basepoint sits in
/// the large region of the S x {1/2} half outside the thin strips between a_i
/// and b_i. Points x_i = a_i n b_i get ids 0..G-1.
BuiltDiagram build_diagram(const OpenBookSpec& spec);

}  // namespace jplus::openbook
