#include "jplus/openbook.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "jplus/error.hpp"

namespace jplus::openbook {

Word reduce(Word w) {
  Word out;
  for (const auto& l : w) {
    if (!out.empty() && out.back() == l.inverse()) out.pop_back();
    else out.push_back(l);
  }
  return out;
}

Word reduce_cyclic(Word w) {
  w = reduce(std::move(w));
  std::size_t b = 0, e = w.size();
  while (e - b >= 2 && w[b] == w[e - 1].inverse()) {
    ++b;
    --e;
  }
  return Word(w.begin() + static_cast<long>(b), w.begin() + static_cast<long>(e));
}

std::string format_word(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += (w[i].dir > 0 ? '+' : '-');
    out += std::to_string(w[i].arc + 1);
  }
  return out;
}

Word parse_word(const std::string& text) {
  Word w;
  std::istringstream ss(text);
  for (std::string tok; ss >> tok;) {
    if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-'))
      throw Error(ErrorKind::Parse, "bad word letter '" + tok + "' (expected +<arc> or -<arc>)");
    int arc = 0;
    try {
      std::size_t used = 0;
      arc = std::stoi(tok.substr(1), &used);
      if (used != tok.size() - 1) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad word letter '" + tok + "'");
    }
    if (arc < 1) throw Error(ErrorKind::Parse, "arc numbers start at 1");
    w.push_back(Letter{arc - 1, tok[0] == '+' ? 1 : -1});
  }
  return w;
}

// ---------------------------------------------------------------- page model

PageModel PageModel::standard(int genus, int boundaries) {
  if (genus < 0 || boundaries < 1) throw Error(ErrorKind::InvalidArcBasis, "page needs genus >= 0 and at least one boundary component");
  std::vector<int> labels;
  int next = 1;
  for (int h = 0; h < genus; ++h) {
    labels.insert(labels.end(), {next, next + 1, next, next + 1});
    next += 2;
  }
  for (int k = 1; k < boundaries; ++k) {
    labels.insert(labels.end(), {next, next});
    ++next;
  }
  if (labels.empty()) throw Error(ErrorKind::UnsupportedPage, "the disk page has an empty arc basis");
  PageModel p = from_labels(genus, boundaries, labels);
  p.standard_ = true;
  return p;
}

PageModel PageModel::from_labels(int genus, int boundaries, const std::vector<int>& labels) {
  const int G = 2 * genus + boundaries - 1;
  if (G < 1) throw Error(ErrorKind::UnsupportedPage, "the page must have a nonempty arc basis");
  if (static_cast<int>(labels.size()) != 2 * G)
    throw Error(ErrorKind::InvalidArcBasis, "expected " + std::to_string(G) + " arcs, each listed twice");
  PageModel p;
  p.genus_ = genus;
  p.boundaries_ = boundaries;
  p.arc_count_ = G;
  p.labels_ = labels;
  p.left_.assign(G, -1);
  p.right_.assign(G, -1);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int a = labels[i] - 1;
    if (a < 0 || a >= G) throw Error(ErrorKind::InvalidArcBasis, "arc label " + std::to_string(labels[i]) + " out of range");
    const int side = static_cast<int>(2 * i);
    if (p.left_[a] < 0) {
      p.left_[a] = side;
      p.sides_.push_back(PolygonSide{SideType::Arc, a, true});
    } else if (p.right_[a] < 0) {
      p.right_[a] = side;
      p.sides_.push_back(PolygonSide{SideType::Arc, a, false});
    } else {
      throw Error(ErrorKind::InvalidArcBasis, "arc " + std::to_string(labels[i]) + " listed more than twice");
    }
    p.sides_.push_back(PolygonSide{SideType::Boundary, -1, true});
  }
  for (int a = 0; a < G; ++a)
    if (p.right_[a] < 0) throw Error(ErrorKind::InvalidArcBasis, "arc " + std::to_string(a + 1) + " appears only once");

  // Trace the boundary of S: the piece ending at the start vertex of arc side
  // t continues after the end vertex of its partner copy.
  const int K = p.side_count();
  std::vector<bool> seen(K, false);
  int components = 0;
  for (int s = 0; s < K; s += 2) {
    int piece = s + 1;
    if (seen[piece]) continue;
    ++components;
    while (!seen[piece]) {
      seen[piece] = true;
      const int t = (piece + 1) % K;
      const auto& ts = p.sides_[t];
      const int partner = ts.left_copy ? p.right_[ts.arc] : p.left_[ts.arc];
      piece = p.piece_after(partner);
    }
  }
  if (components != boundaries)
    throw Error(ErrorKind::InvalidArcBasis, "arcs cut a surface with " + std::to_string(components) +
                                                " boundary components, expected " + std::to_string(boundaries));
  return p;
}

// ---------------------------------------------------------------- arrangement

Arrangement::Arrangement(const PageModel& page, std::vector<Strand> strands) : page_(&page), strands_(std::move(strands)) {
  along_.assign(page.arc_count(), {});
  for (int c = 0; c < strand_count(); ++c) {
    const auto& s = strands_[c];
    if (s.closed && s.word.empty()) throw Error(ErrorKind::InvalidMonodromy, "closed curve with empty word");
    for (int l = 0; l < static_cast<int>(s.word.size()); ++l) {
      const int arc = s.word[l].arc;
      if (arc < 0 || arc >= page.arc_count()) throw Error(ErrorKind::InvalidMonodromy, "word mentions arc " + std::to_string(arc + 1));
      along_[arc].push_back(Crossing{c, l});
    }
  }
  for (int a = 0; a < page.arc_count(); ++a) {
    const int r = page.right_side(a);
    // Counterclockwise along the right copy runs against the arc orientation.
    std::sort(along_[a].begin(), along_[a].end(), [&](const Crossing& x, const Crossing& y) { return later_ccw(r, x, y); });
    for (int i = 0; i < static_cast<int>(along_[a].size()); ++i) rank_[along_[a][i]] = i;
  }
}

int Arrangement::side_of_exit(const Letter& l) const { return l.dir > 0 ? page_->right_side(l.arc) : page_->left_side(l.arc); }
int Arrangement::side_of_entry(const Letter& l) const { return l.dir > 0 ? page_->left_side(l.arc) : page_->right_side(l.arc); }

std::pair<int, std::optional<Arrangement::Crossing>> Arrangement::other_end(const Crossing& x, int side) const {
  const auto& s = strands_[x.curve];
  const int n = static_cast<int>(s.word.size());
  if (side == side_of_exit(s.word[x.letter])) {
    if (!s.closed && x.letter == 0) return {s.start_piece, std::nullopt};
    const int prev = (x.letter - 1 + n) % n;
    return {side_of_entry(s.word[prev]), Crossing{x.curve, prev}};
  }
  if (!s.closed && x.letter + 1 == n) return {s.end_piece, std::nullopt};
  const int next = (x.letter + 1) % n;
  return {side_of_exit(s.word[next]), Crossing{x.curve, next}};
}

bool Arrangement::later_ccw(int side, Crossing x, Crossing y) const {
  const int K = page_->side_count();
  std::size_t limit = 8;
  for (const auto& s : strands_) limit += 2 * s.word.size();
  for (std::size_t step = 0; step < limit; ++step) {
    if (x == y) return false;
    const auto [sx, nx] = other_end(x, side);
    const auto [sy, ny] = other_end(y, side);
    const int ox = (sx - side + K) % K;
    const int oy = (sy - side + K) % K;
    if (ox == 0 || oy == 0) throw Error(ErrorKind::InvalidMonodromy, "word is not reduced (chord returns to the side it left)");
    if (ox != oy) return ox < oy;
    if (!nx || !ny) throw Error(ErrorKind::InvalidMonodromy, "two arcs end on the same boundary piece");
    if (*nx == *ny) return false;
    const auto& ps = page_->side(sx);
    side = ps.left_copy ? page_->right_side(ps.arc) : page_->left_side(ps.arc);
    x = *nx;
    y = *ny;
  }
  throw Error(ErrorKind::InvalidMonodromy, "strands run parallel forever (curve is not primitive)");
}

int Arrangement::chord_count(int c) const {
  const auto& s = strands_.at(c);
  return static_cast<int>(s.word.size()) + (s.closed ? 0 : 1);
}

int Arrangement::coordinate_rank(const Crossing& x) const { return rank_.at(x); }

Arrangement::Endpoint Arrangement::chord_entry(int c, int chord) const {
  const auto& s = strands_.at(c);
  const int n = static_cast<int>(s.word.size());
  if (!s.closed && chord == 0) return Endpoint{s.start_piece, 0, std::nullopt};
  const int prev = (chord - 1 + n) % n;
  const int side = side_of_entry(s.word[prev]);
  const Crossing x{c, prev};
  const int m = static_cast<int>(along_[s.word[prev].arc].size());
  const int r = rank_.at(x);
  return Endpoint{side, page_->side(side).left_copy ? r : m - 1 - r, x};
}

Arrangement::Endpoint Arrangement::chord_exit(int c, int chord) const {
  const auto& s = strands_.at(c);
  const int n = static_cast<int>(s.word.size());
  if (!s.closed && chord == n) return Endpoint{s.end_piece, 0, std::nullopt};
  const int side = side_of_exit(s.word[chord]);
  const Crossing x{c, chord};
  const int m = static_cast<int>(along_[s.word[chord].arc].size());
  const int r = rank_.at(x);
  return Endpoint{side, page_->side(side).left_copy ? r : m - 1 - r, x};
}

long Arrangement::perimeter() const {
  std::size_t w = 1;
  for (const auto& a : along_) w = std::max(w, a.size() + 1);
  return static_cast<long>(w) * page_->side_count();
}

long Arrangement::position(const Endpoint& e) const {
  std::size_t w = 1;
  for (const auto& a : along_) w = std::max(w, a.size() + 1);
  return static_cast<long>(e.side) * static_cast<long>(w) + e.rank;
}

bool Arrangement::chords_cross(int c1, int k1, int c2, int k2) const {
  long a = position(chord_entry(c1, k1)), b = position(chord_exit(c1, k1));
  const long c = position(chord_entry(c2, k2)), d = position(chord_exit(c2, k2));
  if (a > b) std::swap(a, b);
  const bool in_c = a < c && c < b;
  const bool in_d = a < d && d < b;
  return in_c != in_d;
}

int Arrangement::intersection_count(int c1, int c2) const {
  int count = 0;
  for (int i = 0; i < chord_count(c1); ++i)
    for (int j = (c1 == c2 ? i + 1 : 0); j < chord_count(c2); ++j)
      if (chords_cross(c1, i, c2, j)) ++count;
  return count;
}

// ---------------------------------------------------------------- arcs and twists

PageArc pushoff(const PageModel& page, int arc) {
  return PageArc{page.piece_after(page.right_side(arc)), page.piece_after(page.left_side(arc)), Word{Letter{arc, 1}}};
}

std::vector<PageArc> pushoff_arcs(const PageModel& page) {
  std::vector<PageArc> out;
  for (int a = 0; a < page.arc_count(); ++a) out.push_back(pushoff(page, a));
  return out;
}

std::vector<std::string> catalog_names(const PageModel& page) {
  if (!page.is_standard()) return {};
  if (page.genus() == 0 && page.boundaries() == 2) return {"c"};
  if (page.genus() == 1 && page.boundaries() == 1) return {"a", "b", "ab", "d"};
  return {};
}

ClosedCurve catalog_curve(const PageModel& page, const std::string& name) {
  const auto names = catalog_names(page);
  if (names.empty())
    throw Error(ErrorKind::UnsupportedPage, "no twist catalog for page g=" + std::to_string(page.genus()) +
                                                " b=" + std::to_string(page.boundaries()) + "; give PHI_B words instead");
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw Error(ErrorKind::UnknownCurve, "curve '" + name + "' is not in the catalog for this page");
  if (name == "c") return ClosedCurve{{{0, 1}}};
  if (name == "a") return ClosedCurve{{{0, 1}}};
  if (name == "b") return ClosedCurve{{{1, 1}}};
  if (name == "ab") return ClosedCurve{{{0, 1}, {1, 1}}};
  return ClosedCurve{{{1, -1}, {0, -1}, {1, 1}, {0, 1}}};  // "d", parallel to the boundary
}

PageArc apply_twist(const PageModel& page, const PageArc& arc, const ClosedCurve& curve, int power) {
  PageArc out = arc;
  const bool right = power > 0;
  const Word c = reduce_cyclic(curve.word);
  const int m = static_cast<int>(c.size());
  for (int step = 0; step < std::abs(power); ++step) {
    Arrangement arr(page, {Arrangement::Strand{false, out.start_piece, out.end_piece, out.word}, Arrangement::Strand{true, -1, -1, c}});
    const long P = arr.perimeter();
    const int n = static_cast<int>(out.word.size());
    Word result;
    for (int k = 0; k <= n; ++k) {
      const long p = arr.position(arr.chord_entry(0, k));
      const long q = arr.position(arr.chord_exit(0, k));
      const long dq = (q - p + P) % P;
      struct Hit {
        long dist;
        int chord;
        bool right_is_exit;
      };
      std::vector<Hit> hits;
      for (int j = 0; j < m; ++j) {
        if (!arr.chords_cross(0, k, 1, j)) continue;
        const long du = (arr.position(arr.chord_entry(1, j)) - p + P) % P;
        const long dv = (arr.position(arr.chord_exit(1, j)) - p + P) % P;
        // the counterclockwise boundary arc from p to q lies to the right of the chord
        if (du < dq) hits.push_back({du, j, false});
        else hits.push_back({dv, j, true});
      }
      std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.dist < b.dist; });
      for (const auto& h : hits) {
        const bool forward = right ? h.right_is_exit : !h.right_is_exit;
        for (int t = 0; t < m; ++t) {
          if (forward) result.push_back(c[(h.chord + t) % m]);
          else result.push_back(c[((h.chord - 1 - t) % m + m) % m].inverse());
        }
      }
      if (k < n) result.push_back(out.word[k]);
    }
    out.word = reduce(std::move(result));
  }
  return out;
}

std::vector<PageArc> apply_monodromy(const PageModel& page, std::vector<PageArc> arcs, const std::vector<Twist>& word) {
  for (const auto& t : word) {
    const ClosedCurve c = catalog_curve(page, t.curve);
    for (auto& a : arcs) a = apply_twist(page, a, c, t.power);
  }
  return arcs;
}

namespace {

std::vector<Arrangement::Strand> strands_of(const std::vector<PageArc>& arcs) {
  std::vector<Arrangement::Strand> out;
  for (const auto& a : arcs) out.push_back(Arrangement::Strand{false, a.start_piece, a.end_piece, a.word});
  return out;
}

}  // namespace

// ---------------------------------------------------------------- file format

OpenBookSpec parse_openbook(std::istream& in) {
  OpenBookSpec spec;
  bool have_header = false;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& msg) { return Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + msg); };
  auto parse_int = [&](const std::string& t) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw fail("expected integer, got '" + t + "'");
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    std::string directive;
    if (!(ss >> directive)) continue;
    std::string rest;
    std::getline(ss, rest);
    std::istringstream rs(rest);
    std::vector<std::string> tokens;
    for (std::string t; rs >> t;) tokens.push_back(t);

    if (directive == "OB") {
      if (tokens.size() != 2 || tokens[0].rfind("g=", 0) != 0 || tokens[1].rfind("b=", 0) != 0) throw fail("OB g=<int> b=<int>");
      spec.genus = parse_int(tokens[0].substr(2));
      spec.boundaries = parse_int(tokens[1].substr(2));
      have_header = true;
    } else if (!have_header) {
      throw fail("OB header must come first");
    } else if (directive == "TWIST") {
      for (const auto& t : tokens) {
        const auto caret = t.find('^');
        Twist tw;
        tw.curve = t.substr(0, caret);
        tw.power = caret == std::string::npos ? 1 : parse_int(t.substr(caret + 1));
        if (tw.curve.empty()) throw fail("empty curve name");
        spec.twists.push_back(tw);
      }
    } else if (directive == "PHI_B") {
      const auto colon = rest.find(':');
      if (colon == std::string::npos) throw fail("PHI_B <i>: <word>");
      std::string idx = rest.substr(0, colon);
      idx.erase(std::remove_if(idx.begin(), idx.end(), ::isspace), idx.end());
      const int i = parse_int(idx);
      if (i < 1) throw fail("arc numbers start at 1");
      if (spec.phi_b.count(i - 1)) throw fail("PHI_B given twice for the same arc");
      spec.phi_b[i - 1] = parse_word(rest.substr(colon + 1));
    } else if (directive == "ARCS") {
      std::vector<int> labels;
      for (const auto& t : tokens) labels.push_back(parse_int(t));
      spec.arc_labels = labels;
    } else {
      throw fail("unknown directive '" + directive + "'");
    }
  }
  if (!have_header) throw Error(ErrorKind::Parse, "missing OB header");
  if (!spec.twists.empty() && !spec.phi_b.empty()) throw Error(ErrorKind::Parse, "use either TWIST or PHI_B, not both");
  return spec;
}

OpenBookSpec parse_openbook_string(const std::string& text) {
  std::istringstream in(text);
  return parse_openbook(in);
}

PageModel page_of(const OpenBookSpec& spec) {
  if (spec.arc_labels) return PageModel::from_labels(spec.genus, spec.boundaries, *spec.arc_labels);
  return PageModel::standard(spec.genus, spec.boundaries);
}

// ---------------------------------------------------------------- diagram construction

namespace {

struct TileSegment {
  int side = 0;
  int interval = 0;  // arc side: slot along the arc; boundary piece: 0 before the arc endpoint, 1 after
};

struct TileChord {
  int curve = 0;
  int chord = 0;
  bool entry_to_exit = true;
};

struct Tile {
  std::vector<TileSegment> segments;
  std::vector<TileChord> chords;
};

// Faces of the polygon cut by the (pairwise disjoint) chords, each traced
// counterclockwise.
std::vector<Tile> trace_tiles(const PageModel& page, const Arrangement& arr) {
  struct Event {
    bool corner = true;
    int side = 0;
    int rank = 0;
    int curve = -1;
    int chord = -1;
    bool entry = false;
  };
  std::vector<Event> events;
  std::map<std::tuple<int, int, bool>, int> where;
  for (int s = 0; s < page.side_count(); ++s) {
    events.push_back(Event{true, s});
    const auto& ps = page.side(s);
    if (ps.type == SideType::Boundary) {
      for (int c = 0; c < arr.strand_count(); ++c) {
        const auto& st = arr.strand(c);
        if (st.start_piece == s) events.push_back(Event{false, s, 0, c, 0, true});
        if (st.end_piece == s) events.push_back(Event{false, s, 0, c, arr.chord_count(c) - 1, false});
      }
      continue;
    }
    auto xs = arr.along_arc(ps.arc);
    if (!ps.left_copy) std::reverse(xs.begin(), xs.end());
    int rank = 0;
    for (const auto& x : xs) {
      const auto& st = arr.strand(x.curve);
      const Letter& l = st.word[x.letter];
      const int exit_side = l.dir > 0 ? page.right_side(l.arc) : page.left_side(l.arc);
      if (exit_side == s) {
        events.push_back(Event{false, s, rank, x.curve, x.letter, false});
      } else {
        const int n = static_cast<int>(st.word.size());
        events.push_back(Event{false, s, rank, x.curve, st.closed ? (x.letter + 1) % n : x.letter + 1, true});
      }
      ++rank;
    }
  }
  for (int i = 0; i < static_cast<int>(events.size()); ++i)
    if (!events[i].corner) where[{events[i].curve, events[i].chord, events[i].entry}] = i;

  const int E = static_cast<int>(events.size());
  auto segment_info = [&](int i) {
    const Event& e = events[i];
    const auto& ps = page.side(e.side);
    if (ps.type == SideType::Boundary) return TileSegment{e.side, e.corner ? 0 : 1};
    const int m = static_cast<int>(arr.along_arc(ps.arc).size());
    int u = 0;
    if (ps.left_copy) u = e.corner ? 0 : e.rank + 1;
    else u = e.corner ? m : m - 1 - e.rank;
    return TileSegment{e.side, u};
  };
  std::vector<bool> seen(E, false);
  std::vector<Tile> tiles;
  for (int start = 0; start < E; ++start) {
    if (seen[start]) continue;
    Tile t;
    int i = start;
    do {
      seen[i] = true;
      t.segments.push_back(segment_info(i));
      const Event& next = events[(i + 1) % E];
      if (next.corner) {
        i = (i + 1) % E;
      } else {
        t.chords.push_back(TileChord{next.curve, next.chord, next.entry});
        i = where.at({next.curve, next.chord, !next.entry});
      }
    } while (i != start);
    tiles.push_back(std::move(t));
  }
  return tiles;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

void check_embedded(const PageModel& page, const std::vector<PageArc>& arcs) {
  if (static_cast<int>(arcs.size()) != page.arc_count()) throw Error(ErrorKind::InvalidMonodromy, "need one image arc per basis arc");
  for (int i = 0; i < page.arc_count(); ++i) {
    const PageArc b = pushoff(page, i);
    if (arcs[i].start_piece != b.start_piece || arcs[i].end_piece != b.end_piece)
      throw Error(ErrorKind::InvalidMonodromy, "image of b_" + std::to_string(i + 1) + " must keep its endpoints");
    if (reduce(arcs[i].word) != arcs[i].word)
      throw Error(ErrorKind::InvalidMonodromy, "word of phi(b_" + std::to_string(i + 1) + ") is not reduced");
  }
  const Arrangement arr(page, strands_of(arcs));
  for (int c1 = 0; c1 < arr.strand_count(); ++c1)
    for (int c2 = c1; c2 < arr.strand_count(); ++c2)
      if (arr.intersection_count(c1, c2) != 0)
        throw Error(ErrorKind::InvalidMonodromy, "phi(b_" + std::to_string(c1 + 1) + ") and phi(b_" + std::to_string(c2 + 1) + ") intersect");
  // the arcs must cut the page into a single disk
  const auto tiles = trace_tiles(page, arr);
  UnionFind uf(static_cast<int>(tiles.size()));
  std::map<std::pair<int, int>, int> seen;
  for (int t = 0; t < static_cast<int>(tiles.size()); ++t)
    for (const auto& seg : tiles[t].segments) {
      const auto& ps = page.side(seg.side);
      if (ps.type != SideType::Arc) continue;
      auto [it, fresh] = seen.emplace(std::pair{ps.arc, seg.interval}, t);
      if (!fresh) uf.unite(it->second, t);
    }
  for (int t = 1; t < static_cast<int>(tiles.size()); ++t)
    if (uf.find(t) != uf.find(0)) throw Error(ErrorKind::InvalidMonodromy, "the image arcs do not cut the page into a disk");
}

BuiltDiagram build_diagram(const OpenBookSpec& spec) {
  const PageModel page = page_of(spec);
  const int G = page.arc_count();
  const std::vector<PageArc> bs = pushoff_arcs(page);
  std::vector<PageArc> phis;
  if (!spec.phi_b.empty()) {
    phis = bs;
    for (const auto& [i, w] : spec.phi_b) {
      if (i >= G) throw Error(ErrorKind::InvalidMonodromy, "PHI_B for arc " + std::to_string(i + 1) + " but G=" + std::to_string(G));
      phis[i].word = reduce(w);
    }
  } else {
    phis = apply_monodromy(page, bs, spec.twists);
  }
  check_embedded(page, phis);

  const Arrangement half(page, strands_of(bs));
  const Arrangement zero(page, strands_of(phis));

  RawDiagram raw;
  raw.g_count = G;
  raw.notes.push_back("open book g=" + std::to_string(page.genus()) + " b=" + std::to_string(page.boundaries()));
  for (int i = 0; i < G; ++i) raw.notes.push_back("PHI_B " + std::to_string(i + 1) + ": " + format_word(phis[i].word));
  std::map<Arrangement::Crossing, int> zero_id;
  for (int i = 0; i < G; ++i) raw.points.push_back(RawPoint{i, i, i, 1});
  int next_id = G;
  for (int i = 0; i < G; ++i)
    for (int l = 0; l < static_cast<int>(phis[i].word.size()); ++l) {
      const Letter& let = phis[i].word[l];
      zero_id[{i, l}] = next_id;
      // S x {0} carries the reversed orientation and both curves run backwards there.
      raw.points.push_back(RawPoint{next_id, let.arc, i, -let.dir});
      ++next_id;
    }
  raw.alpha_orders.assign(G, {});
  raw.beta_orders.assign(G, {});
  std::vector<int> zero_count(G);
  for (int j = 0; j < G; ++j) {
    raw.alpha_orders[j].push_back(j);
    const auto& xs = zero.along_arc(j);
    zero_count[j] = static_cast<int>(xs.size());
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) raw.alpha_orders[j].push_back(zero_id.at(*it));
  }
  for (int i = 0; i < G; ++i) {
    raw.beta_orders[i].push_back(i);
    for (int l = static_cast<int>(phis[i].word.size()) - 1; l >= 0; --l) raw.beta_orders[i].push_back(zero_id.at({i, l}));
  }
  raw.contact = std::vector<int>(G);
  std::iota(raw.contact->begin(), raw.contact->end(), 0);

  // Regions: tiles of both halves glued along the boundary intervals.
  const std::vector<Tile> tiles_half = trace_tiles(page, half);
  const std::vector<Tile> tiles_zero = trace_tiles(page, zero);
  const int T1 = static_cast<int>(tiles_half.size());
  const int T = T1 + static_cast<int>(tiles_zero.size());

  auto sides_of_tile = [&](const Tile& t, bool is_zero) {
    std::vector<SegmentSide> out;
    for (const auto& s : t.segments) {
      const auto& ps = page.side(s.side);
      if (ps.type == SideType::Boundary) continue;
      const int m = zero_count[ps.arc];
      const int edge = is_zero ? m - s.interval : (s.interval == 1 ? 0 : m);
      const bool along = ps.left_copy == !is_zero;
      const bool left = is_zero ? !along : along;
      out.push_back(SegmentSide{SegmentRef{CurveKind::Alpha, ps.arc, edge}, left ? Side::Left : Side::Right});
    }
    for (const auto& c : t.chords) {
      const int n = static_cast<int>(phis[c.curve].word.size());
      int edge = 0;
      bool along = true;
      if (is_zero) {
        edge = n - c.chord;
        along = !c.entry_to_exit;
      } else {
        edge = c.chord == 0 ? n : 0;
        along = c.entry_to_exit;
      }
      const bool left = is_zero ? !along : along;
      out.push_back(SegmentSide{SegmentRef{CurveKind::Beta, c.curve, edge}, left ? Side::Left : Side::Right});
    }
    return out;
  };

  UnionFind uf(T);
  std::map<std::pair<int, int>, std::vector<int>> interval_tiles;
  for (int t = 0; t < T; ++t) {
    const Tile& tile = t < T1 ? tiles_half[t] : tiles_zero[t - T1];
    for (const auto& s : tile.segments)
      if (page.side(s.side).type == SideType::Boundary) interval_tiles[{s.side, s.interval}].push_back(t);
  }
  for (const auto& [key, ts] : interval_tiles) {
    if (ts.size() != 2) throw Error(ErrorKind::InvalidMonodromy, "boundary interval not shared by exactly two tiles");
    uf.unite(ts[0], ts[1]);
  }
  std::vector<int> tiles_in(T, 0), intervals_in(T, 0);
  for (int t = 0; t < T; ++t) ++tiles_in[uf.find(t)];
  for (const auto& [key, ts] : interval_tiles) ++intervals_in[uf.find(ts[0])];

  std::map<SegmentSide, int> side_region;
  for (int t = 0; t < T; ++t) {
    const bool is_zero = t >= T1;
    for (const auto& s : sides_of_tile(is_zero ? tiles_zero[t - T1] : tiles_half[t], is_zero)) {
      auto [it, fresh] = side_region.emplace(s, uf.find(t));
      if (!fresh && it->second != uf.find(t))
        throw Error(ErrorKind::OpenFaceTrace, "segment side " + format_segment_side(s) + " borders two different regions");
    }
  }

  const auto cycles = trace_boundary_cycles(raw);
  std::map<int, std::vector<int>> region_cycles;
  std::vector<int> order;
  for (int c = 0; c < static_cast<int>(cycles.size()); ++c) {
    const int r = side_region.at(cycles[c].front());
    for (const auto& s : cycles[c])
      if (side_region.at(s) != r) throw Error(ErrorKind::OpenFaceTrace, "traced boundary cycle leaves its region");
    if (!region_cycles.count(r)) order.push_back(r);
    region_cycles[r].push_back(c);
  }
  for (int r : order) {
    const int b = static_cast<int>(region_cycles[r].size());
    const int chi = tiles_in[r] - intervals_in[r];
    const int twice_genus = 2 - chi - b;
    if (twice_genus < 0 || twice_genus % 2 != 0) throw Error(ErrorKind::GenusMismatch, "region with inconsistent topology");
    if (b == 1 && twice_genus == 0) continue;
    RegionSpec spec_r;
    spec_r.genus = twice_genus / 2;
    for (int c : region_cycles[r]) spec_r.boundaries.push_back(cycles[c].front());
    raw.regions.push_back(std::move(spec_r));
  }

  // Basepoint: the tile of S x {1/2} containing the boundary interval just
  // after the endpoint of b_1 that follows the right copy of a_1.
  const int piece = page.piece_after(page.right_side(0));
  const int big = interval_tiles.at({piece, 1})[0];
  const auto big_sides = sides_of_tile(tiles_half.at(big), false);
  raw.basepoint = *std::min_element(big_sides.begin(), big_sides.end());

  BuiltDiagram out{page, phis, raw, validate(raw)};
  return out;
}

}  // namespace jplus::openbook
