#include "jplus/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "jplus/error.hpp"

namespace jplus {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& text, int line_no) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected integer, got '" + text + "'");
  }
}

std::string expect_key(const std::string& token, const std::string& key, int line_no) {
  if (token.rfind(key + "=", 0) != 0)
    throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected " + key + "=...");
  return token.substr(key.size() + 1);
}

std::vector<int> parse_id_list(const std::string& text, int line_no) {
  std::vector<int> ids;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    ids.push_back(parse_int(item, line_no));
  }
  return ids;
}

// "ALPHA 3: 1,2,3" -> (2, [1,2,3])
std::pair<int, std::vector<int>> parse_curve_line(const std::string& rest, int line_no) {
  const auto colon = rest.find(':');
  if (colon == std::string::npos)
    throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": missing ':' in curve order");
  const int curve = parse_int(trim(rest.substr(0, colon)), line_no);
  if (curve < 1) throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": curve numbers start at 1");
  return {curve - 1, parse_id_list(rest.substr(colon + 1), line_no)};
}

std::string join_ids(const std::vector<int>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids[i]);
  }
  return out;
}

// Points, edges, rotation system and traced faces, without region grouping.
struct Ribbon {
  std::vector<Point> points;
  std::vector<std::vector<int>> alpha_orders, beta_orders;  // point indices
  std::vector<Edge> edges;
  std::vector<std::vector<int>> alpha_edges, beta_edges;
  std::vector<std::array<int, 4>> rotation;
  std::vector<std::vector<int>> faces;  // dart cycles
  std::vector<int> dart_face;
  std::map<int, int> index_of_id;
};

void fill_orders(const RawDiagram& raw, CurveKind kind, Ribbon& rb) {
  const auto& orders = kind == CurveKind::Alpha ? raw.alpha_orders : raw.beta_orders;
  auto& out = kind == CurveKind::Alpha ? rb.alpha_orders : rb.beta_orders;
  const char* name = kind == CurveKind::Alpha ? "alpha" : "beta";
  if (static_cast<int>(orders.size()) != raw.g_count)
    throw Error(ErrorKind::InconsistentCurve, std::string("expected ") + std::to_string(raw.g_count) + " " + name + " curves");
  std::vector<int> seen(rb.points.size(), 0);
  out.assign(orders.size(), {});
  for (std::size_t c = 0; c < orders.size(); ++c) {
    if (orders[c].empty()) throw Error(ErrorKind::EmptyCurve, std::string(name) + " " + std::to_string(c + 1) + " has no points");
    for (std::size_t k = 0; k < orders[c].size(); ++k) {
      const int id = orders[c][k];
      auto it = rb.index_of_id.find(id);
      if (it == rb.index_of_id.end())
        throw Error(ErrorKind::InconsistentCurve, "unknown point " + std::to_string(id) + " on " + name + " " + std::to_string(c + 1));
      Point& p = rb.points[it->second];
      if (++seen[it->second] > 1) throw Error(ErrorKind::DuplicatePoint, "point " + std::to_string(id) + " listed twice in " + name + " orders");
      const int want = kind == CurveKind::Alpha ? p.alpha : p.beta;
      if (want != static_cast<int>(c))
        throw Error(ErrorKind::InconsistentCurve, "point " + std::to_string(id) + " is not on " + name + " " + std::to_string(c + 1));
      (kind == CurveKind::Alpha ? p.alpha_pos : p.beta_pos) = static_cast<int>(k);
      out[c].push_back(it->second);
    }
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i] == 0) throw Error(ErrorKind::InconsistentCurve, "point " + std::to_string(rb.points[i].id) + " missing from " + name + " orders");
}

Ribbon build_ribbon(const RawDiagram& raw) {
  if (raw.g_count < 1) throw Error(ErrorKind::Parse, "G must be positive");
  Ribbon rb;
  for (const auto& p : raw.points) {
    if (p.alpha < 0 || p.alpha >= raw.g_count || p.beta < 0 || p.beta >= raw.g_count)
      throw Error(ErrorKind::InconsistentCurve, "point " + std::to_string(p.id) + " references a curve out of range");
    if (!rb.index_of_id.emplace(p.id, 0).second) throw Error(ErrorKind::DuplicatePoint, "point id " + std::to_string(p.id) + " defined twice");
  }
  std::vector<RawPoint> sorted = raw.points;
  std::sort(sorted.begin(), sorted.end(), [](const RawPoint& a, const RawPoint& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    rb.index_of_id[sorted[i].id] = static_cast<int>(i);
    rb.points.push_back(Point{sorted[i].id, sorted[i].alpha, sorted[i].beta, sorted[i].sign >= 0 ? 1 : -1, 0, 0});
  }
  fill_orders(raw, CurveKind::Alpha, rb);
  fill_orders(raw, CurveKind::Beta, rb);

  const std::size_t n = rb.points.size();
  // out/in darts per point: [alpha_out, beta_out, alpha_in, beta_in]
  std::vector<std::array<int, 4>> germs(n);
  auto add_curve_edges = [&](CurveKind kind, const std::vector<std::vector<int>>& orders, std::vector<std::vector<int>>& curve_edges) {
    curve_edges.assign(orders.size(), {});
    for (std::size_t c = 0; c < orders.size(); ++c) {
      const auto& ord = orders[c];
      for (std::size_t k = 0; k < ord.size(); ++k) {
        const int e = static_cast<int>(rb.edges.size());
        const int from = ord[k];
        const int to = ord[(k + 1) % ord.size()];
        rb.edges.push_back(Edge{SegmentRef{kind, static_cast<int>(c), static_cast<int>(k)}, from, to});
        curve_edges[c].push_back(e);
        const int out_slot = kind == CurveKind::Alpha ? 0 : 1;
        germs[from][out_slot] = 2 * e;
        germs[to][out_slot + 2] = 2 * e + 1;
      }
    }
  };
  add_curve_edges(CurveKind::Alpha, rb.alpha_orders, rb.alpha_edges);
  add_curve_edges(CurveKind::Beta, rb.beta_orders, rb.beta_edges);

  rb.rotation.resize(n);
  std::vector<std::array<int, 2>> dart_slot(2 * rb.edges.size(), {-1, -1});  // (point, position)
  for (std::size_t i = 0; i < n; ++i) {
    const auto& g = germs[i];
    rb.rotation[i] = rb.points[i].sign > 0 ? std::array<int, 4>{g[0], g[1], g[2], g[3]}
                                           : std::array<int, 4>{g[0], g[3], g[2], g[1]};
    for (int k = 0; k < 4; ++k) dart_slot[rb.rotation[i][k]] = {static_cast<int>(i), k};
  }

  auto head = [&](int dart) {
    const Edge& e = rb.edges[dart / 2];
    return dart % 2 == 0 ? e.to : e.from;
  };
  rb.dart_face.assign(2 * rb.edges.size(), -1);
  for (int start = 0; start < static_cast<int>(rb.dart_face.size()); ++start) {
    if (rb.dart_face[start] >= 0) continue;
    const int face = static_cast<int>(rb.faces.size());
    rb.faces.emplace_back();
    int d = start;
    do {
      if (rb.dart_face[d] >= 0) throw Error(ErrorKind::OpenFaceTrace, "dart visited twice while tracing");
      rb.dart_face[d] = face;
      rb.faces.back().push_back(d);
      const int r = d ^ 1;
      const auto [v, pos] = dart_slot[r];
      if (v != head(d)) throw Error(ErrorKind::OpenFaceTrace, "rotation system does not close at point " + std::to_string(rb.points[head(d)].id));
      d = rb.rotation[v][(pos + 3) % 4];
    } while (d != start);
  }
  return rb;
}

int face_of(const Ribbon& rb, const SegmentSide& s) {
  const auto& curves = s.segment.kind == CurveKind::Alpha ? rb.alpha_edges : rb.beta_edges;
  if (s.segment.curve < 0 || s.segment.curve >= static_cast<int>(curves.size()) || s.segment.segment < 0 ||
      s.segment.segment >= static_cast<int>(curves[s.segment.curve].size()))
    return -1;
  const int e = curves[s.segment.curve][s.segment.segment];
  return rb.dart_face[2 * e + (s.side == Side::Left ? 0 : 1)];
}

SegmentSide side_of_dart(const Ribbon& rb, int dart) {
  return SegmentSide{rb.edges[dart / 2].ref, dart % 2 == 0 ? Side::Left : Side::Right};
}

}  // namespace

std::string format_segment_side(const SegmentSide& s) {
  return std::string(s.segment.kind == CurveKind::Alpha ? "a" : "b") + std::to_string(s.segment.curve + 1) + "." +
         std::to_string(s.segment.segment) + ":" + (s.side == Side::Left ? "L" : "R");
}

std::optional<SegmentSide> parse_segment_side(const std::string& text) {
  if (text.size() < 6) return std::nullopt;
  SegmentSide s;
  if (text[0] == 'a') s.segment.kind = CurveKind::Alpha;
  else if (text[0] == 'b') s.segment.kind = CurveKind::Beta;
  else return std::nullopt;
  const auto dot = text.find('.');
  const auto colon = text.find(':');
  if (dot == std::string::npos || colon == std::string::npos || colon < dot || colon + 2 != text.size()) return std::nullopt;
  try {
    std::size_t used = 0;
    const std::string c = text.substr(1, dot - 1), g = text.substr(dot + 1, colon - dot - 1);
    s.segment.curve = std::stoi(c, &used) - 1;
    if (used != c.size()) return std::nullopt;
    s.segment.segment = std::stoi(g, &used);
    if (used != g.size()) return std::nullopt;
    if (s.segment.curve < 0 || s.segment.segment < 0) return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (text[colon + 1] == 'L') s.side = Side::Left;
  else if (text[colon + 1] == 'R') s.side = Side::Right;
  else return std::nullopt;
  return s;
}

RawDiagram parse_diagram(std::istream& in) {
  RawDiagram raw;
  bool have_header = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string directive;
    ss >> directive;
    std::string rest;
    std::getline(ss, rest);
    rest = trim(rest);
    std::istringstream rs(rest);
    std::vector<std::string> tokens;
    for (std::string t; rs >> t;) tokens.push_back(t);
    const std::string where = "line " + std::to_string(line_no);

    if (directive == "HD") {
      if (tokens.size() != 1) throw Error(ErrorKind::Parse, where + ": HD G=<int>");
      raw.g_count = parse_int(expect_key(tokens[0], "G", line_no), line_no);
      have_header = true;
    } else if (!have_header) {
      throw Error(ErrorKind::Parse, where + ": HD header must come first");
    } else if (directive == "PT") {
      if (tokens.size() != 4) throw Error(ErrorKind::Parse, where + ": PT <id> a=<i> b=<j> sign=<+|->");
      RawPoint p;
      p.id = parse_int(tokens[0], line_no);
      p.alpha = parse_int(expect_key(tokens[1], "a", line_no), line_no) - 1;
      p.beta = parse_int(expect_key(tokens[2], "b", line_no), line_no) - 1;
      const std::string sign = expect_key(tokens[3], "sign", line_no);
      if (sign == "+") p.sign = 1;
      else if (sign == "-") p.sign = -1;
      else throw Error(ErrorKind::Parse, where + ": sign must be + or -");
      raw.points.push_back(p);
    } else if (directive == "ALPHA" || directive == "BETA") {
      auto [curve, ids] = parse_curve_line(rest, line_no);
      auto& orders = directive == "ALPHA" ? raw.alpha_orders : raw.beta_orders;
      if (curve >= static_cast<int>(orders.size())) orders.resize(curve + 1);
      if (!orders[curve].empty()) throw Error(ErrorKind::Parse, where + ": curve order given twice");
      orders[curve] = std::move(ids);
    } else if (directive == "BASEPOINT") {
      if (tokens.size() != 1) throw Error(ErrorKind::Parse, where + ": BASEPOINT <segment-side>");
      raw.basepoint = parse_segment_side(tokens[0]);
      if (!raw.basepoint) throw Error(ErrorKind::Parse, where + ": bad segment side '" + tokens[0] + "'");
    } else if (directive == "REGION") {
      RegionSpec spec;
      for (const auto& t : tokens) {
        if (t.rfind("genus=", 0) == 0) {
          spec.genus = parse_int(t.substr(6), line_no);
        } else {
          auto s = parse_segment_side(t);
          if (!s) throw Error(ErrorKind::Parse, where + ": bad segment side '" + t + "'");
          spec.boundaries.push_back(*s);
        }
      }
      if (spec.boundaries.empty()) throw Error(ErrorKind::Parse, where + ": REGION needs at least one boundary");
      raw.regions.push_back(std::move(spec));
    } else if (directive == "CONTACT") {
      raw.contact = parse_id_list(rest, line_no);
    } else {
      throw Error(ErrorKind::Parse, where + ": unknown directive '" + directive + "'");
    }
  }
  if (!have_header) throw Error(ErrorKind::Parse, "missing HD header");
  return raw;
}

RawDiagram parse_diagram_string(const std::string& text) {
  std::istringstream in(text);
  return parse_diagram(in);
}

std::string format_diagram(const RawDiagram& raw) {
  std::ostringstream out;
  for (const auto& n : raw.notes) out << "# " << n << "\n";
  out << "HD G=" << raw.g_count << "\n";
  for (const auto& p : raw.points)
    out << "PT " << p.id << " a=" << p.alpha + 1 << " b=" << p.beta + 1 << " sign=" << (p.sign > 0 ? '+' : '-') << "\n";
  for (std::size_t i = 0; i < raw.alpha_orders.size(); ++i) out << "ALPHA " << i + 1 << ": " << join_ids(raw.alpha_orders[i]) << "\n";
  for (std::size_t i = 0; i < raw.beta_orders.size(); ++i) out << "BETA " << i + 1 << ": " << join_ids(raw.beta_orders[i]) << "\n";
  for (const auto& r : raw.regions) {
    out << "REGION";
    for (const auto& b : r.boundaries) out << " " << format_segment_side(b);
    out << " genus=" << r.genus << "\n";
  }
  if (raw.basepoint) out << "BASEPOINT " << format_segment_side(*raw.basepoint) << "\n";
  if (raw.contact) out << "CONTACT " << join_ids(*raw.contact) << "\n";
  return out.str();
}

std::vector<std::vector<SegmentSide>> trace_boundary_cycles(const RawDiagram& raw) {
  const Ribbon rb = build_ribbon(raw);
  std::vector<std::vector<SegmentSide>> out;
  for (const auto& f : rb.faces) {
    out.emplace_back();
    for (int d : f) out.back().push_back(side_of_dart(rb, d));
  }
  return out;
}

std::optional<int> PointedDiagram::point_index(int id) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), id, [](const Point& p, int v) { return p.id < v; });
  if (it == points_.end() || it->id != id) return std::nullopt;
  return static_cast<int>(it - points_.begin());
}

int PointedDiagram::edge_index(const SegmentRef& ref) const {
  return curve_edges(ref.kind, ref.curve)[ref.segment];
}

std::span<const int> PointedDiagram::curve_edges(CurveKind kind, int curve) const {
  return kind == CurveKind::Alpha ? std::span<const int>(alpha_edges_.at(curve)) : std::span<const int>(beta_edges_.at(curve));
}

int PointedDiagram::tail(int dart) const {
  const Edge& e = edges_.at(dart / 2);
  return dart % 2 == 0 ? e.from : e.to;
}

int PointedDiagram::head(int dart) const {
  const Edge& e = edges_.at(dart / 2);
  return dart % 2 == 0 ? e.to : e.from;
}

int PointedDiagram::region_of(const SegmentSide& s) const {
  const int e = edge_index(s.segment);
  return dart_region(2 * e + (s.side == Side::Left ? 0 : 1));
}

PointedDiagram validate(const RawDiagram& raw) {
  Ribbon rb = build_ribbon(raw);
  const int faces = static_cast<int>(rb.faces.size());

  // group faces into regions
  std::vector<int> face_spec(faces, -1);
  for (std::size_t s = 0; s < raw.regions.size(); ++s) {
    const auto& spec = raw.regions[s];
    if (spec.genus < 0) throw Error(ErrorKind::InvalidRegionSpec, "negative region genus");
    for (const auto& b : spec.boundaries) {
      const int f = face_of(rb, b);
      if (f < 0) throw Error(ErrorKind::InvalidRegionSpec, "no such segment " + format_segment_side(b));
      if (face_spec[f] >= 0)
        throw Error(ErrorKind::InvalidRegionSpec, "boundary cycle of " + format_segment_side(b) + " already assigned to a region");
      face_spec[f] = static_cast<int>(s);
    }
  }
  // Regions are numbered by their smallest dart, which is the order faces were traced in.
  std::vector<int> face_region(faces, -1);
  std::vector<int> spec_region(raw.regions.size(), -1);
  PointedDiagram d;
  for (int f = 0; f < faces; ++f) {
    int& target = face_spec[f] >= 0 ? spec_region[face_spec[f]] : face_region[f];
    if (target < 0) {
      target = static_cast<int>(d.regions_.size());
      Region r;
      r.id = target;
      r.boundary_circles = 0;
      r.genus = face_spec[f] >= 0 ? raw.regions[face_spec[f]].genus : 0;
      d.regions_.push_back(r);
    }
    face_region[f] = target;
    Region& r = d.regions_[target];
    r.boundary_circles += 1;
    r.boundary.push_back(rb.faces[f]);
  }

  // corners: arriving along dart a, leaving along the next dart b, the face
  // occupies the wedge from b counterclockwise to reverse(a).
  d.quadrant_region_.assign(rb.points.size(), {-1, -1, -1, -1});
  for (int f = 0; f < faces; ++f) {
    const auto& cyc = rb.faces[f];
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      const int leave = cyc[(k + 1) % cyc.size()];
      const Edge& e = rb.edges[leave / 2];
      const int v = leave % 2 == 0 ? e.from : e.to;
      const auto& rot = rb.rotation[v];
      const int q = static_cast<int>(std::find(rot.begin(), rot.end(), leave) - rot.begin());
      d.quadrant_region_[v][q] = face_region[f];
      d.regions_[face_region[f]].corners.push_back(Corner{v, q});
    }
  }
  for (auto& r : d.regions_) std::sort(r.corners.begin(), r.corners.end());

  const int V = static_cast<int>(rb.points.size());
  const int E = static_cast<int>(rb.edges.size());
  int chi = V - E;
  for (const auto& r : d.regions_) chi += r.euler_characteristic();
  if (chi % 2 != 0 || chi > 2)
    throw Error(ErrorKind::GenusMismatch, "traced surface has Euler characteristic " + std::to_string(chi));
  d.surface_genus_ = (2 - chi) / 2;
  if (d.surface_genus_ != raw.g_count)
    throw Error(ErrorKind::GenusMismatch,
                "traced surface has genus " + std::to_string(d.surface_genus_) + " but G=" + std::to_string(raw.g_count));

  if (!raw.basepoint) throw Error(ErrorKind::MissingBasepoint, "no BASEPOINT directive");
  const int bf = face_of(rb, *raw.basepoint);
  if (bf < 0) throw Error(ErrorKind::MissingBasepoint, "basepoint segment " + format_segment_side(*raw.basepoint) + " does not exist");
  d.basepoint_region_ = face_region[bf];

  if (raw.contact) {
    std::vector<int> pts;
    for (int id : *raw.contact) {
      auto it = rb.index_of_id.find(id);
      if (it == rb.index_of_id.end()) throw Error(ErrorKind::NoProvenance, "contact point " + std::to_string(id) + " is not a point of the diagram");
      pts.push_back(it->second);
    }
    d.contact_points_ = std::move(pts);
  }

  d.g_count_ = raw.g_count;
  d.points_ = std::move(rb.points);
  d.alpha_orders_ = std::move(rb.alpha_orders);
  d.beta_orders_ = std::move(rb.beta_orders);
  d.edges_ = std::move(rb.edges);
  d.alpha_edges_ = std::move(rb.alpha_edges);
  d.beta_edges_ = std::move(rb.beta_edges);
  d.rotation_ = std::move(rb.rotation);
  d.dart_face_ = std::move(rb.dart_face);
  d.face_region_ = std::move(face_region);
  d.raw_ = raw;
  return d;
}

Quarter euler_measure(const PointedDiagram& d, std::span<const std::int64_t> coeffs) {
  Quarter total;
  for (const auto& r : d.regions()) total += r.euler_measure() * coeffs[r.id];
  return total;
}

Quarter point_measure(const PointedDiagram& d, int point, std::span<const std::int64_t> coeffs) {
  std::int64_t q = 0;
  for (int k = 0; k < 4; ++k) q += coeffs[d.quadrant_region(point, k)];
  return Quarter::from_quarters(q);
}

std::vector<std::array<int, 4>> rotation_from_faces(const PointedDiagram& d) {
  // successor[leave] = reverse(arrive) wherever a face turns from arrive to leave
  std::vector<int> successor(2 * d.edge_count(), -1);
  for (const auto& r : d.regions())
    for (const auto& cyc : r.boundary)
      for (std::size_t k = 0; k < cyc.size(); ++k) successor[cyc[(k + 1) % cyc.size()]] = cyc[k] ^ 1;
  std::vector<std::array<int, 4>> rot(d.point_count());
  for (int v = 0; v < d.point_count(); ++v) {
    const int start = 2 * d.curve_edges(CurveKind::Alpha, d.point(v).alpha)[d.point(v).alpha_pos];
    int dart = start;
    for (int k = 0; k < 4; ++k) {
      rot[v][k] = dart;
      dart = successor[dart];
    }
  }
  return rot;
}

}  // namespace jplus
