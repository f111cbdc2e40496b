#include "jplus/floer.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <sstream>

#include "jplus/error.hpp"

namespace jplus {

NiceReport is_nice(const PointedDiagram& d) {
  NiceReport out;
  for (const auto& r : d.regions()) {
    if (r.id == d.basepoint_region()) continue;
    if (r.genus != 0 || r.boundary_circles != 1 || r.corners.size() > 4) out.offending.push_back(r.id);
  }
  out.nice = out.offending.empty();
  return out;
}

WeightedComplex::WeightedComplex(std::vector<Generator> gens, std::vector<gf2::Matrix> parts)
    : generators_(std::move(gens)), parts_(std::move(parts)) {
  if (parts_.empty()) parts_.emplace_back(generators_.size(), generators_.size());
}

gf2::Matrix WeightedComplex::total() const {
  gf2::Matrix t(generators_.size(), generators_.size());
  for (const auto& p : parts_) t += p;
  return t;
}

std::optional<int> WeightedComplex::index_of(const Generator& x) const {
  auto it = std::find(generators_.begin(), generators_.end(), x);
  if (it == generators_.end()) return std::nullopt;
  return static_cast<int>(it - generators_.begin());
}

namespace {

int moved_count(const Generator& x, const Generator& y) {
  int n = 0;
  for (std::size_t i = 0; i < x.points.size(); ++i) n += x.points[i] != y.points[i];
  return n;
}

bool support_connected(const PointedDiagram& d, const RegionVector& c) {
  std::vector<std::vector<int>> adj(d.region_count());
  for (int e = 0; e < d.edge_count(); ++e) {
    const int a = d.dart_region(2 * e), b = d.dart_region(2 * e + 1);
    if (c[a] != 0 && c[b] != 0 && a != b) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  }
  int start = -1, total = 0;
  for (int r = 0; r < d.region_count(); ++r)
    if (c[r] != 0) {
      ++total;
      if (start < 0) start = r;
    }
  if (start < 0) return false;
  std::vector<bool> seen(d.region_count(), false);
  std::vector<int> stack{start};
  seen[start] = true;
  int reached = 0;
  while (!stack.empty()) {
    const int r = stack.back();
    stack.pop_back();
    ++reached;
    for (int s : adj[r])
      if (!seen[s]) {
        seen[s] = true;
        stack.push_back(s);
      }
  }
  return reached == total;
}

// Representatives D0 + sum n_i P_i with every coefficient in {0, 1}. The
// periodic basis is in Hermite form, so the value at the i-th pivot region
// fixes n_i.
void zero_one_representatives(const std::vector<RegionVector>& basis, const RegionVector& d0,
                              const std::function<void(const RegionVector&)>& visit) {
  std::vector<int> pivots;
  for (const auto& row : basis) {
    int p = 0;
    while (row[p] == 0) ++p;
    pivots.push_back(p);
  }
  const std::size_t r = basis.size();
  std::function<void(std::size_t, RegionVector&)> rec = [&](std::size_t i, RegionVector& cur) {
    if (i == r) {
      if (std::all_of(cur.begin(), cur.end(), [](std::int64_t v) { return v == 0 || v == 1; })) visit(cur);
      return;
    }
    const std::int64_t piv = basis[i][pivots[i]];
    for (std::int64_t want : {0, 1}) {
      const std::int64_t diff = want - cur[pivots[i]];
      if (diff % piv != 0) continue;
      const std::int64_t n = diff / piv;
      for (std::size_t k = 0; k < cur.size(); ++k) cur[k] += n * basis[i][k];
      rec(i + 1, cur);
      for (std::size_t k = 0; k < cur.size(); ++k) cur[k] -= n * basis[i][k];
    }
  };
  RegionVector cur = d0;
  rec(0, cur);
}

}  // namespace

WeightedComplex differential(const DomainSolver& solver, const std::vector<Generator>& gens) {
  const PointedDiagram& d = solver.diagram();
  const NiceReport nice = is_nice(d);
  if (!nice.nice) {
    std::string list;
    for (int r : nice.offending) list += (list.empty() ? "" : " ") + std::to_string(r);
    throw Error(ErrorKind::NotNice, "regions not bigons or squares: " + list);
  }
  const int n = static_cast<int>(gens.size());
  std::vector<CountedDomain> counted;
  std::vector<std::string> diagnostics;
  int skipped = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int moved = moved_count(gens[a], gens[b]);
      if (moved != 1 && moved != 2) continue;
      const auto d0 = solver.domain_between(gens[a], gens[b]);
      if (!d0) continue;
      zero_one_representatives(solver.periodic_basis(), d0->coeffs, [&](const RegionVector& c) {
        Domain D{gens[a], gens[b], c};
        if (maslov(d, D) != 1) return;
        bool ok = support_connected(d, c);
        for (int p = 0; ok && p < d.point_count(); ++p) {
          const bool in_x = std::find(gens[a].points.begin(), gens[a].points.end(), p) != gens[a].points.end();
          const bool in_y = std::find(gens[b].points.begin(), gens[b].points.end(), p) != gens[b].points.end();
          const std::int64_t q = point_measure(d, p, c).quarters();
          if (in_x && in_y) ok = q == 0;
          else if (in_x || in_y) ok = q == 1;
          else ok = q % 2 == 0;
        }
        if (!ok) {
          ++skipped;
          return;
        }
        const std::int64_t j = j_plus(d, D);
        if (j % 2 != 0) throw Error(ErrorKind::OddJPlus, "J+ = " + std::to_string(j) + " on a counted domain");
        if (j < 0) throw Error(ErrorKind::OddJPlus, "J+ = " + std::to_string(j) + " is negative on a counted domain");
        counted.push_back(CountedDomain{a, b, static_cast<int>(j / 2), j, moved == 1, D});
      });
    }
  }
  int max_weight = 0;
  for (const auto& c : counted) max_weight = std::max(max_weight, c.weight);
  std::vector<gf2::Matrix> parts(max_weight + 1, gf2::Matrix(n, n));
  for (const auto& c : counted) parts[c.weight].flip(c.to, c.from);
  WeightedComplex out(gens, std::move(parts));
  out.counted = std::move(counted);
  if (skipped > 0) diagnostics.push_back("skipped " + std::to_string(skipped) + " Maslov index 1 domains that are not empty embedded bigons or squares");
  out.diagnostics = std::move(diagnostics);
  return out;
}

Generator contact_generator(const PointedDiagram& d) {
  const auto& pts = d.contact_points();
  if (!pts) throw Error(ErrorKind::NoProvenance, "diagram does not record the open book points x_1..x_G");
  Generator x = make_generator(d, *pts);
  for (int i = 0; i < d.g_count(); ++i)
    if (x.sigma[i] != i) throw Error(ErrorKind::NoProvenance, "recorded contact points do not pair alpha_i with beta_i");
  return x;
}

void check_differential(const WeightedComplex& c) {
  const gf2::Matrix t = c.total();
  if (!(t * t).is_zero()) throw Error(ErrorKind::DifferentialNotSquareZero, "total differential does not square to zero");
  const int K = c.part_count();
  for (int k = 0; k <= 2 * (K - 1); ++k) {
    gf2::Matrix sum(c.size(), c.size());
    for (int i = 0; i < K; ++i) {
      const int j = k - i;
      if (j < 0 || j >= K) continue;
      sum += c.part(i) * c.part(j);
    }
    if (!sum.is_zero()) throw Error(ErrorKind::LeibnizViolation, "weight " + std::to_string(k) + " part of d^2 is nonzero");
  }
}

std::size_t homology_rank(const WeightedComplex& c) {
  const gf2::Matrix t = c.total();
  if (!(t * t).is_zero()) throw Error(ErrorKind::DifferentialNotSquareZero, "total differential does not square to zero");
  return static_cast<std::size_t>(c.size()) - 2 * t.rank();
}

std::string dump_matrix(const WeightedComplex& c, const PointedDiagram& d, const std::string& diagram_hash) {
  std::ostringstream out;
  out << "JPLUS-MATRIX 1\n";
  out << "diagram " << diagram_hash << "\n";
  out << "generators " << c.size() << "\n";
  for (const auto& g : c.generators()) {
    out << "gen";
    for (int p : g.points) out << ' ' << d.point(p).id;
    out << "\n";
  }
  for (int x = 0; x < c.size(); ++x)
    for (int y = 0; y < c.size(); ++y)
      for (int k = 0; k < c.part_count(); ++k)
        if (c.part(k).get(y, x)) out << x << ' ' << y << ' ' << k << "\n";
  return out.str();
}

WeightedComplex load_matrix(std::istream& in, const PointedDiagram& d, const std::string& diagram_hash) {
  std::string word, version;
  if (!(in >> word >> version) || word != "JPLUS-MATRIX" || version != "1") throw Error(ErrorKind::Parse, "not a matrix dump");
  std::string hash;
  if (!(in >> word >> hash) || word != "diagram") throw Error(ErrorKind::Parse, "matrix dump lacks a diagram line");
  if (hash != diagram_hash) throw Error(ErrorKind::Parse, "matrix dump belongs to a different diagram");
  int n = 0;
  if (!(in >> word >> n) || word != "generators" || n < 0) throw Error(ErrorKind::Parse, "matrix dump lacks a generator count");
  std::vector<Generator> gens;
  for (int i = 0; i < n; ++i) {
    if (!(in >> word) || word != "gen") throw Error(ErrorKind::Parse, "expected generator line");
    std::vector<int> pts;
    for (int k = 0; k < d.g_count(); ++k) {
      int id = 0;
      if (!(in >> id)) throw Error(ErrorKind::Parse, "short generator line");
      const auto idx = d.point_index(id);
      if (!idx) throw Error(ErrorKind::Parse, "unknown point id in matrix dump");
      pts.push_back(*idx);
    }
    gens.push_back(make_generator(d, pts));
  }
  std::vector<std::tuple<int, int, int>> entries;
  int max_weight = 0;
  for (int x, y, k; in >> x >> y >> k;) {
    if (x < 0 || y < 0 || x >= n || y >= n || k < 0) throw Error(ErrorKind::Parse, "bad matrix entry");
    entries.emplace_back(x, y, k);
    max_weight = std::max(max_weight, k);
  }
  if (!in.eof()) throw Error(ErrorKind::Parse, "trailing garbage in matrix dump");
  std::vector<gf2::Matrix> parts(max_weight + 1, gf2::Matrix(n, n));
  for (auto [x, y, k] : entries) parts[k].set(y, x);
  return WeightedComplex(std::move(gens), std::move(parts));
}

}  // namespace jplus
