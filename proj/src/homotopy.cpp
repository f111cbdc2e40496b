#include "jplus/homotopy.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "jplus/error.hpp"

namespace jplus {

using lattice::BigInt;

int cycle_count(const std::vector<int>& sigma) {
  std::vector<bool> seen(sigma.size(), false);
  int cycles = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(sigma[j])) seen[j] = true;
  }
  return cycles;
}

Generator make_generator(const PointedDiagram& d, const std::vector<int>& point_indices) {
  const int G = d.g_count();
  if (static_cast<int>(point_indices.size()) != G) throw Error(ErrorKind::InconsistentCurve, "a generator needs one point per alpha curve");
  Generator x;
  x.points.assign(G, -1);
  x.sigma.assign(G, -1);
  std::vector<bool> beta_used(G, false);
  for (int p : point_indices) {
    const Point& pt = d.point(p);
    if (x.points[pt.alpha] >= 0) throw Error(ErrorKind::InconsistentCurve, "two generator points on alpha " + std::to_string(pt.alpha + 1));
    if (beta_used[pt.beta]) throw Error(ErrorKind::InconsistentCurve, "two generator points on beta " + std::to_string(pt.beta + 1));
    beta_used[pt.beta] = true;
    x.points[pt.alpha] = p;
    x.sigma[pt.alpha] = pt.beta;
  }
  x.cycles = cycle_count(x.sigma);
  return x;
}

std::vector<Generator> enumerate_generators(const PointedDiagram& d) {
  const int G = d.g_count();
  std::vector<std::vector<int>> on_alpha(G);
  for (int p = 0; p < d.point_count(); ++p) on_alpha[d.point(p).alpha].push_back(p);
  // point indices are sorted by id, so these lists are too
  std::vector<Generator> out;
  std::vector<int> chosen;
  std::vector<bool> beta_used(G, false);
  std::function<void(int)> rec = [&](int i) {
    if (i == G) {
      out.push_back(make_generator(d, chosen));
      return;
    }
    for (int p : on_alpha[i]) {
      const int b = d.point(p).beta;
      if (beta_used[b]) continue;
      beta_used[b] = true;
      chosen.push_back(p);
      rec(i + 1);
      chosen.pop_back();
      beta_used[b] = false;
    }
  };
  rec(0);
  return out;
}

bool Domain::is_positive() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](std::int64_t c) { return c >= 0; });
}

Domain compose(const Domain& a, const Domain& b) {
  if (a.target != b.source) throw Error(ErrorKind::InconsistentCurve, "domains are not composable");
  Domain out{a.source, b.target, a.coeffs};
  for (std::size_t r = 0; r < out.coeffs.size(); ++r) out.coeffs[r] += b.coeffs[r];
  return out;
}

namespace {

// Edges along a curve from point index p forward to point index q.
std::vector<int> forward_path(const PointedDiagram& d, CurveKind kind, int curve, int p, int q) {
  const auto edges = d.curve_edges(kind, curve);
  const int n = static_cast<int>(edges.size());
  auto pos = [&](int v) { return kind == CurveKind::Alpha ? d.point(v).alpha_pos : d.point(v).beta_pos; };
  std::vector<int> out;
  for (int k = pos(p); k != pos(q); k = (k + 1) % n) out.push_back(edges[k]);
  return out;
}

std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw Error(ErrorKind::NonIntegerIndex, "domain coefficient overflow");
  return static_cast<std::int64_t>(v);
}

}  // namespace

DomainSolver::DomainSolver(const PointedDiagram& d) : d_(&d) {
  const int R = d.region_count();
  const int G = d.g_count();
  column_of_region_.assign(R, -1);
  for (int r = 0; r < R; ++r)
    if (r != d.basepoint_region()) column_of_region_[r] = region_columns_++;
  const int cols = region_columns_ + 2 * G;
  matrix_ = lattice::Matrix(d.edge_count(), cols);
  // multiplicity of edge e in the boundary of D minus the full curves
  for (int e = 0; e < d.edge_count(); ++e) {
    const int left = d.dart_region(2 * e);
    const int right = d.dart_region(2 * e + 1);
    if (column_of_region_[left] >= 0) matrix_(e, column_of_region_[left]) += 1;
    if (column_of_region_[right] >= 0) matrix_(e, column_of_region_[right]) -= 1;
    const auto& ref = d.edge(e).ref;
    const int curve_col = region_columns_ + (ref.kind == CurveKind::Alpha ? 0 : G) + ref.curve;
    matrix_(e, curve_col) -= 1;
  }
  system_.emplace(matrix_);
  std::vector<lattice::Vector> rows;
  for (const auto& k : system_->kernel_basis()) rows.emplace_back(k.begin(), k.begin() + region_columns_);
  for (const auto& h : lattice::hermite_rows(rows)) {
    RegionVector p(R, 0);
    for (int r = 0; r < R; ++r)
      if (column_of_region_[r] >= 0) p[r] = to_int64(h[column_of_region_[r]]);
    periodic_.push_back(std::move(p));
  }
}

lattice::Vector DomainSolver::boundary_rhs(const Generator& x, const Generator& y) const {
  const PointedDiagram& d = *d_;
  const int G = d.g_count();
  lattice::Vector rhs(d.edge_count(), 0);
  // alpha part runs from y back to x, beta part from x to y
  for (int j = 0; j < G; ++j)
    for (int e : forward_path(d, CurveKind::Alpha, j, y.points[j], x.points[j])) rhs[e] += 1;
  std::vector<int> x_on_beta(G), y_on_beta(G);
  for (int i = 0; i < G; ++i) {
    x_on_beta[x.sigma[i]] = x.points[i];
    y_on_beta[y.sigma[i]] = y.points[i];
  }
  for (int b = 0; b < G; ++b)
    for (int e : forward_path(d, CurveKind::Beta, b, x_on_beta[b], y_on_beta[b])) rhs[e] += 1;
  return rhs;
}

std::optional<Domain> DomainSolver::domain_between(const Generator& x, const Generator& y) const {
  auto sol = system_->solve(boundary_rhs(x, y));
  if (!sol) return std::nullopt;
  Domain D{x, y, RegionVector(d_->region_count(), 0)};
  for (int r = 0; r < d_->region_count(); ++r)
    if (column_of_region_[r] >= 0) D.coeffs[r] = to_int64((*sol)[column_of_region_[r]]);
  return D;
}

bool DomainSolver::satisfies_corner_condition(const Generator& x, const Generator& y, const RegionVector& coeffs) const {
  if (coeffs.at(d_->basepoint_region()) != 0) return false;
  const lattice::Vector rhs = boundary_rhs(x, y);
  const int G = d_->g_count();
  // residual must be a combination of full curves
  std::vector<std::optional<BigInt>> curve_mult(2 * G);
  for (int e = 0; e < d_->edge_count(); ++e) {
    const BigInt residual = BigInt(coeffs[d_->dart_region(2 * e)]) - coeffs[d_->dart_region(2 * e + 1)] - rhs[e];
    const auto& ref = d_->edge(e).ref;
    auto& slot = curve_mult[(ref.kind == CurveKind::Alpha ? 0 : G) + ref.curve];
    if (!slot) slot = residual;
    else if (*slot != residual) return false;
  }
  return true;
}

bool DomainSolver::weakly_admissible() const {
  if (periodic_.empty()) return true;
  std::vector<lattice::Vector> rows;
  for (const auto& p : periodic_) {
    lattice::Vector v;
    for (int r = 0; r < d_->region_count(); ++r)
      if (column_of_region_[r] >= 0) v.emplace_back(p[r]);
    rows.push_back(std::move(v));
  }
  return lattice::has_positive_kernel_vector(rows, region_columns_);
}

SpincPartition spinc_classes(const DomainSolver& solver, const std::vector<Generator>& gens, const std::optional<Generator>& contact) {
  SpincPartition out;
  for (int i = 0; i < static_cast<int>(gens.size()); ++i) {
    bool placed = false;
    for (auto& cls : out.classes) {
      if (solver.domain_between(gens[cls.front()], gens[i])) {
        cls.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) out.classes.push_back({i});
  }
  if (contact) {
    for (int c = 0; c < static_cast<int>(out.classes.size()); ++c)
      for (int i : out.classes[c])
        if (gens[i] == *contact) out.contact_class = c;
  }
  return out;
}

std::vector<RegionVector> periodic_domains(const PointedDiagram& d) { return DomainSolver(d).periodic_basis(); }

bool weak_admissibility(const PointedDiagram& d) { return DomainSolver(d).weakly_admissible(); }

Quarter generator_measure(const PointedDiagram& d, const Generator& x, const RegionVector& coeffs) {
  Quarter total;
  for (int p : x.points) total += point_measure(d, p, coeffs);
  return total;
}

std::int64_t maslov(const PointedDiagram& d, const Domain& D) {
  const Quarter mu = euler_measure(d, D.coeffs) + generator_measure(d, D.source, D.coeffs) + generator_measure(d, D.target, D.coeffs);
  if (!mu.is_integer()) throw Error(ErrorKind::NonIntegerIndex, "Maslov index " + mu.str() + " is not an integer");
  return mu.to_integer();
}

Quarter j_plus_direct(const PointedDiagram& d, const Domain& D) {
  return generator_measure(d, D.source, D.coeffs) + generator_measure(d, D.target, D.coeffs) - euler_measure(d, D.coeffs) +
         Quarter::integer(D.source.cycles - D.target.cycles);
}

Quarter j_plus_via_maslov(const PointedDiagram& d, const Domain& D) {
  return Quarter::integer(maslov(d, D)) - 2 * euler_measure(d, D.coeffs) + Quarter::integer(D.source.cycles - D.target.cycles);
}

std::int64_t j_plus(const PointedDiagram& d, const Domain& D) {
  const Quarter a = j_plus_direct(d, D);
  const Quarter b = j_plus_via_maslov(d, D);
  if (a != b) throw Error(ErrorKind::FormulaMismatch, "J+ forms disagree: " + a.str() + " vs " + b.str());
  if (!a.is_integer()) throw Error(ErrorKind::NonIntegerIndex, "J+ " + a.str() + " is not an integer");
  return a.to_integer();
}

std::int64_t j_plus_periodic(const PointedDiagram& d, const Generator& x, const RegionVector& P) {
  return j_plus(d, Domain{x, x, P});
}

}  // namespace jplus
