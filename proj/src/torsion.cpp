#include "jplus/torsion.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "jplus/error.hpp"

namespace jplus {

SpectralSequence::SpectralSequence(const WeightedComplex& c) : c_(&c) {}

namespace {

// Vectors of C[t]/(t^N) are stored degree by degree: index deg * n + i.
class Truncated {
 public:
  Truncated(const WeightedComplex& c, int N) : c_(c), n_(c.size()), N_(N) {}

  std::size_t dim() const { return static_cast<std::size_t>(n_) * N_; }

  gf2::BitVector apply(const gf2::BitVector& v) const {
    gf2::BitVector out(dim());
    for (int deg = 0; deg < N_; ++deg) {
      gf2::BitVector comp(n_);
      bool any = false;
      for (int i = 0; i < n_; ++i)
        if (v.get(deg * n_ + i)) {
          comp.set(i);
          any = true;
        }
      if (!any) continue;
      for (int k = 0; k < c_.part_count() && deg + k < N_; ++k) {
        const gf2::BitVector img = c_.part(k).apply(comp);
        for (int j = 0; j < n_; ++j)
          if (img.get(j)) out.flip((deg + k) * n_ + j);
      }
    }
    return out;
  }

  // Basis of Z^r_q = {x in F_q : Dx in F_{q+r}}.
  std::vector<gf2::BitVector> cycles(int r, int q) const {
    q = std::max(q, 0);
    if (q >= N_) return {};
    const int top = std::min(q + r, N_);
    gf2::Matrix A(static_cast<std::size_t>(n_) * (top - q), static_cast<std::size_t>(n_) * (N_ - q));
    for (int deg = q; deg < N_; ++deg)
      for (int k = 0; k < c_.part_count(); ++k) {
        const int d = deg + k;
        if (d >= top) break;
        const gf2::Matrix& P = c_.part(k);
        for (int j = 0; j < n_; ++j)
          for (int i = 0; i < n_; ++i)
            if (P.get(j, i)) A.flip((d - q) * n_ + j, (deg - q) * n_ + i);
      }
    std::vector<gf2::BitVector> out;
    for (const auto& v : A.kernel()) {
      gf2::BitVector w(dim());
      for (std::size_t b = 0; b < v.size(); ++b)
        if (v.get(b)) w.set(q * n_ + b);
      out.push_back(std::move(w));
    }
    return out;
  }

 private:
  const WeightedComplex& c_;
  int n_;
  int N_;
};

}  // namespace

SpectralSequence::Page SpectralSequence::page(int r, const std::optional<gf2::BitVector>& x) const {
  if (r < 1) throw Error(ErrorKind::StabilizationFailed, "pages start at 1");
  const int n = c_->size();
  const int p = r - 1;
  const Truncated W(*c_, 2 * r);
  gf2::Span Z(W.dim());
  for (auto& v : W.cycles(r, p)) Z.insert(std::move(v));
  gf2::Span B(W.dim());
  for (auto& v : W.cycles(r - 1, p + 1)) B.insert(std::move(v));
  for (const auto& v : W.cycles(r - 1, p - r + 1)) B.insert(W.apply(v));
  Page out;
  out.rank = Z.dimension() - B.dimension();
  if (x) {
    gf2::BitVector v(W.dim());
    for (int i = 0; i < n; ++i)
      if (x->get(i)) v.set(p * n + i);
    out.vanishes = B.contains(v);
  }
  return out;
}

int page_bound(const WeightedComplex& c) { return c.size() * (c.part_count() - 1) + 1; }

namespace {

TorsionReport run(const WeightedComplex& c, const std::optional<Generator>& theta, int max_page) {
  if (max_page < 1) throw Error(ErrorKind::StabilizationFailed, "max page must be at least 1");
  check_differential(c);
  TorsionReport rep;
  rep.total_rank = homology_rank(c);
  for (int k = 0; k < c.part_count(); ++k)
    if (!c.part(k).is_zero()) rep.weights.push_back(k);

  std::optional<gf2::BitVector> x;
  if (theta) {
    const auto idx = c.index_of(*theta);
    if (!idx) throw Error(ErrorKind::NotACycle, "contact generator is not in this complex");
    gf2::BitVector v(c.size());
    v.set(*idx);
    std::string failing;
    for (int k = 0; k < c.part_count(); ++k)
      if (c.part(k).apply(v).any()) failing += (failing.empty() ? "d_" : ", d_") + std::to_string(k);
    if (!failing.empty()) throw Error(ErrorKind::NotACycle, "contact generator is not killed by " + failing);
    x = v;
    rep.has_contact = true;
  }

  const SpectralSequence ss(c);
  const int limit = std::min(max_page, page_bound(c) + 1);
  for (int r = 1; r <= limit; ++r) {
    const auto pg = ss.page(r, x);
    if (!rep.pages.empty() && pg.rank > rep.pages.back())
      throw Error(ErrorKind::StabilizationFailed, "page ranks increased at page " + std::to_string(r));
    rep.pages.push_back(pg.rank);
    if (x) {
      rep.contact_nonzero.push_back(!*pg.vanishes);
      if (*pg.vanishes && !rep.at) rep.at = r - 1;
    }
    // E^infinity is H(total); two equal consecutive pages at that rank certify it
    const std::size_t m = rep.pages.size();
    if (m >= 2 && rep.pages[m - 1] == rep.pages[m - 2] && rep.pages[m - 1] == rep.total_rank) {
      rep.stabilized = true;
      break;
    }
  }
  if (!rep.stabilized) {
    rep.messages.push_back("pages did not stabilize by page " + std::to_string(rep.pages.size()));
    if (x && !rep.at)
      throw Error(ErrorKind::StabilizationFailed, "contact class alive at page " + std::to_string(rep.pages.size()) +
                                                      " but the pages have not stabilized; raise --max-page");
  }
  return rep;
}

}  // namespace

TorsionReport pages(const WeightedComplex& c, int max_page) { return run(c, std::nullopt, max_page); }

TorsionReport at_order(const WeightedComplex& c, const Generator& theta, int max_page) { return run(c, theta, max_page); }

nlohmann::json TorsionReport::to_json() const {
  nlohmann::json j;
  j["pages"] = pages;
  auto status = nlohmann::json::array();
  for (bool nz : contact_nonzero) status.push_back(nz ? "nonzero" : "zero");
  j["contact_class"] = status;
  if (!has_contact) j["at"] = nullptr;
  else if (at) j["at"] = *at;
  else j["at"] = "survives";
  nlohmann::json diag;
  diag["stabilized"] = stabilized;
  diag["total_rank"] = total_rank;
  diag["weights"] = weights;
  diag["periodic_j_plus"] = periodic_j_plus;
  diag["messages"] = messages;
  j["diagnostics"] = diag;
  return j;
}

std::string TorsionReport::to_text() const {
  std::ostringstream out;
  for (std::size_t r = 0; r < pages.size(); ++r) {
    out << "E^" << (r + 1) << ": rank " << pages[r];
    if (r < contact_nonzero.size()) out << ", contact class " << (contact_nonzero[r] ? "nonzero" : "zero");
    out << "\n";
  }
  out << "E^inf: rank " << (pages.empty() ? 0 : pages.back()) << (stabilized ? "" : " (not certified)") << "\n";
  out << "H(total): rank " << total_rank << "\n";
  if (has_contact) out << "AT: " << (at ? std::to_string(*at) : std::string("survives")) << "\n";
  out << "weights:";
  for (int w : weights) out << ' ' << w;
  out << "\n";
  if (!periodic_j_plus.empty()) {
    out << "J+ of periodic basis:";
    for (auto v : periodic_j_plus) out << ' ' << v;
    out << "\n";
  }
  for (const auto& m : messages) out << "note: " << m << "\n";
  return out.str();
}

}  // namespace jplus
