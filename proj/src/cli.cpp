#include "jplus/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "jplus/floer.hpp"
#include "jplus/openbook.hpp"
#include "jplus/torsion.hpp"

namespace jplus::cli {

using nlohmann::json;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotNice: return 3;
    case ErrorKind::NoProvenance: return 4;
    case ErrorKind::NonIntegerIndex:
    case ErrorKind::FormulaMismatch:
    case ErrorKind::OddJPlus:
    case ErrorKind::DifferentialNotSquareZero:
    case ErrorKind::LeibnizViolation:
    case ErrorKind::NotACycle:
    case ErrorKind::StabilizationFailed: return 5;
    default: return 2;
  }
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::Io, "SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_openbook(const std::string& text) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string tok;
    if (ls >> tok) return tok == "OB";
  }
  return false;
}

std::string join_ids(const PointedDiagram& d, const std::vector<int>& indices) {
  std::string s;
  for (int p : indices) s += (s.empty() ? "" : " ") + std::to_string(d.point(p).id);
  return s;
}

std::vector<int> ids_of(const PointedDiagram& d, const std::vector<int>& indices) {
  std::vector<int> out;
  for (int p : indices) out.push_back(d.point(p).id);
  return out;
}

// Everything derived from one input file. Held by pointer because the
// solver keeps a reference to the diagram.
struct Session {
  std::string diagram_text;
  std::string hash;
  std::optional<openbook::BuiltDiagram> built;
  std::unique_ptr<PointedDiagram> diagram;
  std::unique_ptr<DomainSolver> solver;
  std::vector<Generator> gens;
  SpincPartition part;
  std::optional<Generator> theta;

  const PointedDiagram& d() const { return *diagram; }
  std::vector<Generator> class_gens(int c) const {
    std::vector<Generator> g;
    for (int i : part.classes.at(c)) g.push_back(gens[i]);
    return g;
  }
};

std::unique_ptr<Session> open_session(const RunConfig& cfg, bool analyse) {
  auto s = std::make_unique<Session>();
  const std::string text = read_file(cfg.input);
  if (looks_like_openbook(text)) {
    s->built = openbook::build_diagram(openbook::parse_openbook_string(text));
    s->diagram_text = format_diagram(s->built->raw);
    s->diagram = std::make_unique<PointedDiagram>(s->built->diagram);
  } else {
    s->diagram_text = text;
    s->diagram = std::make_unique<PointedDiagram>(validate(parse_diagram_string(text)));
  }
  s->hash = sha256_hex(std::string("jplus ") + kVersion + "\n" + s->diagram_text);
  if (!analyse) return s;
  s->solver = std::make_unique<DomainSolver>(*s->diagram);
  s->gens = enumerate_generators(*s->diagram);
  if (s->diagram->contact_points()) s->theta = contact_generator(*s->diagram);
  s->part = spinc_classes(*s->solver, s->gens, s->theta);
  return s;
}

void check_admissibility(const Session& s, const RunConfig& cfg, std::ostream& err) {
  if (s.solver->weakly_admissible()) return;
  if (cfg.admissibility == Admissibility::Strict) throw Error(ErrorKind::Parse, "diagram is not weakly admissible (--strict-admissibility)");
  err << "warning: diagram is not weakly admissible; results are at your own risk\n";
}

void require_nice(const Session& s) {
  const NiceReport nice = is_nice(s.d());
  if (nice.nice) return;
  std::string list;
  for (int r : nice.offending) list += (list.empty() ? "" : " ") + std::to_string(r);
  throw Error(ErrorKind::NotNice, "regions not bigons or squares: " + list);
}

WeightedComplex complex_for(const Session& s, int c, const RunConfig& cfg) {
  std::optional<std::filesystem::path> path;
  if (cfg.cache_dir) {
    path = std::filesystem::path(*cfg.cache_dir) / (s.hash + ".class" + std::to_string(c) + ".mat");
    if (std::filesystem::exists(*path)) {
      std::ifstream in(*path);
      WeightedComplex cx = load_matrix(in, s.d(), s.hash);
      if (cx.generators() == s.class_gens(c)) return cx;
    }
  }
  WeightedComplex cx = differential(*s.solver, s.class_gens(c));
  if (path) {
    std::error_code ec;
    std::filesystem::create_directories(*cfg.cache_dir, ec);
    std::ofstream out(*path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write cache file " + path->string());
    out << dump_matrix(cx, s.d(), s.hash);
  }
  return cx;
}

std::vector<std::int64_t> periodic_j_plus(const Session& s) {
  std::vector<std::int64_t> out;
  if (s.gens.empty()) return out;
  const Generator& x = s.theta ? *s.theta : s.gens.front();
  for (const auto& P : s.solver->periodic_basis()) out.push_back(j_plus_periodic(s.d(), x, P));
  return out;
}

// ------------------------------------------------------------------ commands

int cmd_build_openbook(const RunConfig& cfg, std::ostream& out) {
  const auto spec = openbook::parse_openbook_string(read_file(cfg.input));
  const auto built = openbook::build_diagram(spec);
  const std::string text = format_diagram(built.raw);
  const PointedDiagram& d = built.diagram;
  std::vector<std::string> phis;
  for (const auto& a : built.phi_b) phis.push_back(openbook::format_word(a.word));
  if (cfg.output) {
    std::ofstream f(*cfg.output, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, "cannot write " + *cfg.output);
    f << text;
  }
  if (cfg.format == Format::Json) {
    json j;
    j["G"] = d.g_count();
    j["genus"] = d.surface_genus();
    j["basepoint_region"] = d.basepoint_region();
    j["contact_points"] = ids_of(d, *d.contact_points());
    j["phi_b"] = phis;
    if (!cfg.output) j["diagram"] = text;
    out << j.dump(2) << "\n";
    return 0;
  }
  if (!cfg.output) {
    out << text;
    return 0;
  }
  out << "G " << d.g_count() << "\n";
  out << "surface genus " << d.surface_genus() << "\n";
  out << "basepoint region " << d.basepoint_region() << "\n";
  out << "contact generator " << join_ids(d, *d.contact_points()) << "\n";
  for (std::size_t i = 0; i < phis.size(); ++i) out << "phi(b_" << (i + 1) << ") = " << phis[i] << "\n";
  return 0;
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto s = open_session(cfg, true);
  const PointedDiagram& d = s->d();
  const NiceReport nice = is_nice(d);
  const bool admissible = s->solver->weakly_admissible();
  if (!admissible && cfg.admissibility == Admissibility::Strict) check_admissibility(*s, cfg, err);
  if (cfg.format == Format::Json) {
    json j;
    j["hash"] = s->hash;
    j["G"] = d.g_count();
    j["genus"] = d.surface_genus();
    j["points"] = d.point_count();
    j["regions"] = d.region_count();
    j["basepoint_region"] = d.basepoint_region();
    j["nice"] = nice.nice;
    j["offending_regions"] = nice.offending;
    j["periodic_rank"] = s->solver->periodic_basis().size();
    j["weakly_admissible"] = admissible;
    j["generators"] = s->gens.size();
    j["spinc_classes"] = s->part.classes.size();
    if (s->theta) j["contact_generator"] = ids_of(d, s->theta->points);
    else j["contact_generator"] = nullptr;
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "G " << d.g_count() << "\n";
  out << "surface genus " << d.surface_genus() << "\n";
  out << "points " << d.point_count() << "\n";
  out << "regions " << d.region_count() << "\n";
  out << "basepoint region " << d.basepoint_region() << "\n";
  out << "nice " << (nice.nice ? "yes" : "no");
  for (int r : nice.offending) out << ' ' << r;
  out << "\n";
  out << "periodic rank " << s->solver->periodic_basis().size() << "\n";
  out << "weakly admissible " << (admissible ? "yes" : "no") << "\n";
  out << "generators " << s->gens.size() << "\n";
  out << "spin^c classes " << s->part.classes.size() << "\n";
  out << "contact generator " << (s->theta ? join_ids(d, s->theta->points) : std::string("none")) << "\n";
  return 0;
}

int cmd_inspect(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto s = open_session(cfg, true);
  const PointedDiagram& d = s->d();
  const bool js = cfg.format == Format::Json;
  json j = json::array();
  if (cfg.inspect_what == "generators") {
    for (int c = 0; c < static_cast<int>(s->part.classes.size()); ++c)
      for (int i : s->part.classes[c]) {
        const Generator& g = s->gens[i];
        std::vector<int> sigma;
        for (int b : g.sigma) sigma.push_back(b + 1);
        const bool contact = s->theta && *s->theta == g;
        if (js) {
          j.push_back({{"index", i}, {"points", ids_of(d, g.points)}, {"sigma", sigma}, {"cycles", g.cycles}, {"class", c}, {"contact", contact}});
        } else {
          out << i << ": points " << join_ids(d, g.points) << " sigma";
          for (int b : sigma) out << ' ' << b;
          out << " cycles " << g.cycles << " class " << c << (contact ? " contact" : "") << "\n";
        }
      }
  } else if (cfg.inspect_what == "regions") {
    for (const auto& r : d.regions()) {
      const bool base = r.id == d.basepoint_region();
      if (js) {
        j.push_back({{"id", r.id}, {"genus", r.genus}, {"boundary_circles", r.boundary_circles}, {"corners", r.corners.size()},
                     {"euler_measure", r.euler_measure().str()}, {"basepoint", base}});
      } else {
        out << r.id << ": genus " << r.genus << " boundary " << r.boundary_circles << " corners " << r.corners.size() << " e "
            << r.euler_measure() << (base ? " basepoint" : "") << "\n";
      }
    }
  } else if (cfg.inspect_what == "periodic") {
    const auto jp = periodic_j_plus(*s);
    const auto& basis = s->solver->periodic_basis();
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (js) {
        j.push_back({{"coefficients", basis[k]}, {"j_plus", jp.at(k)}});
      } else {
        out << "P" << k << ":";
        for (auto v : basis[k]) out << ' ' << v;
        out << " J+ " << jp.at(k) << "\n";
      }
    }
    if (!js && basis.empty()) out << "no periodic domains\n";
  } else if (cfg.inspect_what == "matrix") {
    require_nice(*s);
    check_admissibility(*s, cfg, err);
    for (int c = 0; c < static_cast<int>(s->part.classes.size()); ++c) {
      const WeightedComplex cx = complex_for(*s, c, cfg);
      if (js) {
        json entries = json::array();
        for (int x = 0; x < cx.size(); ++x)
          for (int y = 0; y < cx.size(); ++y)
            for (int k = 0; k < cx.part_count(); ++k)
              if (cx.part(k).get(y, x)) entries.push_back({x, y, k});
        j.push_back({{"class", c}, {"hash", s->hash}, {"generators", cx.size()}, {"entries", entries}});
      } else {
        out << "# class " << c << "\n" << dump_matrix(cx, d, s->hash);
      }
    }
  } else {
    throw Error(ErrorKind::Parse, "inspect needs one of --generators, --regions, --periodic, --matrix");
  }
  if (js) out << j.dump(2) << "\n";
  return 0;
}

int cmd_homology(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto s = open_session(cfg, true);
  require_nice(*s);
  check_admissibility(*s, cfg, err);
  json classes = json::array();
  std::size_t total = 0;
  for (int c = 0; c < static_cast<int>(s->part.classes.size()); ++c) {
    const WeightedComplex cx = complex_for(*s, c, cfg);
    check_differential(cx);
    const std::size_t h = homology_rank(cx);
    total += h;
    const bool contact = s->part.contact_class && *s->part.contact_class == c;
    if (cfg.format == Format::Json) classes.push_back({{"class", c}, {"generators", cx.size()}, {"rank", h}, {"contact", contact}});
    else out << "class " << c << ": generators " << cx.size() << " rank " << h << (contact ? " (contact class)" : "") << "\n";
  }
  if (cfg.format == Format::Json) out << json{{"classes", classes}, {"total_rank", total}}.dump(2) << "\n";
  else out << "total rank " << total << "\n";
  return 0;
}

int cmd_ss(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto s = open_session(cfg, true);
  require_nice(*s);
  check_admissibility(*s, cfg, err);
  json classes = json::array();
  for (int c = 0; c < static_cast<int>(s->part.classes.size()); ++c) {
    TorsionReport rep = pages(complex_for(*s, c, cfg), cfg.max_page);
    if (cfg.format == Format::Json) {
      json r = rep.to_json();
      r["class"] = c;
      classes.push_back(r);
    } else {
      out << "class " << c << ":\n" << rep.to_text();
    }
  }
  if (cfg.format == Format::Json) out << classes.dump(2) << "\n";
  return 0;
}

int cmd_at(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto s = open_session(cfg, true);
  require_nice(*s);
  if (!s->theta) throw Error(ErrorKind::NoProvenance, "diagram does not record the open book points x_1..x_G");
  check_admissibility(*s, cfg, err);
  TorsionReport rep = at_order(complex_for(*s, *s->part.contact_class, cfg), *s->theta, cfg.max_page);
  rep.periodic_j_plus = periodic_j_plus(*s);
  if (cfg.format == Format::Json) out << rep.to_json().dump(2) << "\n";
  else out << rep.to_text();
  return 0;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.max_page < 1) throw Error(ErrorKind::Parse, "--max-page must be at least 1");
    if (cfg.command == "build-openbook") return cmd_build_openbook(cfg, out);
    if (cfg.command == "check") return cmd_check(cfg, out, err);
    if (cfg.command == "inspect") return cmd_inspect(cfg, out, err);
    if (cfg.command == "homology") return cmd_homology(cfg, out, err);
    if (cfg.command == "ss") return cmd_ss(cfg, out, err);
    if (cfg.command == "at") return cmd_at(cfg, out, err);
    throw Error(ErrorKind::Parse, "unknown command " + cfg.command);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"J+ filtered hat Heegaard Floer complexes of open books"};
  app.require_subcommand(1);
  RunConfig cfg;
  bool json_flag = false, strict = false;
  bool gens = false, regions = false, periodic = false, matrix = false;
  auto common = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input, "open book (.ob) or diagram (.hd) file")->required();
    sub->add_flag("--json", json_flag, "machine-readable output");
    sub->add_option("--max-page", cfg.max_page, "last spectral sequence page to compute")->check(CLI::PositiveNumber);
    sub->add_option("--cache", cfg.cache_dir, "directory for cached differentials");
    sub->add_flag("--strict-admissibility", strict, "refuse diagrams that are not weakly admissible");
    sub->add_flag("-v,--verbose", cfg.verbosity, "more output");
  };
  auto* build = app.add_subcommand("build-openbook", "build the pointed Heegaard diagram of an open book");
  common(build);
  build->add_option("-o,--output", cfg.output, "write the diagram here");
  common(app.add_subcommand("check", "validate a diagram and summarize it"));
  auto* inspect = app.add_subcommand("inspect", "dump generators, regions, periodic domains or the differential");
  common(inspect);
  auto* what = inspect->add_option_group("what");
  what->add_flag("--generators", gens);
  what->add_flag("--regions", regions);
  what->add_flag("--periodic", periodic);
  what->add_flag("--matrix", matrix);
  what->require_option(1);
  common(app.add_subcommand("homology", "rank of the hat homology per Spin^c class"));
  common(app.add_subcommand("ss", "spectral sequence pages per Spin^c class"));
  common(app.add_subcommand("at", "algebraic torsion order of the contact class"));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.format = json_flag ? Format::Json : Format::Text;
  cfg.admissibility = strict ? Admissibility::Strict : Admissibility::Warn;
  cfg.inspect_what = gens ? "generators" : regions ? "regions" : periodic ? "periodic" : matrix ? "matrix" : "";
  return run(cfg, out, err);
}

}  // namespace jplus::cli
