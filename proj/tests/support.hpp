#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "jplus/diagram.hpp"
#include "jplus/floer.hpp"
#include "jplus/openbook.hpp"

namespace testing {

inline std::string fixture_path(const std::string& name) { return std::string(JPLUS_FIXTURES) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline jplus::PointedDiagram load_diagram(const std::string& name) {
  return jplus::validate(jplus::parse_diagram_string(read_fixture(name)));
}

inline jplus::openbook::BuiltDiagram build(const std::string& ob_text) {
  return jplus::openbook::build_diagram(jplus::openbook::parse_openbook_string(ob_text));
}

/// Generators of the Spin^c class containing the contact generator.
struct ContactComplex {
  std::vector<jplus::Generator> gens;
  jplus::Generator theta;
  jplus::WeightedComplex complex;
};

inline ContactComplex contact_complex(const jplus::DomainSolver& solver) {
  const auto& d = solver.diagram();
  const auto all = jplus::enumerate_generators(d);
  const auto theta = jplus::contact_generator(d);
  const auto part = jplus::spinc_classes(solver, all, theta);
  std::vector<jplus::Generator> g;
  for (int i : part.classes.at(*part.contact_class)) g.push_back(all[i]);
  auto cx = jplus::differential(solver, g);
  return ContactComplex{g, theta, std::move(cx)};
}

}  // namespace testing
