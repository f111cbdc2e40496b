#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "jplus/error.hpp"

namespace jplus::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Format { Text, Json };
enum class Admissibility { Warn, Strict };

struct RunConfig {
  std::string input;
  std::string command;
  std::optional<std::string> output;  // build-openbook only
  int max_page = 1000;
  Format format = Format::Text;
  std::optional<std::string> cache_dir;
  int verbosity = 0;
  Admissibility admissibility = Admissibility::Warn;
  std::string inspect_what;  // generators | regions | periodic | matrix
};

/// 2 parse or construction errors, 3 NotNice, 4 NoProvenance, 5 invariant
/// violations.
int exit_code(ErrorKind kind);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& data);

/// Runs one command; returns the process exit code.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and runs.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace jplus::cli
