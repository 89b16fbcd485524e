#ifndef OVOID_CLI_HPP
#define OVOID_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ovoid/search.hpp"

namespace ovoid::cli {

enum class Command { Construct, Verify, Search, Sections, Spread, Transport, Known };
enum class Method { Subgroup, Coset, RootSystem };

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kVerifyFailed = 2,
  kUnsupported = 3,
  kBadInput = 4,
};

struct RunConfig {
  Command command = Command::Construct;
  int q = 0;
  Method method = Method::Subgroup;
  std::string name;               // root system, empty = the one for q
  std::vector<int> rep;           // coset representative codes, empty = default
  std::string input;              // "-" = stdin
  std::string output;             // empty = stdout
  int jobs = 1;
  bool classify = false;
  Symmetry symmetry = Symmetry::Auto;
  bool emit_solutions = true;
  std::uint64_t solution_limit = 0;
  std::uint64_t node_limit = 0;
  double time_limit = 0;
  std::string checkpoint;
  bool timing = false;
};

const char* command_name(Command c) noexcept;
const char* method_name(Method m) noexcept;

// Search cap from OVOID_MAX_Q, default 9.
int max_search_q();

// Writes JSON-lines to `out` and human diagnostics to `err`; returns the
// exit code.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv and runs. Usage errors exit 1, --help exits 0.
int main(int argc, const char* const* argv);

}  // namespace ovoid::cli

#endif  // OVOID_CLI_HPP
