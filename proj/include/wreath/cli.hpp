#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace wreath::cli {

/// Resolved command-line configuration shared by all subcommands.
struct RunConfig {
  std::string command;
  int ell = 2;
  int order = 20;
  int max_order = 130;
  std::uint64_t seed = 20240601;
  int samples = 100;
  std::map<std::string, double> tolerances;
  std::string output;  // empty means stdout
  std::string format = "json";
  std::string data_dir;
};

/// Entry point behind the binary.  Exit codes: 0 success / all checks
/// pass, 1 verification failure, 2 usage error.
int run(int argc, const char* const* argv);

}  // namespace wreath::cli
