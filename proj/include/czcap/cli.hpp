#pragma once

// Command pipelines behind the czcap binary. Each command reads a JSON
// descriptor where it needs one, runs the module pipeline with in-line
// invariant checks, and writes CSV or JSON with the resolved configuration
// embedded. Exit codes: 0 success, 2 usage/malformed input, 3 numeric or
// invariant failure.

#include <cstdint>
#include <string>

#include "json.hpp"

namespace czcap {

struct RunConfig {
  std::string command;      // scan-ratios | check-identities | energy |
                            // capacity | compare | ahlfors
  std::string input_path;   // descriptor (or capacity run) JSON
  std::string output_path;  // empty = stdout
  std::uint64_t seed = 20260810;
  long samples = 100000;
  double h = 1.0 / 64;
  int n = 1;
  int m = 0;        // second power for compare, 0 = off
  int i = 1;        // coordinate index for energy/capacity variants
  int max_m = 50;   // check-identities
  int max_n = 20;   // check-identities
  double eps = -1.0;  // < 0 = half the minimum support spacing
  double big_m = 0.0; // ahlfors threshold M
  double t = -1.0;    // ahlfors minimal radius, < 0 = half min spacing
  double box_corner_x = -1.0;
  double box_corner_y = -1.0;
  double box_side = 2.0;
  bool witness = false;
};

nlohmann::json to_json(const RunConfig& cfg);

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

// executes the configured command; never throws, reports via the exit code
// and stderr diagnostics
int run(const RunConfig& cfg);

}  // namespace czcap
