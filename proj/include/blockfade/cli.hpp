#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "blockfade/model.hpp"

namespace blockfade::cli {

enum ExitCode : int { kOk = 0, kPropertyFailure = 1, kUsage = 2, kInvalidRegime = 3 };

enum class Format { Json, Csv };

struct SweepConfig {
  std::vector<int> T, R, N, Q;
  std::optional<int> T_eff;
  std::vector<std::uint64_t> seeds;
  long trials = 0;
  std::string output;  // empty: stdout
  Format format = Format::Json;

  bool is_sweep() const;
};

struct Cell {
  int T = 0, R = 0, N = 0, Q = 0;
  std::optional<Dims> dims;  // set when the tuple is admissible
  std::string error;         // why it is not
};

// "4", "2:6" (inclusive) or comma-free lists joined by '|', e.g. "1|3|5"
std::vector<int> parse_int_list(const std::string& text);
std::vector<std::uint64_t> parse_seed_list(const std::string& text);
// "T,R,N,Q" where each component is parsed by parse_int_list
void parse_dims(const std::string& text, SweepConfig& cfg);

// cartesian product in T, R, N, Q order; T_eff defaults to Dims::regime_teff
std::vector<Cell> expand(const SweepConfig& cfg);

// args exclude the program name
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blockfade::cli
