#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "ptsep/json_io.hpp"
#include "ptsep/separation.hpp"

namespace ptsep::cli {

/// Runs the command line `args` (program name excluded). Reports go to
/// `out`, diagnostics to `err`. Returns the process exit code: 0 for success
/// or a positive verdict, 1 for a negative verdict, 2 for errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Human-readable rendering of a report. Prints exactly the values of the
/// JSON form, flattened to `key: value` lines and column tables.
void render_table(const Json& report, std::ostream& out);

// Benchmark harness over the generated families.

struct BenchRow {
  std::string family;
  std::size_t param = 0;
  std::size_t states_left = 0;
  std::size_t states_right = 0;
  std::size_t alphabet = 0;
  std::size_t verified_height = 0; // 0 when the generated tower fails to verify
  std::size_t expected_height = 0;
  BigInt upper_bound;
  bool bound_ok = false;
  double runtime_ms = 0;
};

inline constexpr const char* bench_csv_header =
    "family,param,states_left,states_right,alphabet,verified_height,expected_height,"
    "upper_bound,bound_ok,runtime_ms";

/// Parameters run by default: quadratic 4..12 (even), exp 1..8, 2exp 1..4,
/// expdfa 1..8.
std::vector<std::size_t> default_bench_range(const std::string& family);

BenchRow bench_instance(const std::string& family, std::size_t param);

std::string bench_csv_line(const BenchRow& row);

/// Number when it fits in 64 bits, decimal string otherwise.
Json big_to_json(const BigInt& value);

} // namespace ptsep::cli
