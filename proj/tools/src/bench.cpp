#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <sstream>

#include "ptsep/constructions.hpp"
#include "ptsep/error.hpp"
#include "ptsep/tower.hpp"
#include "ptsep_cli/cli.hpp"

namespace ptsep::cli {

std::vector<std::size_t> default_bench_range(const std::string& family) {
  if (family == "quadratic") {
    return {4, 6, 8, 10, 12};
  }
  if (family == "exp" || family == "expdfa") {
    return {1, 2, 3, 4, 5, 6, 7, 8};
  }
  if (family == "2exp") {
    return {1, 2, 3, 4};
  }
  throw Error(ErrorKind::precondition, "unknown family '" + family + "'");
}

namespace {

FamilyInstance generate(const std::string& family, std::size_t param) {
  if (family == "quadratic") {
    return gen_quadratic(param);
  }
  if (family == "exp") {
    return gen_exp(param);
  }
  if (family == "2exp") {
    return gen_2exp(param);
  }
  if (family == "expdfa") {
    return gen_expdfa(param);
  }
  throw Error(ErrorKind::precondition, "unknown family '" + family + "'");
}

} // namespace

BenchRow bench_instance(const std::string& family, std::size_t param) {
  const auto start = std::chrono::steady_clock::now();
  const FamilyInstance inst = generate(family, param);
  BenchRow row;
  row.family = family;
  row.param = param;
  row.states_left = inst.left.state_count();
  row.states_right = inst.right.state_count();
  row.alphabet = inst.left.alphabet_size();
  row.expected_height = inst.expected_height;
  if (inst.tower && verify_tower(inst.left, inst.right, *inst.tower)) {
    row.verified_height = inst.tower->height();
  }
  row.upper_bound = upper_bound_height(std::max(row.states_left, row.states_right), row.alphabet);
  row.bound_ok = row.verified_height <= row.upper_bound;
  row.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::string bench_csv_line(const BenchRow& row) {
  std::ostringstream line;
  line << row.family << ',' << row.param << ',' << row.states_left << ',' << row.states_right << ','
       << row.alphabet << ',' << row.verified_height << ',' << row.expected_height << ','
       << row.upper_bound << ',' << (row.bound_ok ? "true" : "false") << ',';
  line.setf(std::ios::fixed);
  line.precision(3);
  line << row.runtime_ms;
  return line.str();
}

Json big_to_json(const BigInt& value) {
  if (value >= 0 && value <= std::numeric_limits<std::uint64_t>::max()) {
    return value.convert_to<std::uint64_t>();
  }
  return value.str();
}

} // namespace ptsep::cli
