#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include "ptsep_cli/cli.hpp"

namespace ptsep::cli {

namespace {

std::string cell(const Json& v) {
  if (v.is_string()) {
    return v.get<std::string>();
  }
  if (v.is_null()) {
    return "-";
  }
  if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); })) {
    std::string joined;
    for (const Json& x : v) {
      if (!joined.empty()) {
        joined += ' ';
      }
      joined += cell(x);
    }
    return joined.empty() ? "ε" : joined;
  }
  return v.dump();
}

// Code points, so that ε and friends line up.
std::size_t display_width(const std::string& s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

bool is_record_list(const Json& v) {
  return v.is_array() && !v.empty() &&
         std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_object(); });
}

void render_records(const Json& rows, std::ostream& out) {
  std::vector<std::string> keys;
  for (const auto& [key, _] : rows.front().items()) {
    keys.push_back(key);
  }
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width;
  for (const std::string& key : keys) {
    width.push_back(display_width(key));
  }
  for (const Json& row : rows) {
    auto& line = cells.emplace_back();
    for (std::size_t i = 0; i < keys.size(); ++i) {
      line.push_back(row.contains(keys[i]) ? cell(row[keys[i]]) : "-");
      width[i] = std::max(width[i], display_width(line.back()));
    }
  }
  auto print = [&](const std::vector<std::string>& line) {
    out << "   ";
    for (std::size_t i = 0; i < line.size(); ++i) {
      out << ' ' << line[i];
      if (i + 1 < line.size()) {
        out << std::string(width[i] - display_width(line[i]), ' ');
      }
    }
    out << '\n';
  };
  print(keys);
  for (const auto& line : cells) {
    print(line);
  }
}

void render(const Json& v, const std::string& path, std::ostream& out) {
  if (v.is_object()) {
    for (const auto& [key, value] : v.items()) {
      render(value, path.empty() ? key : path + "." + key, out);
    }
  } else if (is_record_list(v)) {
    out << path << ":\n";
    render_records(v, out);
  } else {
    out << path << ": " << cell(v) << '\n';
  }
}

} // namespace

void render_table(const Json& report, std::ostream& out) { render(report, "", out); }

} // namespace ptsep::cli
