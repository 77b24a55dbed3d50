#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dpomdp/errors.hpp"
#include "dpomdp/problems/rocksample.hpp"

namespace dpomdp::problems {

RockSampleConfig parse_map(std::string_view text, const RockSampleConfig& base) {
  std::vector<std::string> rows;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    rows.push_back(line);
  }
  if (rows.empty()) throw ConfigError("map: no rows");
  const std::size_t width = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != width) throw ConfigError("map: ragged rows");
  if (width < 2) throw ConfigError("map: too narrow");

  RockSampleConfig cfg = base;
  cfg.grid_height = static_cast<int>(rows.size());
  cfg.grid_width = static_cast<int>(width) - 1;
  cfg.exit_column = cfg.grid_width;
  cfg.rock_positions.clear();
  std::vector<std::pair<int, Cell>> rocks;
  bool have_start = false;
  for (std::size_t row = 0; row < rows.size(); ++row) {
    const int y = cfg.grid_height - 1 - static_cast<int>(row);
    for (std::size_t col = 0; col < width; ++col) {
      const char ch = rows[row][col];
      const Cell c{static_cast<int>(col), y};
      if (col + 1 == width) {
        if (ch != 'G') throw ConfigError("map: rightmost column must be the exit strip 'G'");
        continue;
      }
      if (ch == '.') continue;
      if (ch == 'S') {
        if (have_start) throw ConfigError("map: more than one start");
        cfg.start = c;
        have_start = true;
      } else if (ch >= '0' && ch <= '9') {
        rocks.emplace_back(ch - '0', c);
      } else if (ch >= 'a' && ch <= 'f') {
        rocks.emplace_back(10 + ch - 'a', c);
      } else {
        throw ConfigError(std::string("map: unexpected character '") + ch + "'");
      }
    }
  }
  if (!have_start) throw ConfigError("map: missing start 'S'");
  cfg.rock_positions.assign(rocks.size(), Cell{-1, -1});
  for (auto& [idx, c] : rocks) {
    if (idx >= static_cast<int>(rocks.size()) || cfg.rock_positions[static_cast<std::size_t>(idx)].x >= 0)
      throw ConfigError("map: rock labels must be 0..n-1 without gaps");
    cfg.rock_positions[static_cast<std::size_t>(idx)] = c;
  }
  cfg.validate();
  return cfg;
}

RockSampleConfig load_map_file(const std::filesystem::path& path, const RockSampleConfig& base) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open map file " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_map(ss.str(), base);
}

std::string render_map(const RockSampleConfig& cfg) {
  std::string out;
  for (int y = cfg.grid_height - 1; y >= 0; --y) {
    for (int x = 0; x < cfg.grid_width; ++x) {
      const Cell c{x, y};
      const int rock = cfg.rock_at(c);
      if (rock >= 0)
        out += rock < 10 ? static_cast<char>('0' + rock) : static_cast<char>('a' + rock - 10);
      else if (c == cfg.start)
        out += 'S';
      else
        out += '.';
    }
    out += "G\n";
  }
  return out;
}

}  // namespace dpomdp::problems
