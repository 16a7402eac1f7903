#include "cubepath/curve_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace cubepath {

namespace {

std::int64_t parse_int(const std::string& token, std::size_t line) {
  std::int64_t value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) throw ParseError(line, "expected integer, got '" + token + "'");
  return value;
}

}  // namespace

std::vector<GridCube> read_cubes(std::istream& in) {
  std::vector<GridCube> cubes;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream fields(raw);
    std::string directive;
    if (!(fields >> directive)) continue;
    if (directive != "cube") throw ParseError(line_no, "unknown directive '" + directive + "'");
    std::string token;
    std::array<std::int64_t, 3> xyz{};
    for (int k = 0; k < 3; ++k) {
      if (!(fields >> token)) throw ParseError(line_no, "cube needs three coordinates");
      xyz[k] = parse_int(token, line_no);
    }
    if (fields >> token) throw ParseError(line_no, "trailing token '" + token + "'");
    cubes.push_back({xyz[0], xyz[1], xyz[2]});
  }
  return cubes;
}

std::vector<GridCube> read_cubes_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open curve file '" + path + "'");
  return read_cubes(in);
}

void write_cubes(std::ostream& out, std::span<const GridCube> cubes) {
  for (const GridCube& c : cubes) out << "cube " << c.x << ' ' << c.y << ' ' << c.z << '\n';
}

void write_cubes_file(const std::string& path, std::span<const GridCube> cubes) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write curve file '" + path + "'");
  write_cubes(out, cubes);
}

}  // namespace cubepath
