#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubepath/cube_curve.hpp"

namespace cubepath {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads `cube x y z` lines; `#` starts a comment. Unknown directives are rejected.
std::vector<GridCube> read_cubes(std::istream& in);
std::vector<GridCube> read_cubes_file(const std::string& path);

void write_cubes(std::ostream& out, std::span<const GridCube> cubes);
void write_cubes_file(const std::string& path, std::span<const GridCube> cubes);

}  // namespace cubepath
