#include "cubepath/path.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "cubepath/curve_io.hpp"

namespace cubepath {

void Polyline::update_length() { length = path_length(*this); }

double path_length(const Polyline& path) {
  const std::size_t n = path.vertices.size();
  if (n < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += (path.vertices[(i + 1) % n].position - path.vertices[i].position).norm();
  return total;
}

FirstClass classify_first_class(const CubeCurve& curve, const Polyline& path) {
  std::vector<int> hosted(curve.edge_count(), 0);
  for (const PathVertex& v : path.vertices) {
    if (!v.pin) continue;
    if (v.pin->edge >= curve.edge_count()) {
      throw PathNotOnCurve("vertex pinned to edge " + std::to_string(v.pin->edge) + " but the curve has " +
                           std::to_string(curve.edge_count()) + " critical edges");
    }
    ++hosted[v.pin->edge];
  }
  for (int count : hosted) {
    if (count != 1) return FirstClass::No;
  }
  return FirstClass::Yes;
}

Polyline simplify_collinear(const Polyline& path, double tolerance) {
  Polyline out = path;
  bool changed = true;
  while (changed && out.vertices.size() > 3) {
    changed = false;
    const std::size_t n = out.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point3d& a = out.vertices[(i + n - 1) % n].position;
      const Point3d& p = out.vertices[i].position;
      const Point3d& b = out.vertices[(i + 1) % n].position;
      const double detour = (p - a).norm() + (b - p).norm() - (b - a).norm();
      if (detour <= tolerance) {
        out.vertices.erase(out.vertices.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  out.update_length();
  return out;
}

void write_path(std::ostream& out, const PathHeader& header, const Polyline& path) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(17);
  out << "esp variant=" << header.variant << " epsilon=" << header.epsilon << " length=" << header.length
      << " loops=" << header.loops << '\n';
  for (const PathVertex& v : path.vertices) {
    out << "vertex " << v.position.x() << ' ' << v.position.y() << ' ' << v.position.z();
    if (v.pin) out << " edge=" << v.pin->edge << " t=" << v.pin->t;
    out << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

void write_path_file(const std::string& file, const PathHeader& header, const Polyline& path) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write path file '" + file + "'");
  write_path(out, header, path);
}

namespace {

std::string value_of(const std::string& token, const std::string& key, std::size_t line) {
  if (token.rfind(key + "=", 0) != 0) throw ParseError(line, "expected " + key + "=..., got '" + token + "'");
  return token.substr(key.size() + 1);
}

double to_double(const std::string& s, std::size_t line) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected number, got '" + s + "'");
  }
  if (used != s.size()) throw ParseError(line, "expected number, got '" + s + "'");
  return v;
}

}  // namespace

Polyline read_path(std::istream& in, PathHeader* header) {
  Polyline path;
  std::string raw;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream fields(raw);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "esp") {
      if (tok.size() != 5) throw ParseError(line_no, "malformed esp header");
      PathHeader h;
      h.variant = value_of(tok[1], "variant", line_no);
      h.epsilon = to_double(value_of(tok[2], "epsilon", line_no), line_no);
      h.length = to_double(value_of(tok[3], "length", line_no), line_no);
      h.loops = static_cast<std::size_t>(to_double(value_of(tok[4], "loops", line_no), line_no));
      if (header) *header = h;
      seen_header = true;
    } else if (tok[0] == "vertex") {
      if (tok.size() != 4 && tok.size() != 6) throw ParseError(line_no, "vertex needs x y z [edge=<i> t=<t>]");
      PathVertex v;
      v.position = {to_double(tok[1], line_no), to_double(tok[2], line_no), to_double(tok[3], line_no)};
      if (tok.size() == 6) {
        v.pin = EdgePin{static_cast<std::size_t>(to_double(value_of(tok[4], "edge", line_no), line_no)),
                        to_double(value_of(tok[5], "t", line_no), line_no)};
      }
      path.vertices.push_back(v);
    } else {
      throw ParseError(line_no, "unknown directive '" + tok[0] + "'");
    }
  }
  if (!seen_header) throw ParseError(line_no, "missing esp header");
  path.update_length();
  return path;
}

}  // namespace cubepath
