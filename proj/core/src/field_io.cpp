#include "sklsc/field_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sklsc/errors.hpp"

namespace sklsc {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_field(std::ostream& os, const ScalarField& field) {
  const TorusGrid& g = *field.grid();
  os << "# torus-field v1\n" << g.dim();
  for (int a = 0; a < g.dim(); ++a) os << ' ' << g.points(a);
  os << '\n';
  for (int a = 0; a < g.dim(); ++a)
    os << (a ? " " : "") << format_double(g.length(a));
  os << '\n';
  for (std::size_t i = 0; i < field.size(); ++i)
    os << format_double(field[i]) << '\n';
}

void write_field(const std::filesystem::path& path, const ScalarField& field) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open for writing: " + path.string());
  write_field(os, field);
}

ScalarField read_field(std::istream& is, const std::string& what) {
  std::string line;
  if (!std::getline(is, line) || line != "# torus-field v1")
    throw ConfigError(what + ": missing '# torus-field v1' header");
  int d = 0;
  if (!(is >> d) || d < 1) throw ConfigError(what + ": bad dimension");
  std::vector<int> points(d);
  for (int& p : points)
    if (!(is >> p)) throw ConfigError(what + ": bad point counts");
  std::vector<double> lengths(d);
  for (double& l : lengths)
    if (!(is >> l)) throw ConfigError(what + ": bad lengths");
  GridPtr grid = make_grid(points, lengths);
  std::vector<double> values(grid->size());
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!(is >> values[i]))
      throw ConfigError(what + ": expected " + std::to_string(grid->size()) +
                        " values, got " + std::to_string(i));
  return ScalarField(grid, std::move(values));
}

ScalarField read_field(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open field file: " + path.string());
  return read_field(is, path.string());
}

void write_meta(const std::filesystem::path& path,
                const std::map<std::string, std::string>& entries) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open for writing: " + path.string());
  for (const auto& [key, value] : entries) os << key << ": " << value << '\n';
}

std::map<std::string, std::string> read_meta(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open meta file: " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    // Accept both "key: value" and "key = value".
    auto pos = line.find(':');
    if (pos == std::string::npos) pos = line.find('=');
    if (pos == std::string::npos)
      throw ConfigError(path.string() + ": malformed line '" + line + "'");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    out[trim(line.substr(0, pos))] = trim(line.substr(pos + 1));
  }
  return out;
}

}  // namespace sklsc
