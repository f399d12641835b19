#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sklsc/curvature.hpp"
#include "sklsc/family.hpp"
#include "sklsc/grid.hpp"
#include "sklsc/sklsc.hpp"

namespace sklsc {

// Line-oriented "[section]" / "key = value" files.  '#' and ';' start
// comments; keys are unique per section.
class Config {
 public:
  static Config parse(std::istream& is, const std::string& origin = "<stream>");
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& section, const std::string& key) const;
  // Throw ConfigError naming the missing entry.
  const std::string& require(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  int get_int(const std::string& section, const std::string& key) const;
  int get_int(const std::string& section, const std::string& key, int fallback) const;
  // Whitespace- or comma-separated list of numbers.
  std::vector<double> get_doubles(const std::string& section,
                                  const std::string& key) const;

  const std::string& origin() const { return origin_; }
  // Directory of the config file, for resolving relative field paths.
  std::filesystem::path base_dir() const;

 private:
  std::string origin_;
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

// [grid]: d, N (one value or d values), L (one value or d values; a bare
// "2pi" is accepted).
GridPtr build_grid(const Config& cfg);

// [base]: n, kind, then S_b/SC_b as expressions or S_b_file/SC_b_file paths.
// Kahler kinds may give SC_b only; S_b = 2 SC_b is filled in.
BalancedBaseData build_base(const Config& cfg, const GridPtr& grid);

// [scan]: regime = auto | "<lo> <hi>", samples, tol_lambda, tol_param,
// solver_tol.
struct ScanRequest {
  std::optional<Interval> regime;  // empty = auto
  SolverTolerances tol;
};
ScanRequest build_scan_request(const Config& cfg);

// [family]: V1, V2 (expressions), f, h (expressions in t), a, b, C_f_a,
// C_h_a, C_h_b, samples (default 50).
struct FamilyRequest {
  WarpedFamily family;
  int samples = 50;
};
FamilyRequest build_family(const Config& cfg, const GridPtr& grid);

}  // namespace sklsc
