#include "sklsc/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "sklsc/errors.hpp"
#include "sklsc/expression.hpp"
#include "sklsc/field_io.hpp"

namespace sklsc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
}

double parse_number(const std::string& origin, const std::string& section,
                    const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "2pi" || t == "2*pi") return 2.0 * 3.14159265358979323846;
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != t.size() || t.empty())
    throw ConfigError(origin + ": [" + section + "] " + key +
                      ": expected a number, got '" + text + "'");
  return v;
}

}  // namespace

Config Config::parse(std::istream& is, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(origin, lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail(origin, lineno, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(origin, lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(origin, lineno, "empty key");
    if (section.empty()) fail(origin, lineno, "'" + key + "' appears before any [section]");
    auto [it, inserted] = cfg.sections_[section].emplace(key, value);
    (void)it;
    if (!inserted)
      fail(origin, lineno, "duplicate key '" + key + "' in [" + section + "]");
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse(is, path.string());
}

bool Config::has(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

const std::string& Config::require(const std::string& section,
                                   const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end())
    throw ConfigError(origin_ + ": missing section [" + section + "]");
  const auto k = s->second.find(key);
  if (k == s->second.end())
    throw ConfigError(origin_ + ": missing key '" + key + "' in [" + section + "]");
  return k->second;
}

std::string Config::get(const std::string& section, const std::string& key,
                        const std::string& fallback) const {
  return has(section, key) ? require(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
  return parse_number(origin_, section, key, require(section, key));
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

int Config::get_int(const std::string& section, const std::string& key) const {
  const double v = get_double(section, key);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw ConfigError(origin_ + ": [" + section + "] " + key + ": expected an integer");
  return i;
}

int Config::get_int(const std::string& section, const std::string& key,
                    int fallback) const {
  return has(section, key) ? get_int(section, key) : fallback;
}

std::vector<double> Config::get_doubles(const std::string& section,
                                        const std::string& key) const {
  std::string text = require(section, key);
  for (char& c : text)
    if (c == ',') c = ' ';
  std::istringstream is(text);
  std::vector<double> out;
  std::string tok;
  while (is >> tok) out.push_back(parse_number(origin_, section, key, tok));
  if (out.empty())
    throw ConfigError(origin_ + ": [" + section + "] " + key + ": empty value");
  return out;
}

std::filesystem::path Config::base_dir() const {
  const std::filesystem::path p(origin_);
  return p.has_parent_path() ? p.parent_path() : std::filesystem::path(".");
}

GridPtr build_grid(const Config& cfg) {
  const int d = cfg.get_int("grid", "d");
  if (d < 1) throw ConfigError(cfg.origin() + ": [grid] d must be >= 1");
  std::vector<double> n_raw = cfg.get_doubles("grid", "N");
  std::vector<double> l_raw = cfg.get_doubles("grid", "L");
  if (n_raw.size() == 1) n_raw.assign(static_cast<std::size_t>(d), n_raw[0]);
  if (l_raw.size() == 1) l_raw.assign(static_cast<std::size_t>(d), l_raw[0]);
  if (n_raw.size() != static_cast<std::size_t>(d) ||
      l_raw.size() != static_cast<std::size_t>(d))
    throw ConfigError(cfg.origin() + ": [grid] N and L need 1 or d entries");
  std::vector<int> points;
  for (double v : n_raw) points.push_back(static_cast<int>(v));
  return make_grid(std::move(points), std::move(l_raw));
}

namespace {

ScalarField load_base_field(const Config& cfg, const GridPtr& grid,
                            const std::string& key) {
  if (cfg.has("base", key + "_file")) {
    const std::filesystem::path p =
        cfg.base_dir() / cfg.require("base", key + "_file");
    ScalarField field = read_field(p);
    if (!field.grid()->same_shape(*grid))
      throw ConfigError(cfg.origin() + ": field file '" + p.string() +
                        "' does not match the [grid] section");
    return field;
  }
  const FieldExpression expr = parse_expression(cfg.require("base", key));
  if (expr.max_variable() > grid->dim())
    throw ConfigError(cfg.origin() + ": [base] " + key + " references x" +
                      std::to_string(expr.max_variable()) + " on a " +
                      std::to_string(grid->dim()) + "-dimensional grid");
  return evaluate_on_grid(expr, grid);
}

}  // namespace

BalancedBaseData build_base(const Config& cfg, const GridPtr& grid) {
  BalancedBaseData base;
  base.grid = grid;
  base.n = cfg.get_int("base", "n");
  base.kind = base_kind_from_string(cfg.get("base", "kind", "synthetic-kahler"));
  const bool has_sb = cfg.has("base", "S_b") || cfg.has("base", "S_b_file");
  const bool has_sc = cfg.has("base", "SC_b") || cfg.has("base", "SC_b_file");
  if (!has_sc) throw ConfigError(cfg.origin() + ": [base] needs SC_b or SC_b_file");
  base.SC_b = load_base_field(cfg, grid, "SC_b");
  if (has_sb) {
    base.S_b = load_base_field(cfg, grid, "S_b");
  } else if (is_kahler_kind(base.kind)) {
    base.S_b = 2.0 * base.SC_b;
  } else {
    throw ConfigError(cfg.origin() + ": [base] needs S_b for balanced kinds");
  }
  validate(base);
  return base;
}

ScanRequest build_scan_request(const Config& cfg) {
  ScanRequest req;
  const std::string regime = cfg.get("scan", "regime", "auto");
  if (regime != "auto") {
    std::string text = regime;
    for (char& c : text)
      if (c == ',') c = ' ';
    std::istringstream is(text);
    double lo = 0.0, hi = 0.0;
    std::string rest;
    if (!(is >> lo >> hi) || (is >> rest))
      throw ConfigError(cfg.origin() +
                        ": [scan] regime must be 'auto' or '<lo> <hi>'");
    if (!(lo < hi)) throw ConfigError(cfg.origin() + ": [scan] regime is empty");
    req.regime = Interval{lo, hi};
  }
  req.tol.samples_per_regime = cfg.get_int("scan", "samples", req.tol.samples_per_regime);
  req.tol.tol_lambda = cfg.get_double("scan", "tol_lambda", req.tol.tol_lambda);
  req.tol.tol_param = cfg.get_double("scan", "tol_param", req.tol.tol_param);
  req.tol.solver_tol = cfg.get_double("scan", "solver_tol", req.tol.solver_tol);
  return req;
}

FamilyRequest build_family(const Config& cfg, const GridPtr& grid) {
  FamilyRequest req;
  WarpedFamily& fam = req.family;
  fam.grid = grid;
  fam.V1 = evaluate_on_grid(parse_expression(cfg.require("family", "V1")), grid);
  fam.V2 = evaluate_on_grid(parse_expression(cfg.require("family", "V2")), grid);
  const FieldExpression f_expr = parse_expression(cfg.require("family", "f"), true);
  const FieldExpression h_expr = parse_expression(cfg.require("family", "h"), true);
  fam.scale_fn = [f_expr](double t) { return f_expr.evaluate_at_t(t); };
  fam.warp_fn = [h_expr](double t) { return h_expr.evaluate_at_t(t); };
  fam.a = cfg.get_double("family", "a");
  fam.b = cfg.get_double("family", "b");
  fam.C_f_a = cfg.get_double("family", "C_f_a");
  fam.C_h_a = cfg.get_double("family", "C_h_a");
  fam.C_h_b = cfg.get_double("family", "C_h_b");
  req.samples = cfg.get_int("family", "samples", req.samples);
  return req;
}

}  // namespace sklsc
