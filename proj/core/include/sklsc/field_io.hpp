#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "sklsc/grid.hpp"

namespace sklsc {

// "torus-field v1" text format:
//   line 1: # torus-field v1
//   line 2: d N_1 ... N_d
//   line 3: L_1 ... L_d
//   then one value per line, row-major (axis 0 slowest), 17 significant
//   digits so round-trips are bit exact.
void write_field(std::ostream& os, const ScalarField& field);
void write_field(const std::filesystem::path& path, const ScalarField& field);
ScalarField read_field(std::istream& is, const std::string& what = "field");
ScalarField read_field(const std::filesystem::path& path);

// Line-oriented "key: value" metadata files.
void write_meta(const std::filesystem::path& path,
                const std::map<std::string, std::string>& entries);
std::map<std::string, std::string> read_meta(const std::filesystem::path& path);

std::string format_double(double v);

}  // namespace sklsc
