#pragma once

#include <string>

namespace sklsc::cli {

// Exit codes shared by every command.
inline constexpr int kOk = 0;
inline constexpr int kNoCrossing = 2;
inline constexpr int kConfigError = 3;
inline constexpr int kSolverFailure = 4;

int run_scan(const std::string& config_path, const std::string& out_path);
int run_solve(const std::string& config_path, const std::string& out_dir);
int run_verify(const std::string& config_path, const std::string& solution_dir,
               bool geometric);
int run_poincare(const std::string& config_path);
int run_instability(const std::string& config_path, const std::string& out_path);
int run_demo(const std::string& name, const std::string& out_dir);

}  // namespace sklsc::cli
