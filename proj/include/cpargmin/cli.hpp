#pragma once

// Command-line front end. Exit codes: 0 success, 1 verdict failure,
// 2 input error, 3 data-shape error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace cpargmin {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitVerdict = 1, kExitInput = 2, kExitShape = 3 };

struct RunManifest {
  std::string command;
  std::string config_path;
  std::string output_dir;
  std::uint64_t master_seed = 0;
  std::string tool_version = kToolVersion;
};

std::string to_text(const RunManifest& m);

int run_fit(const std::string& data_path, long long k, const std::string& out, std::ostream& err);
int run_simulate_limit(const std::string& spec_path, long long reps, std::uint64_t seed, const std::string& out,
                       unsigned workers, std::ostream& err);
int run_capacity(const std::string& spec_path, const std::string& set, bool open, long long reps, std::uint64_t seed,
                 unsigned workers, std::ostream& out, std::ostream& err);
int run_coverage(const std::string& config_path, const std::string& out, std::optional<std::uint64_t> seed,
                 unsigned workers, std::ostream& err);
int run_verify(const std::string& config_path, const std::string& out, std::optional<std::uint64_t> seed,
               unsigned workers, std::ostream& err);

// Parses argv and dispatches to the run_* functions.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace cpargmin
