#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "isoprofile/errors.hpp"
#include "isoprofile/profile.hpp"

namespace isoprofile {

enum class OutputFormat { kHuman, kJson, kCsv };

struct JobConfig {
  // validate | enumerate | fv | psi | phi | finite-profile | chain2-bound |
  // disk-bound
  std::string command;
  std::filesystem::path input;
  int dim = 0;  // enumerate: chain dimension, 0 means q - 1
  bool cycles_only = false;
  int min_n = 1;
  int max_n = 8;
  Budget budget;
  std::optional<std::size_t> oracle_radius;
  std::optional<std::filesystem::path> cache_path;
  bool use_cache = true;
  OutputFormat format = OutputFormat::kHuman;
  std::string cycle;
  std::filesystem::path delta;
  int circles = 1;
};

// 0 on success, 1 for unexpected failures, otherwise one code per class.
int exit_code(ErrorKind kind);

// Runs one job, printing the report to `out` and diagnostics to `err`.
// Library errors are caught, named on `err` and turned into exit codes.
int run(const JobConfig& config, std::ostream& out, std::ostream& err);

}  // namespace isoprofile
