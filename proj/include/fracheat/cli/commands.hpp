#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace fracheat::cli {

enum ExitStatus : int {
  exit_success = 0,
  exit_io = 1,
  exit_schema = 2,
  exit_numerical = 3,
};

/// hs-apply, hs-compare, extend, dtn-verify, kernel-table, monotonicity,
/// vanish-order, propagate.
const std::vector<std::string>& experiment_names();

/// Runs one experiment. Outputs go to out_dir/<experiment>.json plus any
/// data files; numerical failures write out_dir/error.json. Messages go to log.
int run_experiment(const std::string& experiment, const std::filesystem::path& config_path,
                   const std::filesystem::path& out_dir, std::ostream& log);

}  // namespace fracheat::cli
