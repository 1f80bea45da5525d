#pragma once

#include <filesystem>

#include "gtlab/cli/config.hpp"
#include "gtlab/cli/run_dir.hpp"
#include "gtlab/forms.hpp"

namespace gtlab::cli {

/// Fills empty grids with the command's defaults.
ExperimentConfig with_defaults(ExperimentConfig config);

/// scalar, trace (on M_n), random (n x m, seeded) or a form JSON file.
FormTensor resolve_form(const ExperimentConfig& config);

RunOutput cmd_figure1(const ExperimentConfig& config, const std::filesystem::path& dir);
RunOutput cmd_lines(const ExperimentConfig& config, const std::filesystem::path& dir);
RunOutput cmd_lift(const ExperimentConfig& config, const std::filesystem::path& dir);
RunOutput cmd_os_search(const ExperimentConfig& config, const std::filesystem::path& dir);
RunOutput cmd_norms(const ExperimentConfig& config, const std::filesystem::path& dir);
RunOutput cmd_pipeline(const ExperimentConfig& config, const std::filesystem::path& dir);
RunOutput cmd_embezzle(const ExperimentConfig& config, const std::filesystem::path& dir);
RunOutput cmd_montecarlo(const ExperimentConfig& config, const std::filesystem::path& dir);

RunOutput dispatch(const ExperimentConfig& config, const std::filesystem::path& dir);

/// Resolves defaults, runs the command, writes the run directory and
/// prints a summary. Returns 0 iff every hard check passed.
int run(ExperimentConfig config);

}  // namespace gtlab::cli
