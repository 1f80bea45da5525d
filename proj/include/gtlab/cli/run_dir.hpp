#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gtlab/cli/config.hpp"

namespace gtlab::cli {

/// A named pass/fail outcome. Hard checks decide the exit code; monitors
/// only warn.
struct Check {
  std::string name;
  bool hard = true;
  bool pass = false;
  std::string detail;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const;
};

std::string fmt(double v);
std::string fmt(std::size_t v);
std::string fmt(bool v);
std::string fmt(Complex z);

struct RunOutput {
  json results = json::object();
  std::vector<Check> checks;
  CsvTable table;
  std::vector<std::string> warnings;
  std::vector<std::filesystem::path> artifacts;

  void check(std::string name, bool pass, std::string detail = {});
  void monitor(std::string name, bool pass, std::string detail = {});
  void warn(std::string message);
  bool hard_pass() const;
};

/// config.output if set, else <root>/<command>-<first 12 hex of hash>,
/// root being config.output_root, then $GTLAB_OUTPUT_ROOT, then "runs".
std::filesystem::path resolve_run_dir(const ExperimentConfig& config, const std::string& hash);

/// Writes config.json, report.json, report.csv and inputs.sha1 into `dir`.
void write_run(const std::filesystem::path& dir, const ExperimentConfig& config,
               const std::string& hash, const RunOutput& out);

}  // namespace gtlab::cli
