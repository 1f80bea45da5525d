#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gtlab/parallel.hpp"
#include "gtlab/serialize.hpp"

namespace gtlab::cli {

/// Everything a run depends on. Empty grids mean "use the command's
/// default grid"; the resolved values are what gets written to config.json.
struct ExperimentConfig {
  std::string command;
  std::vector<std::size_t> d;
  std::vector<double> t2;
  std::size_t n = 2;
  std::size_t m = 2;
  std::size_t length = 2;
  double eps = 0.5;
  std::size_t samples = 200;
  std::size_t jp_samples = 500;
  std::size_t restarts = 16;
  std::uint64_t seed = 0;
  /// Builtin name (scalar, trace, random) or a path to a form JSON file.
  std::string form = "scalar";
  /// Optional witness JSON file (lift).
  std::string witness;
  std::string flavor = "standard";
  std::string ensemble = "diag,row,jp";
  std::size_t max_d = 512;
  std::size_t seesaw_d_cap = 16;
  std::size_t jp_lift_d = 4;
  std::size_t max_d_prime = 64;
  std::map<std::string, double> tolerances;
  Exec exec = Exec::parallel;
  /// Exact run directory; empty means <root>/<command>-<hash12>.
  std::string output;
  /// Output root; empty means $GTLAB_OUTPUT_ROOT or ./runs.
  std::string output_root;

  double tol(const std::string& key, double fallback) const;
};

inline constexpr const char* kOutputRootEnv = "GTLAB_OUTPUT_ROOT";

void to_json(json& j, const ExperimentConfig& c);
void from_json(const json& j, ExperimentConfig& c);

ExperimentConfig load_config(const std::filesystem::path& path);

/// Parses argv. A --config file is loaded first and flags given on the
/// command line then override its fields. Returns false after printing
/// help or a parse error; `exit_code` receives the status to return.
bool parse_command_line(int argc, char** argv, ExperimentConfig& out, int& exit_code);

/// SHA-1 of "blob <size>\0" + content, lowercase hex, as git computes it.
std::string git_blob_hash(const std::string& content);

/// Hash of the config fields that affect results plus the content of any
/// referenced input files. Output locations and the execution policy are
/// excluded.
std::string input_hash(const ExperimentConfig& c);

}  // namespace gtlab::cli
