#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "gtlab/cli/commands.hpp"
#include "gtlab/cli/config.hpp"
#include "gtlab/cli/run_dir.hpp"
#include "gtlab/serialize.hpp"
#include "support.hpp"

using namespace gtlab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("gtlab_cli_" + name);
  fs::remove_all(p);
  return p;
}

int parse(std::vector<std::string> args, cli::ExperimentConfig& cfg) {
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  int code = 0;
  cli::parse_command_line(static_cast<int>(argv.size()), argv.data(), cfg, code);
  return code;
}

}  // namespace

TEST_CASE("git blob hashes match git") {
  CHECK(cli::git_blob_hash("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  CHECK(cli::git_blob_hash("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST_CASE("serialized objects round trip exactly") {
  NormalSampler rng(60);
  const FormTensor u = FormTensor::random(2, 3, rng);
  const FormTensor u2 = json::parse(json(u).dump()).get<FormTensor>();
  CHECK(u2.coeffs() == u.coeffs());

  const WitnessSequence w = oracle::random_witness(2, 3, 3, rng);
  const WitnessSequence w2 = json::parse(json(w).dump()).get<WitnessSequence>();
  CHECK(w2.ts == w.ts);
  for (std::size_t i = 0; i < w.size(); ++i) {
    CHECK(oracle::bit_equal(w2.xs[i], w.xs[i]));
    CHECK(oracle::bit_equal(w2.ys[i], w.ys[i]));
  }

  const SchmidtState s = oracle::random_state(3, rng);
  const SchmidtState s2 = json::parse(json(s).dump()).get<SchmidtState>();
  CHECK(s2.coeffs == s.coeffs);
  CHECK(oracle::bit_equal(s2.left_basis, s.left_basis));
  CHECK(!json(embezzlement_state(4)).contains("left_basis"));
}

TEST_CASE("config round trip and command line override") {
  cli::ExperimentConfig c;
  c.command = "lines";
  c.d = {4, 8};
  c.t2 = {1.0 / 3.0, 2.4};
  c.seed = 77;
  c.tolerances["identity"] = 1e-9;
  const cli::ExperimentConfig back = json::parse(json(c).dump()).get<cli::ExperimentConfig>();
  CHECK(json(back) == json(c));
  CHECK(back.t2[0] == 1.0 / 3.0);

  const fs::path dir = scratch("override");
  fs::create_directories(dir);
  const fs::path file = dir / "cfg.json";
  std::ofstream(file) << json(c).dump();

  cli::ExperimentConfig parsed;
  CHECK(parse({"gtlab", "lines", "--config", file.string(), "--seed", "5", "--tol", "slack=1e-8"},
              parsed) == 0);
  CHECK(parsed.command == "lines");
  CHECK(parsed.seed == 5);
  CHECK(parsed.d == c.d);
  CHECK(parsed.tolerances.at("identity") == 1e-9);
  CHECK(parsed.tolerances.at("slack") == 1e-8);
  CHECK(cli::input_hash(parsed) != cli::input_hash(c));

  cli::ExperimentConfig from_file;
  CHECK(parse({"gtlab", "--config", file.string()}, from_file) == 0);
  CHECK(from_file.command == "lines");
  cli::ExperimentConfig none;
  CHECK(parse({"gtlab", "--seed", "1"}, none) == 2);
  fs::remove_all(dir);
}

TEST_CASE("input hash ignores output location and policy") {
  cli::ExperimentConfig a;
  a.command = "embezzle";
  cli::ExperimentConfig b = a;
  b.output = "/somewhere";
  b.exec = Exec::serial;
  CHECK(cli::input_hash(a) == cli::input_hash(b));
  b.seed = 1;
  CHECK(cli::input_hash(a) != cli::input_hash(b));
}

TEST_CASE("run directory comes from the environment") {
  cli::ExperimentConfig c;
  c.command = "figure1";
  const std::string hash = cli::git_blob_hash("x");
  setenv(cli::kOutputRootEnv, "/tmp/gtlab_env_root", 1);
  CHECK(cli::resolve_run_dir(c, hash) == fs::path("/tmp/gtlab_env_root") / ("figure1-" + hash.substr(0, 12)));
  c.output_root = "/tmp/other";
  CHECK(cli::resolve_run_dir(c, hash).parent_path() == fs::path("/tmp/other"));
  unsetenv(cli::kOutputRootEnv);
}

TEST_CASE("figure1 run writes reproducible artifacts") {
  const fs::path dir = scratch("figure1");
  cli::ExperimentConfig c;
  c.command = "figure1";
  c.output = dir.string();
  CHECK(cli::run(c) == 0);
  for (const char* f : {"config.json", "report.json", "report.csv", "inputs.sha1", "L_d8_t2_3.pgm",
                        "L_d8_t2_3.csv", "L_d8_t2_2.4.pgm", "L_d8_t2_2.4.csv"}) {
    CHECK(fs::exists(dir / f));
  }
  const std::string first = slurp(dir / "report.json");
  const std::string csv = slurp(dir / "L_d8_t2_2.4.csv");

  // Replay from the written config.
  cli::ExperimentConfig replay = cli::load_config(dir / "config.json");
  const fs::path dir2 = scratch("figure1_replay");
  replay.output = dir2.string();
  CHECK(cli::run(replay) == 0);
  CHECK(slurp(dir2 / "report.json") == first);
  CHECK(slurp(dir2 / "L_d8_t2_2.4.csv") == csv);
  fs::remove_all(dir);
  fs::remove_all(dir2);
}

TEST_CASE("figure1 at d = 16 keeps the block structure") {
  const fs::path dir = scratch("figure1_16");
  cli::ExperimentConfig c;
  c.command = "figure1";
  c.d = {16};
  c.t2 = {3.0};
  c.output = dir.string();
  CHECK(cli::run(c) == 0);
  const CMatrix l = parse_matrix_csv(slurp(dir / "L_d16_t2_3.csv"));
  CHECK(oracle::bit_equal(l, oracle::line_matrix_sweep(16, 3.0)));
  fs::remove_all(dir);
}

TEST_CASE("small runs of every command pass their hard checks") {
  const fs::path root = scratch("commands");
  auto make = [&](const std::string& cmd) {
    cli::ExperimentConfig c;
    c.command = cmd;
    c.output_root = root.string();
    c.restarts = 3;
    c.samples = 20;
    c.jp_samples = 20;
    return c;
  };
  auto c = make("lines");
  c.d = {1, 4, 16};
  CHECK(cli::run(c) == 0);
  c = make("lift");
  c.form = "random";
  c.d = {4, 8};
  CHECK(cli::run(c) == 0);
  c = make("os-search");
  CHECK(cli::run(c) == 0);
  c = make("norms");
  CHECK(cli::run(c) == 0);
  c = make("embezzle");
  c.d = {16, 32, 64};
  CHECK(cli::run(c) == 0);
  c = make("montecarlo");
  c.d = {24};
  CHECK(cli::run(c) == 0);
  c = make("pipeline");
  c.max_d = 16;
  c.max_d_prime = 8;
  CHECK(cli::run(c) == 0);

  const json report = json::parse(slurp(cli::resolve_run_dir(cli::with_defaults(c), cli::input_hash(cli::with_defaults(c))) / "report.json"));
  CHECK(report["pass"] == true);
  CHECK(report["results"].contains("deficits"));
  fs::remove_all(root);
}

TEST_CASE("failing hard check gives a nonzero exit code") {
  const fs::path dir = scratch("fail");
  cli::ExperimentConfig c;
  c.command = "embezzle";
  c.d = {64, 32};
  c.output = dir.string();
  CHECK(cli::run(c) == 1);
  fs::remove_all(dir);
}
