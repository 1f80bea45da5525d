#include "gtlab/cli/config.hpp"

#include <openssl/sha.h>

#include <CLI11.hpp>
#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace gtlab::cli {
namespace {

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"figure1", "line matrix heatmaps (PGM + CSV)"},
    {"lines", "line matrix feasibility, sandwich and decay sweep"},
    {"lift", "lift a witness through the line matrices and verify"},
    {"os-search", "constrained witness search"},
    {"norms", "see-saw lower bounds on amplified norms"},
    {"pipeline", "search, truncate, lift, see-saw and Gaussian leg"},
    {"embezzle", "embezzlement fidelity curve"},
    {"montecarlo", "Gaussian random matrix estimates"},
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_builtin_form(const std::string& name) {
  return name == "scalar" || name == "trace" || name == "random";
}

// Finds --config PATH or --config=PATH before the full parse.
std::string prescan_config(int argc, char** argv) {
  std::string path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      path = argv[i + 1];
    } else if (arg.rfind("--config=", 0) == 0) {
      path = arg.substr(9);
    }
  }
  return path;
}

}  // namespace

double ExperimentConfig::tol(const std::string& key, double fallback) const {
  const auto it = tolerances.find(key);
  return it == tolerances.end() ? fallback : it->second;
}

void to_json(json& j, const ExperimentConfig& c) {
  j = {{"command", c.command},
       {"d", c.d},
       {"t2", c.t2},
       {"n", c.n},
       {"m", c.m},
       {"length", c.length},
       {"eps", c.eps},
       {"samples", c.samples},
       {"jp_samples", c.jp_samples},
       {"restarts", c.restarts},
       {"seed", c.seed},
       {"form", c.form},
       {"witness", c.witness},
       {"flavor", c.flavor},
       {"ensemble", c.ensemble},
       {"max_d", c.max_d},
       {"seesaw_d_cap", c.seesaw_d_cap},
       {"jp_lift_d", c.jp_lift_d},
       {"max_d_prime", c.max_d_prime},
       {"tolerances", c.tolerances},
       {"exec", std::string(to_string(c.exec))},
       {"output", c.output},
       {"output_root", c.output_root}};
}

void from_json(const json& j, ExperimentConfig& c) {
  auto take = [&](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  take("command", c.command);
  take("d", c.d);
  take("t2", c.t2);
  take("n", c.n);
  take("m", c.m);
  take("length", c.length);
  take("eps", c.eps);
  take("samples", c.samples);
  take("jp_samples", c.jp_samples);
  take("restarts", c.restarts);
  take("seed", c.seed);
  take("form", c.form);
  take("witness", c.witness);
  take("flavor", c.flavor);
  take("ensemble", c.ensemble);
  take("max_d", c.max_d);
  take("seesaw_d_cap", c.seesaw_d_cap);
  take("jp_lift_d", c.jp_lift_d);
  take("max_d_prime", c.max_d_prime);
  take("tolerances", c.tolerances);
  take("output", c.output);
  take("output_root", c.output_root);
  if (j.contains("exec")) {
    const auto e = j.at("exec").get<std::string>();
    if (e != "serial" && e != "parallel") throw std::invalid_argument("exec must be serial or parallel");
    c.exec = e == "serial" ? Exec::serial : Exec::parallel;
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  const json j = json::parse(read_file(path));
  return j.get<ExperimentConfig>();
}

bool parse_command_line(int argc, char** argv, ExperimentConfig& out, int& exit_code) {
  ExperimentConfig cfg;
  std::string config_path = prescan_config(argc, argv);
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: config " << config_path << ": " << e.what() << "\n";
    exit_code = 2;
    return false;
  }

  CLI::App app{"gtlab: line matrices, embezzlement lifts and amplified bilinear forms"};
  app.require_subcommand(0, 1);
  app.add_option("--config", config_path, "JSON config; flags override its fields");
  app.add_option("-d,--d", cfg.d, "dimension grid");
  app.add_option("--t2", cfg.t2, "t^2 grid");
  app.add_option("-n,--n", cfg.n, "left matrix size");
  app.add_option("-m,--m", cfg.m, "right matrix size");
  app.add_option("--length", cfg.length, "witness length");
  app.add_option("--eps", cfg.eps, "accuracy parameter");
  app.add_option("--samples", cfg.samples, "Monte Carlo samples (Gaussian norm ensembles)");
  app.add_option("--jp-samples", cfg.jp_samples, "Monte Carlo samples (pairing identity)");
  app.add_option("--restarts", cfg.restarts, "search / see-saw restarts");
  app.add_option("--seed", cfg.seed, "master seed");
  app.add_option("--form", cfg.form, "scalar | trace | random | path to form JSON");
  app.add_option("--witness", cfg.witness, "witness JSON file");
  app.add_option("--flavor", cfg.flavor, "standard | loose");
  app.add_option("--ensemble", cfg.ensemble, "Monte Carlo ensembles, comma separated");
  app.add_option("--max-d", cfg.max_d, "largest lift dimension");
  app.add_option("--seesaw-d-cap", cfg.seesaw_d_cap, "largest see-saw dimension");
  app.add_option("--jp-lift-d", cfg.jp_lift_d, "lift dimension for the Gaussian leg");
  app.add_option("--max-d-prime", cfg.max_d_prime, "largest Gaussian dimension");
  std::vector<std::string> tol_pairs;
  app.add_option("--tol", tol_pairs, "tolerance override KEY=VALUE");
  std::string exec_name;
  app.add_option("--exec", exec_name, "serial | parallel")->check(CLI::IsMember({"serial", "parallel"}));
  app.add_option("-o,--out", cfg.output, "run directory");
  app.add_option("--root", cfg.output_root, "output root");
  for (const auto& [name, about] : kCommands) app.add_subcommand(name, about)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    exit_code = app.exit(e);
    return false;
  }
  if (!app.get_subcommands().empty()) cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.command.empty()) {
    std::cerr << "error: a subcommand is required (or a --config that names one)\n"
              << app.help();
    exit_code = 2;
    return false;
  }
  if (!exec_name.empty()) cfg.exec = exec_name == "serial" ? Exec::serial : Exec::parallel;
  for (const auto& pair : tol_pairs) {
    const auto eq = pair.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: --tol expects KEY=VALUE, got " << pair << "\n";
      exit_code = 2;
      return false;
    }
    cfg.tolerances[pair.substr(0, eq)] = std::stod(pair.substr(eq + 1));
  }
  out = std::move(cfg);
  exit_code = 0;
  return true;
}

std::string git_blob_hash(const std::string& content) {
  const std::string blob = "blob " + std::to_string(content.size()) + '\0' + content;
  std::array<unsigned char, SHA_DIGEST_LENGTH> digest{};
  SHA1(reinterpret_cast<const unsigned char*>(blob.data()), blob.size(), digest.data());
  std::string hex;
  for (unsigned char byte : digest) {
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02x", byte);
    hex += buf;
  }
  return hex;
}

std::string input_hash(const ExperimentConfig& c) {
  json j = c;
  j.erase("output");
  j.erase("output_root");
  j.erase("exec");
  if (!c.form.empty() && !is_builtin_form(c.form)) j["form_content"] = git_blob_hash(read_file(c.form));
  if (!c.witness.empty()) j["witness_content"] = git_blob_hash(read_file(c.witness));
  return git_blob_hash(j.dump());
}

}  // namespace gtlab::cli
