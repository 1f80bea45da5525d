#include "gtlab/cli/run_dir.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace gtlab::cli {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

std::string CsvTable::str() const {
  std::string text;
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) text += ',';
      text += csv_field(fields[i]);
    }
    text += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return text;
}

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fmt(std::size_t v) { return std::to_string(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }

std::string fmt(Complex z) {
  std::string s = fmt(z.real());
  if (z.imag() >= 0.0 || std::isnan(z.imag())) s += '+';
  return s + fmt(z.imag()) + "i";
}

void RunOutput::check(std::string name, bool pass, std::string detail) {
  checks.push_back({std::move(name), true, pass, std::move(detail)});
}

void RunOutput::monitor(std::string name, bool pass, std::string detail) {
  if (!pass) warn("monitor " + name + " below threshold" + (detail.empty() ? "" : ": " + detail));
  checks.push_back({std::move(name), false, pass, std::move(detail)});
}

void RunOutput::warn(std::string message) { warnings.push_back(std::move(message)); }

bool RunOutput::hard_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return !c.hard || c.pass; });
}

std::filesystem::path resolve_run_dir(const ExperimentConfig& config, const std::string& hash) {
  if (!config.output.empty()) return config.output;
  std::filesystem::path root = "runs";
  if (!config.output_root.empty()) {
    root = config.output_root;
  } else if (const char* env = std::getenv(kOutputRootEnv); env && *env) {
    root = env;
  }
  return root / (config.command + "-" + hash.substr(0, 12));
}

void write_run(const std::filesystem::path& dir, const ExperimentConfig& config,
               const std::string& hash, const RunOutput& out) {
  std::filesystem::create_directories(dir);
  write_text(dir / "config.json", json(config).dump(2) + "\n");

  json checks = json::array();
  for (const auto& c : out.checks) {
    checks.push_back({{"name", c.name},
                      {"kind", c.hard ? "hard" : "monitor"},
                      {"pass", c.pass},
                      {"detail", c.detail}});
  }
  json artifacts = json::array();
  for (const auto& a : out.artifacts) artifacts.push_back(a.filename().string());
  const json report = {{"command", config.command},
                       {"input_hash", hash},
                       {"pass", out.hard_pass()},
                       {"checks", checks},
                       {"warnings", out.warnings},
                       {"artifacts", artifacts},
                       {"results", out.results}};
  write_text(dir / "report.json", report.dump(2) + "\n");
  write_text(dir / "report.csv", out.table.str());
  write_text(dir / "inputs.sha1", hash + "\n");
}

}  // namespace gtlab::cli
