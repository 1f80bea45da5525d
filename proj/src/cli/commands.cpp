#include "gtlab/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "gtlab/lifting.hpp"
#include "gtlab/lines.hpp"
#include "gtlab/randmat.hpp"
#include "gtlab/search.hpp"
#include "gtlab/serialize.hpp"
#include "gtlab/states.hpp"

namespace gtlab::cli {
namespace fs = std::filesystem;

namespace {

// Stream ids under the master seed.
constexpr std::uint64_t kFormStream = 0x1000;
constexpr std::uint64_t kSearchStream = 1;
constexpr std::uint64_t kSeesawStream = 2;
constexpr std::uint64_t kHtStream = 3;
constexpr std::uint64_t kJpStream = 4;
constexpr std::uint64_t kEtaStream = 5;
constexpr std::uint64_t kWitnessStream = 6;

constexpr double kDefaultT2Grid[] = {0.1, 1.0 / 3.0, 0.5, 1.0, 2.4, 3.0, 10.0};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::size_t> powers_of_two(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> out;
  for (std::size_t d = lo; d <= hi; d *= 2) out.push_back(d);
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

bool bit_equal(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a.data()[i].real() != b.data()[i].real() || a.data()[i].imag() != b.data()[i].imag()) {
      return false;
    }
  }
  return true;
}

SearchOptions search_options(const ExperimentConfig& c) {
  SearchOptions o;
  o.length = c.length;
  o.flavor = constraint_from_string(c.flavor);
  o.restarts = c.restarts;
  o.seed = derive_seed(c.seed, kSearchStream);
  o.exec = c.exec;
  if (c.t2.size() == 1) o.fixed_t = std::sqrt(c.t2.front());
  return o;
}

SeesawOptions seesaw_options(const ExperimentConfig& c) {
  SeesawOptions o;
  o.restarts = c.restarts;
  o.seed = derive_seed(c.seed, kSeesawStream);
  o.exec = c.exec;
  return o;
}

LiftTolerances lift_tolerances(const ExperimentConfig& c) {
  return {c.tol("slack", 1e-10), c.tol("identity", 1e-10)};
}

void check_estimate(RunOutput& out, const std::string& label, const FormTensor& u,
                    const NormEstimate& e) {
  const double again = recheck(u, e);
  out.check(label + "_certificate", std::abs(again - e.value) <= 1e-10 * std::max(1.0, e.value),
            "recomputed " + fmt(again));
  out.check(label + "_contractions",
            op_norm(e.a) <= 1.0 + 1e-10 && op_norm(e.b) <= 1.0 + 1e-10,
            "||a|| = " + fmt(op_norm(e.a)) + ", ||b|| = " + fmt(op_norm(e.b)));
}

}  // namespace

ExperimentConfig with_defaults(ExperimentConfig c) {
  const std::string& cmd = c.command;
  if (cmd == "figure1") {
    if (c.d.empty()) c.d = {8};
    if (c.t2.empty()) c.t2 = {3.0, 2.4};
  } else if (cmd == "lines") {
    if (c.d.empty()) c.d = powers_of_two(1, 512);
    if (c.t2.empty()) c.t2.assign(std::begin(kDefaultT2Grid), std::end(kDefaultT2Grid));
  } else if (cmd == "lift") {
    if (c.d.empty()) c.d = {8, 64, 512};
  } else if (cmd == "norms") {
    if (c.d.empty()) c.d = {1, 2, 4};
  } else if (cmd == "embezzle") {
    if (c.d.empty()) c.d = powers_of_two(16, 4096);
  }
  return c;
}

FormTensor resolve_form(const ExperimentConfig& c) {
  if (c.form == "scalar") return FormTensor::scalar();
  if (c.form == "trace") return FormTensor::trace_form(c.n);
  if (c.form == "random") {
    NormalSampler rng(derive_seed(c.seed, kFormStream));
    return FormTensor::random(c.n, c.m, rng);
  }
  return json::parse(read_file(c.form)).get<FormTensor>();
}

RunOutput cmd_figure1(const ExperimentConfig& c, const fs::path& dir) {
  RunOutput out;
  out.table.header = {"d", "t2", "pgm", "csv", "nonzero", "max_row_sum", "max_col_sum", "mass"};
  fs::create_directories(dir);
  for (std::size_t d : c.d) {
    for (double t2 : c.t2) {
      const Slope s = Slope::from_t_squared(t2);
      const LineFamily fam = line_family(d, s);
      const std::string stem = "L_d" + fmt(d) + "_t2_" + fmt(t2);
      const fs::path pgm = dir / (stem + ".pgm");
      const fs::path csv = heatmap_export(fam.matrix, pgm);
      out.artifacts.push_back(pgm);
      out.artifacts.push_back(csv);

      const CMatrix back = parse_matrix_csv(read_file(csv));
      out.check("csv_roundtrip_" + stem, bit_equal(back, fam.matrix));
      const auto rows = fam.row_sums();
      const auto cols = fam.column_sums();
      const double row_max = *std::max_element(rows.begin(), rows.end());
      const double col_max = *std::max_element(cols.begin(), cols.end());
      const double mass = fam.matrix.real().sum();
      out.check("mass_" + stem,
                std::abs(mass - std::min<double>(d, d * t2)) <= 1e-12 * std::max<double>(1.0, d * t2),
                "sum of entries " + fmt(mass));
      out.table.rows.push_back({fmt(d), fmt(t2), pgm.filename().string(), csv.filename().string(),
                                fmt(fam.nonzero.size()), fmt(row_max), fmt(col_max), fmt(mass)});
      out.results["matrices"].push_back(
          {{"d", d}, {"t2", t2}, {"pgm", pgm.filename().string()}, {"csv", csv.filename().string()}});
    }
  }
  return out;
}

RunOutput cmd_lines(const ExperimentConfig& c, const fs::path&) {
  struct Cell {
    std::size_t d = 0;
    double t2 = 0.0;
    double t = 0.0;
    double row_max = 0.0;
    double col_max = 0.0;
    double value = 0.0;
    double lower = 0.0;
    double family_value = 0.0;
    double row_slack = 0.0;
    double col_slack = 0.0;
  };
  const std::size_t nd = c.d.size(), nt = c.t2.size();
  if (nd == 0 || nt == 0) throw std::invalid_argument("lines: empty grid");

  const auto cells = map_indices<Cell>(nd * nt, c.exec, [&](std::size_t idx) {
    Cell cell;
    cell.d = c.d[idx / nt];
    cell.t2 = c.t2[idx % nt];
    const Slope s = Slope::from_t_squared(cell.t2);
    cell.t = s.t();
    const LineFamily fam = line_family(cell.d, s);
    const auto rows = fam.row_sums();
    const auto cols = fam.column_sums();
    cell.row_max = *std::max_element(rows.begin(), rows.end());
    cell.col_max = *std::max_element(cols.begin(), cols.end());
    cell.value = line_value(cell.d, s);
    cell.lower = analytic_lower_bound(cell.d, s);
    cell.family_value = embezzled_line_value(fam, embezzlement_state(cell.d));
    const auto id = CMatrix::Identity(cell.d, cell.d);
    cell.row_slack = min_eigenvalue(id - row_gram(fam.pieces, cell.d));
    cell.col_slack = min_eigenvalue(cell.t2 * id - column_gram(fam.pieces, cell.d));
    return cell;
  });

  std::vector<Slope> slopes;
  for (double t2 : c.t2) slopes.push_back(Slope::from_t_squared(t2));
  const double c_hat = fit_constant(slopes, c.d, c.exec);

  RunOutput out;
  out.table.header = {"d",     "t2",       "t",           "max_row_sum", "max_col_sum",
                      "row_ok", "col_ok",  "line_value",  "lower_bound", "deficit",
                      "scaled_deficit", "lemma_row_slack", "lemma_col_slack", "family_error"};
  bool rows_ok = true, cols_ok = true, sandwich = true, unit_exact = true, lemma = true,
       family = true, fit_ok = true;
  for (const Cell& cell : cells) {
    const bool r_ok = cell.row_max <= 1.0 + 1e-12;
    const bool c_ok = cell.col_max <= cell.t2 + 1e-12;
    rows_ok = rows_ok && r_ok;
    cols_ok = cols_ok && c_ok;
    sandwich = sandwich && cell.lower - 1e-10 <= cell.value && cell.value <= cell.t + 1e-10;
    if (cell.t2 == 1.0) unit_exact = unit_exact && cell.value == 1.0;
    lemma = lemma && cell.row_slack >= -1e-10 && cell.col_slack >= -1e-10;
    const double family_error = std::abs(cell.family_value - cell.value);
    family = family && family_error <= 1e-12;
    const double deficit = cell.t - cell.value;
    const double scaled = std::max(0.0, deficit) * (1.0 + std::log(static_cast<double>(cell.d))) /
                          (cell.t * std::log1p(std::max(cell.t, 1.0 / cell.t)));
    fit_ok = fit_ok && scaled <= c_hat * (1.0 + 1e-12) + 1e-15;
    out.table.rows.push_back({fmt(cell.d), fmt(cell.t2), fmt(cell.t), fmt(cell.row_max),
                              fmt(cell.col_max), fmt(r_ok), fmt(c_ok), fmt(cell.value),
                              fmt(cell.lower), fmt(deficit), fmt(scaled), fmt(cell.row_slack),
                              fmt(cell.col_slack), fmt(family_error)});
  }
  out.check("row_sums_at_most_1", rows_ok);
  out.check("column_sums_at_most_t2", cols_ok);
  out.check("lower_bound_le_value_le_t", sandwich);
  out.check("unit_slope_exact", unit_exact);
  out.check("lemma_eigen_slacks", lemma);
  out.check("family_value_matches", family);
  out.check("deficit_within_fitted_constant", fit_ok, "C_hat = " + fmt(c_hat));
  out.results["fitted_constant"] = c_hat;
  out.results["cells"] = cells.size();
  return out;
}

RunOutput cmd_lift(const ExperimentConfig& c, const fs::path&) {
  RunOutput out;
  const FormTensor u = resolve_form(c);
  WitnessSequence w;
  if (!c.witness.empty()) {
    w = json::parse(read_file(c.witness)).get<WitnessSequence>();
  } else {
    w = os_search(u, search_options(c)).witness;
  }
  out.results["witness"] = w;
  out.table.header = {"d",          "terms",          "slack_row_x",  "slack_col_x",
                      "slack_row_y", "slack_col_y",   "witness_abs",  "lifted_value",
                      "identity_rel_error", "deficit", "deficit_bound"};
  for (std::size_t d : c.d) {
    const LiftResult lr = lift(w, d);
    const LiftReport rep = verify_lift(u, w, lr, lift_tolerances(c));
    const std::string tag = "_d" + fmt(d);
    out.check("lifted_constraints" + tag, rep.constraints_hold);
    out.check("lifted_identity" + tag, rep.identity_holds, "rel error " + fmt(rep.identity_rel_error));
    out.check("deficit_bound" + tag, rep.deficit_within_bound);
    out.table.rows.push_back({fmt(d), fmt(lr.size()), fmt(rep.slacks[0]), fmt(rep.slacks[1]),
                              fmt(rep.slacks[2]), fmt(rep.slacks[3]), fmt(rep.witness_abs),
                              fmt(rep.lifted_value), fmt(rep.identity_rel_error), fmt(rep.deficit),
                              fmt(rep.deficit_bound)});
    json entry = rep;
    entry["d"] = d;
    entry["terms"] = lr.size();
    out.results["lifts"].push_back(entry);
  }
  return out;
}

RunOutput cmd_os_search(const ExperimentConfig& c, const fs::path&) {
  RunOutput out;
  const FormTensor u = resolve_form(c);
  const SearchResult r = os_search(u, search_options(c));
  const double again = std::abs(witness_value(u, r.witness));
  out.check("witness_feasible", r.constraint.violation <= c.tol("feasibility", 1e-9),
            "violation " + fmt(r.constraint.violation));
  out.check("value_recomputed", std::abs(again - r.value) <= 1e-12 * std::max(1.0, r.value));

  const EtaSearchResult eta = eta_witness_search(u.n(), u.n(), std::min<std::size_t>(c.restarts, 8),
                                                 derive_seed(c.seed, kEtaStream), c.exec);
  out.check("matrix_unit_ratio_is_n",
            std::abs(eta.matrix_unit_ratio - static_cast<double>(u.n())) <= 1e-12,
            "ratio " + fmt(eta.matrix_unit_ratio));
  out.results["search"] = r;
  out.results["eta_lower_bound"] = eta.eta_lower_bound;
  out.table.header = {"value", "violation", "length", "best_restart", "iterations", "eta_lower_bound"};
  out.table.rows.push_back({fmt(r.value), fmt(r.constraint.violation), fmt(r.witness.size()),
                            fmt(r.best_restart), fmt(r.iterations), fmt(eta.eta_lower_bound)});
  return out;
}

RunOutput cmd_norms(const ExperimentConfig& c, const fs::path&) {
  RunOutput out;
  const FormTensor u = resolve_form(c);
  out.table.header = {"d", "norm_lower", "tracial_lower", "iterations", "converged", "best_restart"};
  for (std::size_t d : c.d) {
    const NormEstimate est = norm_seesaw(u, d, seesaw_options(c));
    const NormEstimate tb = tracial_norm_seesaw(u, d, seesaw_options(c));
    const std::string tag = "_d" + fmt(d);
    check_estimate(out, "norm" + tag, u, est);
    check_estimate(out, "tracial" + tag, u, tb);
    if (c.form == "scalar") {
      out.monitor("scalar_norm_is_1" + tag, std::abs(est.value - 1.0) <= 1e-6, fmt(est.value));
    }
    out.table.rows.push_back({fmt(d), fmt(est.value), fmt(tb.value), fmt(est.iterations),
                              fmt(est.converged), fmt(est.best_restart)});
    out.results["norms"].push_back({{"d", d}, {"norm", est}, {"tracial", tb}});
  }
  return out;
}

RunOutput cmd_pipeline(const ExperimentConfig& c, const fs::path&) {
  RunOutput out;
  const FormTensor u = resolve_form(c);
  const double feas = c.tol("feasibility", 1e-9);

  SearchOptions so = search_options(c);
  so.flavor = Constraint::standard;
  so.fixed_t.reset();
  const SearchResult os = os_search(u, so);
  out.check("os_witness_feasible", os.constraint.violation <= feas,
            "violation " + fmt(os.constraint.violation));
  out.results["os"] = os;

  const double eta_e = std::sqrt(static_cast<double>(u.n()));
  const double eta_f = std::sqrt(static_cast<double>(u.m()));
  const TruncateResult tr = truncate(os.witness, eta_e, eta_f, c.eps, feas);
  const TruncationValues tv = truncation_values(u, os.witness, tr);
  out.results["truncation"] = tr;
  out.results["truncation_values"] = tv;
  out.monitor("truncation_retains_value",
              std::abs(tv.kept) >= (1.0 - c.eps) * std::abs(tv.total) - 1e-12,
              "kept " + fmt(std::abs(tv.kept)) + " of " + fmt(std::abs(tv.total)));
  if (tr.fully_dropped()) {
    out.warn("every witness term was truncated; nothing to lift");
    return out;
  }
  const ConstraintReport kept_cons = check_constraint(tr.kept, Constraint::standard);
  out.check("truncated_witness_feasible", kept_cons.violation <= feas,
            "violation " + fmt(kept_cons.violation));

  // d >= (1 + max{t, 1/t})^{C/eps}, C fitted on the standard grid plus the
  // kept slopes.
  double t_max = 1.0;
  std::vector<Slope> slopes;
  for (double t2 : kDefaultT2Grid) slopes.push_back(Slope::from_t_squared(t2));
  for (double t : tr.kept.ts) {
    t_max = std::max({t_max, t, 1.0 / t});
    slopes.push_back(Slope::from_t(t));
  }
  const auto fit_grid = powers_of_two(8, std::max<std::size_t>(8, c.max_d));
  const double c_hat = fit_constant(slopes, fit_grid, c.exec);
  const double log_d = c_hat / c.eps * std::log1p(t_max);
  const double d_float = std::exp(log_d);
  std::size_t d_sched = std::numeric_limits<std::size_t>::max();
  if (d_float < 1e15) d_sched = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(d_float)));
  std::size_t d_used = d_sched;
  if (d_sched > c.max_d) {
    out.warn("schedule asks for d = " + (d_float < 1e15 ? fmt(d_sched) : fmt(d_float)) +
             "; running at max_d = " + fmt(c.max_d));
    d_used = c.max_d;
  }
  out.results["schedule"] = {{"fitted_constant", c_hat},
                             {"t_max", t_max},
                             {"d_required", d_float},
                             {"d_used", d_used}};

  out.table.header = {"d", "lifted_abs", "witness_abs_sum", "deficit", "deficit_bound",
                      "min_slack", "identity_rel_error"};
  std::vector<std::size_t> ds = powers_of_two(1, d_used);
  if (ds.back() != d_used) ds.push_back(d_used);
  double previous = std::numeric_limits<double>::infinity();
  bool shrinking = true, slacks_ok = true, identity_ok = true;
  double worst_slack = std::numeric_limits<double>::infinity();
  for (std::size_t d : ds) {
    const LiftResult lr = lift(tr.kept, d);
    const LiftReport rep = verify_lift(u, tr.kept, lr, lift_tolerances(c));
    const double min_slack = *std::min_element(rep.slacks.begin(), rep.slacks.end());
    worst_slack = std::min(worst_slack, min_slack);
    slacks_ok = slacks_ok && rep.constraints_hold;
    identity_ok = identity_ok && rep.identity_holds;
    shrinking = shrinking && rep.deficit <= previous + 1e-12;
    previous = rep.deficit;
    out.table.rows.push_back({fmt(d), fmt(std::abs(rep.lifted_value)), fmt(rep.witness_abs),
                              fmt(rep.deficit), fmt(rep.deficit_bound), fmt(min_slack),
                              fmt(rep.identity_rel_error)});
    out.results["deficits"].push_back({{"d", d}, {"deficit", rep.deficit}, {"report", rep}});
  }
  out.check("lifted_constraints", slacks_ok, "smallest slack " + fmt(worst_slack));
  out.check("lifted_identity", identity_ok);
  out.monitor("deficit_shrinks_with_d", shrinking);

  // Embezzled leg: estimate ||u_d^Phi|| with both states frozen to Phi_d.
  const std::size_t d_see = std::min(d_used, c.seesaw_d_cap);
  if (d_see < d_used) out.warn("see-saw runs at d = " + fmt(d_see) + " (seesaw_d_cap)");
  SeesawOptions sso = seesaw_options(c);
  const SchmidtState phi = embezzlement_state(d_see);
  sso.frozen_states = std::make_pair(phi, phi);
  const NormEstimate est = norm_seesaw(u, d_see, sso);
  check_estimate(out, "embezzled_seesaw", u, est);
  const double ratio = c.tol("monitor_ratio", 0.4);
  out.monitor("seesaw_vs_witness", est.value >= ratio * os.value,
              fmt(est.value) + " vs " + fmt(ratio) + " x " + fmt(os.value));
  out.results["embezzled_seesaw"] = {{"d", d_see},
                                     {"value", est.value},
                                     {"witness_value", os.value},
                                     {"floor", 0.5 * (1.0 - c.eps) * os.value},
                                     {"estimate", est}};

  // Gaussian leg on the pulled-back form u_d^Phi.
  const std::size_t d_jp = std::min({c.jp_lift_d, d_used, d_see});
  const LiftResult lr_jp = lift(tr.kept, d_jp);
  const WitnessSequence lifted = project_to_constraint(lr_jp.as_witness(), Constraint::loose);
  const FormTensor pulled = state_pullback(u, embezzlement_state(d_jp));
  const std::size_t d_prime_req = jp_dimension(std::max(pulled.n(), pulled.m()), c.eps);
  MCOptions mo;
  mo.samples = c.jp_samples;
  mo.seed = derive_seed(c.seed, kJpStream);
  mo.sigmas = c.tol("sigmas", 3.0);
  mo.exec = c.exec;
  mo.d = std::min(d_prime_req, c.max_d_prime);
  if (*mo.d < d_prime_req) {
    out.warn("Gaussian leg runs at d' = " + fmt(*mo.d) + " instead of " + fmt(d_prime_req));
  }
  const JPReport jp = mc_jp(pulled, lifted, c.eps, mo);
  out.check("gaussian_identity", jp.identity_pass,
            "|mean - target| = " + fmt(std::abs(jp.mean_value - jp.target)) + ", se " +
                fmt(jp.value_std_error));
  if (jp.norm_bound_applies) {
    out.monitor("gaussian_norm_bound", jp.norm_pass, fmt(jp.mean_norm_product));
  }
  json jp_json = jp;
  jp_json["lift_d"] = d_jp;
  out.results["gaussian"] = jp_json;
  return out;
}

RunOutput cmd_embezzle(const ExperimentConfig& c, const fs::path&) {
  RunOutput out;
  const SchmidtState target = max_entangled_state(c.n);
  out.table.header = {"d", "fidelity", "infidelity"};
  double previous = -1.0;
  bool increasing = true, bounded = true;
  for (std::size_t d : c.d) {
    const EmbezzleResult r = embezzle(d, target);
    increasing = increasing && r.fidelity > previous;
    bounded = bounded && r.fidelity <= 1.0 + 1e-12;
    previous = r.fidelity;
    out.table.rows.push_back({fmt(d), fmt(r.fidelity), fmt(1.0 - r.fidelity)});
    out.results["curve"].push_back({{"d", d}, {"fidelity", r.fidelity}});
  }
  out.check("fidelity_strictly_increasing", increasing);
  out.check("fidelity_at_most_1", bounded);
  return out;
}

RunOutput cmd_montecarlo(const ExperimentConfig& c, const fs::path&) {
  RunOutput out;
  out.table.header = {"ensemble", "d", "samples", "mean", "std_error", "bound", "pass"};
  const std::size_t n = c.n;
  for (const std::string& name : split_list(c.ensemble)) {
    MCOptions mo;
    mo.samples = c.samples;
    mo.sigmas = c.tol("sigmas", 3.0);
    mo.exec = c.exec;
    if (name == "diag" || name == "row") {
      std::vector<CMatrix> a_list;
      double gamma = 1.0;
      for (std::size_t k = 0; k < n; ++k) {
        CMatrix a = CMatrix::Zero(n, n);
        if (name == "diag") {
          a(k, k) = 1.0;
        } else {
          a(0, k) = 1.0 / std::sqrt(static_cast<double>(n));
        }
        a_list.push_back(std::move(a));
      }
      if (name == "row") gamma = 1.0 / static_cast<double>(n);
      if (!c.d.empty()) mo.d = c.d.front();
      mo.seed = derive_seed(c.seed, kHtStream);
      const MCReport r = mc_ht(a_list, gamma, c.eps, mo);
      out.check("ht_" + name, r.pass, fmt(r.mean) + " <= " + fmt(r.bound) + " + " +
                                          fmt(r.sigmas) + " x " + fmt(r.std_error));
      out.table.rows.push_back({name, fmt(r.d), fmt(r.samples), fmt(r.mean), fmt(r.std_error),
                                fmt(r.bound), fmt(r.pass)});
      json j = r;
      j["ensemble"] = name;
      j["gamma"] = gamma;
      out.results["ht"].push_back(j);
    } else if (name == "jp") {
      NormalSampler rng(derive_seed(c.seed, kWitnessStream));
      const FormTensor u = resolve_form(c);
      WitnessSequence w;
      for (std::size_t i = 0; i < c.length; ++i) {
        w.push_back(random_gaussian_matrix(u.n(), u.n(), rng), random_gaussian_matrix(u.m(), u.m(), rng),
                    1.0);
      }
      w = project_to_constraint(std::move(w), Constraint::loose);
      const std::size_t req = jp_dimension(std::max(u.n(), u.m()), c.eps);
      mo.d = c.d.empty() ? std::min(req, c.max_d_prime) : c.d.front();
      if (*mo.d < req) out.warn("jp runs at d = " + fmt(*mo.d) + " instead of " + fmt(req));
      mo.samples = c.jp_samples;
      mo.seed = derive_seed(c.seed, kJpStream);
      const JPReport r = mc_jp(u, w, c.eps, mo);
      out.check("jp_identity", r.identity_pass,
                "|mean - target| = " + fmt(std::abs(r.mean_value - r.target)) + ", se " +
                    fmt(r.value_std_error));
      if (r.norm_bound_applies) out.monitor("jp_norm_bound", r.norm_pass, fmt(r.mean_norm_product));
      out.table.rows.push_back({name, fmt(r.d), fmt(r.samples), fmt(std::abs(r.mean_value - r.target)),
                                fmt(r.value_std_error), fmt(r.sigmas * r.value_std_error),
                                fmt(r.identity_pass)});
      out.results["jp"] = r;
    } else {
      throw std::invalid_argument("unknown ensemble " + name + " (diag, row, jp)");
    }
  }
  return out;
}

RunOutput dispatch(const ExperimentConfig& c, const fs::path& dir) {
  if (c.command == "figure1") return cmd_figure1(c, dir);
  if (c.command == "lines") return cmd_lines(c, dir);
  if (c.command == "lift") return cmd_lift(c, dir);
  if (c.command == "os-search") return cmd_os_search(c, dir);
  if (c.command == "norms") return cmd_norms(c, dir);
  if (c.command == "pipeline") return cmd_pipeline(c, dir);
  if (c.command == "embezzle") return cmd_embezzle(c, dir);
  if (c.command == "montecarlo") return cmd_montecarlo(c, dir);
  throw std::invalid_argument("unknown command " + c.command);
}

int run(ExperimentConfig config) {
  config = with_defaults(std::move(config));
  const std::string hash = input_hash(config);
  const fs::path dir = resolve_run_dir(config, hash);
  const RunOutput out = dispatch(config, dir);
  write_run(dir, config, hash, out);

  for (const auto& w : out.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& ch : out.checks) {
    std::cout << (ch.pass ? "PASS" : "FAIL") << "  " << (ch.hard ? "hard   " : "monitor") << "  "
              << ch.name;
    if (!ch.detail.empty()) std::cout << "  (" << ch.detail << ")";
    std::cout << "\n";
  }
  std::cout << "run directory: " << dir.string() << "\n";
  return out.hard_pass() ? 0 : 1;
}

}  // namespace gtlab::cli
