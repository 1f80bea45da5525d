#include "gtlab/serialize.hpp"

#include <stdexcept>
#include <string>

namespace gtlab {
namespace {

json matrices_to_json(const std::vector<CMatrix>& ms) {
  json arr = json::array();
  for (const auto& m : ms) arr.push_back(matrix_to_json(m));
  return arr;
}

std::vector<CMatrix> matrices_from_json(const json& j) {
  std::vector<CMatrix> out;
  for (const auto& e : j) out.push_back(matrix_from_json(e));
  return out;
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("complex value must be a number or [re, im], got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const CMatrix& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(complex_to_json(m(r, c)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMatrix matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const json& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw std::invalid_argument("matrix: expected " + std::to_string(rows * cols) +
                                " entries, got " + std::to_string(data.size()));
  }
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(data[r * cols + c]);
  return m;
}

void to_json(json& j, const SchmidtState& s) {
  j = {{"dim", s.dim}, {"coeffs", s.coeffs}};
  if (!s.canonical()) {
    j["left_basis"] = matrix_to_json(s.left());
    j["right_basis"] = matrix_to_json(s.right());
  }
}

void from_json(const json& j, SchmidtState& s) {
  s.dim = j.at("dim").get<std::size_t>();
  s.coeffs = j.at("coeffs").get<std::vector<double>>();
  s.left_basis = j.contains("left_basis") ? matrix_from_json(j["left_basis"]) : CMatrix{};
  s.right_basis = j.contains("right_basis") ? matrix_from_json(j["right_basis"]) : CMatrix{};
}

void to_json(json& j, const FormTensor& u) {
  json coeffs = json::array();
  for (const Complex& z : u.coeffs()) coeffs.push_back(complex_to_json(z));
  j = {{"n", u.n()}, {"m", u.m()}, {"coeffs", std::move(coeffs)}};
}

void from_json(const json& j, FormTensor& u) {
  const auto n = j.at("n").get<std::size_t>();
  const auto m = j.at("m").get<std::size_t>();
  std::vector<Complex> coeffs;
  for (const auto& z : j.at("coeffs")) coeffs.push_back(complex_from_json(z));
  u = FormTensor(n, m, std::move(coeffs));
}

void to_json(json& j, const WitnessSequence& w) {
  j = {{"xs", matrices_to_json(w.xs)}, {"ys", matrices_to_json(w.ys)}, {"ts", w.ts}};
}

void from_json(const json& j, WitnessSequence& w) {
  w.xs = matrices_from_json(j.at("xs"));
  w.ys = matrices_from_json(j.at("ys"));
  w.ts = j.at("ts").get<std::vector<double>>();
  w.validate();
}

void to_json(json& j, const ConstraintReport& r) {
  j = {{"flavor", to_string(r.flavor)}, {"row_x", r.row_x},     {"col_x", r.col_x},
       {"row_y", r.row_y},              {"col_y", r.col_y},     {"x_value", r.x_value},
       {"y_value", r.y_value},          {"violation", r.violation}};
}

void to_json(json& j, const NormEstimate& e) {
  j = {{"value", e.value},
       {"d", e.d},
       {"restarts", e.restarts},
       {"best_restart", e.best_restart},
       {"iterations", e.iterations},
       {"converged", e.converged},
       {"a", matrix_to_json(e.a)},
       {"b", matrix_to_json(e.b)},
       {"omega", e.omega},
       {"omega_p", e.omega_p}};
}

void to_json(json& j, const SearchResult& r) {
  j = {{"value", r.value},
       {"best_restart", r.best_restart},
       {"iterations", r.iterations},
       {"constraint", r.constraint},
       {"witness", r.witness}};
}

void to_json(json& j, const LiftedNorms& n) {
  j = {{"row_x", n.row_x}, {"col_x", n.col_x}, {"row_y", n.row_y}, {"col_y", n.col_y}};
}

void to_json(json& j, const LiftReport& r) {
  j = {{"original", r.original},
       {"lifted", r.lifted},
       {"slacks", r.slacks},
       {"constraints_hold", r.constraints_hold},
       {"witness_sum", complex_to_json(r.witness_sum)},
       {"witness_abs", r.witness_abs},
       {"lifted_value", complex_to_json(r.lifted_value)},
       {"identity_value", complex_to_json(r.identity_value)},
       {"identity_rel_error", r.identity_rel_error},
       {"identity_holds", r.identity_holds},
       {"max_line_deficit", r.max_line_deficit},
       {"deficit", r.deficit},
       {"deficit_bound", r.deficit_bound},
       {"deficit_within_bound", r.deficit_within_bound}};
}

void to_json(json& j, const TruncateResult& r) {
  j = {{"threshold", r.threshold},
       {"eta_e", r.eta_e},
       {"eta_f", r.eta_f},
       {"kept_indices", r.kept_indices},
       {"dropped_indices", r.dropped_indices},
       {"kept", r.kept},
       {"dropped_rescaled", r.dropped_rescaled}};
}

void to_json(json& j, const TruncationValues& v) {
  j = {{"total", complex_to_json(v.total)},
       {"kept", complex_to_json(v.kept)},
       {"dropped_direct", v.dropped_direct},
       {"dropped_rescaled", v.dropped_rescaled}};
}

void to_json(json& j, const MCReport& r) {
  j = {{"samples", r.samples}, {"d", r.d},          {"mean", r.mean},
       {"std_error", r.std_error}, {"bound", r.bound}, {"sigmas", r.sigmas},
       {"pass", r.pass},       {"col_norm", r.col_norm}, {"row_norm", r.row_norm}};
}

void to_json(json& j, const JPReport& r) {
  j = {{"samples", r.samples},
       {"d", r.d},
       {"d_required", r.d_required},
       {"sigmas", r.sigmas},
       {"target", complex_to_json(r.target)},
       {"mean_value", complex_to_json(r.mean_value)},
       {"value_std_error", r.value_std_error},
       {"identity_pass", r.identity_pass},
       {"mean_norm_product", r.mean_norm_product},
       {"norm_std_error", r.norm_std_error},
       {"norm_bound", r.norm_bound},
       {"norm_pass", r.norm_pass},
       {"norm_bound_applies", r.norm_bound_applies}};
}

void to_json(json& j, const EmbezzleResult& r) { j = {{"fidelity", r.fidelity}}; }

}  // namespace gtlab
