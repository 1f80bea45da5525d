#include "gtlab/witness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gtlab {

void WitnessSequence::validate() const {
  if (xs.size() != ts.size() || ys.size() != ts.size()) {
    throw std::invalid_argument("witness lists differ in length: " + std::to_string(xs.size()) +
                                "/" + std::to_string(ys.size()) + "/" + std::to_string(ts.size()));
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(ts[i] > 0.0) || !std::isfinite(ts[i])) {
      throw std::invalid_argument("witness t_" + std::to_string(i) + " must be positive");
    }
    if (xs[i].rows() != xs[i].cols() || xs[i].rows() != xs.front().rows() ||
        xs[i].rows() == 0) {
      throw std::invalid_argument("witness x_" + std::to_string(i) + " has inconsistent shape");
    }
    if (ys[i].rows() != ys[i].cols() || ys[i].rows() != ys.front().rows() ||
        ys[i].rows() == 0) {
      throw std::invalid_argument("witness y_" + std::to_string(i) + " has inconsistent shape");
    }
    if (!xs[i].allFinite() || !ys[i].allFinite()) {
      throw std::invalid_argument("witness entries must be finite");
    }
  }
}

void WitnessSequence::push_back(CMatrix x, CMatrix y, double t) {
  xs.push_back(std::move(x));
  ys.push_back(std::move(y));
  ts.push_back(t);
}

std::string_view to_string(Constraint c) {
  return c == Constraint::standard ? "standard" : "loose";
}

Constraint constraint_from_string(std::string_view name) {
  if (name == "standard") return Constraint::standard;
  if (name == "loose") return Constraint::loose;
  throw std::invalid_argument("unknown constraint flavor '" + std::string(name) + "'");
}

ConstraintReport combine_norms(Constraint flavor, double row_x, double col_x, double row_y,
                               double col_y) {
  ConstraintReport r;
  r.flavor = flavor;
  r.row_x = row_x;
  r.col_x = col_x;
  r.row_y = row_y;
  r.col_y = col_y;
  if (flavor == Constraint::standard) {
    r.x_value = row_x + col_x;
    r.y_value = row_y + col_y;
  } else {
    r.x_value = std::sqrt(row_x) + std::sqrt(col_x);
    r.y_value = std::sqrt(row_y) + std::sqrt(col_y);
  }
  r.violation = std::max(0.0, std::max(r.x_value, r.y_value) - 2.0);
  return r;
}

ConstraintReport check_constraint(const WitnessSequence& w, Constraint flavor) {
  if (w.empty()) throw std::invalid_argument("check_constraint: empty witness");
  w.validate();
  const auto n = w.xs.front().rows();
  const auto m = w.ys.front().rows();
  CMatrix rx = CMatrix::Zero(n, n), cx = CMatrix::Zero(n, n);
  CMatrix ry = CMatrix::Zero(m, m), cy = CMatrix::Zero(m, m);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double t2 = w.ts[i] * w.ts[i];
    rx.noalias() += w.xs[i] * w.xs[i].adjoint();
    cx.noalias() += t2 * (w.xs[i].adjoint() * w.xs[i]);
    ry.noalias() += (w.ys[i] * w.ys[i].adjoint()) / t2;
    cy.noalias() += w.ys[i].adjoint() * w.ys[i];
  }
  return combine_norms(flavor, psd_norm(rx), psd_norm(cx), psd_norm(ry), psd_norm(cy));
}

Complex witness_value(const FormTensor& u, const WitnessSequence& w) {
  Complex sum{};
  for (std::size_t i = 0; i < w.size(); ++i) sum += evaluate(u, w.xs[i], w.ys[i]);
  return sum;
}

double witness_abs_sum(const FormTensor& u, const WitnessSequence& w) {
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += std::abs(evaluate(u, w.xs[i], w.ys[i]));
  return sum;
}

double row_column_ratio(const std::vector<CMatrix>& xs) {
  if (xs.empty()) throw std::invalid_argument("row_column_ratio: empty sequence");
  const auto n = xs.front().rows();
  CMatrix rows = CMatrix::Zero(n, n), cols = CMatrix::Zero(n, n);
  for (const auto& x : xs) {
    rows.noalias() += x * x.adjoint();
    cols.noalias() += x.adjoint() * x;
  }
  const double denom = psd_norm(cols);
  return denom > 0.0 ? psd_norm(rows) / denom : 0.0;
}

}  // namespace gtlab
