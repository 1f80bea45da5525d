#include "gtlab/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace gtlab {
namespace {

// max over keys of ||sum of the Gram terms grouped under that key||.
double grouped_norm(const std::map<std::size_t, CMatrix>& groups) {
  double top = 0.0;
  for (const auto& [key, block] : groups) top = std::max(top, psd_norm(block));
  return top;
}

void accumulate(std::map<std::size_t, CMatrix>& groups, std::size_t key, const CMatrix& term) {
  auto it = groups.find(key);
  if (it == groups.end()) {
    groups.emplace(key, term);
  } else {
    it->second += term;
  }
}

}  // namespace

CMatrix LiftResult::x_lifted(std::size_t j) const {
  return kron(x_base[terms[j].source], terms[j].piece.dense(d));
}

CMatrix LiftResult::y_lifted(std::size_t j) const {
  return kron(y_base[terms[j].source], terms[j].piece.dense(d));
}

std::vector<CMatrix> LiftResult::xs_lifted() const {
  std::vector<CMatrix> out;
  for (std::size_t j = 0; j < terms.size(); ++j) out.push_back(x_lifted(j));
  return out;
}

std::vector<CMatrix> LiftResult::ys_lifted() const {
  std::vector<CMatrix> out;
  for (std::size_t j = 0; j < terms.size(); ++j) out.push_back(y_lifted(j));
  return out;
}

WitnessSequence LiftResult::as_witness() const {
  WitnessSequence w;
  for (std::size_t j = 0; j < terms.size(); ++j) w.push_back(x_lifted(j), y_lifted(j), 1.0);
  return w;
}

LiftResult lift(const WitnessSequence& w, std::size_t d) {
  if (d == 0) throw std::invalid_argument("lift: d must be >= 1");
  if (w.empty()) throw std::invalid_argument("lift: empty witness");
  w.validate();
  LiftResult lr;
  lr.d = d;
  lr.state = embezzlement_state(d);
  lr.ts = w.ts;
  for (std::size_t i = 0; i < w.size(); ++i) {
    lr.x_base.push_back(w.xs[i]);
    lr.y_base.push_back(w.ys[i] / w.ts[i]);
    for (const auto& e : line_entries(d, Slope::from_t(w.ts[i]))) {
      lr.terms.push_back({i, MatrixUnit{e.row, e.col, std::sqrt(e.length)}});
    }
  }
  return lr;
}

LiftedNorms lifted_norms(const LiftResult& lr) {
  // (x (x) s E_ab)(x (x) s E_ab)^* = s^2 xx^* (x) E_aa, and the adjoint
  // product lands on E_bb; group by a (rows) or b (columns).
  std::map<std::size_t, CMatrix> rx, cx, ry, cy;
  for (const auto& term : lr.terms) {
    const double s2 = term.piece.value * term.piece.value;
    const CMatrix& x = lr.x_base[term.source];
    const CMatrix& y = lr.y_base[term.source];
    accumulate(rx, term.piece.row, s2 * (x * x.adjoint()));
    accumulate(cx, term.piece.col, s2 * (x.adjoint() * x));
    accumulate(ry, term.piece.row, s2 * (y * y.adjoint()));
    accumulate(cy, term.piece.col, s2 * (y.adjoint() * y));
  }
  return {grouped_norm(rx), grouped_norm(cx), grouped_norm(ry), grouped_norm(cy)};
}

LiftedNorms lifted_norms_dense(const LiftResult& lr) {
  if (lr.terms.empty()) return {};
  const auto nd = lr.x_base.front().rows() * static_cast<Eigen::Index>(lr.d);
  const auto md = lr.y_base.front().rows() * static_cast<Eigen::Index>(lr.d);
  CMatrix rx = CMatrix::Zero(nd, nd), cx = CMatrix::Zero(nd, nd);
  CMatrix ry = CMatrix::Zero(md, md), cy = CMatrix::Zero(md, md);
  for (std::size_t j = 0; j < lr.terms.size(); ++j) {
    const CMatrix x = lr.x_lifted(j);
    const CMatrix y = lr.y_lifted(j);
    rx += x * x.adjoint();
    cx += x.adjoint() * x;
    ry += y * y.adjoint();
    cy += y.adjoint() * y;
  }
  return {op_norm(rx), op_norm(cx), op_norm(ry), op_norm(cy)};
}

LiftReport verify_lift(const FormTensor& u, const WitnessSequence& w, const LiftResult& lr,
                       const LiftTolerances& tolerances) {
  if (lr.x_base.size() != w.size()) {
    throw std::invalid_argument("verify_lift: lift was built from a different witness");
  }
  if (w.empty()) throw std::invalid_argument("verify_lift: empty witness");
  if (w.xs.front().rows() != static_cast<Eigen::Index>(u.n()) ||
      w.ys.front().rows() != static_cast<Eigen::Index>(u.m())) {
    throw std::invalid_argument("verify_lift: witness does not match the form dimensions");
  }
  LiftReport rep;
  rep.original = check_constraint(w, Constraint::standard);
  rep.lifted = lifted_norms(lr);
  rep.slacks = {rep.original.row_x - rep.lifted.row_x, rep.original.col_x - rep.lifted.col_x,
                rep.original.row_y - rep.lifted.row_y, rep.original.col_y - rep.lifted.col_y};
  rep.constraints_hold = std::all_of(rep.slacks.begin(), rep.slacks.end(),
                                     [&](double s) { return s >= -tolerances.slack; });

  std::vector<Complex> values(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    values[i] = evaluate(u, w.xs[i], w.ys[i]);
    rep.witness_sum += values[i];
    rep.witness_abs += std::abs(values[i]);
  }

  // (u (x) phi)(x (x) P, t^-1 y (x) P) = t^-1 u(x, y) phi(P, P).
  for (const auto& term : lr.terms) {
    const Complex phi = state_form_value(lr.state, term.piece, term.piece);
    rep.lifted_value += values[term.source] / w.ts[term.source] * phi;
  }

  double scale = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Slope slope = Slope::from_t(w.ts[i]);
    const double lv = line_value(lr.d, slope);
    rep.identity_value += values[i] / w.ts[i] * lv;
    scale += std::abs(values[i]) / w.ts[i] * lv;
    rep.max_line_deficit = std::max(rep.max_line_deficit, 1.0 - lv / w.ts[i]);
  }
  const double err = std::abs(rep.lifted_value - rep.identity_value);
  rep.identity_rel_error = scale > 0.0 ? err / scale : err;
  rep.identity_holds = rep.identity_rel_error <= tolerances.identity;

  rep.deficit = std::abs(rep.witness_sum) - std::abs(rep.lifted_value);
  rep.deficit_bound = rep.max_line_deficit * rep.witness_abs;
  rep.deficit_within_bound =
      rep.deficit <= rep.deficit_bound + tolerances.identity * std::max(1.0, rep.witness_abs);
  return rep;
}

TruncateResult truncate(const WitnessSequence& w, double eta_e, double eta_f, double eps,
                        double feasibility_tol) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("truncate: eps must lie in (0,1), got " + std::to_string(eps));
  }
  if (!(eta_e >= 1.0) || !(eta_f >= 1.0)) {
    throw std::invalid_argument("truncate: eta values must be >= 1");
  }
  const ConstraintReport rep = check_constraint(w, Constraint::standard);
  if (rep.violation > feasibility_tol) {
    throw std::invalid_argument("truncate: input violates the constraint by " +
                                std::to_string(rep.violation));
  }
  TruncateResult tr;
  tr.eta_e = eta_e;
  tr.eta_f = eta_f;
  tr.threshold = 8.0 * eta_e * eta_f / eps;
  const double big_t = tr.threshold;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double t = w.ts[i];
    if (t >= big_t) {
      tr.dropped_indices.push_back(i);
      tr.dropped_rescaled.push_back(big_t * w.xs[i] / (2.0 * eta_e), w.ys[i] / (2.0 * eta_f), 1.0);
    } else if (1.0 / t >= big_t) {
      tr.dropped_indices.push_back(i);
      tr.dropped_rescaled.push_back(w.xs[i] / (2.0 * eta_e), big_t * w.ys[i] / (2.0 * eta_f), 1.0);
    } else {
      tr.kept_indices.push_back(i);
      tr.kept.push_back(w.xs[i], w.ys[i], t);
    }
  }
  return tr;
}

TruncationValues truncation_values(const FormTensor& u, const WitnessSequence& w,
                                   const TruncateResult& tr) {
  TruncationValues v;
  v.total = witness_value(u, w);
  v.kept = witness_value(u, tr.kept);
  Complex dropped{};
  for (std::size_t i : tr.dropped_indices) dropped += evaluate(u, w.xs[i], w.ys[i]);
  v.dropped_direct = std::abs(dropped);
  v.dropped_rescaled = 4.0 * tr.eta_e * tr.eta_f / tr.threshold *
                       std::abs(witness_value(u, tr.dropped_rescaled));
  return v;
}

WitnessSequence witness_from_amplification(const FormTensor& u, const CMatrix& big_a,
                                           const CMatrix& big_b, const SchmidtState& omega,
                                           const SchmidtState& omega_p, double zero_tol) {
  const std::size_t d = amplification_dim(u, big_a, big_b);
  if (omega.dim != d || omega_p.dim != d) {
    throw std::invalid_argument("witness_from_amplification: states must have dim " +
                                std::to_string(d));
  }
  for (const SchmidtState* s : {&omega, &omega_p}) {
    if (std::abs(s->norm() - 1.0) > 1e-10) {
      throw std::invalid_argument("witness_from_amplification: state is not a unit vector (norm " +
                                  std::to_string(s->norm()) + ")");
    }
  }
  if (op_norm(big_a) > 1.0 + 1e-10 || op_norm(big_b) > 1.0 + 1e-10) {
    throw std::invalid_argument("witness_from_amplification: need ||a||, ||b|| <= 1");
  }
  const std::size_t n = u.n(), m = u.m();
  const CMatrix e = omega.left(), f = omega.right();
  const CMatrix g = omega_p.left(), h = omega_p.right();
  std::vector<CMatrix> ea(n * n), fb(m * m);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) ea[k * n + l] = e.adjoint() * leg_block(big_a, d, k, l) * g;
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q) fb[p * m + q] = f.adjoint() * leg_block(big_b, d, p, q) * h;

  WitnessSequence w;
  for (std::size_t i = 0; i < omega.coeffs.size(); ++i) {
    const double lambda = omega.coeffs[i];
    if (lambda < zero_tol) continue;
    for (std::size_t j = 0; j < omega_p.coeffs.size(); ++j) {
      const double mu = omega_p.coeffs[j];
      if (mu < zero_tol) continue;
      CMatrix x(n, n), y(m, m);
      for (std::size_t kl = 0; kl < n * n; ++kl) x(kl / n, kl % n) = lambda * ea[kl](i, j);
      for (std::size_t pq = 0; pq < m * m; ++pq) y(pq / m, pq % m) = mu * fb[pq](i, j);
      w.push_back(std::move(x), std::move(y), mu / lambda);
    }
  }
  return w;
}

}  // namespace gtlab
