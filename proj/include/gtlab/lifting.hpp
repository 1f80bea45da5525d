#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "gtlab/forms.hpp"
#include "gtlab/lines.hpp"
#include "gtlab/states.hpp"
#include "gtlab/witness.hpp"

namespace gtlab {

/// One lifted pair: x~ = x_source (x) piece, y~ = t_source^{-1} y_source (x) piece.
struct LiftedTerm {
  std::size_t source = 0;  ///< index i into the witness
  MatrixUnit piece;        ///< L^r(t_i), a single-entry d x d matrix
  /// r in the 1-based numbering r = row + (col-1) d of the line pieces.
  std::size_t piece_index(std::size_t d) const { return piece.row + 1 + piece.col * d; }
};

/// Embedded witness in M_n (x) M_d and M_m (x) M_d.
///
/// Terms are kept in factored form (small base matrix times a matrix unit);
/// dense nd x nd matrices are produced on request. Terms whose line piece
/// is zero are dropped.
struct LiftResult {
  std::size_t d = 0;
  SchmidtState state;           ///< Phi_d
  std::vector<CMatrix> x_base;  ///< x_i
  std::vector<CMatrix> y_base;  ///< t_i^{-1} y_i
  std::vector<double> ts;
  std::vector<LiftedTerm> terms;

  std::size_t size() const { return terms.size(); }
  std::pair<std::size_t, std::size_t> index(std::size_t j) const {
    return {terms[j].source, terms[j].piece_index(d)};
  }
  CMatrix x_lifted(std::size_t j) const;
  CMatrix y_lifted(std::size_t j) const;
  std::vector<CMatrix> xs_lifted() const;
  std::vector<CMatrix> ys_lifted() const;
  /// The lifted sequence as a witness with all t = 1 (dense; small d only).
  WitnessSequence as_witness() const;
};

LiftResult lift(const WitnessSequence& w, std::size_t d);

/// The four norms of the lifted row/column sums.
struct LiftedNorms {
  double row_x = 0.0;  ///< ||sum x~ x~^*||
  double col_x = 0.0;  ///< ||sum x~^* x~||
  double row_y = 0.0;  ///< ||sum y~ y~^*||
  double col_y = 0.0;  ///< ||sum y~^* y~||
};

/// Every Gram sum of the lift has the form sum_j G_j (x) E_kk; it is block
/// diagonal after a permutation, so its norm is the largest block norm.
LiftedNorms lifted_norms(const LiftResult& lr);

/// Same quantities from the materialized nd x nd sums. Reference path.
LiftedNorms lifted_norms_dense(const LiftResult& lr);

struct LiftReport {
  ConstraintReport original;  ///< standard flavor, on the input witness
  LiftedNorms lifted;
  /// original bound minus lifted norm, in the order row_x, col_x, row_y, col_y.
  std::array<double, 4> slacks{};
  bool constraints_hold = false;  ///< all slacks >= -tolerance

  Complex witness_sum;      ///< sum_i u(x_i, y_i)
  double witness_abs = 0.0; ///< sum_i |u(x_i, y_i)|
  Complex lifted_value;     ///< sum_j (u (x) phi)(x~_j, y~_j)
  Complex identity_value;   ///< sum_i t_i^{-1} u(x_i, y_i) <z, L(t_i) z>
  double identity_rel_error = 0.0;
  bool identity_holds = false;

  /// Largest relative line deficit 1 - <z, L(t_i) z>/t_i over the witness.
  double max_line_deficit = 0.0;
  double deficit = 0.0;        ///< |sum u| - |lifted_value|
  double deficit_bound = 0.0;  ///< max_line_deficit * witness_abs
  bool deficit_within_bound = false;
};

struct LiftTolerances {
  double slack = 1e-10;
  double identity = 1e-10;
};

/// Checks the four norm inequalities, the lifted-value identity and the
/// deficit bound. The identity error is relative to
/// sum_i t_i^{-1} |u(x_i, y_i)| <z, L(t_i) z>.
LiftReport verify_lift(const FormTensor& u, const WitnessSequence& w, const LiftResult& lr,
                       const LiftTolerances& tolerances = {});

struct TruncateResult {
  double threshold = 0.0;  ///< T = 8 eta_E eta_F / eps
  WitnessSequence kept;
  std::vector<std::size_t> kept_indices;
  std::vector<std::size_t> dropped_indices;
  /// Dropped terms rescaled as (T x/(2 eta_E), y/(2 eta_F)) for t >= T and
  /// (x/(2 eta_E), T y/(2 eta_F)) for 1/t >= T, all with t = 1.
  WitnessSequence dropped_rescaled;
  double eta_e = 1.0;
  double eta_f = 1.0;

  bool fully_dropped() const { return kept.empty(); }
};

/// Removes every term with t_i >= T or 1/t_i >= T. The input must satisfy
/// the standard constraint within feasibility_tol.
TruncateResult truncate(const WitnessSequence& w, double eta_e, double eta_f, double eps,
                        double feasibility_tol = 1e-10);

struct TruncationValues {
  Complex total;              ///< sum over the input
  Complex kept;               ///< sum over the kept terms
  double dropped_direct = 0.0;   ///< |sum over dropped terms|
  double dropped_rescaled = 0.0; ///< 4 eta_E eta_F / T * |sum u(x~, y~)|
};

TruncationValues truncation_values(const FormTensor& u, const WitnessSequence& w,
                                   const TruncateResult& tr);

/// Witness built from an amplified pair: with omega = sum lambda_i e_i (x) f_i
/// and omega_p = sum mu_j g_j (x) h_j,
///   x~_{ij} = lambda_i sum_{kl} <e_i, A_kl g_j> E_kl,
///   y~_{ij} = mu_j sum_{pq} <f_i, B_pq h_j> E_pq,   t_{ij} = mu_j / lambda_i.
/// Schmidt coefficients below zero_tol are skipped.
WitnessSequence witness_from_amplification(const FormTensor& u, const CMatrix& big_a,
                                           const CMatrix& big_b, const SchmidtState& omega,
                                           const SchmidtState& omega_p,
                                           double zero_tol = 1e-14);

}  // namespace gtlab
