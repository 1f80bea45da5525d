#pragma once

#include <cstddef>
#include <vector>

#include "gtlab/numerics.hpp"

namespace gtlab {

/// Unit vector in C^d (x) C^d in Schmidt form: sum_i coeffs[i] e_i (x) f_i.
///
/// `left_basis` / `right_basis` hold the e_i / f_i as columns; an empty
/// basis means the canonical one. States are never stored as dense d^2
/// vectors, which keeps d ~ 10^6 within reach for the fidelity studies.
struct SchmidtState {
  std::size_t dim = 0;
  std::vector<double> coeffs;
  CMatrix left_basis;
  CMatrix right_basis;

  bool canonical() const { return left_basis.size() == 0 && right_basis.size() == 0; }
  double norm() const;

  /// Dense vector of length d^2, index i*d + k for e_i (x) e_k. Only for
  /// d <= kMaxDenseDim.
  CVector dense() const;

  /// Coefficient matrix W with the state equal to sum_{ik} W(i,k) e_i (x) e_k.
  CMatrix coefficient_matrix() const;

  /// Schmidt decomposition of sum_{ik} W(i,k) e_i (x) e_k via the SVD of W.
  /// The result is not normalized.
  static SchmidtState from_coefficient_matrix(const CMatrix& w);

  CMatrix left() const;   ///< left basis, canonical materialized
  CMatrix right() const;  ///< right basis, canonical materialized

  static constexpr std::size_t kMaxDenseDim = 64;
};

/// Z_d = sum_{i=1}^d 1/i, summed smallest term first.
double harmonic_number(std::size_t d);

/// Phi_d: coefficients Z_d^{-1/2} i^{-1/2}, i = 1..d.
SchmidtState embezzlement_state(std::size_t d);

/// Psi_d: all coefficients d^{-1/2}.
SchmidtState max_entangled_state(std::size_t d);

/// <s, (a (x) b) s'>, contracted through the Schmidt forms in O(d^2) for
/// canonical bases (O(d^3) otherwise); the d^2 x d^2 Kronecker product is
/// never formed.
Complex state_pairing(const SchmidtState& s, const CMatrix& a,
                      const CMatrix& b, const SchmidtState& s_prime);

/// phi(a, b) = <s, (a (x) b) s>.
Complex state_form_value(const SchmidtState& s, const CMatrix& a,
                         const CMatrix& b);

/// <s, s'>.
Complex overlap(const SchmidtState& s, const SchmidtState& s_prime);

/// Outcome of the sorting embezzlement protocol.
///
/// Both product coefficient lists have resource_dim * target.dim entries,
/// indexed i * target.dim + j for resource index i and target index j. The
/// local relabeling sends list position source_order[k] to target_order[k].
struct EmbezzleResult {
  double fidelity = 0.0;
  std::vector<std::size_t> source_order;
  std::vector<std::size_t> target_order;
};

/// Distils `target` from Phi_{resource_dim}: compares the sorted Schmidt
/// coefficients of Phi (x) (e_1 (x) e_1) with those of Phi (x) target.
EmbezzleResult embezzle(std::size_t resource_dim, const SchmidtState& target);

}  // namespace gtlab
