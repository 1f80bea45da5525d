#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gtlab/numerics.hpp"
#include "gtlab/rng.hpp"
#include "gtlab/states.hpp"

namespace gtlab {

/// Bilinear form u: M_n x M_m -> C stored as a dense coefficient tensor,
/// u(a, b) = sum U[k,l,p,q] a(k,l) b(p,q).
class FormTensor {
 public:
  FormTensor() = default;
  FormTensor(std::size_t n, std::size_t m);
  FormTensor(std::size_t n, std::size_t m, std::vector<Complex> coeffs);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }

  Complex& operator()(std::size_t k, std::size_t l, std::size_t p, std::size_t q) {
    return coeffs_[index(k, l, p, q)];
  }
  const Complex& operator()(std::size_t k, std::size_t l, std::size_t p, std::size_t q) const {
    return coeffs_[index(k, l, p, q)];
  }

  const std::vector<Complex>& coeffs() const { return coeffs_; }

  /// n^2 x m^2 matrix with row k*n+l and column p*m+q.
  CMatrix as_matrix() const;

  /// u(x, y) = xy on M_1 x M_1.
  static FormTensor scalar();
  /// u(a, b) = Tr(ab) on M_n x M_n.
  static FormTensor trace_form(std::size_t n);
  /// Complex Gaussian coefficients.
  static FormTensor random(std::size_t n, std::size_t m, NormalSampler& rng);

 private:
  std::size_t index(std::size_t k, std::size_t l, std::size_t p, std::size_t q) const {
    return ((k * n_ + l) * m_ + p) * m_ + q;
  }

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<Complex> coeffs_;
};

Complex evaluate(const FormTensor& u, const CMatrix& a, const CMatrix& b);

/// The common amplification dimension d of A in M_n (x) M_d and B in
/// M_m (x) M_d. Throws if the shapes do not agree.
std::size_t amplification_dim(const FormTensor& u, const CMatrix& big_a, const CMatrix& big_b);

/// d x d block (k, l) of an element of M_n (x) M_d.
CMatrix leg_block(const CMatrix& big, std::size_t d, std::size_t k, std::size_t l);

/// u_d(A, B) = sum U[k,l,p,q] A_kl (x) B_pq, a d^2 x d^2 matrix.
CMatrix amplify(const FormTensor& u, const CMatrix& big_a, const CMatrix& big_b);

/// <omega, u_d(A, B) omega_p>, contracted through the Schmidt forms.
Complex pair_with_states(const FormTensor& u, const CMatrix& big_a, const CMatrix& big_b,
                         const SchmidtState& omega, const SchmidtState& omega_p);

/// u_d^Omega as a form on M_{nd} x M_{md}. Dense, so only for small nd, md.
FormTensor state_pullback(const FormTensor& u, const SchmidtState& omega);

struct SeesawOptions {
  std::size_t restarts = 32;
  std::uint64_t seed = 0;
  std::size_t max_iterations = 500;
  double rel_tol = 1e-10;
  /// Freeze (Omega, Omega') instead of optimizing them. With Psi_d this
  /// estimates the tracially bounded norm, with Phi_d the norm of u_d^Phi.
  std::optional<std::pair<SchmidtState, SchmidtState>> frozen_states;
  /// Starting (A, B) for restart 0.
  std::optional<std::pair<CMatrix, CMatrix>> initial;
  Exec exec = Exec::parallel;
};

/// A certified lower bound on ||u_d|| with its maximizer.
struct NormEstimate {
  double value = 0.0;
  CMatrix a;
  CMatrix b;
  SchmidtState omega;
  SchmidtState omega_p;
  std::size_t d = 0;
  std::size_t restarts = 0;
  std::size_t best_restart = 0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Objective after every block update of the winning restart.
  std::vector<double> trace;
};

/// Alternating maximization of |<Omega, u_d(A,B) Omega'>| over ||A||, ||B|| <= 1
/// and unit Omega, Omega'. A- and B-steps use polar_maximizer on the induced
/// linear functional; the state step takes the top singular pair of u_d(A,B).
NormEstimate norm_seesaw(const FormTensor& u, std::size_t d, const SeesawOptions& options = {});

/// ||u_d^Psi|| estimate: norm_seesaw with both states frozen to Psi_d.
NormEstimate tracial_norm_seesaw(const FormTensor& u, std::size_t d, SeesawOptions options = {});

/// |<omega, u_d(a, b) omega_p>| recomputed from the stored maximizer.
double recheck(const FormTensor& u, const NormEstimate& estimate);

}  // namespace gtlab
