#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gtlab/forms.hpp"
#include "gtlab/witness.hpp"

namespace gtlab {

/// r independent d x d matrices with entries (g + i h)/sqrt(2), g and h real
/// normal with mean 0 and variance 1/d.
struct GaussianFamily {
  std::size_t count = 0;
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  std::vector<CMatrix> matrices;
};

GaussianFamily sample_family(std::size_t r, std::size_t d, std::uint64_t seed);

/// S_d = sum_j a_j (x) G_j.
CMatrix s_matrix(const std::vector<CMatrix>& a_list, const GaussianFamily& family);

/// ceil(32 eps^-2 ln(4n/eps)).
std::size_t ht_dimension(std::size_t n, double eps);
/// ceil(128 eps^-2 ln(8n/eps)).
std::size_t jp_dimension(std::size_t n, double eps);

/// Monte Carlo estimate of an expectation against a bound.
///
/// pass = mean <= bound + sigmas * std_error: a statistical statement at
/// the chosen confidence, never a hard inequality on a random quantity.
struct MCReport {
  std::size_t samples = 0;
  std::size_t d = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  double sigmas = 3.0;
  bool pass = false;
  /// Preconditions as measured: ||sum a^* a|| and ||sum a a^*||.
  double col_norm = 0.0;
  double row_norm = 0.0;
};

struct MCOptions {
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  double sigmas = 3.0;
  /// Override the dimension from ht_dimension / jp_dimension.
  std::optional<std::size_t> d;
  Exec exec = Exec::parallel;
};

/// E||S_d||^2 against (1 + eps)(sqrt(gamma) + 1)^2 with
/// d = ht_dimension(n, eps). Requires ||sum a^* a|| <= gamma and
/// ||sum a a^*|| <= 1 (each within 1e-10).
MCReport mc_ht(const std::vector<CMatrix>& a_list, double gamma, double eps,
               const MCOptions& options = {});

/// Gaussian-embedding check of a witness with all t_i = 1.
///
/// Each sample forms x = sum x_i (x) G_i and y = sum y_i (x) conj(G_i) and
/// records u_d^Psi(x, y) and ||x|| ||y||.
struct JPReport {
  std::size_t samples = 0;
  std::size_t d = 0;
  std::size_t d_required = 0;  ///< jp_dimension(n, eps)
  double sigmas = 3.0;

  Complex target;          ///< sum_i u(x_i, y_i)
  Complex mean_value;      ///< sample mean of u_d^Psi(x, y)
  double value_std_error = 0.0;  ///< sqrt(sum |v - mean|^2 / (N (N - 1)))
  bool identity_pass = false;

  double mean_norm_product = 0.0;
  double norm_std_error = 0.0;
  double norm_bound = 0.0;  ///< 4 (1 + eps/2)
  bool norm_pass = false;
  /// The norm bound is only claimed once d >= d_required.
  bool norm_bound_applies = false;
};

JPReport mc_jp(const FormTensor& u, const WitnessSequence& w, double eps,
               const MCOptions& options = {});

}  // namespace gtlab
