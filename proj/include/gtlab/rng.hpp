#pragma once

#include <cstdint>
#include <random>

#include "gtlab/numerics.hpp"

namespace gtlab {

/// Seed split scheme.
///
/// All randomness descends from one master seed. A child stream is
/// derive_seed(parent, stream_id), where the mix is SplitMix64 applied to
/// parent + (stream_id + 1) * 0x9E3779B97F4A7C15. Restarts use stream id r,
/// Monte Carlo samples use stream id s, nested splits chain the call.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream_id);

/// Standard normal sampler: Marsaglia polar method over mt19937_64 with an
/// explicit 53-bit uniform map, so the stream is identical on every
/// platform (std::normal_distribution is implementation-defined).
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform();
  /// N(0, 1).
  double normal();
  /// Complex normal with E|z|^2 = 1 (real and imaginary parts N(0, 1/2)).
  Complex complex_normal();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Matrix of i.i.d. complex normals with E|entry|^2 = 1.
CMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols,
                               NormalSampler& rng);

/// Haar-ish random unitary (QR of a Ginibre matrix with phase fix).
CMatrix random_unitary(std::size_t n, NormalSampler& rng);

}  // namespace gtlab
