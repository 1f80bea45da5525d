#include <doctest.h>

#include <algorithm>
#include <functional>

#include "gtlab/states.hpp"
#include "support.hpp"

using namespace gtlab;

TEST_CASE("harmonic numbers") {
  CHECK(harmonic_number(1) == 1.0);
  CHECK(harmonic_number(4) == doctest::Approx(25.0 / 12.0).epsilon(1e-15));
  for (std::size_t d : {1, 2, 10, 1000, 100000}) {
    CHECK(harmonic_number(d) <= 1.0 + std::log(static_cast<double>(d)) + 1e-12);
  }
}

TEST_CASE("embezzlement and maximally entangled states are unit vectors") {
  for (std::size_t d : {1, 2, 7, 64, 4096}) {
    const SchmidtState phi = embezzlement_state(d);
    const SchmidtState psi = max_entangled_state(d);
    CHECK(phi.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::is_sorted(phi.coeffs.rbegin(), phi.coeffs.rend()));
    CHECK(phi.coeffs.front() * phi.coeffs.front() ==
          doctest::Approx(1.0 / harmonic_number(d)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(embezzlement_state(0), std::invalid_argument);
  CHECK_THROWS_AS(max_entangled_state(0), std::invalid_argument);
}

TEST_CASE("Schmidt decomposition round trip") {
  NormalSampler rng(11);
  const CMatrix w = random_gaussian_matrix(4, 4, rng);
  const SchmidtState s = SchmidtState::from_coefficient_matrix(w);
  CHECK((s.coefficient_matrix() - w).norm() <= 1e-12 * w.norm());
  CHECK(std::is_sorted(s.coeffs.rbegin(), s.coeffs.rend()));
  CVector v(16);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) v(i * 4 + k) = w(i, k);
  CHECK((oracle::dense_state(s) - v).norm() <= 1e-12 * w.norm());
  CHECK((s.dense() - v).norm() <= 1e-12 * w.norm());
}

TEST_CASE("state_pairing matches the dense Kronecker contraction") {
  NormalSampler rng(12);
  for (std::size_t d : {1, 2, 3, 5}) {
    const SchmidtState s = oracle::random_state(d, rng);
    const SchmidtState sp = oracle::random_state(d, rng);
    const CMatrix a = random_gaussian_matrix(d, d, rng);
    const CMatrix b = random_gaussian_matrix(d, d, rng);
    const Complex ref = oracle::dense_pairing(s, a, b, sp);
    CHECK(std::abs(state_pairing(s, a, b, sp) - ref) <= 1e-12 * (1.0 + std::abs(ref)));

    const SchmidtState phi = embezzlement_state(d);
    const SchmidtState psi = max_entangled_state(d);
    const Complex ref2 = oracle::dense_pairing(phi, a, b, psi);
    CHECK(std::abs(state_pairing(phi, a, b, psi) - ref2) <= 1e-12 * (1.0 + std::abs(ref2)));
    const Complex ref3 = oracle::dense_pairing(phi, a, b, sp);
    CHECK(std::abs(state_pairing(phi, a, b, sp) - ref3) <= 1e-12 * (1.0 + std::abs(ref3)));
  }
  CHECK_THROWS_AS(state_pairing(embezzlement_state(2), CMatrix::Identity(3, 3),
                                CMatrix::Identity(2, 2), embezzlement_state(2)),
                  std::invalid_argument);
}

TEST_CASE("maximally entangled pairing is the normalized trace of a b^T") {
  NormalSampler rng(13);
  const CMatrix a = random_gaussian_matrix(4, 4, rng);
  const CMatrix b = random_gaussian_matrix(4, 4, rng);
  const Complex v = state_form_value(max_entangled_state(4), a, b);
  const Complex ref = (a * b.transpose()).trace() / 4.0;
  CHECK(std::abs(v - ref) <= 1e-12 * (1.0 + std::abs(ref)));
}

TEST_CASE("overlap of a state with itself is its squared norm") {
  NormalSampler rng(14);
  const SchmidtState s = oracle::random_state(3, rng);
  CHECK(std::abs(overlap(s, s) - s.norm() * s.norm()) <= 1e-12);
  const Complex ref = oracle::dense_state(embezzlement_state(3)).dot(oracle::dense_state(s));
  CHECK(std::abs(overlap(embezzlement_state(3), s) - ref) <= 1e-12);
}

TEST_CASE("embezzling fidelity agrees with a sorting oracle") {
  const SchmidtState target = max_entangled_state(2);
  double previous = 0.0;
  for (std::size_t k = 2; k <= 10; ++k) {
    const std::size_t d = std::size_t{1} << k;
    const SchmidtState phi = embezzlement_state(d);
    std::vector<double> src, goal;
    for (double c : phi.coeffs) {
      src.push_back(c);
      src.push_back(0.0);
      goal.push_back(c * target.coeffs[0]);
      goal.push_back(c * target.coeffs[1]);
    }
    std::sort(src.begin(), src.end(), std::greater<>());
    std::sort(goal.begin(), goal.end(), std::greater<>());
    double ref = 0.0;
    for (std::size_t i = 0; i < src.size(); ++i) ref += src[i] * goal[i];

    const EmbezzleResult r = embezzle(d, target);
    CHECK(r.fidelity == doctest::Approx(ref).epsilon(1e-13));
    CHECK(r.fidelity > previous);
    CHECK(r.fidelity <= 1.0 + 1e-12);
    CHECK(r.source_order.size() == 2 * d);
    previous = r.fidelity;
  }
}
