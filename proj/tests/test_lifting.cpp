#include <doctest.h>

#include "gtlab/lifting.hpp"
#include "gtlab/search.hpp"
#include "support.hpp"

using namespace gtlab;

namespace {

// sum_j sum_{klpq} U[k,l,p,q] phi(x~_kl, y~_pq) with dense Phi vectors.
Complex dense_lifted_value(const FormTensor& u, const LiftResult& lr) {
  const auto d = static_cast<Eigen::Index>(lr.d);
  const CVector phi = oracle::dense_state(lr.state);
  Complex total{};
  for (std::size_t j = 0; j < lr.size(); ++j) {
    const CMatrix x = lr.x_lifted(j), y = lr.y_lifted(j);
    for (std::size_t k = 0; k < u.n(); ++k)
      for (std::size_t l = 0; l < u.n(); ++l)
        for (std::size_t p = 0; p < u.m(); ++p)
          for (std::size_t q = 0; q < u.m(); ++q) {
            const CMatrix a = x.block(k * d, l * d, d, d);
            const CMatrix b = y.block(p * d, q * d, d, d);
            total += u(k, l, p, q) * phi.dot(oracle::kron(a, b) * phi);
          }
  }
  return total;
}

}  // namespace

TEST_CASE("lift keeps constraints and the value identity") {
  NormalSampler rng(40);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + trial % 3, m = 1 + (trial + 1) % 3;
    const FormTensor u = FormTensor::random(n, m, rng);
    const WitnessSequence w = oracle::random_witness(n, m, 1 + trial % 4, rng);
    for (std::size_t d : {1, 4, 8}) {
      const LiftResult lr = lift(w, d);
      const LiftReport rep = verify_lift(u, w, lr);
      CHECK(rep.constraints_hold);
      CHECK(rep.identity_holds);
      CHECK(rep.deficit_within_bound);
      const Complex dense = dense_lifted_value(u, lr);
      CHECK(std::abs(dense - rep.lifted_value) <= 1e-12 * (1.0 + rep.witness_abs));
    }
  }
}

TEST_CASE("block norms equal the dense lifted norms") {
  NormalSampler rng(41);
  const WitnessSequence w = oracle::random_witness(2, 3, 3, rng);
  const LiftResult lr = lift(w, 8);
  const LiftedNorms a = lifted_norms(lr);
  const LiftedNorms b = lifted_norms_dense(lr);
  CHECK(a.row_x == doctest::Approx(b.row_x).epsilon(1e-12));
  CHECK(a.col_x == doctest::Approx(b.col_x).epsilon(1e-12));
  CHECK(a.row_y == doctest::Approx(b.row_y).epsilon(1e-12));
  CHECK(a.col_y == doctest::Approx(b.col_y).epsilon(1e-12));
  const ConstraintReport lifted = check_constraint(lr.as_witness(), Constraint::standard);
  CHECK(lifted.row_x == doctest::Approx(b.row_x).epsilon(1e-12));
  CHECK(lifted.col_y == doctest::Approx(b.col_y).epsilon(1e-12));
}

TEST_CASE("lift indexing and errors") {
  WitnessSequence w;
  w.push_back(CMatrix::Identity(1, 1), CMatrix::Identity(1, 1), 1.0);
  const LiftResult lr = lift(w, 4);
  CHECK(lr.size() == 4);
  for (std::size_t j = 0; j < lr.size(); ++j) {
    const auto [i, r] = lr.index(j);
    CHECK(i == 0);
    CHECK(r == j * 4 + j + 1);
  }
  CHECK_THROWS_AS(lift(w, 0), std::invalid_argument);
  CHECK_THROWS_AS(lift(WitnessSequence{}, 4), std::invalid_argument);
}

TEST_CASE("truncate drops extreme weights and stays feasible") {
  NormalSampler rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    WitnessSequence w;
    for (double t : {1.0, 1000.0, 0.5, 1e-3})
      w.push_back(random_gaussian_matrix(2, 2, rng), random_gaussian_matrix(2, 2, rng), t);
    w = project_to_constraint(w, Constraint::standard);
    const double eta = std::sqrt(2.0);
    const TruncateResult tr = truncate(w, eta, eta, 0.5);
    CHECK(tr.threshold == doctest::Approx(32.0));
    CHECK(tr.kept_indices == std::vector<std::size_t>{0, 2});
    CHECK(tr.dropped_indices == std::vector<std::size_t>{1, 3});
    for (double t : tr.dropped_rescaled.ts) CHECK(t == 1.0);
    CHECK(check_constraint(tr.kept, Constraint::standard).violation <= 1e-12);

    const FormTensor u = FormTensor::random(2, 2, rng);
    const TruncationValues v = truncation_values(u, w, tr);
    Complex dropped{};
    for (std::size_t i : tr.dropped_indices) dropped += evaluate(u, w.xs[i], w.ys[i]);
    CHECK(std::abs(v.total - v.kept - dropped) <= 1e-12 * (1.0 + std::abs(v.total)));
    CHECK(v.dropped_direct == doctest::Approx(std::abs(dropped)));
    // 4 eta^2 / T times the rescaled value is the direct value.
    CHECK(v.dropped_rescaled == doctest::Approx(v.dropped_direct).epsilon(1e-12));
  }
}

TEST_CASE("truncate rejects bad inputs") {
  WitnessSequence w;
  w.push_back(CMatrix::Identity(2, 2) * 5.0, CMatrix::Identity(2, 2), 1.0);
  CHECK_THROWS_AS(truncate(w, 1.0, 1.0, 0.5), std::invalid_argument);
  const WitnessSequence ok = project_to_constraint(w, Constraint::standard);
  CHECK_NOTHROW(truncate(ok, 1.0, 1.0, 0.5));
  CHECK_THROWS_AS(truncate(ok, 1.0, 1.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(truncate(ok, 0.5, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("witness from an amplified pair reproduces the pairing") {
  NormalSampler rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const FormTensor u = FormTensor::random(2, 2, rng);
    const std::size_t d = 2;
    const CMatrix a = oracle::random_contraction(4, rng);
    const CMatrix b = oracle::random_contraction(4, rng);
    SchmidtState om = oracle::random_state(d, rng), omp = oracle::random_state(d, rng);
    const WitnessSequence w = witness_from_amplification(u, a, b, om, omp);
    CHECK(check_constraint(w, Constraint::standard).violation <= 1e-8);
    const Complex ref = pair_with_states(u, a, b, om, omp);
    CHECK(std::abs(witness_value(u, w) - ref) <= 1e-10 * (1.0 + std::abs(ref)));
  }
  CHECK_THROWS_AS(witness_from_amplification(FormTensor::scalar(), CMatrix::Identity(2, 2) * 2.0,
                                             CMatrix::Identity(2, 2), embezzlement_state(2),
                                             embezzlement_state(2)),
                  std::invalid_argument);
}
