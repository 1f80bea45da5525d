#include <doctest.h>

#include "gtlab/search.hpp"
#include "support.hpp"

using namespace gtlab;

namespace {

// Length-one scalar witnesses on a (t, angle) grid at the constraint
// boundary; |x y| = 2t/(1+t^2) when both sides are saturated.
double scalar_grid_supremum() {
  double best = 0.0;
  for (int k = -400; k <= 400; ++k) {
    const double t = std::exp(k / 100.0);
    const double x = std::sqrt(2.0 / (1.0 + t * t));
    const double y = std::sqrt(2.0 * t * t / (1.0 + t * t));
    best = std::max(best, x * y);
  }
  return best;
}


// Length-two scalar witnesses x_i = a_i, y_i = b_i e^{i theta_i} on the
// boundary of the standard constraint, gridded over the split angles of the
// moduli, log t_1, log t_2 and the relative phase, then refined once around
// the best cell.
double scalar_pair_grid_supremum() {
  struct Cell {
    double alpha, beta, s1, s2, theta;
  };
  auto value = [](const Cell& c) {
    const double t1 = std::exp(c.s1), t2 = std::exp(c.s2);
    const double a1 = std::sqrt(2.0) * std::cos(c.alpha) / std::sqrt(1.0 + t1 * t1);
    const double a2 = std::sqrt(2.0) * std::sin(c.alpha) / std::sqrt(1.0 + t2 * t2);
    const double b1 = std::sqrt(2.0) * std::cos(c.beta) / std::sqrt(1.0 + 1.0 / (t1 * t1));
    const double b2 = std::sqrt(2.0) * std::sin(c.beta) / std::sqrt(1.0 + 1.0 / (t2 * t2));
    const double p = a1 * b1, q = a2 * b2;
    return std::sqrt(std::max(0.0, p * p + q * q + 2.0 * p * q * std::cos(c.theta)));
  };
  constexpr double half_pi = 1.5707963267948966;
  constexpr double two_pi = 6.283185307179586;
  Cell best{0, 0, 0, 0, 0};
  double best_value = 0.0;
  auto sweep = [&](Cell lo, Cell step, int angles, int logs, int phases) {
    for (int i = 0; i <= angles; ++i)
      for (int j = 0; j <= angles; ++j)
        for (int k = 0; k <= logs; ++k)
          for (int l = 0; l <= logs; ++l)
            for (int p = 0; p < phases; ++p) {
              const Cell c{lo.alpha + i * step.alpha, lo.beta + j * step.beta, lo.s1 + k * step.s1,
                           lo.s2 + l * step.s2, lo.theta + p * step.theta};
              const double v = value(c);
              if (v > best_value) {
                best_value = v;
                best = c;
              }
            }
  };
  const int angles = static_cast<int>(half_pi / 1e-2);
  sweep({0, 0, -3, -3, 0}, {half_pi / angles, half_pi / angles, 0.25, 0.25, two_pi / 4}, angles, 24, 4);
  const Cell centre = best;
  sweep({centre.alpha - 1e-2, centre.beta - 1e-2, centre.s1 - 0.25, centre.s2 - 0.25, centre.theta - 0.1},
        {1e-3, 1e-3, 0.025, 0.025, 0.01}, 20, 20, 21);
  return best_value;
}

}  // namespace

TEST_CASE("scalar form search reaches the grid supremum") {
  const double grid = scalar_grid_supremum();
  CHECK(grid == doctest::Approx(1.0).epsilon(1e-12));
  SearchOptions opts;
  opts.restarts = 4;
  const SearchResult r = os_search(FormTensor::scalar(), opts);
  CHECK(r.value >= 0.999);
  CHECK(r.value <= 1.0 + 1e-9);
  CHECK(r.constraint.violation <= 1e-12);
  CHECK(std::abs(std::abs(witness_value(FormTensor::scalar(), r.witness)) - r.value) <= 1e-12);
}

TEST_CASE("length-two scalar search agrees with the brute-force grid") {
  const double grid = scalar_pair_grid_supremum();
  CHECK(grid <= 1.0 + 1e-12);
  SearchOptions opts;
  opts.length = 2;
  opts.restarts = 4;
  const SearchResult r = os_search(FormTensor::scalar(), opts);
  CHECK(r.witness.size() == 2);
  CHECK(r.constraint.violation <= 1e-12);
  CHECK(std::abs(r.value - grid) <= 1e-3);
}

TEST_CASE("projection saturates both sides") {
  NormalSampler rng(30);
  WitnessSequence w;
  for (int i = 0; i < 3; ++i)
    w.push_back(random_gaussian_matrix(2, 2, rng), random_gaussian_matrix(3, 3, rng), 0.5 + i);
  for (Constraint c : {Constraint::standard, Constraint::loose}) {
    const ConstraintReport rep = check_constraint(project_to_constraint(w, c), c);
    CHECK(rep.x_value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rep.y_value == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("constraint norms match dense sums") {
  NormalSampler rng(31);
  const WitnessSequence w = oracle::random_witness(2, 2, 3, rng);
  const ConstraintReport rep = check_constraint(w, Constraint::standard);
  CMatrix cx = CMatrix::Zero(2, 2);
  for (std::size_t i = 0; i < w.size(); ++i) cx += w.ts[i] * w.ts[i] * w.xs[i].adjoint() * w.xs[i];
  CHECK(rep.col_x == doctest::Approx(oracle::largest_singular_value(cx)).epsilon(1e-12));
  CHECK(rep.x_value == doctest::Approx(2.0).epsilon(1e-12));
  const ConstraintReport loose = check_constraint(w, Constraint::loose);
  CHECK(loose.x_value == doctest::Approx(std::sqrt(rep.row_x) + std::sqrt(rep.col_x)));
  CHECK_THROWS_AS(check_constraint(WitnessSequence{}, Constraint::standard), std::invalid_argument);
}

TEST_CASE("search respects flavor and fixed t") {
  NormalSampler rng(32);
  const FormTensor u = FormTensor::random(2, 2, rng);
  SearchOptions opts;
  opts.restarts = 3;
  opts.max_iterations = 400;
  opts.flavor = Constraint::loose;
  opts.fixed_t = 1.0;
  const SearchResult r = os_search(u, opts);
  CHECK(r.constraint.violation <= 1e-12);
  for (double t : r.witness.ts) CHECK(t == 1.0);
  CHECK(r.value > 0.0);
}

TEST_CASE("search is identical under both execution policies") {
  NormalSampler rng(33);
  const FormTensor u = FormTensor::random(2, 2, rng);
  SearchOptions opts;
  opts.restarts = 4;
  opts.max_iterations = 300;
  opts.seed = 5;
  opts.exec = Exec::serial;
  const SearchResult s = os_search(u, opts);
  opts.exec = Exec::parallel;
  const SearchResult p = os_search(u, opts);
  CHECK(s.value == p.value);
  CHECK(s.witness.ts == p.witness.ts);
}

TEST_CASE("row and column inflation is at most n") {
  NormalSampler rng(34);
  for (std::size_t n : {2, 3, 4}) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<CMatrix> xs;
      for (int i = 0; i < 3; ++i) xs.push_back(random_gaussian_matrix(n, n, rng));
      CHECK(row_column_ratio(xs) <= static_cast<double>(n) * (1.0 + 1e-10));
    }
    CHECK(row_column_ratio(matrix_unit_sequence(n)) == doctest::Approx(static_cast<double>(n)).epsilon(1e-14));
    const EtaSearchResult eta = eta_witness_search(n, n, 2, 7, Exec::serial);
    CHECK(eta.best_ratio <= static_cast<double>(n) * (1.0 + 1e-10));
    CHECK(eta.matrix_unit_ratio == doctest::Approx(static_cast<double>(n)).epsilon(1e-14));
  }
}
