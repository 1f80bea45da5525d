#include "gtlab/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

namespace gtlab {
namespace {

void require_dim(std::size_t d, const char* what) {
  if (d == 0) throw std::invalid_argument(std::string(what) + ": dimension must be >= 1");
}

void require_square(const CMatrix& a, std::size_t d, const char* name) {
  if (a.rows() != static_cast<Eigen::Index>(d) || a.cols() != static_cast<Eigen::Index>(d)) {
    throw std::invalid_argument(std::string(name) + " is " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + ", expected " + std::to_string(d) +
                                "x" + std::to_string(d));
  }
}

Eigen::Map<const RVector> coeff_view(const SchmidtState& s) {
  return {s.coeffs.data(), static_cast<Eigen::Index>(s.coeffs.size())};
}

std::vector<std::size_t> descending_order(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return order;
}

}  // namespace

double SchmidtState::norm() const {
  double sum = 0.0;
  for (double c : coeffs) sum += c * c;
  return std::sqrt(sum);
}

CMatrix SchmidtState::left() const {
  return left_basis.size() == 0 ? CMatrix(CMatrix::Identity(dim, dim)) : left_basis;
}

CMatrix SchmidtState::right() const {
  return right_basis.size() == 0 ? CMatrix(CMatrix::Identity(dim, dim)) : right_basis;
}

CMatrix SchmidtState::coefficient_matrix() const {
  const RVector c = coeff_view(*this);
  if (canonical()) {
    CMatrix w = CMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < coeffs.size(); ++i) w(i, i) = coeffs[i];
    return w;
  }
  return left() * c.cast<Complex>().asDiagonal() * right().transpose();
}

CVector SchmidtState::dense() const {
  if (dim > kMaxDenseDim) {
    throw std::invalid_argument("dense expansion limited to d <= " +
                                std::to_string(kMaxDenseDim));
  }
  const CMatrix w = coefficient_matrix();
  CVector v(dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) v(i * dim + k) = w(i, k);
  return v;
}

SchmidtState SchmidtState::from_coefficient_matrix(const CMatrix& w) {
  if (w.rows() != w.cols() || w.rows() == 0) {
    throw std::invalid_argument("coefficient matrix must be square and nonempty");
  }
  Eigen::JacobiSVD<CMatrix> svd(w, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SchmidtState s;
  s.dim = static_cast<std::size_t>(w.rows());
  const RVector sv = svd.singularValues();
  s.coeffs.assign(sv.data(), sv.data() + sv.size());
  s.left_basis = svd.matrixU();
  s.right_basis = svd.matrixV().conjugate();
  return s;
}

double harmonic_number(std::size_t d) {
  double z = 0.0;
  for (std::size_t i = d; i >= 1; --i) z += 1.0 / static_cast<double>(i);
  return z;
}

SchmidtState embezzlement_state(std::size_t d) {
  require_dim(d, "embezzlement_state");
  const double z = harmonic_number(d);
  SchmidtState s;
  s.dim = d;
  s.coeffs.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    s.coeffs[i] = 1.0 / std::sqrt(z * static_cast<double>(i + 1));
  }
  return s;
}

SchmidtState max_entangled_state(std::size_t d) {
  require_dim(d, "max_entangled_state");
  SchmidtState s;
  s.dim = d;
  s.coeffs.assign(d, 1.0 / std::sqrt(static_cast<double>(d)));
  return s;
}

Complex state_pairing(const SchmidtState& s, const CMatrix& a, const CMatrix& b,
                      const SchmidtState& s_prime) {
  if (s.dim != s_prime.dim) throw std::invalid_argument("state dimensions differ");
  require_square(a, s.dim, "a");
  require_square(b, s.dim, "b");
  const auto lambda = coeff_view(s);
  const auto mu = coeff_view(s_prime);
  if (s.canonical() && s_prime.canonical()) {
    Complex sum{0.0, 0.0};
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
      if (lambda(i) == 0.0) continue;
      Complex row{0.0, 0.0};
      for (Eigen::Index j = 0; j < mu.size(); ++j) row += mu(j) * a(i, j) * b(i, j);
      sum += lambda(i) * row;
    }
    return sum;
  }
  // <e_i, a g_j> <f_i, b h_j> weighted by lambda_i mu_j.
  const CMatrix ea = s.left().adjoint() * a * s_prime.left();
  const CMatrix fb = s.right().adjoint() * b * s_prime.right();
  Complex sum{0.0, 0.0};
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    for (Eigen::Index j = 0; j < mu.size(); ++j) sum += lambda(i) * mu(j) * ea(i, j) * fb(i, j);
  return sum;
}

Complex state_form_value(const SchmidtState& s, const CMatrix& a, const CMatrix& b) {
  return state_pairing(s, a, b, s);
}

Complex overlap(const SchmidtState& s, const SchmidtState& s_prime) {
  if (s.dim != s_prime.dim) throw std::invalid_argument("state dimensions differ");
  return (s.coefficient_matrix().conjugate().cwiseProduct(s_prime.coefficient_matrix())).sum();
}

EmbezzleResult embezzle(std::size_t resource_dim, const SchmidtState& target) {
  require_dim(resource_dim, "embezzle resource");
  require_dim(target.dim, "embezzle target");
  const SchmidtState phi = embezzlement_state(resource_dim);
  const std::size_t k = target.dim;
  std::vector<double> tau(k, 0.0);
  for (std::size_t j = 0; j < std::min(k, target.coeffs.size()); ++j) tau[j] = std::abs(target.coeffs[j]);

  std::vector<double> source(resource_dim * k, 0.0);
  std::vector<double> goal(resource_dim * k, 0.0);
  for (std::size_t i = 0; i < resource_dim; ++i) {
    source[i * k] = phi.coeffs[i];
    for (std::size_t j = 0; j < k; ++j) goal[i * k + j] = phi.coeffs[i] * tau[j];
  }

  EmbezzleResult result;
  result.source_order = descending_order(source);
  result.target_order = descending_order(goal);
  double f = 0.0;
  for (std::size_t r = 0; r < source.size(); ++r) {
    f += source[result.source_order[r]] * goal[result.target_order[r]];
  }
  result.fidelity = std::abs(f);
  return result;
}

}  // namespace gtlab
