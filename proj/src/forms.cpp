#include "gtlab/forms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gtlab {
namespace {

constexpr std::size_t kMaxPullbackEntries = std::size_t{1} << 24;

using Blocks = std::vector<CMatrix>;

Blocks split_blocks(const CMatrix& big, std::size_t n, std::size_t d) {
  Blocks blocks(n * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) blocks[k * n + l] = leg_block(big, d, k, l);
  return blocks;
}

CMatrix join_blocks(const Blocks& blocks, std::size_t n, std::size_t d) {
  CMatrix big(n * d, n * d);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) big.block(k * d, l * d, d, d) = blocks[k * n + l];
  return big;
}

// sum_{pq} U[k,l,p,q] B_pq for every (k,l).
Blocks contract_right(const FormTensor& u, const Blocks& b_blocks, std::size_t d) {
  const std::size_t n = u.n(), m = u.m();
  Blocks out(n * n, CMatrix::Zero(d, d));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q) {
          const Complex c = u(k, l, p, q);
          if (c != Complex{}) out[k * n + l] += c * b_blocks[p * m + q];
        }
  return out;
}

// sum_{kl} U[k,l,p,q] X_kl for every (p,q).
Blocks contract_left(const FormTensor& u, const Blocks& x_blocks, std::size_t d) {
  const std::size_t n = u.n(), m = u.m();
  Blocks out(m * m, CMatrix::Zero(d, d));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q) {
          const Complex c = u(k, l, p, q);
          if (c != Complex{}) out[p * m + q] += c * x_blocks[k * n + l];
        }
  return out;
}

// <Omega, (a (x) b) Omega'> = Tr(W^* a W' b^T) for coefficient matrices W, W'.
Complex pairing(const CMatrix& w, const CMatrix& a, const CMatrix& b, const CMatrix& wp) {
  return (w.conjugate().cwiseProduct(a * wp * b.transpose())).sum();
}

CMatrix unit_ball_start(std::size_t size, NormalSampler& rng) {
  CMatrix g = random_gaussian_matrix(size, size, rng);
  const double nrm = op_norm(g);
  return nrm > 0 ? CMatrix(g / nrm) : g;
}

CMatrix vector_to_coefficients(const CVector& v, std::size_t d) {
  CMatrix w(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) w(i, k) = v(i * d + k);
  return w;
}

struct SeesawRun {
  double value = 0.0;
  CMatrix a, b, w, wp;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

SeesawRun seesaw_once(const FormTensor& u, std::size_t d, const SeesawOptions& opt,
                      CMatrix a, CMatrix b) {
  const std::size_t n = u.n(), m = u.m();
  const bool frozen = opt.frozen_states.has_value();
  SeesawRun run;
  if (frozen) {
    run.w = opt.frozen_states->first.coefficient_matrix();
    run.wp = opt.frozen_states->second.coefficient_matrix();
  }

  auto objective = [&](const CMatrix& a_big, const CMatrix& b_big) {
    const Blocks sum_b = contract_right(u, split_blocks(b_big, m, d), d);
    const Blocks a_blocks = split_blocks(a_big, n, d);
    Complex v{};
    for (std::size_t kl = 0; kl < n * n; ++kl) v += pairing(run.w, a_blocks[kl], sum_b[kl], run.wp);
    return std::abs(v);
  };
  auto state_step = [&]() {
    const SingularPair top = top_singular_pair(amplify(u, a, b));
    run.w = vector_to_coefficients(top.left, d);
    run.wp = vector_to_coefficients(top.right, d);
    return top.value;
  };
  auto a_step = [&]() {
    const Blocks sum_b = contract_right(u, split_blocks(b, m, d), d);
    Blocks grad(n * n);
    for (std::size_t kl = 0; kl < n * n; ++kl)
      grad[kl] = run.w.conjugate() * sum_b[kl] * run.wp.transpose();
    const CMatrix g = join_blocks(grad, n, d).transpose();
    a = polar_maximizer(g);
    return trace_norm(g);
  };
  auto b_step = [&]() {
    Blocks sandwiched = split_blocks(a, n, d);
    for (auto& blk : sandwiched) blk = run.w.adjoint() * blk * run.wp;
    const CMatrix h = join_blocks(contract_left(u, sandwiched, d), m, d).transpose();
    b = polar_maximizer(h);
    return trace_norm(h);
  };

  double best = frozen ? objective(a, b) : state_step();
  run.trace.push_back(best);
  for (std::size_t it = 0; it < opt.max_iterations; ++it) {
    const double before = best;
    run.trace.push_back(a_step());
    run.trace.push_back(b_step());
    if (!frozen) run.trace.push_back(state_step());
    best = run.trace.back();
    run.iterations = it + 1;
    if (best - before <= opt.rel_tol * std::max(best, 1e-300)) {
      run.converged = true;
      break;
    }
  }
  run.a = std::move(a);
  run.b = std::move(b);
  run.value = objective(run.a, run.b);
  return run;
}

}  // namespace

FormTensor::FormTensor(std::size_t n, std::size_t m)
    : n_(n), m_(m), coeffs_(n * n * m * m, Complex{}) {
  if (n == 0 || m == 0) throw std::invalid_argument("form dimensions must be >= 1");
}

FormTensor::FormTensor(std::size_t n, std::size_t m, std::vector<Complex> coeffs)
    : n_(n), m_(m), coeffs_(std::move(coeffs)) {
  if (n == 0 || m == 0) throw std::invalid_argument("form dimensions must be >= 1");
  if (coeffs_.size() != n * n * m * m) {
    throw std::invalid_argument("form needs n^2 m^2 = " + std::to_string(n * n * m * m) +
                                " coefficients, got " + std::to_string(coeffs_.size()));
  }
  for (const auto& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw std::invalid_argument("form coefficients must be finite");
    }
  }
}

CMatrix FormTensor::as_matrix() const {
  CMatrix mat(n_ * n_, m_ * m_);
  for (std::size_t r = 0; r < n_ * n_; ++r)
    for (std::size_t c = 0; c < m_ * m_; ++c) mat(r, c) = coeffs_[r * m_ * m_ + c];
  return mat;
}

FormTensor FormTensor::scalar() { return FormTensor(1, 1, {Complex{1.0, 0.0}}); }

FormTensor FormTensor::trace_form(std::size_t n) {
  FormTensor u(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) u(k, l, l, k) = 1.0;
  return u;
}

FormTensor FormTensor::random(std::size_t n, std::size_t m, NormalSampler& rng) {
  std::vector<Complex> c(n * n * m * m);
  for (auto& x : c) x = rng.complex_normal();
  return FormTensor(n, m, std::move(c));
}

Complex evaluate(const FormTensor& u, const CMatrix& a, const CMatrix& b) {
  const auto n = static_cast<Eigen::Index>(u.n()), m = static_cast<Eigen::Index>(u.m());
  if (a.rows() != n || a.cols() != n || b.rows() != m || b.cols() != m) {
    throw std::invalid_argument("evaluate: expected " + std::to_string(n) + "x" +
                                std::to_string(n) + " and " + std::to_string(m) + "x" +
                                std::to_string(m) + " arguments");
  }
  Complex sum{};
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = 0; l < n; ++l) {
      if (a(k, l) == Complex{}) continue;
      Complex inner{};
      for (Eigen::Index p = 0; p < m; ++p)
        for (Eigen::Index q = 0; q < m; ++q) inner += u(k, l, p, q) * b(p, q);
      sum += a(k, l) * inner;
    }
  return sum;
}

std::size_t amplification_dim(const FormTensor& u, const CMatrix& big_a, const CMatrix& big_b) {
  const auto n = static_cast<Eigen::Index>(u.n()), m = static_cast<Eigen::Index>(u.m());
  if (big_a.rows() != big_a.cols() || big_b.rows() != big_b.cols() || big_a.rows() % n != 0 ||
      big_b.rows() % m != 0 || big_a.rows() / n != big_b.rows() / m || big_a.rows() == 0) {
    throw std::invalid_argument("amplification: A is " + std::to_string(big_a.rows()) + "x" +
                                std::to_string(big_a.cols()) + ", B is " +
                                std::to_string(big_b.rows()) + "x" + std::to_string(big_b.cols()) +
                                "; need nd x nd and md x md with n=" + std::to_string(n) +
                                ", m=" + std::to_string(m));
  }
  return static_cast<std::size_t>(big_a.rows() / n);
}

CMatrix leg_block(const CMatrix& big, std::size_t d, std::size_t k, std::size_t l) {
  return big.block(k * d, l * d, d, d);
}

CMatrix amplify(const FormTensor& u, const CMatrix& big_a, const CMatrix& big_b) {
  const std::size_t d = amplification_dim(u, big_a, big_b);
  const Blocks sum_b = contract_right(u, split_blocks(big_b, u.m(), d), d);
  const Blocks a_blocks = split_blocks(big_a, u.n(), d);
  CMatrix out = CMatrix::Zero(d * d, d * d);
  for (std::size_t kl = 0; kl < a_blocks.size(); ++kl) out += kron(a_blocks[kl], sum_b[kl]);
  return out;
}

Complex pair_with_states(const FormTensor& u, const CMatrix& big_a, const CMatrix& big_b,
                         const SchmidtState& omega, const SchmidtState& omega_p) {
  const std::size_t d = amplification_dim(u, big_a, big_b);
  if (omega.dim != d || omega_p.dim != d) {
    throw std::invalid_argument("pair_with_states: states have dim " + std::to_string(omega.dim) +
                                "/" + std::to_string(omega_p.dim) + ", amplification d=" +
                                std::to_string(d));
  }
  const Blocks sum_b = contract_right(u, split_blocks(big_b, u.m(), d), d);
  Complex v{};
  for (std::size_t k = 0; k < u.n(); ++k)
    for (std::size_t l = 0; l < u.n(); ++l)
      v += state_pairing(omega, leg_block(big_a, d, k, l), sum_b[k * u.n() + l], omega_p);
  return v;
}

FormTensor state_pullback(const FormTensor& u, const SchmidtState& omega) {
  const std::size_t d = omega.dim, n = u.n(), m = u.m();
  const std::size_t big_n = n * d, big_m = m * d;
  if (big_n * big_n * big_m * big_m > kMaxPullbackEntries) {
    throw std::invalid_argument("state_pullback: form on M_" + std::to_string(big_n) + " x M_" +
                                std::to_string(big_m) + " is too large to store densely");
  }
  const CMatrix w = omega.coefficient_matrix();
  FormTensor out(big_n, big_m);
  // U'[(k,i),(l,a),(p,j),(q,b)] = U[k,l,p,q] conj(W(i,j)) W(a,b).
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q) {
          const Complex c = u(k, l, p, q);
          if (c == Complex{}) continue;
          for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
              const Complex wl = std::conj(w(i, j));
              if (wl == Complex{}) continue;
              for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) {
                  const Complex wr = w(a, b);
                  if (wr == Complex{}) continue;
                  out(k * d + i, l * d + a, p * d + j, q * d + b) += c * wl * wr;
                }
            }
        }
  return out;
}

NormEstimate norm_seesaw(const FormTensor& u, std::size_t d, const SeesawOptions& options) {
  if (d == 0) throw std::invalid_argument("norm_seesaw: d must be >= 1");
  if (options.restarts == 0) throw std::invalid_argument("norm_seesaw: restarts must be >= 1");
  if (options.frozen_states) {
    const auto& [s, sp] = *options.frozen_states;
    if (s.dim != d || sp.dim != d) throw std::invalid_argument("norm_seesaw: frozen state dim != d");
  }
  const auto runs = map_indices<SeesawRun>(options.restarts, options.exec, [&](std::size_t r) {
    if (r == 0 && options.initial) {
      const auto& [a0, b0] = *options.initial;
      amplification_dim(u, a0, b0);
      return seesaw_once(u, d, options, a0, b0);
    }
    NormalSampler rng(derive_seed(options.seed, r));
    CMatrix a0 = unit_ball_start(u.n() * d, rng);
    CMatrix b0 = unit_ball_start(u.m() * d, rng);
    return seesaw_once(u, d, options, std::move(a0), std::move(b0));
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].value > runs[best].value) best = r;

  const SeesawRun& win = runs[best];
  NormEstimate est;
  est.d = d;
  est.a = win.a;
  est.b = win.b;
  if (options.frozen_states) {
    est.omega = options.frozen_states->first;
    est.omega_p = options.frozen_states->second;
  } else {
    est.omega = SchmidtState::from_coefficient_matrix(win.w);
    est.omega_p = SchmidtState::from_coefficient_matrix(win.wp);
  }
  est.restarts = options.restarts;
  est.best_restart = best;
  est.iterations = win.iterations;
  est.converged = win.converged;
  est.trace = win.trace;
  est.value = recheck(u, est);
  return est;
}

NormEstimate tracial_norm_seesaw(const FormTensor& u, std::size_t d, SeesawOptions options) {
  const SchmidtState psi = max_entangled_state(d);
  options.frozen_states = std::make_pair(psi, psi);
  return norm_seesaw(u, d, options);
}

double recheck(const FormTensor& u, const NormEstimate& estimate) {
  return std::abs(pair_with_states(u, estimate.a, estimate.b, estimate.omega, estimate.omega_p));
}

}  // namespace gtlab
