#include "gtlab/randmat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gtlab {
namespace {

struct Moments {
  double mean = 0.0;
  double std_error = 0.0;
};

Moments real_moments(const std::vector<double>& xs) {
  Moments m;
  const auto n = static_cast<double>(xs.size());
  for (double x : xs) m.mean += x;
  m.mean /= n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.std_error = std::sqrt(ss / (n - 1.0) / n);
  }
  return m;
}

void require_dimension_inputs(std::size_t n, double eps) {
  if (n == 0) throw std::invalid_argument("dimension formula needs n >= 1");
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("eps must lie in (0,1], got " + std::to_string(eps));
  }
}

}  // namespace

GaussianFamily sample_family(std::size_t r, std::size_t d, std::uint64_t seed) {
  if (r == 0 || d == 0) throw std::invalid_argument("sample_family: r and d must be >= 1");
  GaussianFamily fam;
  fam.count = r;
  fam.dim = d;
  fam.seed = seed;
  NormalSampler rng(seed);
  const double sd = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < r; ++j) {
    CMatrix g(d, d);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l) {
        const double re = rng.normal() * sd;
        const double im = rng.normal() * sd;
        g(k, l) = Complex{re, im} * M_SQRT1_2;
      }
    fam.matrices.push_back(std::move(g));
  }
  return fam;
}

CMatrix s_matrix(const std::vector<CMatrix>& a_list, const GaussianFamily& family) {
  if (a_list.size() != family.count || a_list.empty()) {
    throw std::invalid_argument("s_matrix: " + std::to_string(a_list.size()) +
                                " coefficients for " + std::to_string(family.count) +
                                " Gaussian matrices");
  }
  const auto n = a_list.front().rows();
  const auto d = static_cast<Eigen::Index>(family.dim);
  CMatrix s = CMatrix::Zero(n * d, n * d);
  for (std::size_t j = 0; j < a_list.size(); ++j) {
    if (a_list[j].rows() != n || a_list[j].cols() != n) {
      throw std::invalid_argument("s_matrix: coefficient matrices must share one square shape");
    }
    for (Eigen::Index k = 0; k < n; ++k)
      for (Eigen::Index l = 0; l < n; ++l) {
        const Complex c = a_list[j](k, l);
        if (c != Complex{}) s.block(k * d, l * d, d, d) += c * family.matrices[j];
      }
  }
  return s;
}

std::size_t ht_dimension(std::size_t n, double eps) {
  require_dimension_inputs(n, eps);
  return static_cast<std::size_t>(
      std::ceil(32.0 / (eps * eps) * std::log(4.0 * static_cast<double>(n) / eps)));
}

std::size_t jp_dimension(std::size_t n, double eps) {
  require_dimension_inputs(n, eps);
  return static_cast<std::size_t>(
      std::ceil(128.0 / (eps * eps) * std::log(8.0 * static_cast<double>(n) / eps)));
}

MCReport mc_ht(const std::vector<CMatrix>& a_list, double gamma, double eps,
               const MCOptions& options) {
  if (a_list.empty()) throw std::invalid_argument("mc_ht: empty coefficient list");
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("mc_ht: gamma must lie in (0,1], got " + std::to_string(gamma));
  }
  if (options.samples < 2) throw std::invalid_argument("mc_ht: need at least 2 samples");
  const auto n = a_list.front().rows();
  MCReport rep;
  CMatrix col = CMatrix::Zero(n, n), row = CMatrix::Zero(n, n);
  for (const auto& a : a_list) {
    if (a.rows() != n || a.cols() != n) throw std::invalid_argument("mc_ht: shape mismatch");
    col += a.adjoint() * a;
    row += a * a.adjoint();
  }
  rep.col_norm = psd_norm(col);
  rep.row_norm = psd_norm(row);
  if (rep.col_norm > gamma + 1e-10 || rep.row_norm > 1.0 + 1e-10) {
    throw std::invalid_argument("mc_ht: precondition violated: ||sum a*a|| = " +
                                std::to_string(rep.col_norm) + " (gamma " + std::to_string(gamma) +
                                "), ||sum aa*|| = " + std::to_string(rep.row_norm));
  }
  rep.d = options.d.value_or(ht_dimension(static_cast<std::size_t>(n), eps));
  rep.samples = options.samples;
  rep.sigmas = options.sigmas;
  rep.bound = (1.0 + eps) * (std::sqrt(gamma) + 1.0) * (std::sqrt(gamma) + 1.0);

  const auto squared_norms = map_indices<double>(options.samples, options.exec, [&](std::size_t s) {
    const GaussianFamily fam = sample_family(a_list.size(), rep.d, derive_seed(options.seed, s));
    const double nrm = op_norm(s_matrix(a_list, fam));
    return nrm * nrm;
  });
  const Moments mom = real_moments(squared_norms);
  rep.mean = mom.mean;
  rep.std_error = mom.std_error;
  rep.pass = std::isfinite(rep.mean) && rep.mean <= rep.bound + rep.sigmas * rep.std_error;
  return rep;
}

JPReport mc_jp(const FormTensor& u, const WitnessSequence& w, double eps,
               const MCOptions& options) {
  if (w.empty()) throw std::invalid_argument("mc_jp: empty witness");
  if (options.samples < 2) throw std::invalid_argument("mc_jp: need at least 2 samples");
  w.validate();
  if (w.xs.front().rows() != static_cast<Eigen::Index>(u.n()) ||
      w.ys.front().rows() != static_cast<Eigen::Index>(u.m())) {
    throw std::invalid_argument("mc_jp: witness does not match the form dimensions");
  }
  for (double t : w.ts) {
    if (std::abs(t - 1.0) > 1e-12) throw std::invalid_argument("mc_jp: witness must have all t = 1");
  }
  const ConstraintReport cons = check_constraint(w, Constraint::loose);
  if (cons.violation > 1e-8) {
    throw std::invalid_argument("mc_jp: witness violates the square-root constraint by " +
                                std::to_string(cons.violation));
  }

  JPReport rep;
  const std::size_t ambient = std::max(u.n(), u.m());
  rep.d_required = jp_dimension(ambient, eps);
  rep.d = options.d.value_or(rep.d_required);
  rep.samples = options.samples;
  rep.sigmas = options.sigmas;
  rep.target = witness_value(u, w);
  rep.norm_bound = 4.0 * (1.0 + eps / 2.0);
  rep.norm_bound_applies = rep.d >= rep.d_required;

  const SchmidtState psi = max_entangled_state(rep.d);
  struct Sample {
    Complex value;
    double norm_product = 0.0;
  };
  const auto samples = map_indices<Sample>(options.samples, options.exec, [&](std::size_t s) {
    const GaussianFamily fam = sample_family(w.size(), rep.d, derive_seed(options.seed, s));
    std::vector<CMatrix> conj_g;
    for (const auto& g : fam.matrices) conj_g.push_back(g.conjugate());
    GaussianFamily conj_fam = fam;
    conj_fam.matrices = std::move(conj_g);
    const CMatrix x = s_matrix(w.xs, fam);
    const CMatrix y = s_matrix(w.ys, conj_fam);
    return Sample{pair_with_states(u, x, y, psi, psi), op_norm(x) * op_norm(y)};
  });

  const auto count = static_cast<double>(samples.size());
  Complex mean{};
  for (const auto& s : samples) mean += s.value;
  mean /= count;
  double ss = 0.0;
  for (const auto& s : samples) ss += std::norm(s.value - mean);
  rep.mean_value = mean;
  rep.value_std_error = std::sqrt(ss / (count - 1.0) / count);
  rep.identity_pass = std::abs(mean - rep.target) <= rep.sigmas * rep.value_std_error;

  std::vector<double> products;
  for (const auto& s : samples) products.push_back(s.norm_product);
  const Moments mom = real_moments(products);
  rep.mean_norm_product = mom.mean;
  rep.norm_std_error = mom.std_error;
  rep.norm_pass = rep.mean_norm_product <= rep.norm_bound + rep.sigmas * rep.norm_std_error;
  return rep;
}

}  // namespace gtlab
