#include "gtlab/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace gtlab {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct TopEigen {
  double value = 0.0;
  CVector vector;
};

TopEigen top_eigen(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver((h + h.adjoint()) * 0.5);
  const auto last = solver.eigenvalues().size() - 1;
  return {solver.eigenvalues()(last), solver.eigenvectors().col(last)};
}

struct Point {
  std::vector<CMatrix> xs, ys;
  std::vector<double> log_t;
};

struct Gradient {
  std::vector<CMatrix> xs, ys;
  std::vector<double> log_t;
};

// d log(scale)/d(row), d log(scale)/d(col) for one side of the constraint.
struct SideScale {
  double log_scale = kNegInf;
  double d_row = 0.0;
  double d_col = 0.0;
};

SideScale side_scale(Constraint flavor, double row, double col) {
  SideScale s;
  if (flavor == Constraint::standard) {
    const double g = row + col;
    if (!(g > 0.0)) return s;
    s.log_scale = 0.5 * std::log(2.0 / g);
    s.d_row = s.d_col = -0.5 / g;
  } else {
    const double sr = std::sqrt(row), sc = std::sqrt(col);
    const double g = sr + sc;
    if (!(sr > 0.0) || !(sc > 0.0)) return s;
    s.log_scale = std::log(2.0 / g);
    s.d_row = -1.0 / (g * 2.0 * sr);
    s.d_col = -1.0 / (g * 2.0 * sc);
  }
  return s;
}

class Objective {
 public:
  Objective(const FormTensor& u, Constraint flavor, bool free_t)
      : u_(u), flavor_(flavor), free_t_(free_t) {}

  // log(|sum u| s_x s_y); fills grad when non-null.
  double operator()(const Point& p, Gradient* grad) const {
    const std::size_t len = p.xs.size();
    const auto n = static_cast<Eigen::Index>(u_.n()), m = static_cast<Eigen::Index>(u_.m());
    CMatrix rx = CMatrix::Zero(n, n), cx = CMatrix::Zero(n, n);
    CMatrix ry = CMatrix::Zero(m, m), cy = CMatrix::Zero(m, m);
    std::vector<double> t2(len);
    Complex s{};
    for (std::size_t i = 0; i < len; ++i) {
      t2[i] = std::exp(2.0 * p.log_t[i]);
      rx.noalias() += p.xs[i] * p.xs[i].adjoint();
      cx.noalias() += t2[i] * (p.xs[i].adjoint() * p.xs[i]);
      ry.noalias() += (p.ys[i] * p.ys[i].adjoint()) / t2[i];
      cy.noalias() += p.ys[i].adjoint() * p.ys[i];
      s += evaluate(u_, p.xs[i], p.ys[i]);
    }
    const TopEigen erx = top_eigen(rx), ecx = top_eigen(cx);
    const TopEigen ery = top_eigen(ry), ecy = top_eigen(cy);
    const SideScale sx = side_scale(flavor_, erx.value, ecx.value);
    const SideScale sy = side_scale(flavor_, ery.value, ecy.value);
    const double abs_s = std::abs(s);
    if (!(abs_s > 0.0) || sx.log_scale == kNegInf || sy.log_scale == kNegInf) return kNegInf;
    const double value = std::log(abs_s) + sx.log_scale + sy.log_scale;
    if (!grad) return value;

    grad->xs.assign(len, CMatrix());
    grad->ys.assign(len, CMatrix());
    grad->log_t.assign(len, 0.0);
    const Complex phase = s / (abs_s * abs_s);
    const CMatrix prx = erx.vector * erx.vector.adjoint();
    const CMatrix pcx = ecx.vector * ecx.vector.adjoint();
    const CMatrix pry = ery.vector * ery.vector.adjoint();
    const CMatrix pcy = ecy.vector * ecy.vector.adjoint();
    for (std::size_t i = 0; i < len; ++i) {
      CMatrix c = CMatrix::Zero(n, n);  // d sum u / d x_i
      CMatrix d = CMatrix::Zero(m, m);  // d sum u / d y_i
      for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index l = 0; l < n; ++l)
          for (Eigen::Index pp = 0; pp < m; ++pp)
            for (Eigen::Index q = 0; q < m; ++q) {
              const Complex coef = u_(k, l, pp, q);
              c(k, l) += coef * p.ys[i](pp, q);
              d(pp, q) += coef * p.xs[i](k, l);
            }
      grad->xs[i] = phase * c.conjugate() + sx.d_row * 2.0 * (prx * p.xs[i]) +
                    sx.d_col * 2.0 * t2[i] * (p.xs[i] * pcx);
      grad->ys[i] = phase * d.conjugate() + sy.d_row * 2.0 / t2[i] * (pry * p.ys[i]) +
                    sy.d_col * 2.0 * (p.ys[i] * pcy);
      if (free_t_) {
        const double xw = (p.xs[i] * ecx.vector).squaredNorm();
        const double yv = (p.ys[i].adjoint() * ery.vector).squaredNorm();
        grad->log_t[i] = sx.d_col * 2.0 * t2[i] * xw - sy.d_row * 2.0 / t2[i] * yv;
      }
    }
    return value;
  }

 private:
  const FormTensor& u_;
  Constraint flavor_;
  bool free_t_;
};

WitnessSequence to_witness(const Point& p) {
  WitnessSequence w;
  for (std::size_t i = 0; i < p.xs.size(); ++i) w.push_back(p.xs[i], p.ys[i], std::exp(p.log_t[i]));
  return w;
}

Point to_point(const WitnessSequence& w) {
  Point p{w.xs, w.ys, {}};
  for (double t : w.ts) p.log_t.push_back(std::log(t));
  return p;
}

Point step(const Point& p, const Gradient& g, double eta, bool free_t) {
  Point q = p;
  for (std::size_t i = 0; i < p.xs.size(); ++i) {
    q.xs[i] += eta * g.xs[i];
    q.ys[i] += eta * g.ys[i];
    if (free_t) q.log_t[i] += eta * g.log_t[i];
  }
  return q;
}

struct RunResult {
  WitnessSequence witness;
  double value = 0.0;
  std::size_t iterations = 0;
};

RunResult ascend(const FormTensor& u, const SearchOptions& opt, Point p) {
  const bool free_t = !opt.fixed_t.has_value();
  const Objective objective(u, opt.flavor, free_t);
  p = to_point(project_to_constraint(to_witness(p), opt.flavor));
  Gradient g;
  double current = objective(p, &g);
  double eta = 0.1;
  std::size_t flat = 0;
  std::size_t it = 0;
  for (; it < opt.max_iterations && current > kNegInf; ++it) {
    bool accepted = false;
    while (eta > 1e-16) {
      const Point trial = step(p, g, eta, free_t);
      const double next = objective(trial, nullptr);
      if (next > current) {
        flat = (next - current < 1e-15) ? flat + 1 : 0;
        p = to_point(project_to_constraint(to_witness(trial), opt.flavor));
        current = objective(p, &g);
        eta *= 1.5;
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted || flat >= 20) break;
  }
  RunResult r;
  r.witness = project_to_constraint(to_witness(p), opt.flavor);
  r.value = std::abs(witness_value(u, r.witness));
  r.iterations = it;
  return r;
}

}  // namespace

WitnessSequence project_to_constraint(WitnessSequence w, Constraint flavor) {
  const ConstraintReport rep = check_constraint(w, flavor);
  auto factor = [&](double side) {
    if (!(side > 0.0)) return 1.0;
    // Slightly inside the surface so rounding never reports a violation.
    constexpr double shrink = 1.0 - 1e-14;
    return flavor == Constraint::standard ? std::sqrt(2.0 / side) * shrink : 2.0 / side * shrink;
  };
  const double fx = factor(rep.x_value), fy = factor(rep.y_value);
  for (auto& x : w.xs) x *= fx;
  for (auto& y : w.ys) y *= fy;
  return w;
}

SearchResult os_search(const FormTensor& u, const SearchOptions& options) {
  if (options.restarts == 0) throw std::invalid_argument("os_search: restarts must be >= 1");
  const std::size_t length = options.initial ? options.initial->size() : options.length;
  if (length == 0) throw std::invalid_argument("os_search: length must be >= 1");
  if (options.fixed_t && !(*options.fixed_t > 0.0)) {
    throw std::invalid_argument("os_search: fixed t must be positive");
  }

  const auto runs = map_indices<RunResult>(options.restarts, options.exec, [&](std::size_t r) {
    Point p;
    if (r == 0 && options.initial) {
      options.initial->validate();
      if (options.initial->xs.front().rows() != static_cast<Eigen::Index>(u.n()) ||
          options.initial->ys.front().rows() != static_cast<Eigen::Index>(u.m())) {
        throw std::invalid_argument("os_search: initial witness does not match the form");
      }
      p = to_point(*options.initial);
    } else {
      NormalSampler rng(derive_seed(options.seed, r));
      for (std::size_t i = 0; i < length; ++i) {
        p.xs.push_back(random_gaussian_matrix(u.n(), u.n(), rng));
        p.ys.push_back(random_gaussian_matrix(u.m(), u.m(), rng));
        p.log_t.push_back(r == 0 ? 0.0 : 0.5 * rng.normal());
      }
    }
    if (options.fixed_t) p.log_t.assign(length, std::log(*options.fixed_t));
    return ascend(u, options, std::move(p));
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].value > runs[best].value) best = r;

  SearchResult result;
  result.witness = runs[best].witness;
  result.value = std::abs(witness_value(u, result.witness));
  result.constraint = check_constraint(result.witness, options.flavor);
  result.best_restart = best;
  result.iterations = runs[best].iterations;
  return result;
}

std::vector<CMatrix> matrix_unit_sequence(std::size_t n) {
  std::vector<CMatrix> xs;
  for (std::size_t j = 0; j < n; ++j) {
    CMatrix e = CMatrix::Zero(n, n);
    e(0, j) = 1.0;
    xs.push_back(std::move(e));
  }
  return xs;
}

EtaSearchResult eta_witness_search(std::size_t n, std::size_t length, std::size_t restarts,
                                   std::uint64_t seed, Exec exec) {
  if (n == 0 || length == 0 || restarts == 0) {
    throw std::invalid_argument("eta_witness_search: n, length and restarts must be >= 1");
  }
  struct Run {
    double ratio = 0.0;
    std::vector<CMatrix> xs;
  };
  auto log_ratio = [](const std::vector<CMatrix>& xs, std::vector<CMatrix>* grad) {
    const auto dim = xs.front().rows();
    CMatrix rows = CMatrix::Zero(dim, dim), cols = CMatrix::Zero(dim, dim);
    for (const auto& x : xs) {
      rows.noalias() += x * x.adjoint();
      cols.noalias() += x.adjoint() * x;
    }
    const TopEigen er = top_eigen(rows), ec = top_eigen(cols);
    if (!(er.value > 0.0) || !(ec.value > 0.0)) return kNegInf;
    if (grad) {
      grad->resize(xs.size());
      const CMatrix pr = er.vector * er.vector.adjoint();
      const CMatrix pc = ec.vector * ec.vector.adjoint();
      for (std::size_t i = 0; i < xs.size(); ++i)
        (*grad)[i] = 2.0 / er.value * (pr * xs[i]) - 2.0 / ec.value * (xs[i] * pc);
    }
    return std::log(er.value) - std::log(ec.value);
  };

  const auto runs = map_indices<Run>(restarts, exec, [&](std::size_t r) {
    NormalSampler rng(derive_seed(seed, r));
    std::vector<CMatrix> xs;
    for (std::size_t i = 0; i < length; ++i) xs.push_back(random_gaussian_matrix(n, n, rng));
    std::vector<CMatrix> g;
    double current = log_ratio(xs, &g);
    double eta = 0.1;
    for (std::size_t it = 0; it < 2000 && current > kNegInf; ++it) {
      bool accepted = false;
      while (eta > 1e-16) {
        std::vector<CMatrix> trial = xs;
        for (std::size_t i = 0; i < xs.size(); ++i) trial[i] += eta * g[i];
        const double next = log_ratio(trial, nullptr);
        if (next > current) {
          // Keep the scale fixed; the ratio is homogeneous of degree 0.
          double mass = 0.0;
          for (const auto& x : trial) mass += x.squaredNorm();
          for (auto& x : trial) x /= std::sqrt(mass);
          xs = std::move(trial);
          current = log_ratio(xs, &g);
          eta *= 1.5;
          accepted = true;
          break;
        }
        eta *= 0.5;
      }
      if (!accepted) break;
    }
    return Run{row_column_ratio(xs), xs};
  });

  EtaSearchResult result;
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].ratio > runs[best].ratio) best = r;
  result.best_ratio = runs[best].ratio;
  result.best_sequence = runs[best].xs;
  result.eta_lower_bound = std::sqrt(result.best_ratio);
  result.matrix_unit_ratio = row_column_ratio(matrix_unit_sequence(n));
  return result;
}

}  // namespace gtlab
