#pragma once

// Independent reference computations for the unit tests. Nothing here calls
// the library routine it is used to check.

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <vector>

#include "gtlab/forms.hpp"
#include "gtlab/rng.hpp"
#include "gtlab/states.hpp"
#include "gtlab/witness.hpp"

namespace oracle {

using gtlab::CMatrix;
using gtlab::Complex;
using gtlab::CVector;

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

inline double largest_singular_value(const CMatrix& a) {
  return Eigen::JacobiSVD<CMatrix>(a).singularValues()(0);
}

/// Dense vector sum_i c_i e_i (x) f_i, index i*d + k.
inline CVector dense_state(const gtlab::SchmidtState& s) {
  const auto d = static_cast<Eigen::Index>(s.dim);
  CMatrix e = s.left_basis.size() ? s.left_basis : CMatrix::Identity(d, d);
  CMatrix f = s.right_basis.size() ? s.right_basis : CMatrix::Identity(d, d);
  CVector v = CVector::Zero(d * d);
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    v += s.coeffs[i] * kron(CMatrix(e.col(ii)), CMatrix(f.col(ii)));
  }
  return v;
}

inline Complex dense_pairing(const gtlab::SchmidtState& s, const CMatrix& a, const CMatrix& b,
                             const gtlab::SchmidtState& sp) {
  return dense_state(s).dot(kron(a, b) * dense_state(sp));
}

/// u_d(A, B) entry by entry from the definition.
inline CMatrix amplification(const gtlab::FormTensor& u, const CMatrix& big_a, const CMatrix& big_b,
                             std::size_t d) {
  const auto dd = static_cast<Eigen::Index>(d);
  CMatrix out = CMatrix::Zero(dd * dd, dd * dd);
  for (std::size_t k = 0; k < u.n(); ++k)
    for (std::size_t l = 0; l < u.n(); ++l)
      for (std::size_t p = 0; p < u.m(); ++p)
        for (std::size_t q = 0; q < u.m(); ++q) {
          const CMatrix akl = big_a.block(k * dd, l * dd, dd, dd);
          const CMatrix bpq = big_b.block(p * dd, q * dd, dd, dd);
          out += u(k, l, p, q) * kron(akl, bpq);
        }
  return out;
}

/// Entry (i, j) of the line matrix by sweeping the merged breakpoints of
/// the two interval partitions.
inline CMatrix line_matrix_sweep(std::size_t d, double t2) {
  std::vector<long double> cuts;
  for (std::size_t i = 0; i <= d; ++i) cuts.push_back(static_cast<long double>(i));
  for (std::size_t j = 0; j <= d; ++j) cuts.push_back(static_cast<long double>(j) * t2);
  std::sort(cuts.begin(), cuts.end());
  CMatrix l = CMatrix::Zero(d, d);
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const long double lo = cuts[c], hi = cuts[c + 1];
    if (hi <= lo || lo >= static_cast<long double>(d)) continue;
    const long double mid = (lo + hi) / 2;
    const auto row = static_cast<std::size_t>(std::floor(mid));
    const auto col = static_cast<std::size_t>(std::floor(mid / t2));
    if (row < d && col < d) l(row, col) += static_cast<double>(hi - lo);
  }
  return l;
}

inline CMatrix random_contraction(std::size_t n, gtlab::NormalSampler& rng) {
  const CMatrix g = gtlab::random_gaussian_matrix(n, n, rng);
  return g / largest_singular_value(g);
}

inline gtlab::SchmidtState random_state(std::size_t d, gtlab::NormalSampler& rng) {
  CMatrix w = gtlab::random_gaussian_matrix(d, d, rng);
  w /= w.norm();
  return gtlab::SchmidtState::from_coefficient_matrix(w);
}

/// Random witness rescaled onto the standard constraint, t in [1/4, 4].
inline gtlab::WitnessSequence random_witness(std::size_t n, std::size_t m, std::size_t length,
                                             gtlab::NormalSampler& rng) {
  gtlab::WitnessSequence w;
  for (std::size_t i = 0; i < length; ++i) {
    const double t = std::exp(std::log(4.0) * (2.0 * rng.uniform() - 1.0));
    w.push_back(gtlab::random_gaussian_matrix(n, n, rng), gtlab::random_gaussian_matrix(m, m, rng), t);
  }
  auto norm_of = [](const CMatrix& h) { return largest_singular_value(h); };
  CMatrix rx = CMatrix::Zero(n, n), cx = rx, ry = CMatrix::Zero(m, m), cy = ry;
  for (std::size_t i = 0; i < length; ++i) {
    const double t = w.ts[i];
    rx += w.xs[i] * w.xs[i].adjoint();
    cx += t * t * w.xs[i].adjoint() * w.xs[i];
    ry += w.ys[i] * w.ys[i].adjoint() / (t * t);
    cy += w.ys[i].adjoint() * w.ys[i];
  }
  const double sx = std::sqrt(2.0 / (norm_of(rx) + norm_of(cx)));
  const double sy = std::sqrt(2.0 / (norm_of(ry) + norm_of(cy)));
  for (std::size_t i = 0; i < length; ++i) {
    w.xs[i] *= sx;
    w.ys[i] *= sy;
  }
  return w;
}

inline bool bit_equal(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a.data()[i] != b.data()[i]) return false;
  return true;
}

}  // namespace oracle
