#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "gtlab/parallel.hpp"

namespace gtlab {

using Complex = std::complex<double>;
/// Dense complex matrix, the carrier for every operator in the library.
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Default tolerances. Every routine that uses one also accepts an override.
namespace tol {
/// Max absolute entry deviation from Hermiticity accepted (and symmetrized).
inline constexpr double hermitian = 1e-12;
/// Singular values below rank * sigma_max are treated as zero in the polar
/// maximizer.
inline constexpr double rank = 1e-13;
}  // namespace tol

/// Kronecker product. Entry ((i,k),(j,l)) = a(i,j) * b(k,l), with the row
/// index of the result i * b.rows() + k.
CMatrix kron(const CMatrix& a, const CMatrix& b, Exec exec = Exec::serial);

CMatrix adjoint(const CMatrix& a);

/// Largest singular value, from the Hermitian eigendecomposition of the
/// smaller of A*A and AA*.
double op_norm(const CMatrix& a);

/// Singular values in decreasing order.
RVector singular_values(const CMatrix& a);

/// Sum of singular values.
double trace_norm(const CMatrix& a);

/// Smallest eigenvalue of (H + H*)/2. Throws std::invalid_argument if H is
/// not square or deviates from Hermitian by more than hermitian_tol.
double min_eigenvalue(const CMatrix& h, double hermitian_tol = tol::hermitian);
double max_eigenvalue(const CMatrix& h, double hermitian_tol = tol::hermitian);

/// Norm of a positive semidefinite matrix given as a sum of Gram terms.
/// Symmetrizes without checking; intended for internally built sums such as
/// sum_i x_i x_i^*.
double psd_norm(const CMatrix& h);

/// Returns a with ||a|| <= 1 maximizing |Tr(M a)|; Tr(M a) = trace_norm(M).
/// a = V U^* restricted to the support of M = U S V^*. Zero for M = 0.
CMatrix polar_maximizer(const CMatrix& m, double rank_tol = tol::rank);

struct SingularPair {
  double value = 0.0;
  CVector left;
  CVector right;
};

/// Top singular triple: M right = value * left.
SingularPair top_singular_pair(const CMatrix& m);

bool all_finite(const CMatrix& a);

}  // namespace gtlab
