#include "gtlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace gtlab {
namespace {

// Jacobi is the more accurate of Eigen's SVDs; past this size the
// divide-and-conquer variant is much faster and accurate enough.
constexpr Eigen::Index kJacobiLimit = 96;

Eigen::MatrixXcd hermitian_part(const CMatrix& h) {
  return (h + h.adjoint()) * 0.5;
}

void require_hermitian(const CMatrix& h, double hermitian_tol) {
  if (h.rows() != h.cols()) {
    throw std::invalid_argument("eigenvalue of non-square " +
                                std::to_string(h.rows()) + "x" +
                                std::to_string(h.cols()) + " matrix");
  }
  const double deviation =
      h.size() == 0 ? 0.0 : (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (deviation > hermitian_tol) {
    throw std::invalid_argument("matrix is not Hermitian (deviation " +
                                std::to_string(deviation) + ")");
  }
}

RVector hermitian_eigenvalues(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(h),
                                                Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace

CMatrix kron(const CMatrix& a, const CMatrix& b, Exec exec) {
  const Eigen::Index br = b.rows(), bc = b.cols();
  CMatrix out(a.rows() * br, a.cols() * bc);
  // One task per row block of a; blocks are disjoint.
  for_each_index(static_cast<std::size_t>(a.rows()), exec, [&](std::size_t i) {
    const auto row = static_cast<Eigen::Index>(i);
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(row * br, j * bc, br, bc) = a(row, j) * b;
    }
  });
  return out;
}

CMatrix adjoint(const CMatrix& a) { return a.adjoint(); }

double op_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  const CMatrix gram =
      a.rows() <= a.cols() ? CMatrix(a * a.adjoint()) : CMatrix(a.adjoint() * a);
  const double top = hermitian_eigenvalues(gram).maxCoeff();
  return std::sqrt(std::max(top, 0.0));
}

RVector singular_values(const CMatrix& a) {
  if (a.size() == 0) return RVector();
  if (std::min(a.rows(), a.cols()) <= kJacobiLimit) {
    return Eigen::JacobiSVD<CMatrix>(a).singularValues();
  }
  return Eigen::BDCSVD<CMatrix>(a).singularValues();
}

double trace_norm(const CMatrix& a) { return singular_values(a).sum(); }

double min_eigenvalue(const CMatrix& h, double hermitian_tol) {
  require_hermitian(h, hermitian_tol);
  return hermitian_eigenvalues(h).minCoeff();
}

double max_eigenvalue(const CMatrix& h, double hermitian_tol) {
  require_hermitian(h, hermitian_tol);
  return hermitian_eigenvalues(h).maxCoeff();
}

double psd_norm(const CMatrix& h) {
  if (h.size() == 0) return 0.0;
  return hermitian_eigenvalues(h).cwiseAbs().maxCoeff();
}

CMatrix polar_maximizer(const CMatrix& m, double rank_tol) {
  CMatrix result = CMatrix::Zero(m.cols(), m.rows());
  if (m.size() == 0) return result;
  CMatrix u, v;
  RVector s;
  const unsigned opts = Eigen::ComputeThinU | Eigen::ComputeThinV;
  if (std::min(m.rows(), m.cols()) <= kJacobiLimit) {
    Eigen::JacobiSVD<CMatrix> svd(m, opts);
    u = svd.matrixU();
    v = svd.matrixV();
    s = svd.singularValues();
  } else {
    Eigen::BDCSVD<CMatrix> svd(m, opts);
    u = svd.matrixU();
    v = svd.matrixV();
    s = svd.singularValues();
  }
  if (s.size() == 0 || s(0) == 0.0) return result;
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > rank_tol * s(0)) ++rank;
  result = v.leftCols(rank) * u.leftCols(rank).adjoint();
  return result;
}

SingularPair top_singular_pair(const CMatrix& m) {
  SingularPair pair;
  if (m.size() == 0) return pair;
  const unsigned opts = Eigen::ComputeThinU | Eigen::ComputeThinV;
  if (std::min(m.rows(), m.cols()) <= kJacobiLimit) {
    Eigen::JacobiSVD<CMatrix> svd(m, opts);
    pair.value = svd.singularValues()(0);
    pair.left = svd.matrixU().col(0);
    pair.right = svd.matrixV().col(0);
  } else {
    Eigen::BDCSVD<CMatrix> svd(m, opts);
    pair.value = svd.singularValues()(0);
    pair.left = svd.matrixU().col(0);
    pair.right = svd.matrixV().col(0);
  }
  return pair;
}

bool all_finite(const CMatrix& a) { return a.allFinite(); }

}  // namespace gtlab
