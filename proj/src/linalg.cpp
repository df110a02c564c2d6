#include "ulam/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "ulam/errors.hpp"

namespace ulam::linalg {

bool all_finite(const CMatrix& A) {
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i)
      if (!std::isfinite(A(i, j).real()) || !std::isfinite(A(i, j).imag()))
        return false;
  return true;
}

namespace {

double top_singular_value_power(const CMatrix& A) {
  // Power iteration on A*A with a deterministic start vector.
  const Eigen::Index n = A.cols();
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(n) / std::sqrt(double(n));
  double lambda = 0.0;
  for (int it = 0; it < 20000; ++it) {
    Eigen::VectorXcd w = A.adjoint() * (A * v);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
    if (it % 4 == 3) {
      const double next = std::sqrt((A * v).squaredNorm());
      if (std::abs(next - lambda) <= 1e-12 * std::max(1.0, next)) return next;
      lambda = next;
    }
  }
  return lambda;
}

}  // namespace

double operator_norm(const CMatrix& A) {
  if (A.size() == 0) return 0.0;
  if (A.rows() == 1 && A.cols() == 1) return std::abs(A(0, 0));
  const Eigen::Index d = std::max(A.rows(), A.cols());
  if (d <= 512) {
    if (d <= 16) {
      Eigen::JacobiSVD<CMatrix> svd(A);
      return svd.singularValues()(0);
    }
    Eigen::BDCSVD<CMatrix> svd(A);
    return svd.singularValues()(0);
  }
  return top_singular_value_power(A);
}

double hs_norm(const CMatrix& A) { return A.norm(); }

double norm(const CMatrix& A, NormKind kind) {
  return kind == NormKind::Operator ? operator_norm(A) : hs_norm(A);
}

UnitaryMatrix UnitaryMatrix::checked(CMatrix m, double tol) {
  if (m.rows() != m.cols()) throw UsageError("unitary matrix must be square");
  if (!all_finite(m)) throw NumericalError("matrix has non-finite entries");
  const double defect =
      operator_norm(m.adjoint() * m - identity(static_cast<int>(m.rows())));
  if (defect > tol)
    throw NumericalError(
        detail::concat("unitarity defect ", defect, " exceeds tolerance ", tol),
        defect);
  return UnitaryMatrix{std::move(m), defect};
}

UnitaryMatrix polar_unitary(const CMatrix& T) {
  if (T.rows() != T.cols()) throw UsageError("polar decomposition needs a square matrix");
  if (!all_finite(T)) throw NumericalError("matrix has non-finite entries");
  Eigen::JacobiSVD<CMatrix> svd(T, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double smin = svd.singularValues()(T.rows() - 1);
  if (smin <= 1e-12)
    throw NumericalError(
        detail::concat("matrix is numerically singular: smallest singular value ",
                       smin),
        smin);
  CMatrix U = svd.matrixU() * svd.matrixV().adjoint();
  return UnitaryMatrix::checked(std::move(U));
}

CMatrix polar_partial_isometry(const CMatrix& M, double rank_floor) {
  Eigen::JacobiSVD<CMatrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  CMatrix V = CMatrix::Zero(M.rows(), M.cols());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rank_floor)
      V += svd.matrixU().col(i) * svd.matrixV().col(i).adjoint();
  }
  return V;
}

std::vector<std::complex<double>> spectrum_normal(const CMatrix& A) {
  if (A.rows() != A.cols()) throw UsageError("spectrum needs a square matrix");
  const double comm = operator_norm(A.adjoint() * A - A * A.adjoint());
  if (comm > 1e-9)
    throw NumericalError(
        detail::concat("matrix is not normal: commutator norm ", comm), comm);
  Eigen::ComplexSchur<CMatrix> schur(A, /*computeU=*/true);
  const Eigen::Index d = A.rows();
  std::vector<std::complex<double>> eig(d);
  for (Eigen::Index i = 0; i < d; ++i) eig[i] = schur.matrixT()(i, i);
  // For a normal matrix the Schur form is diagonal, so the Schur basis is an
  // orthonormal eigenbasis; verify the reconstruction.
  CMatrix D = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) D(i, i) = eig[i];
  const double rec =
      operator_norm(schur.matrixU() * D * schur.matrixU().adjoint() - A);
  if (rec > 1e-8)
    throw NumericalError(
        detail::concat("spectral reconstruction error ", rec), rec);
  std::sort(eig.begin(), eig.end(),
            [](const std::complex<double>& x, const std::complex<double>& y) {
              const double ax = std::arg(x), ay = std::arg(y);
              if (ax != ay) return ax < ay;
              return std::abs(x) < std::abs(y);
            });
  return eig;
}

CMatrix spectral_projection(const CMatrix& H, double threshold) {
  if (H.rows() != H.cols()) throw UsageError("spectral projection needs a square matrix");
  const double herm = operator_norm(H - H.adjoint());
  if (herm > 1e-9)
    throw NumericalError(
        detail::concat("matrix is not self-adjoint: ||H - H*|| = ", herm), herm);
  Eigen::SelfAdjointEigenSolver<CMatrix> es((H + H.adjoint()) / 2.0);
  const auto& ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i) - threshold) < 1e-6)
      throw NumericalError(
          detail::concat("eigenvalue ", ev(i), " lies within 1e-6 of threshold ",
                         threshold),
          ev(i));
  }
  const Eigen::Index d = H.rows();
  CMatrix Q = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (ev(i) >= threshold)
      Q += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  }
  const double proj_defect =
      std::max(operator_norm(Q * Q - Q), operator_norm(Q - Q.adjoint()));
  if (proj_defect > 1e-9)
    throw NumericalError(
        detail::concat("projection defect ", proj_defect), proj_defect);
  return Q;
}

}  // namespace ulam::linalg
