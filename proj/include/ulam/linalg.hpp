#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace ulam::linalg {

using CMatrix = Eigen::MatrixXcd;

inline constexpr double kUnitaryTol = 1e-10;

inline CMatrix identity(int d) { return CMatrix::Identity(d, d); }

bool all_finite(const CMatrix& A);

enum class NormKind { Operator, HilbertSchmidt };

// Largest singular value. Full SVD up to dimension 512, power iteration on
// A*A above that (relative tolerance 1e-12).
double operator_norm(const CMatrix& A);
double hs_norm(const CMatrix& A);
double norm(const CMatrix& A, NormKind kind);

// Unitary matrix with its construction-time unitarity defect ||U*U - Id||.
struct UnitaryMatrix {
  CMatrix mat;
  double unitarity_defect = 0.0;

  int dim() const { return static_cast<int>(mat.rows()); }

  // Throws NumericalError when ||m*m - Id|| exceeds tol.
  static UnitaryMatrix checked(CMatrix m, double tol = kUnitaryTol);
};

// Unitary part of the polar decomposition T = U (T*T)^(1/2). Requires the
// smallest singular value above 1e-12; throws NumericalError carrying it
// otherwise. If ||T - Id|| <= eps < 1 the result obeys ||U - Id|| <= 2 eps.
UnitaryMatrix polar_unitary(const CMatrix& T);

// Partial-isometry part of the polar decomposition of M, keeping singular
// values above `rank_floor`: V = sum of u_i w_i* over retained triplets.
CMatrix polar_partial_isometry(const CMatrix& M, double rank_floor);

// Eigenvalues of a normal matrix (||A*A - AA*|| <= 1e-9 required), ordered
// by argument then by modulus. The spectral decomposition is verified to
// reconstruct A within 1e-8.
std::vector<std::complex<double>> spectrum_normal(const CMatrix& A);

// Orthogonal projection onto the eigenspaces of a self-adjoint H with
// eigenvalue >= threshold. No eigenvalue may lie within 1e-6 of the
// threshold.
CMatrix spectral_projection(const CMatrix& H, double threshold);

}  // namespace ulam::linalg
