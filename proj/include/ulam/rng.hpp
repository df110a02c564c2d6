#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace ulam {

// Deterministic random stream. All stochastic constructions in the library
// draw from this class through fixed algorithms (no std:: distributions,
// whose output is implementation-defined), so a seed fully determines every
// generated artifact.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi], inclusive, via rejection sampling.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  // Standard normal via Box-Muller (cos branch only).
  double gaussian() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  std::complex<double> complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
  }

  Eigen::MatrixXcd ginibre(int rows, int cols) {
    Eigen::MatrixXcd g(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) g(i, j) = complex_gaussian();
    return g;
  }

  // Haar-distributed unitary: QR of a Ginibre matrix with the phases of the
  // R diagonal absorbed into Q.
  Eigen::MatrixXcd haar_unitary(int dim) {
    Eigen::MatrixXcd g = ginibre(dim, dim);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
      std::complex<double> d = r(j, j);
      double a = std::abs(d);
      q.col(j) *= (a > 0) ? d / a : std::complex<double>(1, 0);
    }
    return q;
  }

  // Skew-Hermitian X with operator norm exactly `op_norm`.
  Eigen::MatrixXcd skew_hermitian(int dim, double op_norm) {
    Eigen::MatrixXcd g = ginibre(dim, dim);
    Eigen::MatrixXcd h = (g + g.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const double top = es.eigenvalues().cwiseAbs().maxCoeff();
    if (top == 0.0) return Eigen::MatrixXcd::Zero(dim, dim);
    return std::complex<double>(0, 1) * (h * (op_norm / top));
  }

  // Unitary W = exp(X) with skew-Hermitian X of operator norm `radius`,
  // so that ||W - Id|| = 2 sin(radius / 2) <= radius.
  Eigen::MatrixXcd small_unitary(int dim, double radius) {
    if (radius == 0.0) return Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::MatrixXcd g = ginibre(dim, dim);
    Eigen::MatrixXcd h = (g + g.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const double top = es.eigenvalues().cwiseAbs().maxCoeff();
    if (top == 0.0) return Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::VectorXcd phases(dim);
    for (int j = 0; j < dim; ++j) {
      const double theta = es.eigenvalues()(j) * (radius / top);
      phases(j) = std::complex<double>(std::cos(theta), std::sin(theta));
    }
    return es.eigenvectors() * phases.asDiagonal() *
           es.eigenvectors().adjoint();
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ulam
