#pragma once

#include <complex>

#include <Eigen/Dense>

namespace semihilb {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Splits a square matrix as M = re + i*im with both parts Hermitian.
///
/// The Hermitian part of e^{i theta} M is then cos(theta)*re - sin(theta)*im,
/// which is what every support-function evaluation below is built on.
struct HermitianSplit {
  Matrix re;
  Matrix im;

  explicit HermitianSplit(const Matrix& m);

  // Hermitian part of e^{i theta} M written into `out`.
  void rotated(double theta, Matrix& out) const;
};

/// Largest singular value.
double spectral_norm(const Matrix& m);

/// Largest eigenvalue of a Hermitian matrix (only the lower triangle is read).
double top_eigenvalue(const Matrix& h);

/// Largest modulus among the eigenvalues.
double spectral_radius(const Matrix& m);

/// Frobenius norm of M - M^*.
double hermitian_defect(const Matrix& m);

}  // namespace semihilb
