#include "semihilb/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace semihilb {

HermitianSplit::HermitianSplit(const Matrix& m)
    : re((m + m.adjoint()) * 0.5), im((m - m.adjoint()) * Scalar(0.0, -0.5)) {}

void HermitianSplit::rotated(double theta, Matrix& out) const {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  out.noalias() = c * re - s * im;
}

double top_eigenvalue(const Matrix& h) {
  const auto n = h.rows();
  if (n == 0) return 0.0;
  if (n == 1) return h(0, 0).real();
  if (n == 2) {
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const double half_gap = 0.5 * (a - d);
    return 0.5 * (a + d) + std::hypot(half_gap, std::abs(h(1, 0)));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(n - 1);
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  // Gram matrix of the smaller side; top eigenvalue is sigma_max^2.
  const Matrix gram = m.rows() <= m.cols() ? Matrix(m * m.adjoint()) : Matrix(m.adjoint() * m);
  return std::sqrt(std::max(0.0, top_eigenvalue(gram)));
}

double spectral_radius(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double hermitian_defect(const Matrix& m) { return (m - m.adjoint()).norm(); }

}  // namespace semihilb
