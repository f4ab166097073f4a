#include "semihilb/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "semihilb/error.hpp"

namespace semihilb {

struct Weight::Data {
  int n = 0;
  int rank = 0;
  double rank_tol = 0.0;
  Matrix a;
  Matrix q;
  RealVector lambda;
  Matrix half;
  Matrix pinv;
  Matrix proj;
  Matrix to_range;
  Matrix from_range;
};

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kNegativeEigTol = 1e-10;

struct Spectrum {
  Matrix q;
  RealVector lambda;  // descending, clamped at zero
};

Spectrum validated_spectrum(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << "weight must be a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    raise(ErrorCode::DimensionMismatch, os.str());
  }
  const double fro = m.norm();
  if (fro == 0.0) raise(ErrorCode::ZeroWeight, "weight matrix is identically zero");
  if (!std::isfinite(fro)) raise(ErrorCode::NotHermitian, "weight matrix has non-finite entries");
  if (hermitian_defect(m) > kHermitianTol * fro) {
    raise(ErrorCode::NotHermitian, "||M - M^*|| exceeds 1e-10 ||M||");
  }

  const Matrix h = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const RealVector& asc = es.eigenvalues();
  const double magnitude = asc.cwiseAbs().maxCoeff();
  if (asc(0) < -kNegativeEigTol * magnitude) {
    std::ostringstream os;
    os << "eigenvalue " << asc(0) << " below -1e-10 ||M||";
    raise(ErrorCode::NotPSD, os.str());
  }

  // Descending order; the stable sort keeps ties in solver order so that a
  // multiple of the identity gets the standard basis.
  const int n = static_cast<int>(asc.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return asc(a) > asc(b); });
  Spectrum s;
  s.q.resize(n, n);
  s.lambda.resize(n);
  for (int k = 0; k < n; ++k) {
    s.q.col(k) = es.eigenvectors().col(order[k]);
    s.lambda(k) = std::max(asc(order[k]), 0.0);
  }
  if (s.lambda(0) <= 0.0) raise(ErrorCode::ZeroWeight, "weight has no positive eigenvalue");
  return s;
}

int count_retained(const RealVector& lambda, double rank_tol) {
  int r = 0;
  while (r < lambda.size() && lambda(r) > rank_tol) ++r;
  return r;
}

}  // namespace

Weight::Weight(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

Weight Weight::build(const Matrix& m, double rank_tol_factor) {
  Spectrum s = validated_spectrum(m);
  const double tol = rank_tol_factor * static_cast<double>(m.rows()) *
                     std::numeric_limits<double>::epsilon() * s.lambda(0);
  const int r = count_retained(s.lambda, tol);
  if (r == 0) raise(ErrorCode::ZeroWeight, "no eigenvalue above the rank threshold");
  return from_spectrum(std::move(s.q), std::move(s.lambda), r, tol);
}

Weight Weight::build_with_rank_tol(const Matrix& m, double rank_tol) {
  Spectrum s = validated_spectrum(m);
  const int r = count_retained(s.lambda, rank_tol);
  if (r == 0) raise(ErrorCode::ZeroWeight, "no eigenvalue above the rank threshold");
  return from_spectrum(std::move(s.q), std::move(s.lambda), r, rank_tol);
}

Weight Weight::from_spectrum(Matrix q, RealVector lambda, int rank, double rank_tol) {
  auto d = std::make_shared<Data>();
  const int n = static_cast<int>(q.rows());
  d->n = n;
  d->rank = rank;
  d->rank_tol = rank_tol;

  // Eigenvalues under the rank threshold are exact zeros from here on, so
  // A, A^{1/2} and P_A describe one and the same null space.
  lambda.tail(n - rank).setZero();
  const RealVector root = lambda.cwiseSqrt();
  d->a = q * lambda.asDiagonal() * q.adjoint();
  d->half = q * root.asDiagonal() * q.adjoint();

  const auto qr = q.leftCols(rank);
  const RealVector root_r = root.head(rank);
  const RealVector inv_r = lambda.head(rank).cwiseInverse();
  d->pinv = qr * inv_r.asDiagonal() * qr.adjoint();
  d->proj = qr * qr.adjoint();
  d->to_range = root_r.asDiagonal() * qr.adjoint();
  d->from_range = qr * root_r.cwiseInverse().asDiagonal();

  d->q = std::move(q);
  d->lambda = std::move(lambda);
  return Weight(std::move(d));
}

Weight Weight::inflate(int blocks) const {
  if (blocks < 1) raise(ErrorCode::DimensionMismatch, "inflation needs at least one block");
  const int n = dim();
  const int r = rank();
  const int big = n * blocks;
  Matrix q = Matrix::Zero(big, big);
  RealVector lambda(big);
  for (int b = 0; b < blocks; ++b) {
    for (int j = 0; j < r; ++j) {
      const int col = b * r + j;
      q.block(b * n, col, n, 1) = data_->q.col(j);
      lambda(col) = data_->lambda(j);
    }
    for (int j = r; j < n; ++j) {
      const int col = blocks * r + b * (n - r) + (j - r);
      q.block(b * n, col, n, 1) = data_->q.col(j);
      lambda(col) = data_->lambda(j);
    }
  }
  return from_spectrum(std::move(q), std::move(lambda), r * blocks, rank_tol());
}

int Weight::dim() const { return data_->n; }
int Weight::rank() const { return data_->rank; }
double Weight::rank_tol() const { return data_->rank_tol; }
double Weight::scale() const { return data_->lambda.maxCoeff(); }
const Matrix& Weight::matrix() const { return data_->a; }
const Matrix& Weight::eigvecs() const { return data_->q; }
const RealVector& Weight::eigvals() const { return data_->lambda; }
const Matrix& Weight::half() const { return data_->half; }
const Matrix& Weight::pinv() const { return data_->pinv; }
const Matrix& Weight::projector() const { return data_->proj; }
const Matrix& Weight::to_range() const { return data_->to_range; }
const Matrix& Weight::from_range() const { return data_->from_range; }

bool Weight::same_context(const Weight& other) const {
  if (data_ == other.data_) return true;
  return dim() == other.dim() && matrix() == other.matrix();
}

AVector::AVector(Vector entries, Weight context)
    : entries_(std::move(entries)), context_(std::move(context)) {
  if (entries_.size() != context_.dim()) {
    std::ostringstream os;
    os << "vector of length " << entries_.size() << " under a weight of dimension "
       << context_.dim();
    raise(ErrorCode::DimensionMismatch, os.str());
  }
}

Scalar a_inner(const AVector& x, const AVector& y) {
  if (!x.context().same_context(y.context())) {
    raise(ErrorCode::ContextMismatch, "vectors live under different weights");
  }
  // Eigen's dot() conjugates its left operand.
  return y.entries().dot(x.context().matrix() * x.entries());
}

double a_norm(const AVector& x) { return std::sqrt(std::max(0.0, a_inner(x, x).real())); }

AVector a_normalize(const AVector& x) {
  const double nrm = a_norm(x);
  const double scale = std::sqrt(x.context().scale()) * x.entries().norm();
  if (!(nrm > 1e-12 * scale)) {
    raise(ErrorCode::ANullVector, "vector lies in the null cone of the weight");
  }
  return AVector(x.entries() / nrm, x.context());
}

}  // namespace semihilb
