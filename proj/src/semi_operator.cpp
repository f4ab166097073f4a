#include "semihilb/semi_operator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "semihilb/error.hpp"

namespace semihilb {

SemiOperator::SemiOperator(Matrix t, Weight w, double class_tol)
    : mat_(std::move(t)), context_(std::move(w)), class_tol_(class_tol) {
  const int n = context_.dim();
  const Matrix complement = Matrix::Identity(n, n) - context_.projector();
  bounded_residual_ = spectral_norm(context_.half() * mat_ * complement);
  adjointable_residual_ = spectral_norm(complement * mat_.adjoint() * context_.matrix());

  const double t_norm = spectral_norm(mat_);
  const double lam = context_.scale();
  a_bounded_ = bounded_residual_ <= class_tol_ * t_norm * std::sqrt(lam);
  a_adjointable_ = adjointable_residual_ <= class_tol_ * t_norm * lam;
}

SemiOperator SemiOperator::wrap(Matrix t, Weight w, double class_tol) {
  if (t.rows() != t.cols() || t.rows() != w.dim()) {
    std::ostringstream os;
    os << "operator is " << t.rows() << "x" << t.cols() << " but the weight has dimension "
       << w.dim();
    raise(ErrorCode::DimensionMismatch, os.str());
  }
  return SemiOperator(std::move(t), std::move(w), class_tol);
}

void require_a_bounded(const SemiOperator& t, const char* who) {
  if (!t.is_a_bounded()) {
    std::ostringstream os;
    os << who << ": operator is not A-bounded (residual " << t.bounded_residual() << ")";
    raise(ErrorCode::NotABounded, os.str());
  }
}

void require_same_context(const SemiOperator& t, const SemiOperator& s, const char* who) {
  if (!t.context().same_context(s.context())) {
    raise(ErrorCode::ContextMismatch, std::string(who) + ": operators live under different weights");
  }
}

namespace {

void require_adjointable(const SemiOperator& t, const char* who) {
  if (!t.is_a_adjointable()) {
    std::ostringstream os;
    os << who << ": operator is not A-adjointable (residual " << t.adjointable_residual() << ")";
    raise(ErrorCode::NotAAdjointable, os.str());
  }
}

// Scale used to turn the tol arguments of the predicates into absolute bounds.
double product_scale(const SemiOperator& t) {
  const double s = spectral_norm(t.mat()) * t.context().scale();
  return s > 0.0 ? s : 1.0;
}

}  // namespace

SemiOperator a_adjoint(const SemiOperator& t) {
  require_adjointable(t, "a_adjoint");
  const Weight& w = t.context();
  return SemiOperator::wrap(w.pinv() * t.mat().adjoint() * w.matrix(), w, t.class_tol());
}

Matrix lift_unchecked(const Matrix& t, const Weight& w) {
  return w.to_range() * t * w.from_range();
}

TildeLift tilde(const SemiOperator& t) {
  require_a_bounded(t, "tilde");
  if (t.context().rank() == 0) raise(ErrorCode::ZeroRank, "tilde: weight has rank zero");
  return TildeLift{lift_unchecked(t.mat(), t.context()), t.context()};
}

bool is_a_selfadjoint(const SemiOperator& t, double tol) {
  const Matrix& a = t.context().matrix();
  const Matrix at = a * t.mat();
  return (at - t.mat().adjoint() * a).norm() <= tol * product_scale(t);
}

bool is_a_positive(const SemiOperator& t, double tol) {
  if (!is_a_selfadjoint(t, tol)) return false;
  const Matrix at = t.context().matrix() * t.mat();
  const Matrix herm = (at + at.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0) >= -tol * product_scale(t);
}

bool is_a_unitary(const SemiOperator& u, double tol) {
  require_adjointable(u, "is_a_unitary");
  const Weight& w = u.context();
  const SemiOperator sharp = a_adjoint(u);
  const SemiOperator sharp2 = a_adjoint(sharp);
  const double scale = std::max(1.0, spectral_norm(u.mat()) * spectral_norm(sharp.mat()));
  const double first = (sharp.mat() * u.mat() - w.projector()).norm();
  const double second = (sharp2.mat() * sharp.mat() - w.projector()).norm();
  return first <= tol * scale && second <= tol * scale;
}

}  // namespace semihilb
