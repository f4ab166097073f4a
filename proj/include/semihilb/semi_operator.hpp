#pragma once

#include "semihilb/linalg.hpp"
#include "semihilb/weight.hpp"

namespace semihilb {

/// A square matrix read as an operator on the semi-Hilbertian space of a weight.
///
/// Membership tests are finite-dimensional residuals:
///   A-bounded      : ||A^{1/2} T (I - P_A)|| <= class_tol * ||T|| * ||A^{1/2}||
///   A-adjointable  : ||(I - P_A) T^* A||     <= class_tol * ||T|| * ||A||
/// Both say T maps N(A) into N(A), so they agree away from the threshold.
class SemiOperator {
 public:
  static constexpr double kDefaultClassTol = 1e-8;

  static SemiOperator wrap(Matrix t, Weight w, double class_tol = kDefaultClassTol);

  const Matrix& mat() const { return mat_; }
  const Weight& context() const { return context_; }
  int dim() const { return static_cast<int>(mat_.rows()); }

  bool is_a_bounded() const { return a_bounded_; }
  bool is_a_adjointable() const { return a_adjointable_; }
  double bounded_residual() const { return bounded_residual_; }
  double adjointable_residual() const { return adjointable_residual_; }
  double class_tol() const { return class_tol_; }

 private:
  SemiOperator(Matrix t, Weight w, double class_tol);

  Matrix mat_;
  Weight context_;
  double class_tol_;
  double bounded_residual_ = 0.0;
  double adjointable_residual_ = 0.0;
  bool a_bounded_ = false;
  bool a_adjointable_ = false;
};

/// The operator induced on the range coordinates of the weight, r x r.
struct TildeLift {
  Matrix m;
  Weight context;
};

/// T^{#A} = A^+ T^* A.
SemiOperator a_adjoint(const SemiOperator& t);

/// Lambda_r^{1/2} Q_r^* T Q_r Lambda_r^{-1/2}.
TildeLift tilde(const SemiOperator& t);

// Same product without the membership check; callers guarantee A-boundedness.
Matrix lift_unchecked(const Matrix& t, const Weight& w);

bool is_a_selfadjoint(const SemiOperator& t, double tol = 1e-9);
bool is_a_positive(const SemiOperator& t, double tol = 1e-9);
bool is_a_unitary(const SemiOperator& u, double tol = 1e-9);

/// Throws NotABounded unless t is A-bounded.
void require_a_bounded(const SemiOperator& t, const char* who);
/// Throws ContextMismatch unless both operators share a weight.
void require_same_context(const SemiOperator& t, const SemiOperator& s, const char* who);

}  // namespace semihilb
