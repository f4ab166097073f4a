#pragma once

#include "semihilb/semi_operator.hpp"
#include "semihilb/weight.hpp"

namespace semihilb {

/// x (x)_A y : z -> <z|y>_A x, realised by the matrix x y^* A.
class ARankOne {
 public:
  ARankOne(AVector x, AVector y);

  const AVector& x() const { return x_; }
  const AVector& y() const { return y_; }
  const Matrix& matrix() const { return mat_; }
  const Weight& context() const { return x_.context(); }
  SemiOperator as_operator() const;

 private:
  AVector x_;
  AVector y_;
  Matrix mat_;
};

ARankOne make_rank_one(const AVector& x, const AVector& y);

/// ||x||_A ||y||_A.
double rank_one_norm(const ARankOne& op);

/// (|<x|y>_A| + ||x||_A ||y||_A) / 2.
double rank_one_radius(const ARankOne& op);

/// A^+ (x y^* A)^* A, which equals (P_A y) (x)_A x.
Matrix rank_one_adjoint(const ARankOne& op);

}  // namespace semihilb
