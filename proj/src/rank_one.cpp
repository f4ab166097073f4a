#include "semihilb/rank_one.hpp"

#include "semihilb/error.hpp"

namespace semihilb {

ARankOne::ARankOne(AVector x, AVector y) : x_(std::move(x)), y_(std::move(y)) {
  if (!x_.context().same_context(y_.context())) {
    raise(ErrorCode::ContextMismatch, "rank-one factors live under different weights");
  }
  // (x y^* A) z = (y^* A z) x = <z|y>_A x.
  mat_ = x_.entries() * (y_.entries().adjoint() * x_.context().matrix());
}

SemiOperator ARankOne::as_operator() const { return SemiOperator::wrap(mat_, context()); }

ARankOne make_rank_one(const AVector& x, const AVector& y) { return ARankOne(x, y); }

double rank_one_norm(const ARankOne& op) { return a_norm(op.x()) * a_norm(op.y()); }

double rank_one_radius(const ARankOne& op) {
  return 0.5 * (std::abs(a_inner(op.x(), op.y())) + a_norm(op.x()) * a_norm(op.y()));
}

Matrix rank_one_adjoint(const ARankOne& op) {
  const Weight& w = op.context();
  const Vector py = w.projector() * op.y().entries();
  return py * (op.x().entries().adjoint() * w.matrix());
}

}  // namespace semihilb
