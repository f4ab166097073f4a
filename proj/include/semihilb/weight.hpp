#pragma once

#include <memory>

#include "semihilb/linalg.hpp"

namespace semihilb {

/// A positive semi-definite weight A together with its spectral data.
///
/// Everything derived from A (A^{1/2}, the Moore-Penrose inverse, the range
/// projector and the range coordinates) is computed once at construction;
/// copies share the same immutable data.
class Weight {
 public:
  static constexpr double kDefaultRankTolFactor = 100.0;

  /// Rank threshold is factor * n * eps * lambda_max.
  static Weight build(const Matrix& m, double rank_tol_factor = kDefaultRankTolFactor);
  /// Same as build() but with an absolute rank threshold.
  static Weight build_with_rank_tol(const Matrix& m, double rank_tol);

  /// diag(A, ..., A) with d copies, assembled from this weight's spectral
  /// data. Retained directions come first, block by block, so the range
  /// coordinates of the inflated weight are the block-diagonal replication of
  /// ours.
  Weight inflate(int d) const;

  int dim() const;
  int rank() const;
  double rank_tol() const;
  /// Largest eigenvalue; the natural magnitude of A.
  double scale() const;

  const Matrix& matrix() const;
  const Matrix& eigvecs() const;
  const RealVector& eigvals() const;
  const Matrix& half() const;
  const Matrix& pinv() const;
  const Matrix& projector() const;

  /// Lambda_r^{1/2} Q_r^*, r x n: maps x to coordinates whose Euclidean norm is ||x||_A.
  const Matrix& to_range() const;
  /// Q_r Lambda_r^{-1/2}, n x r: right inverse of to_range().
  const Matrix& from_range() const;

  /// True when both weights describe the same A.
  bool same_context(const Weight& other) const;

 private:
  struct Data;
  explicit Weight(std::shared_ptr<const Data> data);
  static Weight from_spectrum(Matrix eigvecs, RealVector eigvals, int rank, double rank_tol);

  std::shared_ptr<const Data> data_;
};

/// A vector tied to the weight whose semi-inner product it lives under.
class AVector {
 public:
  AVector(Vector entries, Weight context);

  const Vector& entries() const { return entries_; }
  const Weight& context() const { return context_; }
  int dim() const { return static_cast<int>(entries_.size()); }

 private:
  Vector entries_;
  Weight context_;
};

/// <x|y>_A = y^* A x.
Scalar a_inner(const AVector& x, const AVector& y);
double a_norm(const AVector& x);
/// x / ||x||_A; throws ANullVector when x lies in the null cone.
AVector a_normalize(const AVector& x);

}  // namespace semihilb
