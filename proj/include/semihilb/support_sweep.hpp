#pragma once

#include <functional>
#include <vector>

#include <Eigen/Eigenvalues>

#include "semihilb/linalg.hpp"

namespace semihilb {

struct SweepConfig {
  int grid = 720;
  double theta_tol = 1e-7;
  // Local extrema refined per sweep, best grid values first.
  int max_refine = 8;
};

struct SweepMeta {
  int grid = 0;
  int refinements = 0;
  int evaluations = 0;
  // Any maximum missed between grid points exceeds the grid samples by at
  // most ||M|| * dtheta^2 / 8; after refinement the bracket is theta_tol wide.
  double grid_error_bound = 0.0;
  double error_bound = 0.0;
};

/// h(theta) = lambda_max of the Hermitian part of e^{i theta} M.
///
/// h is the support function of the numerical range W(M) in the direction
/// e^{-i theta}: max |W| = max h and dist(0, W) = max(0, -min h).
class SupportFunction {
 public:
  explicit SupportFunction(const Matrix& m);

  double operator()(double theta);
  /// Also returns a unit top eigenvector; its Rayleigh quotient v^* M v lies
  /// on the boundary of W(M).
  double with_vector(double theta, Vector& v);
  /// Orthonormal basis of the eigenspace within `tol` of the top eigenvalue.
  Matrix top_eigenspace(double theta, double tol);

  int dim() const { return static_cast<int>(split_.re.rows()); }
  /// Upper bound on |h| and on -h'' (the spectral norm of M).
  double curvature_bound() const { return norm_; }
  const HermitianSplit& split() const { return split_; }

 private:
  HermitianSplit split_;
  Matrix work_;
  Eigen::SelfAdjointEigenSolver<Matrix> solver_;
  double norm_;
};

struct RefinedPoint {
  double theta = 0.0;
  double value = 0.0;
};

struct SweepResult {
  std::vector<double> thetas;
  std::vector<double> support;
  RefinedPoint max;
  RefinedPoint min;
  // Every refined local maximum, best first.
  std::vector<RefinedPoint> maxima;
  SweepMeta meta;
};

struct SweepRequest {
  bool keep_samples = false;
  bool want_min = false;
};

SweepResult sweep_support(SupportFunction& h, const SweepConfig& cfg, SweepRequest req = {});

/// max over theta of h, the numerical radius of m.
double numerical_radius_of(const Matrix& m, const SweepConfig& cfg = {});

/// Golden-section search for a maximum of f on [lo, hi]; stops once the
/// bracket is narrower than tol. Returns the best point evaluated.
RefinedPoint golden_maximize(const std::function<double(double)>& f, double lo, double hi,
                             double tol, int* evaluations = nullptr);

}  // namespace semihilb
