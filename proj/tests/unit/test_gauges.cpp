#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "semihilb/gauges.hpp"
#include "semihilb/rank_one.hpp"

using namespace semihilb;
using namespace testing;

namespace {

SemiOperator op(const Matrix& t, const Matrix& a) { return SemiOperator::wrap(t, Weight::build(a)); }

double omega(const SemiOperator& t) { return a_numerical_radius(t).first; }

}  // namespace

TEST_CASE("operator seminorm examples") {
  Rng rng(1, 2, 3);
  Weight w = gen_weight(rng, 4, 2);
  CHECK(a_opnorm(SemiOperator::wrap(eye(4), w)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a_opnorm(op(mat({{0, 0}, {1, 0}}), diag({1, 0}))) == 0.0);
  CHECK(a_opnorm(op(mat({{0, 1}, {0, 0}}), eye(2))) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(error_code_of([] { a_opnorm(op(mat({{0, 1}, {0, 0}}), diag({1, 0}))); }) ==
        ErrorCode::NotABounded);
}

TEST_CASE("numerical radius examples") {
  CHECK(omega(op(mat({{0, 1}, {0, 0}}), eye(2))) == doctest::Approx(0.5).epsilon(1e-13));
  Rng rng(2, 2, 2);
  CHECK(omega(SemiOperator::wrap(eye(3), gen_weight(rng, 3, 1))) ==
        doctest::Approx(1.0).epsilon(1e-13));
  const Matrix jordan = mat({{1, 1}, {0, 1}});
  const double w = omega(op(jordan, eye(2)));
  CHECK(w == doctest::Approx(1.5).epsilon(1e-12));
  std::mt19937_64 gen(99);
  const double brute = oracle::brute_radius(eye(2), jordan, 100000, gen);
  CHECK(std::abs(brute - w) <= 1e-9);
}

TEST_CASE("sweep metadata reports the bounds") {
  auto [w, profile] = a_numerical_radius(op(mat({{1, 2}, {0, Scalar(0, 1)}}), eye(2)));
  CHECK(profile.meta.grid == 720);
  CHECK(profile.meta.refinements >= 1);
  CHECK(profile.meta.grid_error_bound > 0);
  CHECK(profile.meta.error_bound < profile.meta.grid_error_bound);
  CHECK(profile.omega == w);
}

TEST_CASE("Crawford number examples") {
  CHECK(a_crawford(op(eye(2), eye(2))) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(a_crawford(op(diag({1, -1}), eye(2))) == 0.0);
  CHECK(a_crawford(op(diag({2, 3}), eye(2))) == doctest::Approx(2.0).epsilon(1e-12));
  // Off the real axis: W = segment [1 + i, 3 + i]; distance sqrt(2).
  CHECK(a_crawford(op(diag({Scalar(1, 1), Scalar(3, 1)}), eye(2))) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("spectral radius examples") {
  CHECK(a_spectral_radius(op(mat({{0, 1}, {0, 0}}), eye(2))) == doctest::Approx(0.0));
  CHECK(a_spectral_radius(op(diag({2, 1}), eye(2))) == doctest::Approx(2.0));
  CHECK(a_spectral_radius(op(mat({{0, 4}, {1, 0}}), eye(2))) == doctest::Approx(2.0));
}

TEST_CASE("normaloid examples") {
  CHECK(is_a_normaloid(op(mat({{1, Scalar(0, 2)}, {Scalar(0, -2), -3}}), eye(2))));
  CHECK_FALSE(is_a_normaloid(op(mat({{0, 1}, {0, 0}}), eye(2))));
  CHECK(is_a_normaloid(op(eye(3), eye(3))));
}

TEST_CASE("polygon examples") {
  RangeProfile seg = numerical_range_polygon(op(diag({Scalar(0, 1), Scalar(0, -1)}), eye(2)));
  double top = -10, bottom = 10;
  for (auto z : seg.polygon) {
    top = std::max(top, z.imag());
    bottom = std::min(bottom, z.imag());
    CHECK(std::abs(z.real()) < 1e-12);
  }
  CHECK(top == doctest::Approx(1.0));
  CHECK(bottom == doctest::Approx(-1.0));

  RangeProfile disk = numerical_range_polygon(op(mat({{0, 1}, {0, 0}}), eye(2)));
  CHECK(disk.polygon.size() == 721);
  CHECK(disk.thetas.size() == 720);
  for (auto z : disk.polygon) CHECK(std::abs(std::abs(z) - 0.5) <= 1e-6);
  CHECK(std::abs(disk.polygon.front() - disk.polygon.back()) <= 1e-9);

  Weight w = Weight::build(diag({4, 1, 0}));
  ARankOne r1(AVector(vec({1, Scalar(0, 1), 2}), w), AVector(vec({0.5, 1, -1}), w));
  RangeProfile rp = numerical_range_polygon(r1.as_operator());
  double far = 0;
  for (auto z : rp.polygon) far = std::max(far, std::abs(z));
  // Vertices sit at grid angles: within cos(pi / 720) of the radius, never above it.
  const double omega = rank_one_radius(r1);
  CHECK(far <= omega * (1 + 1e-12));
  CHECK(far >= omega * std::cos(3.14159265358979 / 720) - 1e-12);
}

TEST_CASE("polygon vertices lie in the range and its extent is the radius") {
  for (int seed = 0; seed < 20; ++seed) {
    Rng rng(3, 3, seed);
    const int n = rng.uniform_int(2, 5);
    Weight w = gen_weight(rng, n, rng.uniform_int(1, n));
    SemiOperator t = gen_adjointable(rng, w);
    RangeProfile p = numerical_range_polygon(t, 360);
    double far = 0;
    for (size_t k = 0; k + 1 < p.polygon.size(); ++k) {
      far = std::max(far, std::abs(p.polygon[k]));
      // Each vertex attains the support value in its own direction.
      const double th = p.thetas[k];
      CHECK(std::real(std::polar(1.0, th) * p.polygon[k]) == doctest::Approx(p.support[k]).epsilon(1e-9));
    }
    CHECK(far <= p.omega + 1e-9);
    CHECK(far >= p.omega - p.meta.grid_error_bound - 1e-9);
  }
}

TEST_CASE("seminorm axioms, equivalence band and invariances") {
  for (int seed = 0; seed < 100; ++seed) {
    Rng rng(4, 4, seed);
    const int n = rng.uniform_int(1, 6);
    Weight w = gen_weight(rng, n, rng.uniform_int(1, n));
    SemiOperator t = gen_adjointable(rng, w);
    SemiOperator s = gen_adjointable(rng, w);
    const double wt = omega(t), ws = omega(s), nt = a_opnorm(t);
    CHECK(omega(SemiOperator::wrap(t.mat() + s.mat(), w)) <= wt + ws + 1e-9);
    const Scalar c = rng.complex_normal();
    CHECK(omega(SemiOperator::wrap(c * t.mat(), w)) ==
          doctest::Approx(std::abs(c) * wt).epsilon(1e-9));
    CHECK(wt >= 0.5 * nt - 1e-9);
    CHECK(wt <= nt + 1e-9);
    CHECK(a_spectral_radius(t) <= wt + 1e-9);
    SemiOperator ts = a_adjoint(t);
    CHECK(omega(ts) == doctest::Approx(wt).epsilon(1e-9));
    CHECK(a_opnorm(ts) == doctest::Approx(nt).epsilon(1e-9));
    SemiOperator u = gen_a_unitary(rng, w);
    SemiOperator conj = SemiOperator::wrap(a_adjoint(u).mat() * t.mat() * u.mat(), w);
    CHECK(omega(conj) == doctest::Approx(wt).epsilon(1e-9));
  }
}

TEST_CASE("sweep agrees with the generalized pencil oracle") {
  for (int seed = 0; seed < 60; ++seed) {
    Rng rng(5, 5, seed);
    const int n = rng.uniform_int(2, 6);
    Weight w = gen_weight(rng, n, rng.uniform_int(1, n));
    SemiOperator t = gen_adjointable(rng, w);
    CHECK(std::abs(omega(t) - oracle::pencil_radius(w.matrix(), t.mat())) <= 1e-9);
    CHECK(std::abs(a_opnorm(t) - oracle::pencil_norm(w.matrix(), t.mat())) <= 1e-10);
  }
}

TEST_CASE("Crawford number is the distance to the sampled range") {
  for (int seed = 0; seed < 30; ++seed) {
    Rng rng(6, 6, seed);
    const int n = rng.uniform_int(2, 4);
    Weight w = gen_weight(rng, n, n);
    SemiOperator t = gen_adjointable(rng, w);
    const Scalar shift = std::polar(rng.uniform() * 3.0, kTwoPi * rng.uniform());
    SemiOperator ts = SemiOperator::wrap(t.mat() + shift * eye(n), w);
    RangeProfile p = numerical_range_polygon(ts, 2000);
    // Distance from 0 to the convex hull of dense boundary samples.
    double dist = 1e300;
    int pos = 0, neg = 0;
    const size_t k = p.polygon.size() - 1;
    for (size_t i = 0; i < k; ++i) {
      const Scalar a = p.polygon[i], b = p.polygon[(i + 1) % k];
      const Scalar e = b - a;
      const double len2 = std::norm(e);
      double tt = len2 > 0 ? std::clamp(std::real(-a * std::conj(e)) / len2, 0.0, 1.0) : 0.0;
      dist = std::min(dist, std::abs(a + tt * e));
      const double cross = std::imag(std::conj(e) * (-a));
      if (cross > 1e-12) ++pos;
      if (cross < -1e-12) ++neg;
    }
    const bool inside = pos == 0 || neg == 0;
    const double m = a_crawford(ts);
    if (inside) CHECK(m <= 1e-6);
    else CHECK(std::abs(m - dist) <= 1e-5);
  }
}
