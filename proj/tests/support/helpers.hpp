#pragma once

#include <initializer_list>

#include <doctest.h>

#include "semihilb/error.hpp"
#include "semihilb/genfuzz.hpp"
#include "semihilb/linalg.hpp"

namespace testing {

using semihilb::Matrix;
using semihilb::Scalar;
using semihilb::Vector;

inline Matrix mat(std::initializer_list<std::initializer_list<Scalar>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (const auto& v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline Vector vec(std::initializer_list<Scalar> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (const auto& x : v) out(i++) = x;
  return out;
}

inline Matrix diag(std::initializer_list<Scalar> v) { return vec(v).asDiagonal(); }

inline Matrix eye(int n) { return Matrix::Identity(n, n); }

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

template <typename F>
semihilb::ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const semihilb::Error& e) {
    return e.code();
  }
  FAIL("expected semihilb::Error");
  return semihilb::ErrorCode::ParseError;
}

}  // namespace testing
