#pragma once

#include "deepwave/core_types.hpp"
#include "deepwave/solver2d.hpp"

#include "doctest.h"

#include <initializer_list>

namespace deepwave::testing {

inline Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

template <class F>
ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::invalid_argument;
}

/// A small converged wave (N = 256, L = 50, c = 0.9 c_min), solved once.
const solver::ConformalWave& small_wave();

}  // namespace deepwave::testing
