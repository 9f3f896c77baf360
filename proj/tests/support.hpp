#pragma once

#include <cmath>
#include <vector>

#include <doctest.h>

#include "snwit/osd.hpp"

namespace testing {

/// CHECK |a - b| <= tol with both values in the failure message.
#define CHECK_NEAR(a, b, tol)                                       \
  do {                                                              \
    const double check_near_a_ = (a);                               \
    const double check_near_b_ = (b);                               \
    INFO(#a " = " << check_near_a_ << ", " #b " = " << check_near_b_); \
    CHECK(std::abs(check_near_a_ - check_near_b_) <= (tol));        \
  } while (false)

inline std::vector<double> values(const snwit::OSCSpectrum& mu) { return {mu.values().begin(), mu.values().end()}; }

}  // namespace testing
