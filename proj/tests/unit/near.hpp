#pragma once

#include <doctest.h>

#include <limits>

/// Purely relative comparison: |actual - expected| <= eps * max(|actual|, |expected|).
inline doctest::Approx rel(double expected, double eps = 1e-12) {
    return doctest::Approx(expected).epsilon(eps).scale(std::numeric_limits<double>::min());
}
