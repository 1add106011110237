#pragma once

#include <cmath>
#include <random>

#include "hz/hgroup.hpp"
#include "hz/parallel.hpp"

namespace test {

inline hz::GroupElement random_point(int n, std::mt19937_64& rng, double s = 2.0) {
    hz::GroupElement g = hz::GroupElement::identity(n);
    for (auto& z : g.z) {
        const double a = s * (2.0 * hz::uniform01(rng) - 1.0);
        const double b = s * (2.0 * hz::uniform01(rng) - 1.0);
        z = hz::cplx(a, b);
    }
    g.t = s * (2.0 * hz::uniform01(rng) - 1.0);
    return g;
}

inline hz::GroupElement point1(double x, double y, double t) { return hz::GroupElement{{hz::cplx(x, y)}, t}; }

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace test
