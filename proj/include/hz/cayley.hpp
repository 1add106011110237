#pragma once

#include <functional>

#include "hz/hgroup.hpp"
#include "hz/sphere.hpp"

namespace hz {

struct CayleyImage {
    SpherePoint point;
    double jacobian = 0.0;
};

// C(z,t) = (2z/(1+|z|^2-it), (1-|z|^2+it)/(1+|z|^2-it)); the sign of t is the one
// that makes |1 - C(xi).conj C(eta)| = 2 d(xi,eta)^2 / (<xi><eta>) hold for our group law
CayleyImage cayley(const GroupElement& xi);
GroupElement cayley_inv(const SpherePoint& zeta);
double cayley_jacobian(const GroupElement& xi);  // 2^{2n+1} <xi>^{-2(n+1)}

struct DistanceCheck {
    double lhs = 0.0;
    double rhs = 0.0;
};
DistanceCheck distance_identity_check(const GroupElement& xi, const GroupElement& eta);

double pushforward(const HnFn& f, const SpherePoint& zeta);       // J^{-(Q-2)/(2Q)} f(C^{-1} zeta)
double pullback(const SphereFn& F, const GroupElement& xi);        // J^{(Q-2)/(2Q)} F(C xi)

// |det| of the numerically differentiated real chart (x, y, t) -> sphere, for n = 1 and 2
double cayley_jacobian_fd(const GroupElement& xi, double h = 1e-5);

}  // namespace hz
