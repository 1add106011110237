#include "hz/cayley.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace hz {

CayleyImage cayley(const GroupElement& xi) {
    const int n = xi.n();
    const double a = xi.abs_z2();
    const cplx den(1.0 + a, -xi.t);
    std::vector<cplx> z(n + 1);
    for (int d = 0; d < n; ++d) z[d] = 2.0 * xi.z[d] / den;
    z[n] = cplx(1.0 - a, xi.t) / den;
    CayleyImage out;
    out.point.zeta = std::move(z);  // already unit length
    out.jacobian = cayley_jacobian(xi);
    return out;
}

GroupElement cayley_inv(const SpherePoint& zeta) {
    const int n = zeta.n();
    const cplx last = zeta.zeta[n];
    const cplx den = 1.0 + last;
    if (std::abs(den) < 1e-8) throw std::domain_error("cayley_inv: south pole");
    GroupElement xi;
    xi.z.resize(n);
    for (int d = 0; d < n; ++d) xi.z[d] = zeta.zeta[d] / den;
    xi.t = -((1.0 - last) / den).imag();
    return xi;
}

double cayley_jacobian(const GroupElement& xi) {
    const int n = xi.n();
    return std::pow(2.0, 2 * n + 1) * std::pow(gauge_bracket(xi), -2.0 * (n + 1));
}

DistanceCheck distance_identity_check(const GroupElement& xi, const GroupElement& eta) {
    const auto a = cayley(xi).point;
    const auto b = cayley(eta).point;
    DistanceCheck c;
    c.lhs = std::abs(1.0 - hermitian_dot(a, b));
    const double d = distance(xi, eta);
    c.rhs = 2.0 * d * d / (gauge_bracket(xi) * gauge_bracket(eta));
    return c;
}

double pushforward(const HnFn& f, const SpherePoint& zeta) {
    const auto xi = cayley_inv(zeta);
    const int Q = 2 * xi.n() + 2;
    return std::pow(cayley_jacobian(xi), -(Q - 2.0) / (2.0 * Q)) * f(xi);
}

double pullback(const SphereFn& F, const GroupElement& xi) {
    const int Q = 2 * xi.n() + 2;
    return std::pow(cayley_jacobian(xi), (Q - 2.0) / (2.0 * Q)) * F(cayley(xi).point);
}

double cayley_jacobian_fd(const GroupElement& xi, double h) {
    const auto c = xi.coords();
    const int d = static_cast<int>(c.size());
    Eigen::MatrixXd D(d + 1, d);
    for (int k = 0; k < d; ++k) {
        auto cp = c, cm = c;
        cp[k] += h;
        cm[k] -= h;
        const auto ap = cayley(GroupElement::from_coords(cp)).point.ambient();
        const auto am = cayley(GroupElement::from_coords(cm)).point.ambient();
        for (int r = 0; r <= d; ++r) D(r, k) = (ap[r] - am[r]) / (2 * h);
    }
    return std::sqrt((D.transpose() * D).determinant());
}

}  // namespace hz
