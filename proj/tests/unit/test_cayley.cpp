#include "doctest.h"
#include "util.hpp"

#include "hz/bubble.hpp"
#include "hz/cayley.hpp"

using namespace hz;

TEST_SUITE("cayley") {

TEST_CASE("origin and pole") {
    for (int n : {1, 2}) {
        const auto c = cayley(GroupElement::identity(n));
        for (int i = 0; i < n; ++i) CHECK(std::abs(c.point.zeta[i]) == 0.0);
        CHECK(std::abs(c.point.zeta[n] - cplx(1, 0)) < 1e-15);
        CHECK(c.jacobian == doctest::Approx(std::pow(2.0, 2 * n + 1)));
        std::vector<cplx> north(n + 1, cplx(0, 0));
        north[n] = 1.0;
        const auto o = cayley_inv(SpherePoint(north));
        CHECK(koranyi_norm(o) == 0.0);
    }
    CHECK_THROWS_AS(cayley_inv(SpherePoint({cplx(1e-9, 0), cplx(-1, 0)})), std::domain_error);
}

TEST_CASE("round trips") {
    std::mt19937_64 rng(4);
    for (int n : {1, 2}) {
        for (int k = 0; k < 1000; ++k) {
            const auto xi = test::random_point(n, rng, 3.0);
            const auto c = cayley(xi);
            double norm = 0.0;
            for (const auto& z : c.point.zeta) norm += std::norm(z);
            CHECK(std::abs(norm - 1.0) < 1e-12);
            const auto back = cayley_inv(c.point);
            CHECK(std::abs(back.t - xi.t) < 1e-10);
            for (int i = 0; i < n; ++i) CHECK(std::abs(back.z[i] - xi.z[i]) < 1e-10);
        }
        for (int k = 0; k < 200; ++k) {
            const auto z = sample_sphere(n, rng);
            const auto again = cayley(cayley_inv(z)).point;
            for (int i = 0; i <= n; ++i) CHECK(std::abs(again.zeta[i] - z.zeta[i]) < 1e-10);
        }
    }
}

TEST_CASE("distance identity") {
    std::mt19937_64 rng(6);
    for (int n : {1, 2})
        for (int k = 0; k < 500; ++k) {
            const auto a = test::random_point(n, rng), b = test::random_point(n, rng);
            const auto d = distance_identity_check(a, b);
            CHECK(test::rel(d.lhs, d.rhs) < 1e-10);
        }
    const auto xi = test::point1(0.4, 0.1, -0.7);
    const auto d0 = distance_identity_check(xi, GroupElement::identity(1));
    const double r = koranyi_norm(xi);
    CHECK(d0.rhs == doctest::Approx(2.0 * r * r / gauge_bracket(xi)).epsilon(1e-12));
    CHECK(test::rel(d0.lhs, d0.rhs) < 1e-10);
    const auto dd = distance_identity_check(xi, xi);
    CHECK(std::abs(dd.lhs) < 1e-15);
    CHECK(dd.rhs == 0.0);
}

TEST_CASE("Jacobian against finite differences") {
    std::mt19937_64 rng(8);
    for (int n : {1, 2})
        for (int k = 0; k < 20; ++k) {
            const auto xi = test::random_point(n, rng, 1.5);
            CHECK(test::rel(cayley_jacobian_fd(xi), cayley_jacobian(xi)) < 1e-6);
        }
}

TEST_CASE("pushforward of the bubble is constant") {
    std::mt19937_64 rng(10);
    for (int n : {1, 2}) {
        const int Q = 2 * n + 2;
        const HnFn U = [](const GroupElement& xi) { return bubble_value(BubbleParams{}, xi); };
        const double want = std::pow(2.0, -(Q - 1.0) * (Q - 2.0) / (2.0 * Q));
        for (int k = 0; k < 100; ++k) CHECK(test::rel(pushforward(U, sample_sphere(n, rng)), want) < 1e-12);
    }
}

TEST_CASE("pullback inverts pushforward") {
    std::mt19937_64 rng(12);
    const SphereFn F = [](const SpherePoint& z) { return 1.0 + 0.3 * z.zeta[0].real() - 0.2 * std::norm(z.zeta[1]); };
    for (int k = 0; k < 50; ++k) {
        const auto z = sample_sphere(1, rng);
        const HnFn f = [&](const GroupElement& xi) { return pullback(F, xi); };
        CHECK(test::rel(pushforward(f, z), F(z)) < 1e-12);
    }
}

TEST_CASE("dilation kernel element maps to the last coordinate") {
    // C_* phi_{2n+2} / Re zeta_{n+1} is constant; C_* phi_{2n+1} / Im zeta_{n+1} is constant
    const Params p = Params::make(1, 2.0);
    const auto phi4 = kernel_element(4, p).field;
    const auto phi3 = kernel_element(3, p).field;
    std::mt19937_64 rng(14);
    double r4 = 0.0, r3 = 0.0;
    for (int k = 0; k < 50; ++k) {
        const auto z = sample_sphere(1, rng);
        const double a = pushforward([&](const GroupElement& xi) { return phi4(xi).v; }, z) / z.zeta[1].real();
        const double b = pushforward([&](const GroupElement& xi) { return phi3(xi).v; }, z) / z.zeta[1].imag();
        if (k == 0) {
            r4 = a;
            r3 = b;
        }
        CHECK(test::rel(a, r4) < 1e-8);
        CHECK(test::rel(b, r3) < 1e-8);
    }
}

}  // TEST_SUITE
