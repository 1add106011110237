#include "doctest.h"
#include "util.hpp"

#include "hz/grid.hpp"

using namespace hz;

TEST_SUITE("hgroup") {

TEST_CASE("group law examples") {
    const auto e = GroupElement::identity(1);
    const auto xi = test::point1(0.7, -1.2, 0.4);
    const auto a = group_mul(e, xi);
    CHECK(a.z[0] == xi.z[0]);
    CHECK(a.t == xi.t);

    const auto b = group_mul(test::point1(1, 0, 0), test::point1(0, 1, 0));
    CHECK(b.z[0] == cplx(1, 1));
    CHECK(b.t == doctest::Approx(-2.0));

    const auto c = group_mul(xi, test::point1(-0.7, 1.2, -0.4));
    CHECK(std::abs(c.z[0]) == 0.0);
    CHECK(c.t == 0.0);
}

TEST_CASE("associativity, inverse, left-invariant distance") {
    std::mt19937_64 rng(3);
    for (int n : {1, 2, 3})
        for (int k = 0; k < 200; ++k) {
            const auto a = test::random_point(n, rng), b = test::random_point(n, rng), c = test::random_point(n, rng);
            const auto l = group_mul(group_mul(a, b), c), r = group_mul(a, group_mul(b, c));
            CHECK(std::abs(l.t - r.t) < 1e-12);
            const auto i = group_mul(a, group_inv(a));
            CHECK(std::abs(i.t) < 1e-14);
            CHECK(test::rel(distance(group_mul(c, a), group_mul(c, b)), distance(a, b)) < 1e-12);
        }
}

TEST_CASE("dilations and gauge") {
    const auto xi = test::point1(0.3, 0.5, -0.8);
    CHECK(dilate(1.0, xi).t == xi.t);
    const auto d = dilate(2.0, test::point1(0, 0, 1));
    CHECK(d.t == 4.0);
    std::mt19937_64 rng(5);
    for (int k = 0; k < 100; ++k) {
        const auto p = test::random_point(2, rng);
        const double lam = 0.1 + 5.0 * uniform01(rng);
        CHECK(test::rel(koranyi_norm(dilate(lam, p)), lam * koranyi_norm(p)) < 1e-13);
    }
    CHECK(koranyi_norm(GroupElement::identity(1)) == 0.0);
    CHECK(koranyi_norm(test::point1(0.6, 0.8, 0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(koranyi_norm(test::point1(0, 0, 4)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(gauge_bracket(GroupElement::identity(1)) == 1.0);
    CHECK(gauge_bracket(test::point1(0, 0, 3)) == doctest::Approx(std::sqrt(10.0)));
    const auto far = dilate(1e3, gauge_point(0.7, {cplx(1.0, 0.0)}));
    const double r = koranyi_norm(far);
    CHECK(std::abs(gauge_bracket(far) / (r * r) - 1.0) < 1e-4);
}

TEST_CASE("horizontal gradient and Kohn Laplacian") {
    const auto xi = test::point1(1, 1, 0);
    const auto c = coordinate_jets(xi);
    const auto g = horizontal_gradient(c[2], xi);
    CHECK(g[0] == doctest::Approx(2.0));
    CHECK(g[1] == doctest::Approx(-2.0));
    const auto g0 = horizontal_gradient(Jet2(3, 5.0), xi);
    CHECK(g0[0] == 0.0);
    CHECK(g0[1] == 0.0);
    // linear functions are harmonic
    CHECK(kohn_laplacian(c[0] * 2.0 + c[1] * (-3.0) + c[2] * 0.5, xi) == doctest::Approx(0.0));

    std::mt19937_64 rng(7);
    for (int n : {1, 2}) {
        for (int k = 0; k < 100; ++k) {
            const auto p = test::random_point(n, rng);
            const auto cj = coordinate_jets(p);
            Jet2 a(2 * n + 1, 1.0);
            for (int i = 0; i < 2 * n; ++i) a += cj[i] * cj[i];
            const Jet2 f = a * a + cj[2 * n] * cj[2 * n];
            const double z2 = p.abs_z2();
            double s = 0.0;
            for (double v : horizontal_gradient(f, p)) s += v * v;
            CHECK(test::rel(s, 16.0 * z2 * f.v) < 1e-12);
            CHECK(test::rel(kohn_laplacian(f, p), 8.0 * n * (1.0 + z2) + 16.0 * z2) < 1e-12);
        }
    }
}

TEST_CASE("Kohn Laplacian is dilation covariant") {
    const ScalarField f = [](const GroupElement& xi) {
        const auto c = coordinate_jets(xi);
        return exp(-(c[0] * c[0] + 0.3 * c[1] * c[2])) + c[0] * c[1] * c[2];
    };
    std::mt19937_64 rng(9);
    for (double lam : {0.5, 2.0}) {
        const ScalarField fl = [&](const GroupElement& xi) {
            auto c = coordinate_jets(xi);
            const Jet2 x = c[0] * lam, y = c[1] * lam, t = c[2] * (lam * lam);
            return exp(-(x * x + 0.3 * y * t)) + x * y * t;
        };
        for (int k = 0; k < 20; ++k) {
            const auto p = test::random_point(1, rng, 1.0);
            const double lhs = kohn_laplacian(fl, p);
            const double rhs = lam * lam * kohn_laplacian(f, dilate(lam, p));
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("jets agree with finite differences") {
    const ScalarField f = [](const GroupElement& xi) {
        const auto c = coordinate_jets(xi);
        return pow(1.0 + c[0] * c[0] + c[1] * c[1] + c[2] * c[2], -0.7);
    };
    const HnFn fv = [&](const GroupElement& xi) { return f(xi).v; };
    const auto p = test::point1(0.4, -0.3, 0.2);
    const auto g = horizontal_gradient(f, p), gf = horizontal_gradient_fd(fv, p);
    CHECK(g[0] == doctest::Approx(gf[0]).epsilon(1e-8));
    CHECK(g[1] == doctest::Approx(gf[1]).epsilon(1e-8));
    CHECK(kohn_laplacian(f, p) == doctest::Approx(kohn_laplacian_fd(fv, p)).epsilon(1e-6));
}

TEST_CASE("jet Hessian is symmetric") {
    const auto p = test::point1(0.2, 0.9, -0.4);
    const auto c = coordinate_jets(p);
    const Jet2 f = exp(c[0] * c[1]) * pow(1.0 + c[2] * c[2], 1.5) / (2.0 + c[0] * c[2]);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(std::abs(f.H(i, j) - f.H(j, i)) <= 1e-14 * std::abs(f.H(i, j)) + 1e-300);
}

TEST_CASE("right-invariant fields commute with left-invariant ones") {
    // [X_j, Y_k] = 0: apply both orders to a smooth function by finite differences of exact jets
    const auto p = test::point1(0.3, -0.4, 0.6);
    const auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    };
    const ScalarField f = [](const GroupElement& xi) {
        const auto c = coordinate_jets(xi);
        return exp(0.3 * c[0] - 0.2 * c[1] * c[2]) + c[2] * c[2] * c[0];
    };
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
            auto apply = [&](auto first, int a, auto second, int b) {
                const HnFn g = [&](const GroupElement& xi) { return dot(first(a, xi), std::vector<double>(f(xi).g.begin(), f(xi).g.begin() + 3)); };
                const double h = 1e-5;
                const auto v = second(b, p);
                GroupElement pp = p, pm = p;
                pp.z[0] += cplx(h * v[0], h * v[1]);
                pp.t += h * v[2];
                pm.z[0] -= cplx(h * v[0], h * v[1]);
                pm.t -= h * v[2];
                return (g(pp) - g(pm)) / (2 * h);
            };
            const double xy = apply(right_field, k, left_field, j);
            const double yx = apply(left_field, j, right_field, k);
            CHECK(std::abs(xy - yx) < 1e-6);
        }
}

}  // TEST_SUITE
