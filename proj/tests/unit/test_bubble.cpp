#include "doctest.h"
#include "util.hpp"

#include "hz/bubble.hpp"
#include "hz/grid.hpp"

using namespace hz;

TEST_SUITE("bubble") {

TEST_CASE("profile and covariance") {
    CHECK(bubble_value(BubbleParams{}, GroupElement::identity(1)) == 1.0);
    for (int n : {1, 2}) {
        const int Q = 2 * n + 2;
        std::vector<cplx> s(n, cplx(0, 0));
        s[0] = 1.0;
        const auto far = dilate(1e3, gauge_point(0.9, s));
        CHECK(std::abs(bubble_value(BubbleParams{}, far) * std::pow(koranyi_norm(far), Q - 2) - 1.0) < 1e-3);
    }
    BubbleParams b;
    b.lambda = 1.7;
    b.center = test::point1(0.2, -0.5, 0.9);
    b.amplitude = 1.0;
    std::mt19937_64 rng(2);
    for (int k = 0; k < 50; ++k) {
        const auto xi = test::random_point(1, rng);
        const double want = std::pow(b.lambda, -1.0) *
                            bubble_value(BubbleParams{}, dilate(1.0 / b.lambda, group_mul(group_inv(b.center), xi)));
        CHECK(test::rel(bubble_value(b, xi), want) < 1e-14);
        CHECK(test::rel(bubble_eval(b, xi).v, want) < 1e-14);
    }
    CHECK_THROWS(bubble_value(BubbleParams{0.0, {}, 1.0}, GroupElement::identity(1)));
}

TEST_CASE("kernel elements at the origin") {
    for (int n : {1, 2}) {
        const Params p = Params::make(n, 2.0);
        const auto o = GroupElement::identity(n);
        CHECK(kernel_element(2 * n + 1, p).field(o).v == 0.0);
        CHECK(kernel_element(2 * n + 2, p).field(o).v == doctest::Approx((p.Q - 2) / 2.0));
        CHECK_THROWS(kernel_element(2 * n + 3, p));
    }
}

TEST_CASE("kernel elements are derivatives of the bubble family") {
    // phi_k as finite differences of left translations and dilations of U
    const Params p = Params::make(1, 2.0);
    const auto xi = test::point1(0.4, -0.7, 0.3);
    const double h = 1e-6;
    auto translated = [&](const GroupElement& c) {
        BubbleParams b;
        b.center = c;
        return bubble_value(b, xi);
    };
    for (int k = 1; k <= 3; ++k) {
        GroupElement cp = GroupElement::identity(1), cm = cp;
        if (k == 1) cp.z[0] = h, cm.z[0] = -h;
        if (k == 2) cp.z[0] = cplx(0, h), cm.z[0] = cplx(0, -h);
        if (k == 3) cp.t = h, cm.t = -h;
        const double fd = -(translated(cp) - translated(cm)) / (2 * h);
        CHECK(kernel_element(k, p).field(xi).v == doctest::Approx(fd).epsilon(1e-7));
    }
    BubbleParams up, dn;
    up.lambda = std::exp(-h);
    dn.lambda = std::exp(h);
    const double fd = (bubble_value(up, xi) - bubble_value(dn, xi)) / (2 * h);
    CHECK(kernel_element(4, p).field(xi).v == doctest::Approx(fd).epsilon(1e-7));
}

TEST_CASE("closed-form Riesz potential") {
    const Params p = Params::make(1, 2.0);
    const double q = p.q_star_mu;
    std::mt19937_64 rng(3);
    double first = 0.0;
    for (int k = 0; k < 20; ++k) {
        const auto xi = test::random_point(1, rng);
        const double r = riesz_closed_form(q, 2.0, xi, p) / std::pow(bubble_value(BubbleParams{}, xi), 2.0 / (p.Q - 2));
        if (k == 0) first = r;
        CHECK(test::rel(r, first) < 1e-10);
    }
    CHECK_THROWS(riesz_closed_form(2.0, 2.0, GroupElement::identity(1), p));
}

TEST_CASE("Yamabe and Hartree residual ratios") {
    std::mt19937_64 rng(4);
    for (int n : {1, 2}) {
        for (int k = 0; k < 30; ++k) CHECK(yamabe_ratio(test::random_point(n, rng)) == doctest::Approx(4.0 * n * n).epsilon(1e-12));
    }
    const Params p = Params::make(1, 2.0);
    const double ah = alpha_hat(p);
    CHECK(ah == doctest::Approx(2.0 / 3.141592653589793).epsilon(1e-12));
    for (double lam : {0.5, 1.0, 2.0}) {
        BubbleParams b;
        b.lambda = lam;
        for (int k = 0; k < 100; ++k) {
            auto xi = test::random_point(1, rng, 2.5);
            if (koranyi_norm(xi) > 5.0) continue;
            CHECK(test::rel(el_residual(b, 2.0, xi).ratio, ah) < 1e-8);
        }
    }
    BubbleParams c;
    c.amplitude = calibrated_amplitude(p);
    CHECK(el_residual(c, 2.0, test::point1(0.3, 0.1, -0.2)).ratio == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("linearized operator") {
    const Params p = Params::make(1, 2.0);
    QuadratureSpec s;
    std::mt19937_64 rng(5);
    const auto xi = test::random_point(1, rng, 1.2);
    for (int k = 1; k <= 4; ++k) {
        const auto L = linearized_apply(kernel_element(k, p).field, k == 4 ? 2.0 : 3.0, BubbleParams{}, 2.0, xi, s);
        CHECK(std::abs(L.value) < 0.01 * L.dominant);
    }
    // linear in phi
    const auto f1 = kernel_element(1, p).field, f4 = kernel_element(4, p).field;
    const ScalarField mix = [&](const GroupElement& e) { return f1(e) * 2.0 + f4(e) * (-0.5); };
    const auto a = linearized_apply(f1, 3.0, BubbleParams{}, 2.0, xi, s);
    const auto b = linearized_apply(f4, 2.0, BubbleParams{}, 2.0, xi, s);
    const auto m = linearized_apply(mix, 2.0, BubbleParams{}, 2.0, xi, s);
    CHECK(m.laplacian == doctest::Approx(2.0 * a.laplacian - 0.5 * b.laplacian).epsilon(1e-12));
    CHECK(m.nonlocal == doctest::Approx(2.0 * a.nonlocal - 0.5 * b.nonlocal).epsilon(1e-9));
    // U itself is not in the kernel
    const ScalarField U = [](const GroupElement& e) { return bubble_eval(BubbleParams{}, e); };
    const auto u = linearized_apply(U, 2.0, BubbleParams{}, 2.0, xi, s);
    CHECK(std::abs(u.value) > 0.1 * u.dominant);
}

TEST_CASE("Gram matrix of the kernel") {
    const Params p = Params::make(1, 2.0);
    QuadratureSpec s;
    s.angular_nodes = 16;
    const auto g = kernel_gram(p, KernelVariant::invariant, s);
    CHECK(g.rank == 4);
    CHECK(g.singular_values.back() > 0.1);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(g.gram[a][b] == doctest::Approx(g.gram[b][a]));
}

}  // TEST_SUITE
