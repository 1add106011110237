#include "doctest.h"
#include "util.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hz/reduced.hpp"

using namespace hz;

namespace {

const ReducedCoeffs& coeffs() {
    static const ReducedCoeffs c = [] {
        QuadratureSpec s;
        s.angular_nodes = 16;
        s.truncation_radius = 1e4;
        return reduced_coeffs(Params::make(2, 2.0), s);
    }();
    return c;
}

}  // namespace

TEST_SUITE("reduced") {

TEST_CASE("coefficients") {
    const auto& c = coeffs();
    CHECK(c.a_q > 0.0);
    CHECK(c.b_q > 0.0);
    CHECK(c.u_l2 > 0.0);
    CHECK(c.alpha > 0.0);
    CHECK(c.tail_l2 < 1e-5 * c.u_l2);
    // transport value 2^{-(Q-1)} |S^{2n+1}| at n = 2
    CHECK(test::rel(c.a_q, std::pow(2.0, -5.0) * 3.141592653589793 * 3.141592653589793 * 3.141592653589793) < 0.01);
    CHECK_THROWS(reduced_coeffs(Params::make(1, 2.0), QuadratureSpec{}));
}

TEST_CASE("energy profile") {
    const Params p = Params::make(2, 2.0);
    const auto& c = coeffs();
    const double R = 1.3, eps = 1e-3;
    CHECK(std::abs(reduced_energy({eps, 1e8, R, {}}, c, p)) < 1e-12);
    // F = 0 where a / lam^{Q-2} = eps int U^2 / lam^2
    const double root = std::pow(reduced_a(R, c, p) / (eps * c.u_l2), 1.0 / (p.Q - 4));
    CHECK(reduced_energy({eps, 0.9 * root, R, {}}, c, p) > 0.0);
    CHECK(reduced_energy({eps, 1.1 * root, R, {}}, c, p) < 0.0);
    const double lam = critical_scale(R, eps, c, p);
    const double h = 1e-4 * lam;
    const double dF = (reduced_energy({eps, lam + h, R, {}}, c, p) - reduced_energy({eps, lam - h, R, {}}, c, p)) / (2 * h);
    const double scale = std::abs(reduced_energy({eps, lam, R, {}}, c, p)) / lam;
    CHECK(std::abs(dF) < 1e-6 * scale);
}

TEST_CASE("critical scale") {
    const Params p = Params::make(2, 2.0);
    const auto& c = coeffs();
    for (double eps : {1e-2, 1e-4}) {
        for (double R : {0.5, 2.0}) {
            const double lam = critical_scale(R, eps, c, p);
            CHECK(test::rel(reduced_argmin(R, eps, c, p), lam) < 1e-6);
            CHECK(test::rel(critical_scale(R, eps / 16.0, c, p) / lam, 4.0) < 1e-12);
            const double h = 1e-2 * lam;
            auto F = [&](double l) { return reduced_energy({eps, l, R, {}}, c, p); };
            CHECK(F(lam + h) + F(lam - h) - 2.0 * F(lam) >= 0.0);
            CHECK(reduced_second_derivative(R, eps, c, p) > 0.0);
            CHECK(boundary_exclusion_constant(R, eps, c, p) > 0.0);
        }
    }
    CHECK_THROWS(critical_scale(-1.0, 1e-3, c, p));
    CHECK_THROWS(critical_scale(1.0, 0.0, c, p));
}

TEST_CASE("reduced system") {
    const Params p = Params::make(2, 2.0);
    const auto& c = coeffs();
    SearchBox box{std::vector<double>(5, -1.0), std::vector<double>(5, 1.1)};
    const auto s = solve_reduced_system(quadratic_robin(2), 1e-3, box, c, p);
    CHECK(s.converged);
    CHECK(s.residual < 1e-10);
    for (double v : s.xi.coords()) CHECK(std::abs(v) < 1e-8);
    CHECK(test::rel(s.t, scale_constant(1.0, c, p)) < 1e-8);
    SearchBox slab{std::vector<double>(5, -1.0), std::vector<double>(5, 1.0)};
    slab.lo[0] = 0.1;
    CHECK_FALSE(solve_reduced_system(half_space_robin(p), 1e-3, slab, c, p).converged);
}

TEST_CASE("tabulated Robin field") {
    namespace fs = std::filesystem;
    const auto path = fs::temp_directory_path() / "hz_robin_test.csv";
    {
        // R = 1 + (x - 0.2)^2 + y^2 + t^2 on a 5^3 grid (n = 1)
        std::ofstream f(path);
        f << "x,y,t,R,dx,dy,dt\n";
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                for (int k = 0; k < 5; ++k) {
                    const double x = -1 + 0.5 * i, y = -1 + 0.5 * j, t = -1 + 0.5 * k;
                    f << x << "," << y << "," << t << "," << 1 + (x - 0.2) * (x - 0.2) + y * y + t * t << ","
                      << 2 * (x - 0.2) << "," << 2 * y << "," << 2 * t << "\n";
                }
    }
    SearchBox ext;
    const auto R = load_robin_csv(path.string(), &ext);
    CHECK(ext.lo == std::vector<double>{-1, -1, -1});
    CHECK(ext.hi == std::vector<double>{1, 1, 1});
    // gradient columns are linear, so interpolation reproduces them exactly
    const auto s = R(test::point1(0.3, -0.4, 0.1));
    CHECK(s.gradient[0] == doctest::Approx(0.2));
    CHECK(s.gradient[1] == doctest::Approx(-0.8));
    CHECK_THROWS(R(test::point1(2.0, 0.0, 0.0)));
    {
        std::ofstream f(path);
        f << "x,y,t,R,dx,dy,dt\n0,0,0,1,0,0,0\n0,0,oops,1,0,0,0\n";
    }
    try {
        load_robin_csv(path.string());
        FAIL("expected an error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    fs::remove(path);
}

}  // TEST_SUITE
