#include "doctest.h"
#include "util.hpp"

#include <numbers>

#include "hz/constants.hpp"

using namespace hz;

TEST_SUITE("constants") {

TEST_CASE("log gamma") {
    CHECK(std::exp(log_gamma(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::exp(log_gamma(0.5)) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
    CHECK(std::exp(log_gamma(10.0)) == doctest::Approx(362880.0).epsilon(1e-13));
    std::mt19937_64 rng(1);
    for (int k = 0; k < 200; ++k) {
        const double x = 50.0 * uniform01(rng) + 1e-3;
        CHECK(std::abs(log_gamma(x + 1.0) - log_gamma(x) - std::log(x)) <= 1e-12 * std::max(1.0, std::abs(log_gamma(x + 1.0))));
        CHECK(test::rel(log_gamma(x), std::lgamma(x)) < 1e-12);
    }
}

TEST_CASE("Funk-Hecke eigenvalues") {
    const double pi = std::numbers::pi;
    for (int n : {1, 2, 3}) {
        const Params p = Params::make(n, 1.0);
        for (double mu = 0.25; mu < p.Q; mu += 0.25) {
            for (int i = 0; i <= 6; ++i)
                for (int j = 0; j <= 6; ++j) CHECK(test::rel(funk_coeff({i, j}, mu, p), funk_coeff({j, i}, mu, p)) < 1e-13);
            const double r = funk_coeff({1, 0}, mu, p) / funk_coeff({0, 0}, mu, p);
            CHECK(test::rel(r, mu / (4.0 * n - mu + 4.0)) < 1e-12);
            CHECK(funk_coeff({3, 1}, mu, p) > funk_coeff({4, 1}, mu, p));
        }
        CHECK(test::rel(funk_coeff({0, 0}, 2.0 * n, p), e00_dual(n)) < 1e-12);
    }
    CHECK(test::rel(funk_coeff({0, 0}, 2.0, Params::make(1, 2.0)), 8.0 * pi) < 1e-12);
    CHECK(test::rel(e00_dual(1), 8.0 * pi) < 1e-12);
}

TEST_CASE("closed-form constants") {
    const double pi = std::numbers::pi;
    CHECK(test::rel(c_sobolev(1), pi / 2.0) < 1e-14);
    CHECK(test::rel(green_G(1), 1.0 / (2.0 * pi)) < 1e-14);
    CHECK(test::rel(green_flux_constant(1), 1.0 / (8.0 * pi)) < 1e-10);
    CHECK(test::rel(sphere_volume(1), 2.0 * pi * pi) < 1e-14);
    for (int n : {1, 2, 3}) {
        const auto t = constants_table(Params::make(n, 2.0));
        CHECK(t.b_candidate == n * n);
        CHECK(t.c_sobolev > 0.0);
        CHECK(t.c_hls > 0.0);
        CHECK(t.alpha > 0.0);
        CHECK(test::rel(t.omega_ball * (2 * n + 2), t.omega_sphere) < 1e-14);
    }
    CHECK(test::rel(constants_table(Params::make(1, 2.0)).omega_sphere, 2.0 * pi * pi) < 1e-12);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS(Params::make(0, 1.0));
    CHECK_THROWS(Params::make(1, 4.0));
    CHECK_THROWS(Params::make(1, 0.0));
    const auto p = Params::make(2, 3.0);
    CHECK(p.Q == 6);
    CHECK(p.q_star == doctest::Approx(3.0));
    CHECK(p.q_star_mu == doctest::Approx(9.0 / 4.0));
}

}  // TEST_SUITE
