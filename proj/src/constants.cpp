#include "hz/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hz/grid.hpp"

namespace hz {

namespace {
constexpr double kPi = std::numbers::pi;
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("log_gamma: argument must be positive");
    return std::lgamma(x);
}

double funk_coeff_log(HarmonicIndex idx, double mu, const Params& p) {
    const int n = p.n;
    if (!(mu > 0.0 && mu < 2.0 * n + 2.0)) throw std::invalid_argument("funk_coeff: mu out of range");
    if (idx.i < 0 || idx.j < 0) throw std::invalid_argument("funk_coeff: negative index");
    const double q = 0.25 * mu;
    return std::log(2.0) + (n + 1) * std::log(kPi) + log_gamma(n + 1 - 0.5 * mu) - 2.0 * log_gamma(q) +
           log_gamma(idx.i + q) + log_gamma(idx.j + q) - log_gamma(idx.i + n + 1 - q) -
           log_gamma(idx.j + n + 1 - q);
}

double funk_coeff(HarmonicIndex idx, double mu, const Params& p) { return std::exp(funk_coeff_log(idx, mu, p)); }

double e00_dual(int n) {
    const double g = std::tgamma(0.5 * n);
    return 8.0 / (n * n) * std::pow(kPi, n + 1) / (g * g);
}

double sphere_volume(int n) { return 2.0 * std::pow(kPi, n + 1) / std::tgamma(n + 1.0); }

double c_sobolev(int n) { return kPi * n * n / std::pow(std::pow(2.0, 2 * n) * std::tgamma(n + 1.0), 1.0 / (n + 1)); }

double c_hls(int n, double mu) {
    const int Q = 2 * n + 2;
    const double nf = std::tgamma(n + 1.0);
    const double base = std::pow(kPi, n + 1) / (std::pow(2.0, n - 1) * nf);
    return std::pow(base, mu / Q) * nf * std::exp(log_gamma(0.5 * (Q - mu)) - 2.0 * log_gamma(0.25 * (2 * Q - mu)));
}

double c_hl(int n, double mu) {
    const auto p = Params::make(n, mu);
    return c_sobolev(n) * std::pow(c_hls(n, mu), -1.0 / p.q_star_mu);
}

double alpha_closed(int n, double mu, double b) {
    const int Q = 2 * n + 2;
    return std::pow(c_sobolev(n), -0.5 * (Q - mu)) / c_hls(n, mu) * std::pow(b, 0.5 * (Q - mu + 2));
}

double green_G(int n) {
    const int Q = 2 * n + 2;
    const double g = std::tgamma(0.25 * (Q - 2));
    return std::pow(2.0, n - 2) * g * g / std::pow(kPi, 0.5 * Q);
}

double green_flux_constant(int n) {
    // |grad_H rho|^2 = |z|^2 / rho^2 = sin^2(phi) on the unit gauge sphere
    const int Q = 2 * n + 2;
    double s = 0.0;
    for (const auto& nd : gauss_legendre(200, 0.0, kPi)) {
        const double sp = std::sin(nd.x);
        s += nd.w * sp * sp * gauge_density(n, nd.x);
    }
    return 1.0 / ((Q - 2) * unit_sphere_area(2 * n - 1) * s);
}

ConstantsTable constants_table(const Params& p) {
    ConstantsTable c;
    c.params = p;
    const int n = p.n;
    c.c_sobolev = c_sobolev(n);
    c.c_hls = c_hls(n, p.mu);
    c.c_hl = c_hl(n, p.mu);
    c.b_candidate = static_cast<double>(n) * n;
    c.b_direct = 4.0 * n * n;
    c.alpha = alpha_closed(n, p.mu, c.b_candidate);
    c.alpha_direct = alpha_closed(n, p.mu, c.b_direct);
    c.g_green = green_G(n);
    c.green_flux = green_flux_constant(n);
    c.sphere_volume = sphere_volume(n);
    c.omega_sphere = gauge_sphere_measure(n);
    c.omega_ball = c.omega_sphere / p.Q;
    c.e00_mu = funk_coeff({0, 0}, p.mu, p);
    c.e10_mu = funk_coeff({1, 0}, p.mu, p);
    return c;
}

}  // namespace hz
