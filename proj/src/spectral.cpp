#include "hz/spectral.hpp"

#include <cmath>

#include "hz/bubble.hpp"
#include "hz/sphere.hpp"

namespace hz {

namespace {

double kappa_formula(HarmonicIndex idx, const Params& p, double green, double alpha) {
    const Params pq = Params::make(p.n, p.Q - 2.0);
    const double q = p.q_star_mu;
    return std::pow(2.0, 0.5 * (-3.0 * p.Q + p.mu + 2.0)) * green * alpha * funk_coeff(idx, p.Q - 2.0, pq) *
           (q * funk_coeff(idx, p.mu, p) + (q - 1.0) * funk_coeff({0, 0}, p.mu, p));
}

}  // namespace

SpectralRatio mode_multiplier(HarmonicIndex idx, const Params& params, KappaMode mode) {
    SpectralRatio r;
    r.idx = idx;
    r.mode = mode;
    const double nn = static_cast<double>(params.n) * params.n;
    switch (mode) {
        case KappaMode::raw:
            r.kappa = kappa_formula(idx, params, green_G(params.n), alpha_closed(params.n, params.mu, nn));
            break;
        case KappaMode::calibrated: {
            const double g = green_G(params.n), a = alpha_closed(params.n, params.mu, nn);
            r.kappa = kappa_formula(idx, params, g, a) / kappa_formula({1, 0}, params, g, a);
            break;
        }
        case KappaMode::true_value:
            r.kappa = kappa_formula(idx, params, green_flux_constant(params.n), alpha_hat(params));
            break;
    }
    return r;
}

KernelClassification classify_kernel(const Params& params, int max_degree) {
    KernelClassification c;
    c.max_degree = max_degree;
    auto kap = [&](int i, int j) { return mode_multiplier({i, j}, params, KappaMode::calibrated).kappa; };
    c.closest_other = 1e300;
    for (int i = 0; i <= max_degree; ++i)
        for (int j = 0; i + j <= max_degree; ++j) {
            const double k = kap(i, j);
            if (std::abs(k - 1.0) < 1e-9) {
                c.kernel_modes.push_back({i, j});
                c.multiplicity += static_cast<int>(sphere_dim({i, j}, params.n + 1));
            } else {
                c.closest_other = std::min(c.closest_other, std::abs(k - 1.0));
            }
        }
    // ordering on raw values, so it does not lean on the calibration
    auto raw = [&](int i, int j) { return mode_multiplier({i, j}, params, KappaMode::raw).kappa; };
    const double k00 = raw(0, 0), k10 = raw(1, 0), k01 = raw(0, 1);
    c.ordering_ok = k00 > k10 && std::abs(k10 - k01) <= 1e-14 * k10;
    for (int i = 0; i <= max_degree; ++i)
        for (int j = 0; i + j <= max_degree; ++j)
            if (i + j >= 2 && !(raw(i, j) < k10)) c.ordering_ok = false;
    c.monotone_ok = true;
    for (int i = 0; i < max_degree; ++i)
        for (int j = 0; i + 1 + j <= max_degree; ++j)
            if (!(raw(i + 1, j) < raw(i, j)) || !(raw(j, i + 1) < raw(j, i))) c.monotone_ok = false;
    return c;
}

BConstants extract_b_constant(const Params& params) {
    const int Q = params.Q, n = params.n;
    const Params pq = Params::make(n, Q - 2.0);
    const double e10 = funk_coeff({1, 0}, Q - 2.0, pq);
    BConstants b;
    b.b_from_identity = 1.0 / (std::pow(0.5, Q) * (Q + 2.0) / (Q - 2.0) * green_G(n) * e10);
    b.b_flux = 1.0 / (std::pow(2.0, -0.5 * Q) * (Q + 2.0) / (Q - 2.0) * green_flux_constant(n) * e10);
    b.b_nominal = static_cast<double>(n) * n;
    GroupElement xi = GroupElement::identity(n);
    xi.z[0] = cplx(0.37, -0.21);
    xi.t = 0.53;
    b.b_direct = yamabe_ratio(xi);
    return b;
}

}  // namespace hz
