// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are fixed here.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "hz/bubble.hpp"
#include "hz/campaign.hpp"
#include "hz/cayley.hpp"
#include "hz/constants.hpp"
#include "hz/parallel.hpp"
#include "hz/pohozaev.hpp"
#include "hz/reduced.hpp"
#include "hz/spectral.hpp"
#include "hz/sphere.hpp"

using namespace hz;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s <= budget_s;
    const bool ok = o.ok && in_time;
    if (!ok) ++failures;
    std::printf("%s %2d %s | %s | %.2f s (budget %.0f s)%s\n", ok ? "PASS" : "FAIL", id, title, o.detail.c_str(), s,
                budget_s, in_time ? "" : " over budget");
    std::fflush(stdout);
}

GroupElement random_point(int n, std::mt19937_64& rng, double s) {
    GroupElement g = GroupElement::identity(n);
    for (auto& z : g.z) {
        const double a = s * (2.0 * uniform01(rng) - 1.0);
        const double b = s * (2.0 * uniform01(rng) - 1.0);
        z = cplx(a, b);
    }
    g.t = s * (2.0 * uniform01(rng) - 1.0);
    return g;
}

double gap(const GroupElement& a, const GroupElement& b) {
    const auto x = a.coords(), y = b.coords();
    double d = 0.0, s = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        d = std::max(d, std::abs(x[i] - y[i]));
        s = std::max(s, std::abs(x[i]));
    }
    return d / s;
}

std::string fmt(const char* f, double a) {
    char b[96];
    std::snprintf(b, sizeof b, f, a);
    return b;
}

}  // namespace

int main() {
    // 1. group law and Cayley transform
    criterion(1, "group/Cayley suite", 5.0, [] {
        constexpr double kGroupTol = 1e-12, kCayleyTol = 1e-10;
        std::mt19937_64 rng(2024);
        double assoc = 0, inv = 0, hom = 0, trip = 0, dist = 0;
        for (int n : {1, 2}) {
            for (int k = 0; k < 1000; ++k) {
                const auto a = random_point(n, rng, 2.0), b = random_point(n, rng, 2.0), c = random_point(n, rng, 2.0);
                const double lam = std::exp(3.0 * (2.0 * uniform01(rng) - 1.0));
                assoc = std::max(assoc, gap(group_mul(group_mul(a, b), c), group_mul(a, group_mul(b, c))));
                inv = std::max(inv, gap(group_mul(a, group_inv(a)), GroupElement::identity(n)));
                hom = std::max(hom, std::abs(koranyi_norm(dilate(lam, a)) / (lam * koranyi_norm(a)) - 1.0));
                trip = std::max(trip, gap(cayley_inv(cayley(a).point), a));
                const auto d = distance_identity_check(a, b);
                dist = std::max(dist, std::abs(d.lhs - d.rhs) / d.rhs);
            }
        }
        Outcome o;
        o.ok = assoc <= kGroupTol && inv <= kGroupTol && hom <= kGroupTol && trip <= kCayleyTol && dist <= kCayleyTol;
        o.detail = fmt("assoc %.1e", assoc) + fmt(" inv %.1e", inv) + fmt(" homog %.1e", hom) +
                   fmt(" round-trip %.1e", trip) + fmt(" distance %.1e", dist) + " (n=1,2; 1e3 cases each)";
        return o;
    });

    // 2. Funk-Hecke eigenvalue identities
    criterion(2, "constants suite", 1.0, [] {
        constexpr double kTol = 1e-12;
        double sym = 0, ratio = 0, dual = 0;
        int mono = 0;
        for (int n : {1, 2, 3}) {
            const Params p = Params::make(n, 1.0);
            for (int k = 1; 0.25 * k < p.Q; ++k) {
                const double mu = 0.25 * k;
                for (int i = 0; i <= 8; ++i)
                    for (int j = 0; i + j <= 8; ++j) {
                        const double e = funk_coeff({i, j}, mu, p);
                        sym = std::max(sym, std::abs(e / funk_coeff({j, i}, mu, p) - 1.0));
                        if (!(funk_coeff({i + 1, j}, mu, p) < e)) ++mono;
                    }
                const double want = mu / (4.0 * n - mu + 4.0);
                ratio = std::max(ratio, std::abs(funk_coeff({1, 0}, mu, p) / funk_coeff({0, 0}, mu, p) / want - 1.0));
            }
            dual = std::max(dual, std::abs(funk_coeff({0, 0}, 2.0 * n, p) / e00_dual(n) - 1.0));
        }
        const double e8 = funk_coeff({0, 0}, 2.0, Params::make(1, 2.0)) / (8.0 * std::numbers::pi) - 1.0;
        Outcome o;
        o.ok = sym <= kTol && mono == 0 && ratio <= kTol && dual <= kTol && std::abs(e8) <= kTol;
        o.detail = fmt("symmetry %.1e", sym) + fmt(" monotone violations %.0f", mono) + fmt(" ratio %.1e", ratio) +
                   fmt(" dual %.1e", dual) + fmt(" E00(2)/8pi-1 %.1e", e8);
        return o;
    });

    // 3. Monte Carlo Funk-Hecke application
    criterion(3, "Funk-Hecke Monte Carlo", 60.0, [] {
        constexpr double kSigmas = 3.0;
        constexpr std::int64_t kSamples = 1'000'000;
        const SpherePoint zeta({cplx(0.6, 0.3), cplx(0.5, -0.4)});
        struct Probe {
            HarmonicIndex idx;
            SphereFn Y;
        };
        const std::vector<Probe> probes = {
            {{0, 0}, [](const SpherePoint&) { return 1.0; }},
            {{1, 0}, [](const SpherePoint& s) { return harmonic_10_basis(1, s); }},
            {{0, 1}, [](const SpherePoint& s) { return harmonic_01_basis(1, s); }}};
        double worst = 0.0;
        std::uint64_t seed = 500;
        for (double mu : {1.0, 2.0, 3.0})
            for (const auto& pr : probes) {
                const auto est = funk_hecke_apply(0.5 * mu, pr.Y, zeta, SphereSampler{seed++, kSamples});
                const double want = funk_coeff(pr.idx, mu, Params::make(1, mu)) * pr.Y(zeta);
                worst = std::max(worst, std::abs(est.value - want) / est.std_error);
            }
        return Outcome{worst <= kSigmas, fmt("worst deviation %.2f standard errors over 9 cases, 1e6 samples", worst)};
    });

    // 4. Yamabe residual
    criterion(4, "Yamabe residual", 1.0, [] {
        constexpr double kTol = 1e-8;
        std::mt19937_64 rng(7);
        double lo = 1e300, hi = -1e300;
        for (int k = 0; k < 100; ++k) {
            const double r = yamabe_ratio(random_point(1, rng, 2.0));
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        const double c = 0.5 * (lo + hi);
        return Outcome{(hi - lo) / c <= kTol, fmt("spread %.1e", (hi - lo) / c) + fmt("; constant %.12f", c) +
                                                  " (reported: nominal n^2 = 1, expansion 4n^2 = 4)"};
    });

    // 5. Hartree Euler-Lagrange residual
    criterion(5, "Hartree EL residual", 300.0, [] {
        constexpr double kSpread = 1e-8, kQuad = 0.01;
        const Params p = Params::make(1, 2.0);
        std::mt19937_64 rng(8);
        BubbleParams b;
        b.lambda = 0.7;
        b.center = GroupElement{{cplx(0.3, -0.2)}, 0.4};
        double lo = 1e300, hi = -1e300;
        for (int k = 0; k < 100;) {
            const auto xi = random_point(1, rng, 3.0);
            if (koranyi_norm(xi) > 5.0) continue;
            ++k;
            const double r = el_residual(b, 2.0, xi).ratio;
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        const double spread = (hi - lo) / (0.5 * (lo + hi));
        const double q = p.q_star_mu;
        const HnFn Uq = [q](const GroupElement& xi) { return std::pow(bubble_value(BubbleParams{}, xi), q); };
        double worst = 0.0;
        QuadratureSpec s;
        for (int k = 0; k < 5; ++k) {
            const auto xi = k == 0 ? GroupElement::identity(1) : random_point(1, rng, 1.5);
            const double v = riesz_potential(Uq, 2.0, xi, 2.0 * q, s).value;
            worst = std::max(worst, std::abs(v / riesz_closed_form(q, 2.0, xi, p) - 1.0));
        }
        return Outcome{spread <= kSpread && worst <= kQuad,
                       fmt("ratio spread %.1e", spread) + fmt("; closed form vs quadrature %.1e at 5 points", worst)};
    });

    // 6. nondegeneracy
    criterion(6, "nondegeneracy", 600.0, [] {
        constexpr double kTol = 0.01;
        const Params p = Params::make(1, 2.0);
        const auto cls = classify_kernel(p, 12);
        std::mt19937_64 rng(9);
        QuadratureSpec s;
        s.angular_nodes = 48;  // same 1.5x refinement the bubble campaign uses
        double worst = 0.0;
        for (int k = 0; k < 10; ++k) {
            const auto xi = random_point(1, rng, 1.5);
            for (int e = 1; e <= 4; ++e) {
                const auto L = linearized_apply(kernel_element(e, p).field, e == 4 ? 2.0 : 3.0, BubbleParams{}, 2.0, xi, s);
                worst = std::max(worst, std::abs(L.value) / L.dominant);
            }
        }
        Outcome o;
        o.ok = cls.ordering_ok && cls.monotone_ok && cls.multiplicity == 4 && worst <= kTol;
        o.detail = std::string("ordering ") + (cls.ordering_ok ? "ok" : "broken") + fmt(", multiplicity %.0f", cls.multiplicity) +
                   fmt(", worst |L phi_k| / dominant %.2e at 10 points", worst);
        return o;
    });

    // 7. decay regimes
    criterion(7, "decay regimes", 300.0, [] {
        constexpr double kTol = 0.05;
        QuadratureSpec s;
        Outcome o;
        for (double theta : {3.0, 4.0, 5.0}) {
            const auto f = decay_regime_check(1, 2.0, theta, s);
            o.ok = o.ok && std::abs(f.fitted - f.predicted) <= kTol;
            o.detail += fmt("theta=%g: ", theta) + fmt("fit %.4f", f.fitted) + fmt(" vs %.0f", f.predicted) +
                        fmt(" (raw slope %.3f); ", f.fitted_raw);
        }
        return o;
    });

    // 8. Pohozaev identities
    criterion(8, "Pohozaev identities", 600.0, [] {
        constexpr double kTol = 0.05;
        const Params p = Params::make(1, 2.0);
        Outcome o;
        for (double delta : {0.5, 1.0, 2.0}) {
            PohozaevConfig c;
            c.u.amplitude = calibrated_amplitude(p);
            c.center = GroupElement{{cplx(0.3, -0.2)}, 0.25};
            c.inner_radius = delta;
            const auto r = pohozaev_all(c);
            double tr = 0.0;
            for (const auto& t : r.translation) tr = std::max(tr, t.relative);
            o.ok = o.ok && r.scale.relative <= kTol && tr <= kTol;
            o.detail += fmt("delta=%g: ", delta) + fmt("scale %.1e", r.scale.relative) + fmt(" translation %.1e; ", tr);
        }
        return o;
    });

    // 9. reduced energy
    criterion(9, "reduced energy", 10.0, [] {
        constexpr double kArgmin = 1e-6, kPower = 1e-12;
        const Params p = Params::make(2, 2.0);
        QuadratureSpec s;
        s.angular_nodes = 16;
        s.truncation_radius = 1e4;
        const auto c = reduced_coeffs(p, s);
        const double R = 1.3, eps = 1e-3;
        const double lam = critical_scale(R, eps, c, p);
        const double am = std::abs(reduced_argmin(R, eps, c, p) / lam - 1.0);
        auto F = [&](double l) { return reduced_energy({eps, l, R, {}}, c, p); };
        const double h = 1e-2 * lam;
        const double d2 = F(lam + h) + F(lam - h) - 2.0 * F(lam);
        const double pw = std::abs(critical_scale(R, eps / 16.0, c, p) / lam / 4.0 - 1.0);
        const double c1 = boundary_exclusion_constant(R, eps, c, p);
        return Outcome{am <= kArgmin && d2 >= 0.0 && pw <= kPower && c1 > 0.0,
                       fmt("argmin %.1e", am) + fmt(", second difference %.2e", d2) + fmt(", power law %.1e", pw) +
                           fmt(", c1 %.3e (n=2)", c1)};
    });

    // 10. determinism of whole campaigns
    criterion(10, "determinism", 600.0, [] {
        RunConfig cfg;
        cfg.campaigns = {"all"};
        cfg.quadrature.seed = 31;
        cfg.quadrature.samples = 20'000;
        cfg.quadrature.radial_nodes = 3;
        cfg.quadrature.angular_nodes = 8;
        cfg.quadrature.truncation_radius = 200.0;
        normalize_campaigns(cfg);
        set_workers(1);
        const auto a = run(cfg);
        set_workers(4);
        const auto b = run(cfg);
        cfg.quadrature.method = QuadMethod::monte_carlo;
        cfg.quadrature.samples = 2'000;
        cfg.campaigns = {"spectral", "bubble"};
        set_workers(1);
        const auto c = run(cfg);
        set_workers(3);
        const auto d = run(cfg);
        set_workers(0);
        const bool same = a.body.dump() == b.body.dump() && a.kappa_rows == b.kappa_rows &&
                          a.decay_rows == b.decay_rows && c.body.dump() == d.body.dump() &&
                          c.decay_rows == d.decay_rows;
        return Outcome{same, std::string("all campaigns (tensor) plus spectral and bubble (Monte Carlo), 1 vs 3-4 workers: ") +
                                 (same ? "byte-identical" : "DIFFERENT")};
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
