#include "hz/sphere.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hz/grid.hpp"
#include "hz/parallel.hpp"

namespace hz {

namespace {
constexpr double kPi = std::numbers::pi;
}

SpherePoint::SpherePoint(std::vector<cplx> z) : zeta(std::move(z)) {
    double s = 0.0;
    for (const auto& c : zeta) s += std::norm(c);
    if (!(s > 0.0)) throw std::invalid_argument("SpherePoint: zero vector");
    const double inv = 1.0 / std::sqrt(s);
    for (auto& c : zeta) c *= inv;
}

std::vector<double> SpherePoint::ambient() const {
    const int m = static_cast<int>(zeta.size());
    std::vector<double> a(2 * m);
    for (int d = 0; d < m; ++d) {
        a[d] = zeta[d].real();
        a[m + d] = zeta[d].imag();
    }
    return a;
}

cplx hermitian_dot(const SpherePoint& a, const SpherePoint& b) {
    cplx s = 0.0;
    for (std::size_t d = 0; d < a.zeta.size(); ++d) s += a.zeta[d] * std::conj(b.zeta[d]);
    return s;
}

double chordal_kernel(const SpherePoint& a, const SpherePoint& b, double s) {
    const double r = std::abs(1.0 - hermitian_dot(a, b));
    if (s > 0.0 && r == 0.0) throw std::domain_error("chordal_kernel: diagonal point");
    return std::pow(r, -s);
}

long long sphere_dim(HarmonicIndex idx, int m) {
    if (idx.i < 0 || idx.j < 0) throw std::invalid_argument("sphere_dim: negative index");
    if (m < 2) throw std::invalid_argument("sphere_dim: m must be >= 2");
    const double lg = std::log(static_cast<double>(idx.i + idx.j + m - 1)) + std::lgamma(idx.i + m - 1.0) +
                      std::lgamma(idx.j + m - 1.0) - std::lgamma(idx.i + 1.0) - std::lgamma(idx.j + 1.0) -
                      std::lgamma(static_cast<double>(m)) - std::lgamma(m - 1.0);
    return std::llround(std::exp(lg));
}

double harmonic_norm(int n) { return std::sqrt((2.0 * n + 2.0) * std::tgamma(n + 1.0) / (2.0 * std::pow(kPi, n + 1))); }

double harmonic_norm_nominal(int n) {
    const double h = 0.5 * (2 * n + 1);
    return std::sqrt((2.0 * n + 2.0) * std::tgamma(h) / (2.0 * std::pow(kPi, h)));
}

double harmonic_10_basis(int d, const SpherePoint& zeta) {
    if (d < 1 || d > static_cast<int>(zeta.zeta.size())) throw std::out_of_range("harmonic_10_basis: index");
    return harmonic_norm(zeta.n()) * zeta.zeta[d - 1].imag();
}

double harmonic_01_basis(int d, const SpherePoint& zeta) {
    if (d < 1 || d > static_cast<int>(zeta.zeta.size())) throw std::out_of_range("harmonic_01_basis: index");
    return harmonic_norm(zeta.n()) * zeta.zeta[d - 1].real();
}

SpherePoint sample_sphere(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<cplx> z(n + 1);
    for (auto& c : z) {
        const double a = g(rng);
        const double b = g(rng);
        c = cplx(a, b);
    }
    return SpherePoint(std::move(z));
}

std::vector<std::vector<cplx>> complement_basis(const SpherePoint& zeta) {
    const int m = static_cast<int>(zeta.zeta.size());
    std::vector<std::vector<cplx>> basis;
    // project standard vectors, largest remaining norm first
    std::vector<std::vector<cplx>> cand;
    for (int k = 0; k < m; ++k) {
        std::vector<cplx> v(m, 0.0);
        v[k] = 1.0;
        const cplx c = std::conj(zeta.zeta[k]);
        for (int d = 0; d < m; ++d) v[d] -= c * zeta.zeta[d];
        cand.push_back(std::move(v));
    }
    while (static_cast<int>(basis.size()) < m - 1) {
        int best = -1;
        double bn = -1.0;
        for (int k = 0; k < static_cast<int>(cand.size()); ++k) {
            auto v = cand[k];
            for (const auto& e : basis) {
                cplx c = 0.0;
                for (int d = 0; d < m; ++d) c += v[d] * std::conj(e[d]);
                for (int d = 0; d < m; ++d) v[d] -= c * e[d];
            }
            double nv = 0.0;
            for (const auto& x : v) nv += std::norm(x);
            if (nv > bn) {
                bn = nv;
                best = k;
                cand[k] = v;
            }
        }
        auto v = cand[best];
        const double inv = 1.0 / std::sqrt(bn);
        for (auto& x : v) x *= inv;
        basis.push_back(v);
        cand.erase(cand.begin() + best);
    }
    return basis;
}

double sample_kernel_partner(const SpherePoint& zeta, const std::vector<std::vector<cplx>>& basis, double s,
                             std::mt19937_64& rng, SpherePoint& out) {
    const int n = zeta.n();
    const double e = n - s;  // radial exponent of |1-w|^{-s} (1-|w|^2)^{n-1} r
    if (!(e > -1.0)) throw std::invalid_argument("kernel exponent not integrable");
    const double psi = kPi * (uniform01(rng) - 0.5);
    const double rmax = 2.0 * std::cos(psi);
    const double r = rmax * std::pow(uniform01(rng), 1.0 / (e + 1.0));
    const cplx w = 1.0 - r * std::polar(1.0, psi);
    const double gap = r * (rmax - r);  // 1 - |w|^2
    std::vector<cplx> v(n + 1);
    for (int d = 0; d <= n; ++d) v[d] = std::conj(w) * zeta.zeta[d];
    if (n >= 1) {
        std::normal_distribution<double> g;
        std::vector<cplx> u(n);
        double nu = 0.0;
        for (auto& c : u) {
            const double a = g(rng);
            const double b = g(rng);
            c = cplx(a, b);
            nu += std::norm(c);
        }
        const double scale = std::sqrt(std::max(gap, 0.0) / nu);
        for (int k = 0; k < n; ++k)
            for (int d = 0; d <= n; ++d) v[d] += scale * u[k] * basis[k][d];
    }
    out.zeta = std::move(v);
    return std::pow(rmax - r, n - 1) * kPi * std::pow(rmax, e + 1.0) / (e + 1.0) * unit_sphere_area(2 * n - 1);
}

SphereEstimate sphere_integrate(const SphereFn& f, int n, const SphereSampler& sampler) {
    const auto r = mc_mean(sampler.seed, sampler.count, [&](std::mt19937_64& rng) { return f(sample_sphere(n, rng)); });
    const double vol = sphere_volume(n);
    return {r.mean * vol, r.std_error * vol, r.rejected};
}

SphereEstimate funk_hecke_apply(double s, const SphereFn& Y, const SpherePoint& zeta, const SphereSampler& sampler) {
    const int n = zeta.n();
    if (!(s > 0.0 && s < n + 1.0)) throw std::invalid_argument("funk_hecke_apply: s out of range");
    const auto basis = complement_basis(zeta);
    const auto r = mc_mean(sampler.seed, sampler.count, [&](std::mt19937_64& rng) {
        SpherePoint p;
        const double w = sample_kernel_partner(zeta, basis, s, rng, p);
        return w * Y(p);
    });
    return {r.mean, r.std_error, r.rejected};
}

std::vector<double> tangential_gradient(const Jet2& F, const SpherePoint& zeta) {
    const auto a = zeta.ambient();
    const int d = static_cast<int>(a.size());
    double radial = 0.0;
    for (int k = 0; k < d; ++k) radial += F.g[k] * a[k];
    std::vector<double> g(d);
    for (int k = 0; k < d; ++k) g[k] = F.g[k] - radial * a[k];
    return g;
}

EnergyEstimate sphere_energy(const AmbientField& F, int n, const SphereSampler& sampler) {
    const double c = 0.5 * n * n;
    const auto r = mc_mean_vec<2>(sampler.seed, sampler.count, [&](std::mt19937_64& rng) {
        const auto p = sample_sphere(n, rng);
        const Jet2 j = F(p);
        double g2 = 0.0;
        for (double x : tangential_gradient(j, p)) g2 += x * x;
        return std::array<double, 2>{g2, j.v * j.v};
    });
    const double vol = sphere_volume(n);
    EnergyEstimate e;
    e.grad_sq = r.mean[0] * vol;
    e.l2_sq = r.mean[1] * vol;
    e.energy = e.grad_sq + c * e.l2_sq;
    const double var = r.cov[0][0] + 2 * c * r.cov[0][1] + c * c * r.cov[1][1];
    e.std_error = std::sqrt(std::max(var, 0.0)) * vol;
    return e;
}

KernelPairing kernel_pairing_check(const SphereFn& F, int n, double mu, const SphereSampler& sampler) {
    const double s = 0.5 * mu;
    const auto r = mc_mean_vec<2>(sampler.seed, sampler.count, [&](std::mt19937_64& rng) {
        const auto z = sample_sphere(n, rng);
        const auto basis = complement_basis(z);
        SpherePoint p;
        const double w = sample_kernel_partner(z, basis, s, rng, p);
        const double ff = w * F(z) * F(p);
        return std::array<double, 2>{ff * hermitian_dot(z, p).real(), ff};
    });
    const double vol = sphere_volume(n);
    KernelPairing k;
    k.weighted = r.mean[0] * vol;
    k.unweighted = r.mean[1] * vol;
    k.ratio = r.mean[0] / r.mean[1];
    // delta method for a ratio of correlated means
    const double b = r.mean[1];
    const double var = (r.cov[0][0] - 2 * k.ratio * r.cov[0][1] + k.ratio * k.ratio * r.cov[1][1]) / (b * b);
    k.ratio_se = std::sqrt(std::max(var, 0.0));
    k.bound = (0.25 * mu) / (n + 1 - 0.25 * mu);
    return k;
}

}  // namespace hz
