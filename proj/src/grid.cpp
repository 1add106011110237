#include "hz/grid.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace hz {

namespace {

const std::vector<Node1>& gl_reference(int m) {
    static std::mutex mtx;
    static std::map<int, std::vector<Node1>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::vector<Node1> nodes(m);
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double dp = 1.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= m; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = m * (x * p1 - p0) / (x * x - 1.0);
        nodes[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
    }
    return cache.emplace(m, std::move(nodes)).first->second;
}

}  // namespace

std::vector<Node1> gauss_legendre(int m, double a, double b) {
    if (m < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    const auto& ref = gl_reference(m);
    std::vector<Node1> out(m);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int i = 0; i < m; ++i) out[i] = {c + h * ref[i].x, h * ref[i].w};
    return out;
}

std::vector<Node1> log_panels(double r0, double r1, double panel_width, int per_panel) {
    const double s0 = std::log(r0), s1 = std::log(r1);
    const int panels = std::max(1, static_cast<int>(std::ceil((s1 - s0) / panel_width)));
    const double w = (s1 - s0) / panels;
    std::vector<Node1> out;
    out.reserve(panels * per_panel);
    for (int p = 0; p < panels; ++p)
        for (const auto& nd : gauss_legendre(per_panel, s0 + p * w, s0 + (p + 1) * w)) {
            const double r = std::exp(nd.x);
            out.push_back({r, nd.w * r});
        }
    return out;
}

std::vector<SphereNode> unit_sphere_grid(int n, int nodes) {
    std::vector<SphereNode> out;
    const double tau = 2.0 * std::numbers::pi;
    if (n == 1) {
        for (int k = 0; k < nodes; ++k) {
            const double th = tau * k / nodes;
            out.push_back({{cplx(std::cos(th), std::sin(th))}, tau / nodes});
        }
        return out;
    }
    if (n == 2) {
        const int mb = std::max(4, nodes / 2);
        const auto as = gauss_legendre(std::max(4, nodes / 4), 0.0, 0.5 * std::numbers::pi);
        for (const auto& a : as)
            for (int i = 0; i < mb; ++i)
                for (int j = 0; j < mb; ++j) {
                    const double b1 = tau * i / mb, b2 = tau * j / mb;
                    out.push_back({{std::cos(a.x) * std::polar(1.0, b1), std::sin(a.x) * std::polar(1.0, b2)},
                                   a.w * std::sin(a.x) * std::cos(a.x) * (tau / mb) * (tau / mb)});
                }
        return out;
    }
    throw std::invalid_argument("unit_sphere_grid: tensor grids support n <= 2");
}

GroupElement gauge_point(double phi, const std::vector<cplx>& s) {
    const double sp = std::sin(phi);
    GroupElement g;
    g.z.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) g.z[i] = sp * s[i];
    g.t = std::cos(phi) * std::sqrt(1.0 + sp * sp);
    return g;
}

double gauge_density(int n, double phi) {
    const double sp = std::sin(phi);
    return 2.0 * std::pow(sp, 2 * n - 1) / std::sqrt(1.0 + sp * sp);
}

std::vector<GaugeNode> gauge_sphere_grid(int n, int phi_nodes, int angle_nodes) {
    const auto ps = gauss_legendre(phi_nodes, 0.0, std::numbers::pi);
    const auto ss = unit_sphere_grid(n, angle_nodes);
    std::vector<GaugeNode> out;
    out.reserve(ps.size() * ss.size());
    for (const auto& p : ps) {
        const double g = p.w * gauge_density(n, p.x);
        for (const auto& s : ss) out.push_back({gauge_point(p.x, s.s), g * s.w});
    }
    return out;
}

double unit_sphere_area(int dim) {
    const double h = 0.5 * (dim + 1);
    return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

double gauge_sphere_measure(int n) {
    static std::mutex mtx;
    static std::map<int, double> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    double s = 0.0;
    for (const auto& p : gauss_legendre(200, 0.0, std::numbers::pi)) s += p.w * gauge_density(n, p.x);
    return cache[n] = unit_sphere_area(2 * n - 1) * s;
}

double smooth_cutoff(double x) {
    if (x <= 0.5) return 1.0;
    if (x >= 1.0) return 0.0;
    const double a = std::exp(-1.0 / (1.0 - x));
    const double b = std::exp(-1.0 / (x - 0.5));
    return a / (a + b);
}

}  // namespace hz
