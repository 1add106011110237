#include "hz/pohozaev.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hz/constants.hpp"
#include "hz/grid.hpp"
#include "hz/parallel.hpp"

namespace hz {

namespace {

// flat point storage for the nested kernel sums
struct Cloud {
    int n = 1;
    std::vector<double> x, y, t, w;  // x, y are n-strided
    std::size_t size() const { return w.size(); }
    void push(const GroupElement& e, double weight) {
        for (int i = 0; i < n; ++i) {
            x.push_back(e.z[i].real());
            y.push_back(e.z[i].imag());
        }
        t.push_back(e.t);
        w.push_back(weight);
    }
};

// sum_k w_k d(xi, eta_k)^{-mu}
double kernel_sum(const Cloud& c, const GroupElement& xi, double mu) {
    const int n = c.n;
    double xx[4], yy[4];
    for (int i = 0; i < n; ++i) {
        xx[i] = xi.z[i].real();
        yy[i] = xi.z[i].imag();
    }
    const double e = -0.25 * mu;
    const bool half = std::abs(e + 0.5) < 1e-15;
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        double a2 = 0.0, tw = 0.0;
        for (int i = 0; i < n; ++i) {
            const double ex = c.x[k * n + i], ey = c.y[k * n + i];
            const double ax = ex - xx[i], ay = ey - yy[i];
            a2 += ax * ax + ay * ay;
            tw += yy[i] * ex - xx[i] * ey;
        }
        const double at = c.t[k] - xi.t - 2.0 * tw;
        const double r4 = a2 * a2 + at * at;
        s += c.w[k] * (half ? 1.0 / std::sqrt(r4) : std::pow(r4, e));
    }
    return s;
}

GroupElement rotate(const GroupElement& g, double angle) {
    GroupElement r = g;
    const cplx ph = std::polar(1.0, angle);
    for (auto& z : r.z) z *= ph;
    return r;
}

// Euclidean gradient of r(xi) = rho(c^{-1} xi)
std::vector<double> gauge_gradient(const GroupElement& c, const GroupElement& xi) {
    const int n = xi.n();
    const auto w = group_mul(group_inv(c), xi);
    const double a2 = w.abs_z2();
    const double r = koranyi_norm(w);
    std::vector<double> g(2 * n + 1);
    const double s = 1.0 / (4.0 * r * r * r);
    for (int i = 0; i < n; ++i) {
        g[i] = s * (4.0 * a2 * w.z[i].real() - 4.0 * w.t * c.z[i].imag());
        g[n + i] = s * (4.0 * a2 * w.z[i].imag() + 4.0 * w.t * c.z[i].real());
    }
    g[2 * n] = s * 2.0 * w.t;
    return g;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct Multiplier {
    std::string name;
    bool scale = false;  // carries the B3 and R1 terms
    double div = 0.0;
    std::function<std::vector<double>(const GroupElement&)> v;
};

}  // namespace

PohozaevResult pohozaev_all(const PohozaevConfig& cfg) {
    const int n = cfg.center.n();
    if (n < 1) throw std::invalid_argument("pohozaev: centre must be set");
    const Params p = Params::make(n, cfg.mu);
    const int Q = p.Q;
    const double q = p.q_star_mu, mu = cfg.mu, delta = cfg.inner_radius;
    if (!(delta > 0.0)) throw std::invalid_argument("pohozaev: inner radius must be positive");
    if (!(delta < cfg.truncation_radius * std::max(1.0, delta) / 4.0))
        throw std::invalid_argument("pohozaev: inner radius must stay below truncation/4");
    if (cfg.epsilon != 0.0) throw std::invalid_argument("pohozaev: only epsilon = 0 has an exact bubble solution");
    const GroupElement& c = cfg.center;
    BubbleParams ub = cfg.u;
    if (ub.center.z.empty()) ub.center = GroupElement::identity(n);

    auto at = [&](double r, const GroupElement& sigma) { return group_mul(c, dilate(r, sigma)); };

    // radial nodes of D, graded toward the boundary
    std::vector<Node1> rin = gauss_legendre(2 * cfg.radial_nodes, 0.0, 0.5 * delta);
    for (const auto& nd : log_panels(1e-5 * delta, 0.5 * delta, 1.0, cfg.radial_nodes))
        rin.push_back({delta - nd.x, nd.w});
    const auto sig_in = gauge_sphere_grid(n, cfg.phi_nodes, n == 1 ? cfg.angle_nodes : cfg.angle_nodes / 2);
    const auto sig_bd =
        gauge_sphere_grid(n, cfg.boundary_phi_nodes, n == 1 ? cfg.boundary_angle_nodes : cfg.boundary_angle_nodes / 2);
    const auto sig_ex =
        gauge_sphere_grid(n, cfg.exterior_phi_nodes, n == 1 ? cfg.exterior_angle_nodes : cfg.exterior_angle_nodes / 2);
    const double off = std::numbers::pi / cfg.exterior_angle_nodes;
    const double T = cfg.truncation_radius * std::max(1.0, delta);

    // exterior cloud carries w u^q
    Cloud ext;
    ext.n = n;
    for (const auto& nd : log_panels(1e-5 * delta, T, 1.0, cfg.radial_nodes)) {
        const double r = delta + nd.x;
        for (const auto& s : sig_ex) {
            const auto eta = at(r, rotate(s.sigma, off));
            ext.push(eta, nd.w * std::pow(r, Q - 1) * s.w * std::pow(bubble_value(ub, eta), q));
        }
    }

    // D volume nodes
    struct VolNode {
        GroupElement xi;
        double w, u, vout;
        std::vector<double> grad_u;
    };
    std::vector<VolNode> vol;
    Cloud inner;
    inner.n = n;
    for (const auto& nd : rin)
        for (const auto& s : sig_in) {
            VolNode v;
            v.xi = at(nd.x, s.sigma);
            v.w = nd.w * std::pow(nd.x, Q - 1) * s.w;
            const Jet2 j = bubble_eval(ub, v.xi);
            v.u = j.v;
            v.grad_u.assign(j.g.begin(), j.g.begin() + 2 * n + 1);
            inner.push(v.xi, v.w * std::pow(v.u, q));
            vol.push_back(std::move(v));
        }
    parallel_for(static_cast<int>(vol.size()), [&](int k) { vol[k].vout = kernel_sum(ext, vol[k].xi, mu); });

    // boundary nodes
    struct BdNode {
        GroupElement xi;
        double w, u, V, vout, vin;
        std::vector<double> grad_u, grad_r, hu, hr;
    };
    std::vector<BdNode> bd;
    for (const auto& s : sig_bd) {
        BdNode b;
        b.xi = at(delta, s.sigma);
        b.w = std::pow(delta, Q - 1) * s.w;  // nu dS = grad r delta^{Q-1} d sigma
        const Jet2 j = bubble_eval(ub, b.xi);
        b.u = j.v;
        b.grad_u.assign(j.g.begin(), j.g.begin() + 2 * n + 1);
        b.grad_r = gauge_gradient(c, b.xi);
        b.hu = horizontal_gradient(j, b.xi);
        for (int i = 0; i < 2 * n; ++i) b.hr.push_back(dot(left_field(i, b.xi), b.grad_r));
        b.V = riesz_closed_form(ub, mu, b.xi, p);
        bd.push_back(std::move(b));
    }
    parallel_for(static_cast<int>(bd.size()), [&](int k) {
        bd[k].vout = kernel_sum(ext, bd[k].xi, mu);
        bd[k].vin = kernel_sum(inner, bd[k].xi, mu);
    });

    PohozaevResult res;
    double err = 0.0, flux = 0.0;
    for (const auto& b : bd) {
        err = std::max(err, std::abs(b.vin + b.vout - b.V) / b.V);
        const auto w = group_mul(group_inv(c), b.xi);
        std::vector<double> z(2 * n + 1);
        for (int i = 0; i < n; ++i) {
            z[i] = w.z[i].real();
            z[n + i] = w.z[i].imag();
        }
        double im = 0.0;
        for (int i = 0; i < n; ++i) im += c.z[i].imag() * w.z[i].real() - c.z[i].real() * w.z[i].imag();
        z[2 * n] = 2.0 * w.t + 2.0 * im;
        flux += b.w * dot(z, b.grad_r);
    }
    res.split.max_rel_error = err;
    res.split.divergence_check = flux / (std::pow(delta, Q) * gauge_sphere_measure(n)) - 1.0;

    std::vector<Multiplier> mults;
    mults.push_back({"scale", true, static_cast<double>(Q), [&](const GroupElement& xi) {
                         const auto w = group_mul(group_inv(c), xi);
                         std::vector<double> v(2 * n + 1);
                         double im = 0.0;
                         for (int i = 0; i < n; ++i) {
                             v[i] = w.z[i].real();
                             v[n + i] = w.z[i].imag();
                             im += c.z[i].imag() * w.z[i].real() - c.z[i].real() * w.z[i].imag();
                         }
                         v[2 * n] = 2.0 * w.t + 2.0 * im;
                         return v;
                     }});
    mults.push_back({"scale_literal", true, 2.0 * n, [&](const GroupElement& xi) {
                         std::vector<double> v(2 * n + 1, 0.0);
                         for (int i = 0; i < n; ++i) {
                             v[i] = xi.z[i].real() - c.z[i].real();
                             v[n + i] = xi.z[i].imag() - c.z[i].imag();
                         }
                         return v;
                     }});
    for (int j = 0; j < 2 * n; ++j)
        mults.push_back({"translation_Y" + std::to_string(j + 1), false, 0.0,
                         [j](const GroupElement& xi) { return right_field(j, xi); }});
    for (int j = 0; j < 2 * n; ++j)
        mults.push_back({"translation_X" + std::to_string(j + 1), false, 0.0,
                         [j](const GroupElement& xi) { return left_field(j, xi); }});

    for (const auto& m : mults) {
        double B1 = 0, B2 = 0, B3 = 0, R1 = 0, R2 = 0, R3b = 0, R3v = 0;
        for (const auto& b : bd) {
            const auto v = m.v(b.xi);
            const double vr = dot(v, b.grad_r), vu = dot(v, b.grad_u);
            const double hn = dot(b.hu, b.hr), h2 = dot(b.hu, b.hu);
            const double up = std::pow(b.u, q);
            B1 -= b.w * hn * vu;
            B2 += 0.5 * b.w * h2 * vr;
            if (m.scale) B3 -= 0.5 * (Q - 2) * b.w * b.u * hn;
            R2 += b.w * b.V * up * vr / q;
            R3b += b.w * up * b.vout * vr;
        }
        for (const auto& nd : vol) {
            const auto v = m.v(nd.xi);
            const double up = std::pow(nd.u, q);
            const double vgup = q * std::pow(nd.u, q - 1.0) * dot(v, nd.grad_u);
            if (m.scale) R1 -= mu / (2.0 * q) * nd.w * up * nd.vout;
            R3v += nd.w * (vgup + m.div * up) * nd.vout;
        }
        const double R3 = -(R3b - R3v) / q;
        PohozaevReport r;
        r.identity = m.name;
        r.boundary_terms = {{"flux_normal_multiplier", B1}, {"gradient_energy_flux", B2}};
        if (m.scale) r.boundary_terms.push_back({"scaling_flux", B3});
        r.boundary_terms.push_back({"potential_flux", R2});
        if (m.scale) r.volume_terms.push_back({"interaction_homogeneity", R1});
        r.volume_terms.push_back({"interaction_transport", R3});
        r.lhs = B1 + B2 + B3;
        r.rhs = R1 + R2 + R3;
        r.residual = r.lhs - r.rhs;
        r.dominant = 0.0;
        for (double t : {B1, B2, B3, R1, R2, R3}) r.dominant = std::max(r.dominant, std::abs(t));
        r.relative = r.dominant > 0.0 ? std::abs(r.residual) / r.dominant : 0.0;
        if (m.name == "scale")
            res.scale = r;
        else if (m.name == "scale_literal")
            res.scale_literal = r;
        else if (m.name.rfind("translation_Y", 0) == 0)
            res.translation.push_back(r);
        else
            res.translation_literal.push_back(r);
    }
    return res;
}

PohozaevReport pohozaev_scale(const PohozaevConfig& cfg) { return pohozaev_all(cfg).scale; }

std::vector<PohozaevReport> pohozaev_translation(const PohozaevConfig& cfg) { return pohozaev_all(cfg).translation; }

double fundamental_solution(const GroupElement& xi, const GroupElement& eta) {
    const double d = distance(xi, eta);
    if (d == 0.0) throw std::domain_error("fundamental_solution: diagonal");
    const int Q = 2 * xi.n() + 2;
    return green_G(xi.n()) * std::pow(d, 2.0 - Q);
}

ScalarField fundamental_solution_field(const GroupElement& eta) {
    return [eta](const GroupElement& xi) {
        const int n = xi.n();
        const int Q = 2 * n + 2;
        const auto c = coordinate_jets(xi);
        const int d = 2 * n + 1;
        Jet2 zz(d, 0.0);
        Jet2 wt = c[2 * n] - eta.t;
        for (int i = 0; i < n; ++i) {
            const double ex = eta.z[i].real(), ey = eta.z[i].imag();
            const Jet2 wx = c[i] - ex, wy = c[n + i] - ey;
            zz += wx * wx + wy * wy;
            wt -= 2.0 * (ey * c[i] - ex * c[n + i]);
        }
        const Jet2 r4 = zz * zz + wt * wt;
        return pow(r4, 0.25 * (2.0 - Q)) * green_G(n);
    };
}

RobinAsymptotic robin_asymptotic(double d, const Params& p) {
    if (!(d > 0.0)) throw std::invalid_argument("robin_asymptotic: distance must be positive");
    const double w = gauge_sphere_measure(p.n);
    RobinAsymptotic r;
    r.value = 1.0 / ((p.Q - 2) * w * std::pow(2.0 * d, p.Q - 2));
    r.gradient_magnitude = 2.0 / (w * std::pow(2.0 * d, p.Q - 1));
    return r;
}

}  // namespace hz
