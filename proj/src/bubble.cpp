#include "hz/bubble.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "hz/constants.hpp"
#include "hz/parallel.hpp"

namespace hz {

namespace {

// |w_z|^2 and w_t of delta_{1/lambda}(c^{-1} xi) as jets
void local_coords(const BubbleParams& p, const GroupElement& xi, Jet2& zz, Jet2& tt) {
    const int n = xi.n();
    const auto c = coordinate_jets(xi);
    const int d = 2 * n + 1;
    const bool has_center = !p.center.z.empty();
    if (has_center && p.center.n() != n) throw std::invalid_argument("bubble: center dimension mismatch");
    zz = Jet2(d, 0.0);
    Jet2 wt = c[2 * n];
    if (has_center) wt -= Jet2(d, p.center.t);
    for (int i = 0; i < n; ++i) {
        const double cx = has_center ? p.center.z[i].real() : 0.0;
        const double cy = has_center ? p.center.z[i].imag() : 0.0;
        const Jet2 wx = c[i] - cx, wy = c[n + i] - cy;
        zz += wx * wx + wy * wy;
        wt -= 2.0 * (cy * c[i] - cx * c[n + i]);
    }
    const double l2 = p.lambda * p.lambda;
    zz *= 1.0 / l2;
    tt = wt * (1.0 / l2);
}

GroupElement local_point(const BubbleParams& p, const GroupElement& xi) {
    GroupElement w = p.center.z.empty() ? xi : group_mul(group_inv(p.center), xi);
    return dilate(1.0 / p.lambda, w);
}

}  // namespace

Jet2 bubble_eval(const BubbleParams& p, const GroupElement& xi) {
    if (!(p.lambda > 0.0)) throw std::invalid_argument("bubble: lambda must be positive");
    const int Q = 2 * xi.n() + 2;
    Jet2 zz, tt;
    local_coords(p, xi, zz, tt);
    const Jet2 a = 1.0 + zz;
    const Jet2 f = a * a + tt * tt;
    return pow(f, -0.25 * (Q - 2)) * (p.amplitude * std::pow(p.lambda, -0.5 * (Q - 2)));
}

double bubble_value(const BubbleParams& p, const GroupElement& xi) {
    if (!(p.lambda > 0.0)) throw std::invalid_argument("bubble: lambda must be positive");
    const int Q = 2 * xi.n() + 2;
    const auto w = local_point(p, xi);
    return p.amplitude * std::pow(p.lambda, -0.5 * (Q - 2)) * std::pow(gauge_bracket(w), -0.5 * (Q - 2));
}

KernelElement kernel_element(int k, const Params& params, KernelVariant variant) {
    const int n = params.n;
    const int Q = params.Q;
    if (k < 1 || k > 2 * n + 2) throw std::out_of_range("kernel_element: k out of range");
    KernelElement e;
    e.k = k;
    e.variant = variant;
    e.field = [k, n, Q, variant](const GroupElement& xi) {
        if (xi.n() != n) throw std::invalid_argument("kernel_element: dimension mismatch");
        const auto c = coordinate_jets(xi);
        const int d = 2 * n + 1;
        Jet2 zz(d, 0.0);
        for (int i = 0; i < 2 * n; ++i) zz += c[i] * c[i];
        const Jet2& t = c[2 * n];
        const Jet2 a = 1.0 + zz;
        const Jet2 f = a * a + t * t;
        const Jet2 base = pow(f, -0.25 * (Q + 2)) * (-0.25 * (Q - 2));  // dU = base * df
        const bool inv = variant == KernelVariant::invariant;
        if (k <= n) {
            const int i = k - 1;
            Jet2 df = 4.0 * c[i] * a;
            if (inv) df -= 4.0 * c[n + i] * t;
            return base * df;
        }
        if (k <= 2 * n) {
            const int i = k - n - 1;
            Jet2 df = 4.0 * c[n + i] * a;
            if (inv) df += 4.0 * c[i] * t;
            return base * df;
        }
        if (k == 2 * n + 1) return base * (2.0 * t);
        // dilation family
        const Jet2 U = pow(f, -0.25 * (Q - 2));
        if (inv) return U * (0.5 * (Q - 2)) + base * (4.0 * zz * a + 4.0 * t * t);
        return U * (0.5 * (Q - 2)) + base * (4.0 * zz * a);
    };
    return e;
}

double riesz_closed_form(double power, double mu, const GroupElement& xi, const Params& params) {
    if (std::abs(power - params.q_star_mu) > 1e-12 * params.q_star_mu)
        throw std::invalid_argument("riesz_closed_form: only the power Q*_mu has a constant Cayley image");
    if (std::abs(mu - params.mu) > 0.0 && !(mu > 0.0 && mu < params.Q))
        throw std::invalid_argument("riesz_closed_form: mu out of range");
    const Params p = Params::make(params.n, mu);
    return std::pow(2.0, 1.0 + 0.5 * mu - p.Q) * funk_coeff({0, 0}, mu, p) * std::pow(gauge_bracket(xi), -0.5 * mu);
}

double riesz_closed_form(const BubbleParams& b, double mu, const GroupElement& xi, const Params& params) {
    const Params p = Params::make(params.n, mu);
    const auto w = local_point(b, xi);
    return std::pow(b.amplitude, p.q_star_mu) * std::pow(b.lambda, -0.5 * mu) *
           riesz_closed_form(p.q_star_mu, mu, w, p);
}

Residual el_residual(const BubbleParams& b, double mu, const GroupElement& xi) {
    const Params p = Params::make(xi.n(), mu);
    const Jet2 u = bubble_eval(b, xi);
    Residual r;
    r.lhs = -kohn_laplacian(u, xi);
    r.rhs_shape = riesz_closed_form(b, mu, xi, p) * std::pow(u.v, p.q_star_mu - 1.0);
    r.ratio = r.lhs / r.rhs_shape;
    return r;
}

double yamabe_ratio(const GroupElement& xi) {
    const int Q = 2 * xi.n() + 2;
    const Jet2 u = bubble_eval(BubbleParams{}, xi);
    return -kohn_laplacian(u, xi) / std::pow(u.v, (Q + 2.0) / (Q - 2.0));
}

double alpha_hat(const Params& p) {
    return 4.0 * p.n * p.n / (std::pow(2.0, 1.0 + 0.5 * p.mu - p.Q) * funk_coeff({0, 0}, p.mu, p));
}

double calibrated_amplitude(const Params& p) { return std::pow(alpha_hat(p), 1.0 / (2.0 * p.q_star_mu - 2.0)); }

LinearizedTerms linearized_apply(const ScalarField& phi, double decay_phi, const BubbleParams& b, double mu,
                                 const GroupElement& xi, const QuadratureSpec& spec) {
    const int n = xi.n();
    const Params p = Params::make(n, mu);
    const double q = p.q_star_mu;
    const double alpha = el_residual(b, mu, xi).ratio;
    const Jet2 ph = phi(xi);
    const double u = bubble_value(b, xi);
    LinearizedTerms L;
    L.laplacian = -kohn_laplacian(ph, xi);
    const auto I = riesz_potential(
        [&](const GroupElement& eta) { return std::pow(bubble_value(b, eta), q - 1.0) * phi(eta).v; }, mu, xi,
        (p.Q - 2) * (q - 1.0) + decay_phi, spec);
    L.nonlocal = alpha * q * I.value * std::pow(u, q - 1.0);
    L.local = alpha * (q - 1.0) * riesz_closed_form(b, mu, xi, p) * std::pow(u, q - 2.0) * ph.v;
    L.value = L.laplacian - L.nonlocal - L.local;
    L.dominant = std::max({std::abs(L.laplacian), std::abs(L.nonlocal), std::abs(L.local)});
    L.quad_error = alpha * q * (I.tail_bound + I.std_error) * std::pow(u, q - 1.0);
    return L;
}

SharpConstant sharp_constant_check(int n, double mu, double lambda, const QuadratureSpec& spec) {
    const Params p = Params::make(n, mu);
    BubbleParams b;
    b.lambda = lambda;
    const double q = p.q_star_mu;
    SharpConstant s;
    s.grad_norm2 = integrate_hn(
                       [&](const GroupElement& xi) {
                           double g2 = 0.0;
                           for (double v : horizontal_gradient(bubble_eval(b, xi), xi)) g2 += v * v;
                           return g2;
                       },
                       n, 2.0 * (p.Q - 1), spec)
                       .value;
    auto uq = [&](const GroupElement& xi) { return std::pow(bubble_value(b, xi), q); };
    const double dq = (p.Q - 2) * q;
    s.hartree = hartree_energy(uq, uq, n, mu, dq, dq, spec).value;
    s.measured = s.grad_norm2 / std::pow(s.hartree, 1.0 / q);
    s.closed_form = c_hl(n, mu);
    s.ratio = s.measured / s.closed_form;
    return s;
}

GramReport kernel_gram(const Params& p, KernelVariant variant, const QuadratureSpec& spec) {
    const int n = p.n, Q = p.Q, m = 2 * n + 2;
    std::vector<ScalarField> fields;
    for (int k = 1; k <= m; ++k) fields.push_back(kernel_element(k, p, variant).field);
    const auto sig = sphere_nodes(n, spec);
    const auto rs = radial_nodes(spec, spec.truncation_radius);
    std::vector<Eigen::MatrixXd> part(rs.size(), Eigen::MatrixXd::Zero(m, m));
    parallel_for(static_cast<int>(rs.size()), [&](int k) {
        const double r = rs[k].x;
        Eigen::MatrixXd G = Eigen::MatrixXd::Zero(m, m);
        Eigen::MatrixXd grads(m, 2 * n);
        for (const auto& nd : sig) {
            const auto xi = dilate(r, nd.sigma);
            for (int a = 0; a < m; ++a) {
                const auto g = horizontal_gradient(fields[a](xi), xi);
                for (int j = 0; j < 2 * n; ++j) grads(a, j) = g[j];
            }
            G += nd.w * grads * grads.transpose();
        }
        part[k] = rs[k].w * std::pow(r, Q - 1) * G;
    });
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(m, m);
    for (const auto& P : part) G += P;
    GramReport out;
    out.gram.assign(m, std::vector<double>(m));
    for (int a = 0; a < m; ++a)
        for (int c = 0; c < m; ++c) out.gram[a][c] = G(a, c);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(G);
    const auto sv = svd.singularValues();
    for (int a = 0; a < m; ++a) out.singular_values.push_back(sv(a));
    out.rank = 0;
    for (int a = 0; a < m; ++a)
        if (sv(a) > 1e-8 * sv(0)) ++out.rank;
    return out;
}

}  // namespace hz
