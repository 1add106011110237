#include "hz/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "hz/parallel.hpp"

namespace hz {

std::string to_string(QuadMethod m) { return m == QuadMethod::monte_carlo ? "monte_carlo" : "tensor_cylindrical"; }

QuadMethod quad_method_from_string(const std::string& s) {
    if (s == "tensor_cylindrical") return QuadMethod::tensor_cylindrical;
    if (s == "monte_carlo") return QuadMethod::monte_carlo;
    throw std::invalid_argument("unknown quadrature method '" + s + "'");
}

void QuadratureSpec::validate() const {
    if (samples <= 0) throw std::invalid_argument("quadrature.samples must be positive");
    if (!(near_field_radius > 0.0)) throw std::invalid_argument("quadrature.near_field_radius must be positive");
    if (!(near_field_radius < truncation_radius))
        throw std::invalid_argument("quadrature.near_field_radius must be below truncation_radius");
    if (radial_nodes < 2 || angular_nodes < 4) throw std::invalid_argument("quadrature node counts too small");
}

namespace {

double chi(double x) { return smooth_cutoff(x); }

bool integer_like(double a) { return std::abs(a - std::round(a)) < 1e-12; }

// center . delta_r(sigma)
GroupElement polar_point(const GroupElement& c, double r, const GroupElement& sigma) {
    GroupElement e;
    e.z.resize(sigma.z.size());
    for (std::size_t i = 0; i < sigma.z.size(); ++i) e.z[i] = r * sigma.z[i];
    e.t = r * r * sigma.t;
    return group_mul(c, e);
}

// sum over r of w_r r^pw sum_sigma w_sigma g(eta); ordered reduction over radial nodes
template <class G>
double polar_sum(const GroupElement& c, const std::vector<Node1>& rs, const std::vector<GaugeNode>& sig, double pw,
                 G&& g) {
    std::vector<double> part(rs.size(), 0.0);
    parallel_for(static_cast<int>(rs.size()), [&](int k) {
        const double r = rs[k].x;
        double s = 0.0;
        for (const auto& nd : sig) s += nd.w * g(polar_point(c, r, nd.sigma));
        part[k] = rs[k].w * std::pow(r, pw) * s;
    });
    double tot = 0.0;
    for (double v : part) tot += v;
    return tot;
}

double shell_tail(const HnFn& f, const GroupElement& c, const std::vector<GaugeNode>& sig, int Q, double R,
                  double decay) {
    double m = 0.0;
    for (const auto& nd : sig) m += nd.w * std::abs(f(polar_point(c, R, nd.sigma)));
    return m * std::pow(R, Q) / (decay - Q);
}

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

}  // namespace

std::vector<Node1> radial_nodes(const QuadratureSpec& s, double rmax) {
    // graded toward the origin so cutoff transitions near 0 are resolved too
    const double r0 = 1e-3 * std::min(1.0, rmax);
    auto out = gauss_legendre(4, 0.0, r0);
    auto add = [&](const std::vector<Node1>& v) { out.insert(out.end(), v.begin(), v.end()); };
    if (rmax <= 1.0) {
        add(log_panels(r0, rmax, 0.5, s.radial_nodes));
        return out;
    }
    add(log_panels(r0, 1.0, 0.5, s.radial_nodes));
    add(log_panels(1.0, rmax, 0.25, s.radial_nodes));
    return out;
}

std::vector<GaugeNode> sphere_nodes(int n, const QuadratureSpec& s) {
    return gauge_sphere_grid(n, s.angular_nodes, n == 1 ? s.angular_nodes : s.angular_nodes / 2);
}

GroupElement sample_polar(int n, double decay, std::mt19937_64& rng, double& weight) {
    const int Q = 2 * n + 2;
    const double kappa = decay - Q;
    if (!(kappa > 0.0)) throw std::invalid_argument("sample_polar: decay must exceed Q");
    std::gamma_distribution<double> ga(Q, 1.0), gb(kappa, 1.0);
    const double X = ga(rng), Y = gb(rng);
    const double r = X / Y;  // r/(1+r) ~ Beta(Q, kappa)
    std::normal_distribution<double> g;
    std::vector<double> v(2 * n + 1);
    double cphi = 0.0, sphi = 0.0;
    // polar angle of a uniform point of S^{2n} has density ~ sin^{2n-1}; thin by 1/sqrt(1+sin^2)
    for (;;) {
        double nv = 0.0;
        for (auto& x : v) {
            x = g(rng);
            nv += x * x;
        }
        nv = std::sqrt(nv);
        cphi = v[2 * n] / nv;
        sphi = std::sqrt(std::max(0.0, 1.0 - cphi * cphi));
        if (uniform01(rng) * std::sqrt(1.0 + sphi * sphi) < 1.0) break;
    }
    double ns = 0.0;
    for (int i = 0; i < 2 * n; ++i) ns += v[i] * v[i];
    ns = std::sqrt(ns);
    GroupElement e;
    e.z.resize(n);
    for (int i = 0; i < n; ++i) e.z[i] = r * sphi * cplx(v[i], v[n + i]) / ns;
    e.t = r * r * cphi * std::sqrt(1.0 + sphi * sphi);
    weight = gauge_sphere_measure(n) * std::exp(log_beta(Q, kappa)) * std::pow(1.0 + r, decay);
    return e;
}

IntegralEstimate integrate_hn(const HnFn& f, int n, double decay, const QuadratureSpec& spec) {
    spec.validate();
    const int Q = 2 * n + 2;
    if (!(decay > Q)) throw std::invalid_argument("integrate_hn: decay exponent must exceed Q (non-integrable tail)");
    IntegralEstimate out;
    if (spec.method == QuadMethod::monte_carlo || n > 2) {
        const auto r = mc_mean(spec.seed, spec.samples, [&](std::mt19937_64& rng) {
            double w = 0.0;
            const auto xi = sample_polar(n, decay, rng, w);
            return w * f(xi);
        });
        out.value = r.mean;
        out.std_error = r.std_error;
        return out;
    }
    const auto origin = GroupElement::identity(n);
    const auto sig = sphere_nodes(n, spec);
    const auto rs = radial_nodes(spec, spec.truncation_radius);
    out.value = polar_sum(origin, rs, sig, Q - 1, f);
    out.tail_bound = shell_tail(f, origin, sig, Q, spec.truncation_radius, decay);
    return out;
}

IntegralEstimate riesz_potential(const HnFn& f, double mu, const GroupElement& xi, double decay,
                                 const QuadratureSpec& spec) {
    spec.validate();
    const int n = xi.n();
    const int Q = 2 * n + 2;
    if (!(mu > 0.0 && mu < Q)) throw std::invalid_argument("riesz_potential: mu must lie in (0, Q)");
    if (!(decay + mu > Q)) throw std::invalid_argument("riesz_potential: decay + mu must exceed Q");
    const double R = std::max(spec.near_field_radius, 0.5 * koranyi_norm(xi));
    const auto sig = sphere_nodes(n, spec);

    // near part about xi: r^{Q-1-mu} carries the kernel, no point sits on the pole
    std::vector<Node1> rn;
    const int m = 2 * spec.radial_nodes;
    if (integer_like(Q - mu)) {
        rn = gauss_legendre(m, 0.0, 0.5 * R);
    } else {
        rn = log_panels(1e-12 * R, 0.5 * R, 1.0, spec.radial_nodes);
    }
    const auto outer = gauss_legendre(m, 0.5 * R, R);
    rn.insert(rn.end(), outer.begin(), outer.end());
    IntegralEstimate out;
    out.value = polar_sum(xi, rn, sig, Q - 1 - mu, [&](const GroupElement& eta) {
        const double c = chi(distance(xi, eta) / R);
        return c == 0.0 ? 0.0 : c * f(eta);
    });

    // far part about the origin with the complementary weight
    auto far = [&](const GroupElement& eta) {
        const double d = distance(xi, eta);
        const double c = 1.0 - chi(d / R);
        return c == 0.0 ? 0.0 : c * f(eta) * std::pow(d, -mu);
    };
    const double dfar = decay + mu;
    if (spec.method == QuadMethod::monte_carlo || n > 2) {
        const auto r = mc_mean(spec.seed, spec.samples, [&](std::mt19937_64& rng) {
            double w = 0.0;
            const auto eta = sample_polar(n, dfar, rng, w);
            return w * far(eta);
        });
        out.value += r.mean;
        out.std_error = r.std_error;
        return out;
    }
    const auto origin = GroupElement::identity(n);
    out.value += polar_sum(origin, radial_nodes(spec, spec.truncation_radius), sig, Q - 1, far);
    out.tail_bound = dfar > Q ? shell_tail(far, origin, sig, Q, spec.truncation_radius, dfar) : 0.0;
    return out;
}

IntegralEstimate hartree_energy(const HnFn& f, const HnFn& g, int n, double mu, double decay_f, double decay_g,
                                const QuadratureSpec& spec) {
    spec.validate();
    const int Q = 2 * n + 2;
    // potential of g decays like rho^{-mu} (or faster), so the outer integrand like rho^{-(decay_f + min(mu, ...))}
    const double outer_decay = decay_f + std::min(mu, decay_g + mu - Q);
    if (!(outer_decay > Q)) throw std::invalid_argument("hartree_energy: outer integrand not integrable");
    QuadratureSpec inner = spec;
    inner.method = QuadMethod::tensor_cylindrical;
    auto outer_f = [&](const GroupElement& xi) {
        const double fv = f(xi);
        if (fv == 0.0) return 0.0;
        return fv * riesz_potential(g, mu, xi, decay_g, inner).value;
    };
    IntegralEstimate out;
    if (spec.method == QuadMethod::monte_carlo || n > 2) {
        const auto r = mc_mean(spec.seed, spec.samples, [&](std::mt19937_64& rng) {
            double w = 0.0;
            const auto xi = sample_polar(n, outer_decay, rng, w);
            return w * outer_f(xi);
        });
        out.value = r.mean;
        out.std_error = r.std_error;
        return out;
    }
    QuadratureSpec os = spec;
    os.angular_nodes = std::max(8, spec.angular_nodes / 2);
    const auto origin = GroupElement::identity(n);
    const auto sig = sphere_nodes(n, os);
    out.value = polar_sum(origin, radial_nodes(os, spec.truncation_radius), sig, Q - 1, outer_f);
    out.tail_bound = shell_tail(outer_f, origin, sig, Q, spec.truncation_radius, outer_decay);
    return out;
}

DecayFit decay_regime_check(int n, double mu, double theta, const QuadratureSpec& spec,
                            const std::vector<double>& brackets) {
    const int Q = 2 * n + 2;
    if (!(mu > 0.0 && mu < Q)) throw std::invalid_argument("decay_regime_check: mu must lie in (0, Q)");
    if (!(theta + mu > Q)) throw std::invalid_argument("decay_regime_check: need theta + mu > Q");
    if (brackets.size() < 2) throw std::invalid_argument("decay_regime_check: need at least two points");
    DecayFit fit;
    fit.mu = mu;
    fit.theta = theta;
    const bool critical = std::abs(theta - Q) < 1e-12;
    if (theta < Q - 1e-12) {
        fit.regime = "theta<Q";
        fit.predicted = Q - mu - theta;
    } else if (critical) {
        fit.regime = "theta=Q";
        fit.predicted = -mu;
    } else {
        fit.regime = "theta>Q";
        fit.predicted = -mu;
    }
    // the far tail decays like R^{Q-mu-theta}; push the truncation out
    QuadratureSpec s = spec;
    s.truncation_radius = std::max(spec.truncation_radius, 1e6);
    auto weight = [&](const GroupElement& eta) { return std::pow(gauge_bracket(eta), -0.5 * theta); };
    for (double b : brackets) {
        GroupElement xi = GroupElement::identity(n);
        xi.z[0] = std::sqrt(b - 1.0);
        DecayPoint pt;
        pt.bracket = b;
        pt.w = std::sqrt(b);
        pt.value = riesz_potential(weight, mu, xi, theta, s).value;
        fit.points.push_back(pt);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(fit.points.size());
    for (const auto& p : fit.points) {
        const double x = std::log(p.w), y = std::log(p.value);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    fit.fitted_raw = (m * sxy - sx * sy) / (m * sxx - sx * sx);

    // Two-term asymptotic model: the leading power w^s plus the competing term from the
    // complementary region (w^{-mu} when theta < Q, w^{Q-mu-theta} when theta > Q).
    // In the critical case I = w^s (a log w + b) with a = |Sigma| fixed analytically.
    const double sigma = gauge_sphere_measure(n);
    auto residual = [&](double sexp) {
        // least squares in the linear coefficients, relative residual
        double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0, yy = 0;
        for (const auto& p : fit.points) {
            double c1, c2, y = p.value;
            if (critical) {
                y -= sigma * std::pow(p.w, sexp) * std::log(p.w);
                c1 = std::pow(p.w, sexp);
                c2 = 0.0;
            } else {
                c1 = std::pow(p.w, sexp);
                c2 = std::pow(p.w, theta < Q ? -mu : Q - mu - theta);
            }
            a11 += c1 * c1;
            a12 += c1 * c2;
            a22 += c2 * c2;
            b1 += c1 * y;
            b2 += c2 * y;
            yy += p.value * p.value;
        }
        double r2;
        if (critical) {
            r2 = 0.0;
            const double c = b1 / a11;
            for (const auto& p : fit.points) {
                const double e = p.value - sigma * std::pow(p.w, sexp) * std::log(p.w) - c * std::pow(p.w, sexp);
                r2 += e * e;
            }
        } else {
            const double det = a11 * a22 - a12 * a12;
            const double c1 = (a22 * b1 - a12 * b2) / det, c2 = (a11 * b2 - a12 * b1) / det;
            r2 = 0.0;
            for (const auto& p : fit.points) {
                const double e = p.value - c1 * std::pow(p.w, sexp) -
                                 c2 * std::pow(p.w, theta < Q ? -mu : Q - mu - theta);
                r2 += e * e;
            }
        }
        return std::sqrt(r2 / yy);
    };
    // scan then golden section
    double best = fit.predicted, rbest = residual(best);
    for (double sexp = fit.predicted - 1.5; sexp <= fit.predicted + 1.5; sexp += 1e-3) {
        // skip exponents that collide with the competing term
        if (!critical && std::abs(sexp - (theta < Q ? -mu : Q - mu - theta)) < 0.05) continue;
        const double r = residual(sexp);
        if (r < rbest) {
            rbest = r;
            best = sexp;
        }
    }
    double lo = best - 1e-3, hi = best + 1e-3;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 60; ++it) {
        const double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
        if (residual(a) < residual(b))
            hi = b;
        else
            lo = a;
    }
    fit.fitted = 0.5 * (lo + hi);
    fit.model_residual = residual(fit.fitted);
    return fit;
}

}  // namespace hz
