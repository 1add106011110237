#include "hz/reduced.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hz/bubble.hpp"
#include "hz/constants.hpp"
#include "hz/parallel.hpp"
#include "hz/pohozaev.hpp"

namespace hz {

ReducedCoeffs reduced_coeffs(const Params& p, const QuadratureSpec& spec) {
    if (p.Q <= 4) throw std::invalid_argument("reduced_coeffs: int U^2 diverges for Q <= 4 (need n >= 2)");
    // U^e = <xi>^{-(Q-2) e / 2}, decaying like rho^{-(Q-2) e}
    auto powU = [&](double e) {
        return [e, Q = p.Q](const GroupElement& xi) { return std::pow(gauge_bracket(xi), -0.5 * (Q - 2) * e); };
    };
    ReducedCoeffs c;
    const int n = p.n;
    const auto A = integrate_hn(powU(p.q_star), n, (p.Q - 2) * p.q_star, spec);
    const auto B = integrate_hn(powU(p.q_star - 1.0), n, (p.Q - 2) * (p.q_star - 1.0), spec);
    const auto L = integrate_hn(powU(2.0), n, 2.0 * (p.Q - 2), spec);
    c.a_q = A.value;
    c.b_q = B.value;
    c.u_l2 = L.value;
    c.tail_a = A.tail_bound + A.std_error;
    c.tail_b = B.tail_bound + B.std_error;
    c.tail_l2 = L.tail_bound + L.std_error;
    c.alpha = alpha_closed(n, p.mu, static_cast<double>(n) * n);
    c.omega_q = gauge_sphere_measure(n) / p.Q;
    return c;
}

double reduced_a(double R, const ReducedCoeffs& c, const Params& p) {
    const double Q = p.Q;
    return Q * (Q - 2) * (Q - 2) * c.omega_q * R * c.b_q / (2.0 * c.alpha);
}

double reduced_energy(const ReducedState& s, const ReducedCoeffs& c, const Params& p) {
    if (!(s.lambda > 0.0)) throw std::invalid_argument("reduced_energy: lambda must be positive");
    return reduced_a(s.robin_value, c, p) / std::pow(s.lambda, p.Q - 2) - s.epsilon * c.u_l2 / (s.lambda * s.lambda);
}

double scale_constant(double R, const ReducedCoeffs& c, const Params& p) {
    if (p.Q == 4) throw std::invalid_argument("critical scale: exponent 1/(Q-4) singular at Q = 4");
    if (!(R > 0.0)) throw std::invalid_argument("critical scale: Robin value must be positive");
    const double Q = p.Q;
    return std::pow(Q * std::pow(Q - 2, 3) * c.omega_q * R * c.b_q / (4.0 * c.alpha * c.u_l2), 1.0 / (Q - 4));
}

double critical_scale(double R, double eps, const ReducedCoeffs& c, const Params& p) {
    if (!(eps > 0.0)) throw std::invalid_argument("critical scale: epsilon must be positive");
    return scale_constant(R, c, p) * std::pow(eps, -1.0 / (p.Q - 4));
}

double reduced_second_derivative(double R, double eps, const ReducedCoeffs& c, const Params& p) {
    const double l = critical_scale(R, eps, c, p);
    return 2.0 * (p.Q - 4) * eps * c.u_l2 / std::pow(l, 4);
}

double reduced_argmin(double R, double eps, const ReducedCoeffs& c, const Params& p) {
    const double guess = critical_scale(R, eps, c, p);
    auto F = [&](double s) { return reduced_energy({eps, std::exp(s), R, {}}, c, p); };
    double lo = std::log(guess) - 3.0, hi = std::log(guess) + 3.0;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
    double fa = F(a), fb = F(b);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        if (fa < fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - gr * (hi - lo);
            fa = F(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + gr * (hi - lo);
            fb = F(b);
        }
    }
    return std::exp(0.5 * (lo + hi));
}

double boundary_exclusion_constant(double R, double eps, const ReducedCoeffs& c, const Params& p) {
    const double e = -1.0 / (p.Q - 4);
    const double c1 = scale_constant(R, c, p);
    auto F = [&](double t) { return reduced_energy({eps, t * std::pow(eps, e), R, {}}, c, p); };
    const double scale = std::pow(eps, (p.Q - 2.0) / (p.Q - 4.0));
    double best = 1e300;
    for (double t : {0.5 * c1, 2.0 * c1}) best = std::min(best, (F(t) - F(c1)) / ((t - c1) * (t - c1) * scale));
    return best;
}

RobinField quadratic_robin(int n) {
    return [n](const GroupElement& xi) {
        if (xi.n() != n) throw std::invalid_argument("robin: dimension mismatch");
        const auto c = xi.coords();
        RobinSample s;
        s.value = 1.0;
        for (double v : c) s.value += v * v;
        for (double v : c) s.gradient.push_back(2.0 * v);
        return s;
    };
}

RobinField half_space_robin(const Params& p) {
    return [p](const GroupElement& xi) {
        const double d = xi.z[0].real();
        if (!(d > 0.0)) throw std::domain_error("half-space robin: point outside the domain");
        const auto r = robin_asymptotic(d, p);
        RobinSample s;
        s.value = r.value;
        s.gradient.assign(2 * p.n + 1, 0.0);
        s.gradient[0] = -r.gradient_magnitude;  // R decreases away from the boundary
        return s;
    };
}

RobinField load_robin_csv(const std::string& path, SearchBox* extent) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("robin csv: cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    std::size_t cols = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t pos = 0;
                row.push_back(std::stod(cell, &pos));
            } catch (const std::exception&) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (rows.empty()) continue;  // header
            throw std::runtime_error("robin csv: non-numeric cell on line " + std::to_string(lineno));
        }
        if (cols == 0) cols = row.size();
        if (row.size() != cols) throw std::runtime_error("robin csv: ragged row on line " + std::to_string(lineno));
        rows.push_back(std::move(row));
    }
    // columns: 2n+1 coordinates, R, 2n+1 gradient components
    if (cols < 7 || (cols - 3) % 4 != 0) throw std::runtime_error("robin csv: expected 4n+3 columns");
    const int d = static_cast<int>((cols - 1) / 2);
    std::vector<std::vector<double>> axes(d);
    for (int k = 0; k < d; ++k) {
        std::set<double> vals;
        for (const auto& r : rows) vals.insert(r[k]);
        axes[k].assign(vals.begin(), vals.end());
        if (axes[k].size() < 2) throw std::runtime_error("robin csv: each axis needs at least two grid values");
    }
    if (extent) {
        extent->lo.clear();
        extent->hi.clear();
        for (const auto& a : axes) {
            extent->lo.push_back(a.front());
            extent->hi.push_back(a.back());
        }
    }
    std::size_t total = 1;
    for (const auto& a : axes) total *= a.size();
    if (total != rows.size()) throw std::runtime_error("robin csv: data is not a full rectilinear grid");
    std::vector<std::vector<double>> table(total);
    for (const auto& r : rows) {
        std::size_t idx = 0;
        for (int k = 0; k < d; ++k) {
            const auto pos = std::lower_bound(axes[k].begin(), axes[k].end(), r[k]) - axes[k].begin();
            idx = idx * axes[k].size() + pos;
        }
        table[idx].assign(r.begin() + d, r.end());
    }
    return [axes, table, d](const GroupElement& xi) {
        const auto c = xi.coords();
        if (static_cast<int>(c.size()) != d) throw std::invalid_argument("robin csv: dimension mismatch");
        std::vector<std::size_t> base(d);
        std::vector<double> frac(d);
        for (int k = 0; k < d; ++k) {
            const auto& a = axes[k];
            if (c[k] < a.front() || c[k] > a.back()) throw std::domain_error("robin csv: point outside the grid");
            std::size_t i = std::upper_bound(a.begin(), a.end(), c[k]) - a.begin();
            i = std::clamp<std::size_t>(i, 1, a.size() - 1) - 1;
            base[k] = i;
            frac[k] = (c[k] - a[i]) / (a[i + 1] - a[i]);
        }
        std::vector<double> acc(d + 1, 0.0);
        for (int corner = 0; corner < (1 << d); ++corner) {
            double w = 1.0;
            std::size_t idx = 0;
            for (int k = 0; k < d; ++k) {
                const int bit = (corner >> k) & 1;
                w *= bit ? frac[k] : 1.0 - frac[k];
                idx = idx * axes[k].size() + base[k] + bit;
            }
            if (w == 0.0) continue;
            for (int m = 0; m <= d; ++m) acc[m] += w * table[idx][m];
        }
        RobinSample s;
        s.value = acc[0];
        s.gradient.assign(acc.begin() + 1, acc.end());
        return s;
    };
}

ReducedSolution solve_reduced_system(const RobinField& robin, double eps, const SearchBox& box,
                                     const ReducedCoeffs& c, const Params& p, int starts_per_axis) {
    const int d = 2 * p.n + 1;
    if (static_cast<int>(box.lo.size()) != d || static_cast<int>(box.hi.size()) != d)
        throw std::invalid_argument("solve_reduced_system: box dimension mismatch");
    if (!(eps > 0.0)) throw std::invalid_argument("solve_reduced_system: epsilon must be positive");
    const double Q = p.Q;
    // unknowns (xi, t); equations grad R(xi) = 0 and the scaled dF/dt = 0
    auto G = [&](const Eigen::VectorXd& x, bool& ok) {
        Eigen::VectorXd r(d + 1);
        ok = true;
        try {
            std::vector<double> cs(x.data(), x.data() + d);
            const auto s = robin(GroupElement::from_coords(cs));
            for (int k = 0; k < d; ++k) r(k) = s.gradient[k];
            const double a = reduced_a(s.value, c, p);
            const double t = x(d);
            // t^{Q-1}/a * dF/dt = -(Q-2) + 2 int U^2 t^{Q-4} / a
            r(d) = -(Q - 2) + 2.0 * c.u_l2 * std::pow(t, Q - 4) / a;
            if (!(t > 0.0) || !(a > 0.0)) ok = false;
        } catch (const std::exception&) {
            ok = false;
        }
        for (int k = 0; k <= d; ++k) ok = ok && std::isfinite(r(k));
        return r;
    };
    auto inside = [&](const Eigen::VectorXd& x) {
        for (int k = 0; k < d; ++k)
            if (x(k) < box.lo[k] || x(k) > box.hi[k]) return false;
        return true;
    };
    // start points on a grid over the box (interior nodes)
    std::vector<Eigen::VectorXd> starts;
    int total = 1;
    for (int k = 0; k < d; ++k) total *= starts_per_axis;
    for (int id = 0; id < total; ++id) {
        Eigen::VectorXd x(d + 1);
        int rem = id;
        for (int k = 0; k < d; ++k) {
            const int i = rem % starts_per_axis;
            rem /= starts_per_axis;
            x(k) = box.lo[k] + (box.hi[k] - box.lo[k]) * (i + 0.5) / starts_per_axis;
        }
        starts.push_back(x);
    }
    std::vector<ReducedSolution> sols(starts.size());
    parallel_for(static_cast<int>(starts.size()), [&](int id) {
        Eigen::VectorXd x = starts[id];
        ReducedSolution& out = sols[id];
        try {
            std::vector<double> cs(x.data(), x.data() + d);
            x(d) = scale_constant(robin(GroupElement::from_coords(cs)).value, c, p);
        } catch (const std::exception&) {
            out.note = "start outside the Robin domain";
            out.residual = 1e300;
            return;
        }
        bool ok = false;
        Eigen::VectorXd r = G(x, ok);
        if (!ok) {
            out.note = "Robin field not evaluable at start";
            out.residual = 1e300;
            return;
        }
        int it = 0;
        for (; it < 100 && r.lpNorm<Eigen::Infinity>() > 1e-12; ++it) {
            Eigen::MatrixXd J(d + 1, d + 1);
            for (int k = 0; k <= d; ++k) {
                const double h = 1e-6 * (1.0 + std::abs(x(k)));
                Eigen::VectorXd xp = x, xm = x;
                xp(k) += h;
                xm(k) -= h;
                bool o1 = false, o2 = false;
                J.col(k) = (G(xp, o1) - G(xm, o2)) / (2.0 * h);
                if (!o1 || !o2) J.col(k).setZero();
            }
            const Eigen::VectorXd step = J.fullPivLu().solve(-r);
            if (!step.allFinite()) break;
            double damp = 1.0;
            bool moved = false;
            for (int ls = 0; ls < 40; ++ls, damp *= 0.5) {
                const Eigen::VectorXd xn = x + damp * step;
                bool okn = false;
                const Eigen::VectorXd rn = G(xn, okn);
                if (okn && rn.norm() < r.norm()) {
                    x = xn;
                    r = rn;
                    moved = true;
                    break;
                }
            }
            if (!moved) break;
        }
        out.iterations = it;
        out.residual = r.lpNorm<Eigen::Infinity>();
        std::vector<double> cs(x.data(), x.data() + d);
        out.xi = GroupElement::from_coords(cs);
        out.t = x(d);
        out.lambda = x(d) * std::pow(eps, -1.0 / (Q - 4));
        out.converged = out.residual < 1e-10 && inside(x);
        if (out.converged) {
            const double c1 = scale_constant(robin(out.xi).value, c, p);
            if (out.t < 0.5 * c1 || out.t > 2.0 * c1) {
                out.converged = false;
                out.note = "t outside [C1/2, 2 C1]";
            }
        } else {
            out.note = inside(x) ? "no root: residual stalled" : "iterate left the search box";
        }
    });
    // deterministic pick: smallest residual among converged starts, else the best overall
    int best = -1;
    for (int i = 0; i < static_cast<int>(sols.size()); ++i) {
        if (!sols[i].converged) continue;
        if (best < 0 || sols[i].residual < sols[best].residual) best = i;
    }
    if (best >= 0) return sols[best];
    best = 0;
    for (int i = 1; i < static_cast<int>(sols.size()); ++i)
        if (sols[i].residual < sols[best].residual) best = i;
    ReducedSolution s = sols[best];
    s.converged = false;
    if (s.note.empty()) s.note = "no root in box";
    return s;
}

}  // namespace hz
