#include "hz/hgroup.hpp"

#include <cmath>

namespace hz {

Params Params::make(int n, double mu) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    Params p;
    p.n = n;
    p.Q = 2 * n + 2;
    if (!(mu > 0.0 && mu < p.Q)) throw std::invalid_argument("mu must lie in (0, Q)");
    p.mu = mu;
    p.q_star = 2.0 * p.Q / (p.Q - 2);
    p.q_star_mu = (2.0 * p.Q - mu) / (p.Q - 2);
    return p;
}

double GroupElement::abs_z2() const {
    double s = 0.0;
    for (const auto& c : z) s += std::norm(c);
    return s;
}

std::vector<double> GroupElement::coords() const {
    const int m = n();
    std::vector<double> c(2 * m + 1);
    for (int i = 0; i < m; ++i) {
        c[i] = z[i].real();
        c[m + i] = z[i].imag();
    }
    c[2 * m] = t;
    return c;
}

GroupElement GroupElement::identity(int n) {
    GroupElement e;
    e.z.assign(n, cplx(0.0, 0.0));
    return e;
}

GroupElement GroupElement::from_coords(const std::vector<double>& c) {
    if (c.size() % 2 != 1) throw std::invalid_argument("coordinate vector must have odd length");
    const int m = static_cast<int>(c.size() / 2);
    GroupElement e;
    e.z.resize(m);
    for (int i = 0; i < m; ++i) e.z[i] = cplx(c[i], c[m + i]);
    e.t = c[2 * m];
    return e;
}

GroupElement group_mul(const GroupElement& a, const GroupElement& b) {
    if (a.n() != b.n()) throw std::invalid_argument("group_mul: dimension mismatch");
    GroupElement r;
    r.z.resize(a.n());
    double tw = 0.0;
    for (int i = 0; i < a.n(); ++i) {
        r.z[i] = a.z[i] + b.z[i];
        tw += (a.z[i] * std::conj(b.z[i])).imag();
    }
    r.t = a.t + b.t + 2.0 * tw;
    return r;
}

GroupElement group_inv(const GroupElement& a) {
    GroupElement r;
    r.z.resize(a.n());
    for (int i = 0; i < a.n(); ++i) r.z[i] = -a.z[i];
    r.t = -a.t;
    return r;
}

GroupElement dilate(double lambda, const GroupElement& xi) {
    if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be positive");
    GroupElement r = xi;
    for (auto& c : r.z) c *= lambda;
    r.t *= lambda * lambda;
    return r;
}

double koranyi_norm(const GroupElement& xi) {
    const double a = xi.abs_z2();
    return std::pow(a * a + xi.t * xi.t, 0.25);
}

double distance(const GroupElement& a, const GroupElement& b) {
    return koranyi_norm(group_mul(group_inv(a), b));
}

double gauge_bracket(const GroupElement& xi) {
    const double a = 1.0 + xi.abs_z2();
    return std::sqrt(a * a + xi.t * xi.t);
}

// ---- jets

Jet2::Jet2(int d, double value) : dim(d), v(value) {
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("Jet2: unsupported dimension");
}

Jet2 Jet2::variable(int d, int i, double value) {
    Jet2 j(d, value);
    j.g[i] = 1.0;
    return j;
}

Jet2& Jet2::operator+=(const Jet2& o) {
    v += o.v;
    for (int i = 0; i < dim; ++i) {
        g[i] += o.g[i];
        for (int k = 0; k < dim; ++k) H(i, k) += o.H(i, k);
    }
    return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) {
    v -= o.v;
    for (int i = 0; i < dim; ++i) {
        g[i] -= o.g[i];
        for (int k = 0; k < dim; ++k) H(i, k) -= o.H(i, k);
    }
    return *this;
}

Jet2& Jet2::operator*=(double c) {
    v *= c;
    for (int i = 0; i < dim; ++i) {
        g[i] *= c;
        for (int k = 0; k < dim; ++k) H(i, k) *= c;
    }
    return *this;
}

Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
Jet2 operator-(Jet2 a) { return a *= -1.0; }
Jet2 operator*(Jet2 a, double c) { return a *= c; }
Jet2 operator*(double c, Jet2 a) { return a *= c; }
Jet2 operator+(Jet2 a, double c) { return a += c; }
Jet2 operator+(double c, Jet2 a) { return a += c; }
Jet2 operator-(Jet2 a, double c) { return a += -c; }
Jet2 operator-(double c, const Jet2& a) { return (-a) + c; }

Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r(a.dim, a.v * b.v);
    const int d = a.dim;
    for (int i = 0; i < d; ++i) r.g[i] = a.v * b.g[i] + b.v * a.g[i];
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k)
            r.H(i, k) = a.v * b.H(i, k) + b.v * a.H(i, k) + a.g[i] * b.g[k] + b.g[i] * a.g[k];
    return r;
}

Jet2 chain(const Jet2& a, double f0, double f1, double f2) {
    Jet2 r(a.dim, f0);
    const int d = a.dim;
    for (int i = 0; i < d; ++i) r.g[i] = f1 * a.g[i];
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) r.H(i, k) = f1 * a.H(i, k) + f2 * a.g[i] * a.g[k];
    return r;
}

Jet2 pow(const Jet2& a, double p) {
    const double x = a.v;
    const double f0 = std::pow(x, p);
    return chain(a, f0, p * f0 / x, p * (p - 1.0) * f0 / (x * x));
}

Jet2 sqrt(const Jet2& a) { return pow(a, 0.5); }

Jet2 exp(const Jet2& a) {
    const double e = std::exp(a.v);
    return chain(a, e, e, e);
}

Jet2 log(const Jet2& a) { return chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v)); }

Jet2 operator/(const Jet2& a, const Jet2& b) { return a * pow(b, -1.0); }

std::vector<Jet2> coordinate_jets(const GroupElement& xi) {
    const auto c = xi.coords();
    const int d = static_cast<int>(c.size());
    std::vector<Jet2> out;
    out.reserve(d);
    for (int i = 0; i < d; ++i) out.push_back(Jet2::variable(d, i, c[i]));
    return out;
}

// ---- sub-Riemannian calculus

std::vector<double> horizontal_gradient(const Jet2& f, const GroupElement& xi) {
    const int n = xi.n();
    std::vector<double> out(2 * n);
    const double ft = f.g[2 * n];
    for (int i = 0; i < n; ++i) {
        const double x = xi.z[i].real(), y = xi.z[i].imag();
        out[i] = f.g[i] + 2.0 * y * ft;
        out[n + i] = f.g[n + i] - 2.0 * x * ft;
    }
    return out;
}

std::vector<double> horizontal_gradient(const ScalarField& f, const GroupElement& xi) {
    return horizontal_gradient(f(xi), xi);
}

double kohn_laplacian(const Jet2& f, const GroupElement& xi) {
    const int n = xi.n();
    const int T = 2 * n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = xi.z[i].real(), y = xi.z[i].imag();
        s += f.H(i, i) + f.H(n + i, n + i) + 4.0 * y * f.H(i, T) - 4.0 * x * f.H(n + i, T) +
             4.0 * (x * x + y * y) * f.H(T, T);
    }
    return s;
}

double kohn_laplacian(const ScalarField& f, const GroupElement& xi) { return kohn_laplacian(f(xi), xi); }

namespace {

using RealField = std::function<double(const GroupElement&)>;

double shifted(const RealField& f, std::vector<double> c, int i, double di, int k = -1, double dk = 0.0) {
    c[i] += di;
    if (k >= 0) c[k] += dk;
    return f(GroupElement::from_coords(c));
}

double d1(const RealField& f, const std::vector<double>& c, int i, double h) {
    return (-shifted(f, c, i, 2 * h) + 8 * shifted(f, c, i, h) - 8 * shifted(f, c, i, -h) +
            shifted(f, c, i, -2 * h)) /
           (12 * h);
}

double d2(const RealField& f, const std::vector<double>& c, int i, double h) {
    return (-shifted(f, c, i, 2 * h) + 16 * shifted(f, c, i, h) - 30 * f(GroupElement::from_coords(c)) +
            16 * shifted(f, c, i, -h) - shifted(f, c, i, -2 * h)) /
           (12 * h * h);
}

double d11(const RealField& f, const std::vector<double>& c, int i, int k, double h) {
    static const double w[4] = {1.0, -8.0, 8.0, -1.0};
    static const double o[4] = {-2.0, -1.0, 1.0, 2.0};
    double s = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) s += w[a] * w[b] * shifted(f, c, i, o[a] * h, k, o[b] * h);
    return s / (144 * h * h);
}

}  // namespace

std::vector<double> horizontal_gradient_fd(const RealField& f, const GroupElement& xi, double h) {
    const int n = xi.n();
    const auto c = xi.coords();
    const double ft = d1(f, c, 2 * n, h);
    std::vector<double> out(2 * n);
    for (int i = 0; i < n; ++i) {
        out[i] = d1(f, c, i, h) + 2.0 * c[n + i] * ft;
        out[n + i] = d1(f, c, n + i, h) - 2.0 * c[i] * ft;
    }
    return out;
}

double kohn_laplacian_fd(const RealField& f, const GroupElement& xi, double h) {
    const int n = xi.n();
    const int T = 2 * n;
    const auto c = xi.coords();
    const double ftt = d2(f, c, T, h);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = c[i], y = c[n + i];
        s += d2(f, c, i, h) + d2(f, c, n + i, h) + 4 * y * d11(f, c, i, T, h) - 4 * x * d11(f, c, n + i, T, h) +
             4 * (x * x + y * y) * ftt;
    }
    return s;
}

std::vector<double> left_field(int j, const GroupElement& xi) {
    const int n = xi.n();
    std::vector<double> v(2 * n + 1, 0.0);
    v[j] = 1.0;
    if (j < n)
        v[2 * n] = 2.0 * xi.z[j].imag();
    else
        v[2 * n] = -2.0 * xi.z[j - n].real();
    return v;
}

std::vector<double> right_field(int j, const GroupElement& xi) {
    auto v = left_field(j, xi);
    v.back() = -v.back();
    return v;
}

}  // namespace hz
