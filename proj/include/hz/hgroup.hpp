#pragma once

#include <array>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace hz {

using cplx = std::complex<double>;

struct Params {
    int n = 1;
    int Q = 4;
    double mu = 2.0;
    double q_star = 4.0;     // 2Q/(Q-2)
    double q_star_mu = 3.0;  // (2Q-mu)/(Q-2)

    static Params make(int n, double mu);
};

// xi = (z, t); real coordinates are ordered (x_1..x_n, y_1..y_n, t)
struct GroupElement {
    std::vector<cplx> z;
    double t = 0.0;

    int n() const { return static_cast<int>(z.size()); }
    double abs_z2() const;
    std::vector<double> coords() const;

    static GroupElement identity(int n);
    static GroupElement from_coords(const std::vector<double>& c);
};

GroupElement group_mul(const GroupElement& a, const GroupElement& b);
GroupElement group_inv(const GroupElement& a);
GroupElement dilate(double lambda, const GroupElement& xi);
double koranyi_norm(const GroupElement& xi);
double distance(const GroupElement& a, const GroupElement& b);
double gauge_bracket(const GroupElement& xi);

// Value, gradient and Hessian with a runtime dimension (<= kMaxDim).
// H^n fields use dim 2n+1, ambient sphere fields use 2n+2.
inline constexpr int kMaxDim = 9;

struct Jet2 {
    int dim = 0;
    double v = 0.0;
    std::array<double, kMaxDim> g{};
    std::array<double, kMaxDim * kMaxDim> h{};

    Jet2() = default;
    Jet2(int d, double value);
    static Jet2 variable(int d, int i, double value);

    double& H(int i, int j) { return h[i * kMaxDim + j]; }
    double H(int i, int j) const { return h[i * kMaxDim + j]; }

    Jet2& operator+=(const Jet2& o);
    Jet2& operator-=(const Jet2& o);
    Jet2& operator*=(double c);
    Jet2& operator+=(double c) { v += c; return *this; }
};

Jet2 operator+(Jet2 a, const Jet2& b);
Jet2 operator-(Jet2 a, const Jet2& b);
Jet2 operator-(Jet2 a);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator*(Jet2 a, double c);
Jet2 operator*(double c, Jet2 a);
Jet2 operator+(Jet2 a, double c);
Jet2 operator+(double c, Jet2 a);
Jet2 operator-(Jet2 a, double c);
Jet2 operator-(double c, const Jet2& a);
Jet2 operator/(const Jet2& a, const Jet2& b);

// f(a) given f, f', f'' at a.v
Jet2 chain(const Jet2& a, double f0, double f1, double f2);
Jet2 pow(const Jet2& a, double p);
Jet2 sqrt(const Jet2& a);
Jet2 exp(const Jet2& a);
Jet2 log(const Jet2& a);

// coordinate jets of xi in the (x, y, t) ordering
std::vector<Jet2> coordinate_jets(const GroupElement& xi);

using ScalarField = std::function<Jet2(const GroupElement&)>;
using HnFn = std::function<double(const GroupElement&)>;

std::vector<double> horizontal_gradient(const Jet2& f, const GroupElement& xi);
std::vector<double> horizontal_gradient(const ScalarField& f, const GroupElement& xi);
double kohn_laplacian(const Jet2& f, const GroupElement& xi);
double kohn_laplacian(const ScalarField& f, const GroupElement& xi);

// finite-difference oracles, 4th-order central stencils
std::vector<double> horizontal_gradient_fd(const std::function<double(const GroupElement&)>& f,
                                           const GroupElement& xi, double h = 1e-3);
double kohn_laplacian_fd(const std::function<double(const GroupElement&)>& f,
                         const GroupElement& xi, double h = 1e-3);

// Euclidean components (x, y, t) of X_j (left-invariant) and Y_j (right-invariant), j < 2n
std::vector<double> left_field(int j, const GroupElement& xi);
std::vector<double> right_field(int j, const GroupElement& xi);

}  // namespace hz
