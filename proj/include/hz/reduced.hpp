#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hz/hgroup.hpp"
#include "hz/quadrature.hpp"

namespace hz {

struct ReducedCoeffs {
    double a_q = 0.0;     // int U^{Q*}
    double b_q = 0.0;     // int U^{Q*-1}
    double alpha = 0.0;   // alpha(Q,mu) with B = n^2
    double omega_q = 0.0;
    double u_l2 = 0.0;    // int U^2
    double tail_a = 0.0, tail_b = 0.0, tail_l2 = 0.0;
};

// requires Q > 4 (int U^2 diverges for n = 1)
ReducedCoeffs reduced_coeffs(const Params& params, const QuadratureSpec& spec);

struct ReducedState {
    double epsilon = 0.0;
    double lambda = 1.0;
    double robin_value = 1.0;
    std::vector<double> robin_gradient;
};

// F = a / lambda^{Q-2} - b / lambda^2, a = Q (Q-2)^2 omega_Q R B_Q / (2 alpha), b = eps int U^2
double reduced_energy(const ReducedState& s, const ReducedCoeffs& c, const Params& p);
double reduced_a(double robin_value, const ReducedCoeffs& c, const Params& p);
// C~_1 = (Q (Q-2)^3 omega_Q R B_Q / (4 alpha int U^2))^{1/(Q-4)}
double scale_constant(double robin_value, const ReducedCoeffs& c, const Params& p);
double critical_scale(double robin_value, double epsilon, const ReducedCoeffs& c, const Params& p);
// F''(lambda*) = 2 (Q-4) eps int U^2 / lambda*^4
double reduced_second_derivative(double robin_value, double epsilon, const ReducedCoeffs& c, const Params& p);
// numeric argmin of lambda -> F by golden section in log lambda
double reduced_argmin(double robin_value, double epsilon, const ReducedCoeffs& c, const Params& p);

// min over t in {C~_1/2, 2 C~_1} of [F(t) - F(C~_1)] / ((t - C~_1)^2 eps^{(Q-2)/(Q-4)}), lambda = t eps^{-1/(Q-4)}
double boundary_exclusion_constant(double robin_value, double epsilon, const ReducedCoeffs& c, const Params& p);

struct SearchBox {
    std::vector<double> lo, hi;  // xi coordinates
};

struct RobinSample {
    double value = 0.0;
    std::vector<double> gradient;  // Euclidean (x, y, t)
};
using RobinField = std::function<RobinSample(const GroupElement&)>;

RobinField quadratic_robin(int n);                    // 1 + |xi|^2 (Euclidean)
RobinField half_space_robin(const Params& p);         // Robin asymptotics at distance x_1 from {x_1 = 0}
// multilinear interpolation on a rectilinear grid; extent receives the grid bounds
RobinField load_robin_csv(const std::string& path, SearchBox* extent = nullptr);

struct ReducedSolution {
    double t = 0.0;       // lambda eps^{1/(Q-4)}
    double lambda = 0.0;
    GroupElement xi;
    bool converged = false;
    double residual = 0.0;
    int iterations = 0;
    std::string note;
};

ReducedSolution solve_reduced_system(const RobinField& robin, double epsilon, const SearchBox& box,
                                     const ReducedCoeffs& c, const Params& p, int starts_per_axis = 3);

}  // namespace hz
