#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hz/grid.hpp"
#include "hz/hgroup.hpp"

namespace hz {

enum class QuadMethod { tensor_cylindrical, monte_carlo };

std::string to_string(QuadMethod m);
QuadMethod quad_method_from_string(const std::string& s);

struct QuadratureSpec {
    QuadMethod method = QuadMethod::tensor_cylindrical;
    std::uint64_t seed = 1;
    std::int64_t samples = 1'000'000;
    double truncation_radius = 1e3;  // Korányi gauge
    double near_field_radius = 0.5;
    int radial_nodes = 8;    // per log panel (and 2x that on [0, 1])
    int angular_nodes = 32;  // polar angle and S^1 nodes; S^3 uses half

    void validate() const;
};

struct IntegralEstimate {
    double value = 0.0;
    double std_error = 0.0;   // zero for deterministic grids
    double tail_bound = 0.0;  // mass beyond the truncation radius, from the declared decay
};

// Radial nodes on [0, rmax] with weights for dr (no Jacobian)
std::vector<Node1> radial_nodes(const QuadratureSpec& s, double rmax);
// Korányi-sphere nodes for the spec
std::vector<GaugeNode> sphere_nodes(int n, const QuadratureSpec& s);

// one gauge-polar importance draw: point with rho ~ r, r/(1+r) ~ Beta(Q, decay - Q);
// returns 1/density so that E[f * w] = int f
GroupElement sample_polar(int n, double decay, std::mt19937_64& rng, double& weight);

// int_{H^n} f; decay_exponent in Korányi powers (f = O(rho^{-decay}))
IntegralEstimate integrate_hn(const HnFn& f, int n, double decay_exponent, const QuadratureSpec& spec);

// int f(eta) d(xi, eta)^{-mu} d eta
IntegralEstimate riesz_potential(const HnFn& f, double mu, const GroupElement& xi, double decay_exponent,
                                 const QuadratureSpec& spec);

// int int f(xi) g(eta) d(xi,eta)^{-mu}; decay_f + decay_g + mu > 2Q needed
IntegralEstimate hartree_energy(const HnFn& f, const HnFn& g, int n, double mu, double decay_f, double decay_g,
                                const QuadratureSpec& spec);

struct DecayPoint {
    double bracket = 0.0;  // <xi>
    double w = 0.0;        // <xi>^{1/2}
    double value = 0.0;
};

struct DecayFit {
    double mu = 0.0;
    double theta = 0.0;
    double predicted = 0.0;
    double fitted = 0.0;          // leading exponent of the two-term asymptotic model
    double fitted_raw = 0.0;      // plain least-squares slope of log I against log w
    double model_residual = 0.0;  // relative residual of the model fit
    std::string regime;        // "theta<Q", "theta=Q", "theta>Q"
    std::vector<DecayPoint> points;
};

// I(xi) = int d(xi,eta)^{-mu} w(eta)^{-theta} d eta with w = <eta>^{1/2}, sampled at
// <xi> in brackets; exponents against w(xi)
DecayFit decay_regime_check(int n, double mu, double theta, const QuadratureSpec& spec,
                            const std::vector<double>& brackets = {10.0, 30.0, 100.0, 300.0, 1000.0});

}  // namespace hz
