#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "hz/constants.hpp"
#include "hz/hgroup.hpp"

namespace hz {

struct SpherePoint {
    std::vector<cplx> zeta;  // unit vector in C^{n+1}

    SpherePoint() = default;
    explicit SpherePoint(std::vector<cplx> z);  // normalizes
    int n() const { return static_cast<int>(zeta.size()) - 1; }
    // ambient real coordinates (Re zeta_1..Re zeta_{n+1}, Im zeta_1..Im zeta_{n+1})
    std::vector<double> ambient() const;
};

struct SphereSampler {
    std::uint64_t seed = 1;
    std::int64_t count = 1'000'000;
};

struct SphereEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t rejected = 0;
};

using SphereFn = std::function<double(const SpherePoint&)>;
// real field on the ambient space, evaluated with its 2-jet (dim 2n+2)
using AmbientField = std::function<Jet2(const SpherePoint&)>;

cplx hermitian_dot(const SpherePoint& a, const SpherePoint& b);  // zeta . conj(zeta')
double chordal_kernel(const SpherePoint& a, const SpherePoint& b, double s);

long long sphere_dim(HarmonicIndex idx, int m);

// L2-orthonormal on S^{2n+1}; d is 1-based
double harmonic_10_basis(int d, const SpherePoint& zeta);  // Im family
double harmonic_01_basis(int d, const SpherePoint& zeta);  // Re family
double harmonic_norm(int n);        // sqrt((2n+2) n! / (2 pi^{n+1}))
double harmonic_norm_nominal(int n);  // sqrt((2n+2) Gamma((2n+1)/2) / (2 pi^{(2n+1)/2}))

SpherePoint sample_sphere(int n, std::mt19937_64& rng);
// orthonormal basis of the Hermitian complement of zeta
std::vector<std::vector<cplx>> complement_basis(const SpherePoint& zeta);
// zeta' with zeta.conj(zeta') = w, drawn for the kernel |1-w|^{-s};
// returns the importance weight for an unnormalized integral over S^{2n+1}
double sample_kernel_partner(const SpherePoint& zeta, const std::vector<std::vector<cplx>>& basis, double s,
                             std::mt19937_64& rng, SpherePoint& out);

SphereEstimate sphere_integrate(const SphereFn& f, int n, const SphereSampler& sampler);
SphereEstimate funk_hecke_apply(double s, const SphereFn& Y, const SpherePoint& zeta, const SphereSampler& sampler);

struct EnergyEstimate {
    double energy = 0.0;    // int |grad_S F|^2 + (n^2/2) int F^2
    double grad_sq = 0.0;   // int |grad_S F|^2
    double l2_sq = 0.0;     // int F^2
    double std_error = 0.0; // of energy
};

// tangential gradient: ambient gradient minus its radial part
std::vector<double> tangential_gradient(const Jet2& F, const SpherePoint& zeta);
EnergyEstimate sphere_energy(const AmbientField& F, int n, const SphereSampler& sampler);

struct KernelPairing {
    double weighted = 0.0;    // int int K F(zeta)F(zeta') Re(zeta.conj zeta')
    double unweighted = 0.0;  // int int K F(zeta)F(zeta')
    double ratio = 0.0;
    double ratio_se = 0.0;
    double bound = 0.0;       // (mu/4)/(n+1-mu/4)
};

KernelPairing kernel_pairing_check(const SphereFn& F, int n, double mu, const SphereSampler& sampler);

}  // namespace hz
