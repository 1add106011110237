#pragma once

#include <string>
#include <vector>

#include "hz/hgroup.hpp"

namespace hz {

struct HarmonicIndex {
    int i = 0;
    int j = 0;
};

double log_gamma(double x);

// E_{i,j}(mu): Funk-Hecke eigenvalue of |1 - zeta.conj(zeta')|^{-mu/2} on H_{i,j}(S^{2n+1})
double funk_coeff(HarmonicIndex idx, double mu, const Params& p);
double funk_coeff_log(HarmonicIndex idx, double mu, const Params& p);
// second closed form for E_{0,0}(2n)
double e00_dual(int n);

double sphere_volume(int n);                     // |S^{2n+1}| = 2 pi^{n+1} / n!
double c_sobolev(int n);                         // C(Q)
double c_hls(int n, double mu);                  // C(Q, mu)
double c_hl(int n, double mu);                   // C_{H,L}(Q, mu) = C(Q) C(Q,mu)^{-1/Q*_mu}
double alpha_closed(int n, double mu, double b);  // C(Q)^{-(Q-mu)/2} C(Q,mu)^{-1} B^{(Q-mu+2)/2}
double green_G(int n);                           // G(Q)
// 1 / (flux of grad_H rho^{2-Q} through the unit gauge sphere), so that
// -Delta_H (c rho^{2-Q}) = delta
double green_flux_constant(int n);

struct ConstantsTable {
    Params params;
    double c_sobolev = 0;
    double c_hls = 0;
    double c_hl = 0;
    double alpha = 0;        // with B = b_candidate
    double alpha_direct = 0; // with B = 4 n^2
    double g_green = 0;
    double green_flux = 0;
    double b_candidate = 0;
    double b_direct = 0;
    double sphere_volume = 0;
    double omega_sphere = 0;  // omega_{Q-1}
    double omega_ball = 0;    // omega_Q
    double e00_mu = 0;
    double e10_mu = 0;
};

ConstantsTable constants_table(const Params& p);

}  // namespace hz
