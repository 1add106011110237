#pragma once

#include <vector>

#include "hz/hgroup.hpp"

namespace hz {

struct Node1 {
    double x;
    double w;
};

// Gauss-Legendre on [a, b]
std::vector<Node1> gauss_legendre(int m, double a, double b);

// composite Gauss-Legendre in log r over [r0, r1]; weights include dr = r ds
std::vector<Node1> log_panels(double r0, double r1, double panel_width, int per_panel);

struct SphereNode {
    std::vector<cplx> s;  // unit vector in C^n
    double w;
};

// quadrature on S^{2n-1} (n = 1: trapezoid in the angle, n = 2: Hopf angles)
std::vector<SphereNode> unit_sphere_grid(int n, int nodes);

struct GaugeNode {
    GroupElement sigma;  // rho(sigma) = 1
    double w;            // gauge-polar measure weight: d xi = r^{Q-1} dr dsigma
};

// Korányi unit sphere: |z| = sin(phi), t = cos(phi) sqrt(1 + sin^2 phi)
GroupElement gauge_point(double phi, const std::vector<cplx>& s);
double gauge_density(int n, double phi);  // 2 sin^{2n-1} phi / sqrt(1 + sin^2 phi)
std::vector<GaugeNode> gauge_sphere_grid(int n, int phi_nodes, int angle_nodes);

// Haar measure of {rho = 1} in the gauge-polar decomposition
double gauge_sphere_measure(int n);
double unit_sphere_area(int dim);  // |S^{dim}| in R^{dim+1}

// C^infinity cutoff: 1 on [0, 1/2], 0 on [1, inf)
double smooth_cutoff(double x);

}  // namespace hz
