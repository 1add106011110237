#pragma once

#include <string>
#include <vector>

#include "hz/bubble.hpp"
#include "hz/hgroup.hpp"
#include "hz/quadrature.hpp"

namespace hz {

struct PohozaevConfig {
    BubbleParams u;             // amplitude should be calibrated_amplitude(params)
    double mu = 2.0;
    double inner_radius = 1.0;  // delta, D = B_delta(center)
    GroupElement center;
    double epsilon = 0.0;       // only eps = 0 has an exact solution
    // grids: D volume, boundary, exterior
    int radial_nodes = 5;       // per graded panel
    int phi_nodes = 16;
    int angle_nodes = 16;
    int boundary_phi_nodes = 32;
    int boundary_angle_nodes = 32;
    int exterior_phi_nodes = 20;
    int exterior_angle_nodes = 20;
    double truncation_radius = 100.0;  // exterior, relative to max(1, delta)
};

struct NamedTerm {
    std::string name;
    double value = 0.0;
};

struct PohozaevReport {
    std::string identity;  // "scale", "scale_literal", "translation_Y1", ...
    std::vector<NamedTerm> boundary_terms;
    std::vector<NamedTerm> volume_terms;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;  // lhs - rhs
    double dominant = 0.0;  // max |term|
    double relative = 0.0;  // |residual| / dominant (0 when all terms vanish)
};

// V_in + V_out against the closed-form potential on the boundary nodes
struct PotentialSplitCheck {
    double max_rel_error = 0.0;
    double divergence_check = 0.0;  // int_{dD} <Z, nu> / (delta^Q |Sigma|) - 1
};

struct PohozaevResult {
    PohozaevReport scale;                       // dilation generator about the ball centre
    PohozaevReport scale_literal;               // multiplier (x - c_x, y - c_y, 0)
    std::vector<PohozaevReport> translation;    // right-invariant Y_i, i < 2n
    std::vector<PohozaevReport> translation_literal;  // left-invariant X_i
    PotentialSplitCheck split;
};

// every identity is evaluated from one pass over the nested grids
PohozaevResult pohozaev_all(const PohozaevConfig& cfg);
PohozaevReport pohozaev_scale(const PohozaevConfig& cfg);
std::vector<PohozaevReport> pohozaev_translation(const PohozaevConfig& cfg);

// c_Q / d(xi,eta)^{Q-2} with c_Q = G(Q)
double fundamental_solution(const GroupElement& xi, const GroupElement& eta);
// same as a field in xi with exact jets (for harmonicity checks)
ScalarField fundamental_solution_field(const GroupElement& eta);

struct RobinAsymptotic {
    double value = 0.0;               // 1 / ((Q-2) omega_{Q-1} (2d)^{Q-2})
    double gradient_magnitude = 0.0;  // 2 / (omega_{Q-1} (2d)^{Q-1})
};

RobinAsymptotic robin_asymptotic(double d_boundary, const Params& params);

}  // namespace hz
