#pragma once

#include <vector>

#include "hz/hgroup.hpp"
#include "hz/quadrature.hpp"

namespace hz {

struct BubbleParams {
    double lambda = 1.0;
    GroupElement center;  // empty z means the origin
    double amplitude = 1.0;
};

// A lambda^{-(Q-2)/2} U(delta_{1/lambda}(center^{-1} xi)), U = f^{-(Q-2)/4}, f = (1+|z|^2)^2 + t^2
Jet2 bubble_eval(const BubbleParams& p, const GroupElement& xi);
double bubble_value(const BubbleParams& p, const GroupElement& xi);

enum class KernelVariant {
    invariant,  // right-invariant Y_i U, d_t U, dilation derivative
    literal     // Euclidean partials, (Q-2)/2 U + sum x_i X_i U + y_i X_{n+i} U
};

struct KernelElement {
    int k = 0;  // 1 .. 2n+2
    KernelVariant variant = KernelVariant::invariant;
    ScalarField field;
};

KernelElement kernel_element(int k, const Params& params, KernelVariant variant = KernelVariant::invariant);

// int U^{q}(eta) d(xi,eta)^{-mu} d eta for q = Q*_mu, via the constant Funk-Hecke mode:
// 2^{1 + mu/2 - Q} E_{0,0}(mu) <xi>^{-mu/2}
double riesz_closed_form(double power, double mu, const GroupElement& xi, const Params& params);
// same for a general bubble: A^q lambda^{-mu/2} V_1(delta_{1/lambda}(c^{-1} xi))
double riesz_closed_form(const BubbleParams& b, double mu, const GroupElement& xi, const Params& params);

struct Residual {
    double lhs = 0.0;        // -Delta_H u
    double rhs_shape = 0.0;  // (I_mu * u^q) u^{q-1}
    double ratio = 0.0;
};

Residual el_residual(const BubbleParams& b, double mu, const GroupElement& xi);
// -Delta_H U / U^{(Q+2)/(Q-2)}
double yamabe_ratio(const GroupElement& xi);

// measured multiplier of the unit bubble: 4n^2 / (2^{1+mu/2-Q} E_{0,0}(mu))
double alpha_hat(const Params& p);
// amplitude c with c^{2-2q} alpha_hat = 1, i.e. u = cU solves -Delta_H u = (I_mu * u^q) u^{q-1}
double calibrated_amplitude(const Params& p);

struct LinearizedTerms {
    double laplacian = 0.0;  // -Delta_H phi
    double nonlocal = 0.0;   // alpha q (I_mu * (u^{q-1} phi)) u^{q-1}
    double local = 0.0;      // alpha (q-1) (I_mu * u^q) u^{q-2} phi
    double value = 0.0;      // laplacian - nonlocal - local
    double dominant = 0.0;
    double quad_error = 0.0;  // tail bound of the quadrature part
};

// L_u(phi)(xi), u = unit-amplitude bubble b with its own measured multiplier.
// decay_phi: Korányi decay exponent of phi
LinearizedTerms linearized_apply(const ScalarField& phi, double decay_phi, const BubbleParams& b, double mu,
                                 const GroupElement& xi, const QuadratureSpec& spec);

struct SharpConstant {
    double measured = 0.0;
    double closed_form = 0.0;
    double ratio = 0.0;
    double grad_norm2 = 0.0;
    double hartree = 0.0;
};

SharpConstant sharp_constant_check(int n, double mu, double lambda, const QuadratureSpec& spec);

struct GramReport {
    std::vector<std::vector<double>> gram;
    std::vector<double> singular_values;  // descending
    int rank = 0;
};

// Gram matrix of kernel elements under <grad_H ., grad_H .>
GramReport kernel_gram(const Params& p, KernelVariant variant, const QuadratureSpec& spec);

}  // namespace hz
