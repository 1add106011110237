#pragma once

#include <vector>

#include "hz/constants.hpp"

namespace hz {

enum class KappaMode {
    raw,         // the literal display: G(Q), alpha(Q,mu) with B = n^2
    calibrated,  // raw divided by raw kappa(1,0)
    true_value   // flux-measured Green constant and the measured multiplier
};

struct SpectralRatio {
    HarmonicIndex idx;
    double kappa = 0.0;
    KappaMode mode = KappaMode::raw;
};

SpectralRatio mode_multiplier(HarmonicIndex idx, const Params& params, KappaMode mode);

struct KernelClassification {
    int multiplicity = 0;                    // sum of d(i,j,n+1) over modes with kappa = 1
    std::vector<HarmonicIndex> kernel_modes;
    bool ordering_ok = false;                // kappa(0,0) > kappa(1,0) = kappa(0,1) > kappa(i,j), 2 <= i+j <= max
    bool monotone_ok = false;                // strictly decreasing in i at fixed j and in j at fixed i
    double closest_other = 0.0;              // min |kappa - 1| over non-kernel modes (calibrated)
    int max_degree = 12;
};

KernelClassification classify_kernel(const Params& params, int max_degree = 12);

struct BConstants {
    double b_from_identity = 0.0;  // (1/2)^Q (Q+2)/(Q-2) G(Q) B E_{1,0}(Q-2) = 1
    double b_nominal = 0.0;          // n^2
    double b_direct = 0.0;         // measured Yamabe ratio
    double b_flux = 0.0;           // same identity with the flux Green constant and 2^{-Q/2}
};

BConstants extract_b_constant(const Params& params);

}  // namespace hz
