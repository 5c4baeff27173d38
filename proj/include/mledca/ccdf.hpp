#pragma once

#include <functional>
#include <optional>

#include "mledca/delay_gf.hpp"
#include "mledca/scenario.hpp"

namespace mledca {

struct InversionOptions {
    double gamma = 8.0;                 // aliasing error is about 10^-gamma
    int l = 1;                          // N = x * l
    std::optional<double> radius;       // overrides 10^(-gamma / (2x))
    double theta_cap = 16.0;
};

struct CcdfResult {
    long x_slots = 0;
    double probability = 0.0;   // Pr(D >= x)
    double radius = 0.0;
    long lattice_size = 0;      // N; the contour uses 2N points
    double theta = 0.0;
};

/// 10^(-gamma / (2x)).
double default_radius(long x, double gamma);

/// Pr(D >= x) for a delay with generating function `gf`, x in lattice steps.
/// The tail is the coefficient of z^(x-1) in (1 - gf(z)) / (1 - z), extracted
/// with a trapezoidal contour sum on the circle of radius r.
CcdfResult invert_ccdf(const std::function<cplx(cplx)>& gf, long x,
                       const InversionOptions& options = {});

/// Same for a delay generating function; uses table lookups for powers of z.
CcdfResult invert_ccdf(const DelayGf& gf, long x, const InversionOptions& options = {});

/// Delay bound in ms to lattice steps, at least one.
long delay_slots(double delay_ms, const PhyProfile& phy);

CcdfResult delay_violation(const DelayGf& gf, double delay_ms, const PhyProfile& phy,
                           const InversionOptions& options = {});

/// -log10(prob); prob == 0 maps to `cap`.
double reliability_index(double prob, double cap = 16.0);

}  // namespace mledca
