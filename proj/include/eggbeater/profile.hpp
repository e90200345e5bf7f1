#pragma once

#include <array>
#include <string>
#include <vector>

#include "eggbeater/errors.hpp"

namespace eggbeater {

// 1-periodic shear profile h : R/Z -> [-1,1] with two quadratic caps, two
// linear runs of slope -+5, and C^2 polynomial blends in between:
//
//   h(t) =  1 - 50 t^2          on [-0.01, 0.01]
//   h(t) =  1.25 - 5 t          on [ 1/8,  3/8 ]
//   h(t) = -1 + 50 (t - 0.5)^2  on [ 0.49, 0.51]
//   h(t) = -3.75 + 5 t          on [ 5/8,  7/8 ]
//
// The blends are built once on the gap [0.01, 1/8]; the other three gaps are
// its images under evenness h(-t) = h(t) and anti-symmetry h(t+1/2) = -h(t),
// which makes the mean of h vanish identically. The derivative h' is
// strictly decreasing from +5 to -5 on [-1/8, 1/8], strictly increasing on
// [3/8, 5/8], and constant -+5 on the linear runs, with |h'| >= 1 away from
// the two cap windows.

// Quintic blend segment in the local coordinate s = distance into the gap.
struct BlendSegment {
    double s_lo;
    double s_hi;
    std::array<double, 6> c; // power-basis coefficients in s
};

struct BlendConfig {
    int degree = 5; // >= 5: enough freedom for value/slope/curvature at both ends
};

class ProfileH {
public:
    // Evaluates h (order 0), h' (order 1) or h'' (order 2); 1-periodic in t.
    double eval(double t, int order = 0) const;

    // Slope of the blend chain used in construction checks.
    const std::vector<BlendSegment>& blend() const { return blend_; }

    std::vector<BlendSegment> blend_; // over s in [0, kGapLength]

    static constexpr double kGapLo = 0.01;
    static constexpr double kGapHi = 0.125;
    static constexpr double kGapLength = kGapHi - kGapLo;
};

struct ValidationEntry {
    std::string name;
    bool pass;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationEntry> entries;
    bool all_pass() const;
    std::string summary() const;
};

// Builds the profile and validates every invariant; throws InvalidProfile
// (naming the violated constraint) when the blend cannot satisfy them.
ProfileH build_profile(const BlendConfig& config = {});

// Checks every profile invariant on a 1e5-point grid plus exact piece grids.
ValidationReport validate(const ProfileH& h);

// Solutions of h'(t) = c in [-1/8, 1/8) and [3/8, 5/8), the two windows where
// h' is strictly monotone and spans [-5, 5]. Empty when |c| > 5.
std::vector<double> slope_solutions(const ProfileH& h, double c);

// Writes t,h,h1,h2 rows at the given resolution.
void write_profile_csv(const ProfileH& h, const std::string& path, int resolution);

} // namespace eggbeater
