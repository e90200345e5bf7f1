#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "eggbeater/errors.hpp"

namespace eggbeater {

// Point on T^2 = R^2/Z^2 in fundamental-domain coordinates, both in [0,1).
struct TorusPoint {
    double x{0.0};
    double y{0.0};
};

// Point in the universal cover R^2.
struct LiftPoint {
    double x{0.0};
    double y{0.0};
};

// Integer winding vector; free homotopy classes of torus loops are
// represented this way.
struct IntVec2 {
    std::int64_t m{0};
    std::int64_t n{0};
    friend bool operator==(const IntVec2&, const IntVec2&) = default;
};

struct LoopSample {
    double t;
    LiftPoint lift;
};

// Sampled 1-periodic path with a continuous lift. Sample times are strictly
// increasing from 0 to 1 and consecutive lifts differ by less than 0.5 per
// coordinate, so the lift (and hence the winding) is unambiguous.
// closure_winding is the endpoint displacement rounded to integers; the loop
// is closed on the torus iff closure_residual is below the winding tolerance.
struct Loop {
    std::vector<LoopSample> samples;
    IntVec2 closure_winding;
    double closure_residual{0.0};
};

inline constexpr double kWindingTolerance = 1e-9;

// Reduces a lift to fundamental-domain coordinates.
TorusPoint reduce(LiftPoint l);

// Validates the sampling invariants and fills in the closure data.
Loop make_loop(std::vector<LoopSample> samples);

// Winding vector of a closed loop; throws BrokenLift when the endpoint
// displacement is farther than kWindingTolerance from an integer vector.
IntVec2 winding_vector(const Loop& loop);

// Homological intersection product m1*n2 - n1*m2.
std::int64_t intersection_number(IntVec2 c1, IntVec2 c2);

// Searches for a geometric crossing of the two loops on the torus, testing
// integer translates of the lifted segments. Returns one crossing point, or
// nullopt when the loops are disjoint. Throws InvalidInput when a loop has
// no segment of positive length.
std::optional<TorusPoint> loops_intersect(const Loop& l1, const Loop& l2);

// Distance on the torus (minimum over integer translates).
double torus_distance(TorusPoint a, TorusPoint b);

} // namespace eggbeater
