#pragma once

#include <span>

#include "common/numeric.hpp"
#include "dist/support.hpp"
#include "saa/batch.hpp"
#include "saa/constraint.hpp"

namespace ccsaa::saa {

struct RobustOptions {
    int black_box_points = 256; // inner-maximization candidates for black-box g
};

struct SupResult {
    double value = 0.0;
    bool exact = true;
};

// Supremum of g(x, u) over the uncertainty set around `center`:
//   ball_only               u in { ||u - center|| <= radius }
//   ball_intersect_support  the same ball intersected with a box support
//
// Bi-affine constraints are solved exactly: the plain ball via the dual norm,
// the Linf-ball/box intersection by coordinate clipping, the L2 case by a
// parametric KKT walk over clamp breakpoints, and the L1 case by a greedy
// budget allocation from the minimum-norm feasible point (both are linear
// maximizations over a convex set with separable structure). Black-box
// constraints are maximized over a low-discrepancy candidate set and flagged
// approximate.
//
// An empty ball/support intersection raises empty_intersection_error.
SupResult robust_sup(std::span<const double> x, std::span<const double> center, double radius,
                     Norm norm, SupportMode mode, const dist::SupportSet& support,
                     const ConstraintFunction& g, const RobustOptions& opt = {});

} // namespace ccsaa::saa
