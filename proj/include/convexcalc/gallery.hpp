#pragma once

#include <string>

#include "convexcalc/normal_cone.hpp"

namespace convexcalc {

/// Two fixed nonpolyhedral instances with hardcoded closed-form answers.
/// The exact engine cannot represent balls or parabolas, so these pin the
/// known results and guard them with exact grid probes.
struct GalleryItem {
    std::string id;
    std::string statement;
};

/// Membership in the subdifferential of the Euclidean norm at x:
/// the closed unit ball at the origin, {x/||x||} elsewhere. Decided by the
/// exact squared identities <v,x>^2 = <v,v><x,x>, <v,x> > 0, <v,v> = 1.
bool ball_subdiff_member(const RatVector& v, const RatVector& x);

/// The pair of parabolic sets whose normal cones at the origin break the
/// intersection rule: the sum {0} x R is strictly smaller than the normal
/// cone R^2 of the intersection {0}. The hardcoded cones are validated by a
/// grid probe over boundary points (exact arithmetic); the report's verdict
/// is RhsStrictlySmaller with witness (1,0).
RuleReport parabola_counterexample();

/// Grid probe: does v satisfy <v, (t, t^2)> <= 0 for every t in the grid
/// {-3, -5/2, ..., 3}? A necessary condition for v in N((0,0); upper parabola).
bool parabola_grid_probe_upper(const RatVector& v);

/// Same probe against the lower parabola {(t, -t^2)}.
bool parabola_grid_probe_lower(const RatVector& v);

const GalleryItem& gallery_ball_item();
const GalleryItem& gallery_parabola_item();

}  // namespace convexcalc
