#pragma once

#include <cstddef>
#include <variant>

#include "convexcalc/polyhedron.hpp"

namespace convexcalc {

enum class Sense { Min, Max };

struct LPOptimal {
    Rat value;
    RatVector point;
};

/// Objective improves without bound along `ray` from `feasible_point`:
/// A·ray <= 0 and E·ray = 0.
struct LPUnbounded {
    RatVector feasible_point;
    RatVector ray;
};

/// Farkas certificate: one multiplier per constraint row of P, inequality
/// rows first. y >= 0 on inequality rows, y^T [A;E] = 0 and y^T [b;d] < 0.
struct LPInfeasible {
    RatVector farkas;
};

using LPOutcome = std::variant<LPOptimal, LPUnbounded, LPInfeasible>;

struct LPStats {
    std::size_t pivots = 0;
};

/// Exact primal simplex with Bland's anti-cycling rule over the standard-form
/// tableau (free variables split, slacks and artificials appended).
/// Deterministic for fixed input; terminates on every input.
LPOutcome lp_solve(const RatVector& objective, const HPolyhedron& P, Sense sense,
                   LPStats* stats = nullptr);

bool lp_is(const LPOutcome& o, const LPOptimal*&);

inline const LPOptimal* lp_optimal(const LPOutcome& o) { return std::get_if<LPOptimal>(&o); }
inline const LPUnbounded* lp_unbounded(const LPOutcome& o) { return std::get_if<LPUnbounded>(&o); }
inline const LPInfeasible* lp_infeasible(const LPOutcome& o) { return std::get_if<LPInfeasible>(&o); }

/// sup / inf of <objective, x> over P as an extended rational.
/// Throws EmptySet when P is infeasible.
ERat lp_extremum(const RatVector& objective, const HPolyhedron& P, Sense sense);

}  // namespace convexcalc
