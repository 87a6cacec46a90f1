#pragma once

#include <optional>
#include <vector>

#include "convexcalc/normal_cone.hpp"
#include "convexcalc/polyhedron.hpp"

namespace convexcalc {

/// Exact Euclidean projection: the nearest point, its squared distance
/// (the distance itself is irrational in general) and the inequality rows
/// tight at the projection.
struct ProjectionResult {
    RatVector point;
    Rat squared_distance;
    std::vector<std::size_t> active_rows;
};

/// A separating vector with the four LP-verified bounds
/// sup/inf of <v,.> over the left and right sets.
struct SeparationCertificate {
    RatVector v;
    ERat sup_left, inf_left;
    ERat sup_right, inf_right;
};

/// Outcome of the proper-separation decision.
struct SeparationOutcome {
    bool separable = false;
    std::optional<SeparationCertificate> certificate;
};

/// Projection by active-set enumeration: every candidate comes from an
/// equality-constrained least-squares system over a subset of rows; the
/// winner is certified by the variational-inequality LP
/// max <x - proj, w - proj> over P == 0. Rows are capped at 20.
ProjectionResult euclid_project(const RatVector& x, const HPolyhedron& P);

/// v = x - projection; certifies sup <v,.> over P < <v,x> exactly.
/// Throws PointInsideSet when x is a member.
SeparationCertificate strictly_separate(const RatVector& x, const HPolyhedron& P);

/// Decides proper separation of two nonempty polyhedra through the
/// difference set: separable iff 0 is outside ri(P1 - P2). Certificates are
/// re-verified by LP before returning.
SeparationOutcome properly_separate(const HPolyhedron& P1, const HPolyhedron& P2);

/// Basic qualification condition at a common point:
/// N(x;P1) ∩ [-N(x;P2)] = {0}.
bool check_basic_qc(const HPolyhedron& P1, const HPolyhedron& P2, const RatVector& x);

}  // namespace convexcalc
