#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "convexcalc/polyhedron.hpp"

namespace convexcalc {

/// Convex piecewise-affine extended-real function: the pointwise maximum of
/// finitely many affine pieces x -> <a,x>+b on a polyhedral domain, +infinity
/// outside. The indicator of a set is the single piece (0,0) on that domain.
struct MaxAffineFunction {
    std::size_t n = 0;
    std::vector<std::pair<RatVector, Rat>> pieces;  // nonempty
    HPolyhedron domain;

    MaxAffineFunction() = default;
    MaxAffineFunction(std::size_t dim, std::vector<std::pair<RatVector, Rat>> ps,
                      HPolyhedron dom);
    MaxAffineFunction(std::size_t dim, std::vector<std::pair<RatVector, Rat>> ps);

    static MaxAffineFunction indicator(const HPolyhedron& set);
    static MaxAffineFunction single(RatVector a, Rat b);

    bool in_domain(const RatVector& x) const { return domain.contains(x); }

    /// Finite value on the domain, nullopt (meaning +infinity) outside.
    std::optional<Rat> value(const RatVector& x) const;

    /// {(x,t) | <a_i,x>+b_i <= t for all pieces, x in domain} in R^{n+1}.
    HPolyhedron epigraph() const;

    /// Piece indices attaining the maximum at x; requires x in the domain.
    std::vector<std::size_t> active_indices(const RatVector& x) const;
};

/// Pointwise sum: pieces are all sums of one piece per summand (the piece
/// count multiplies; capped), the domain is the intersection.
MaxAffineFunction sum_function(const std::vector<MaxAffineFunction>& fns,
                               std::size_t piece_cap = 10000);

/// Pointwise maximum: pieces pooled, domains intersected.
MaxAffineFunction max_function(const std::vector<MaxAffineFunction>& fns);

/// f composed with the affine map B (x -> f(Bx + c)).
MaxAffineFunction compose_affine(const MaxAffineFunction& f, const AffineMap& B);

}  // namespace convexcalc
