#pragma once

#include <optional>
#include <string>
#include <vector>

#include "convexcalc/maxaffine.hpp"
#include "convexcalc/polyhedron.hpp"

namespace convexcalc {

/// Finitely generated cone with apex 0:
/// cone(generators) + span(lineality).
struct Cone {
    std::size_t dim = 0;
    std::vector<RatVector> generators;
    std::vector<RatVector> lineality;

    Cone() = default;
    explicit Cone(std::size_t n) : dim(n) {}
    static Cone zero(std::size_t n) { return Cone(n); }
};

VPolyhedron cone_to_vpoly(const Cone& c);
HPolyhedron cone_to_hpoly(const Cone& c);
Cone cone_from_vpoly(const VPolyhedron& v);  // requires 0 as the only point
Cone cone_sum(const Cone& a, const Cone& b);
Cone negate_cone(const Cone& c);
bool cone_is_zero(const Cone& c);
bool cone_member(const Cone& c, const RatVector& v);

/// Normal cone to an H-polyhedron at a member point: active inequality
/// normals generate, equality normals contribute lineality. Every generator
/// is re-verified against the defining inequality by an LP before returning.
/// Throws PointOutsideSet when x is not a member.
Cone normal_cone(const HPolyhedron& P, const RatVector& x);

enum class Verdict { Equal, LhsStrictlySmaller, RhsStrictlySmaller, Incomparable };

std::string verdict_str(Verdict v);

/// Outcome of checking one calculus identity: both sides as generator
/// representations, whether the rule's qualification held, how the sides
/// compare, and a witness vector from the symmetric difference when they
/// differ. `notes` carries rule-specific extras.
struct RuleReport {
    std::string rule;
    VPolyhedron lhs;
    VPolyhedron rhs;
    bool qualification_holds = false;
    Verdict verdict = Verdict::Equal;
    std::optional<RatVector> witness;
    std::vector<std::pair<std::string, std::string>> notes;
};

/// Compare lhs/rhs, fill verdict and witness.
RuleReport make_report(std::string rule, VPolyhedron lhs, VPolyhedron rhs,
                       bool qualification_holds);

// --- subdifferentials -------------------------------------------------------

/// Subgradients of f at a domain point, computed through the epigraph:
/// the slice {v | (v,-1) in N((x, f(x)); epi f)}.
VPolyhedron subdifferential(const MaxAffineFunction& f, const RatVector& x);

/// True iff 0 is a subgradient at x: the global-minimum test.
bool fermat_check(const MaxAffineFunction& f, const RatVector& x);

/// Asserts that the subdifferential at a relative interior point of the
/// domain is nonempty; returns that fact.
bool subdiff_nonempty_on_ri(const MaxAffineFunction& f);

// --- calculus rules ---------------------------------------------------------

RuleReport intersection_rule(const std::vector<HPolyhedron>& sets, const RatVector& x);
RuleReport sum_rule(const std::vector<MaxAffineFunction>& fns, const RatVector& x);
RuleReport chain_rule_affine(const MaxAffineFunction& f, const AffineMap& B,
                             const RatVector& x);
RuleReport max_rule(const std::vector<MaxAffineFunction>& fns, const RatVector& x);

}  // namespace convexcalc
