#pragma once

#include <vector>

#include "convexcalc/maxaffine.hpp"
#include "convexcalc/normal_cone.hpp"
#include "convexcalc/polyhedron.hpp"

namespace convexcalc {

/// Set-valued mapping F: R^n ->> R^p given by its polyhedral graph
/// {(x,y) | y in F(x)} in R^{n+p}.
struct PolyhedralMap {
    std::size_t n = 0;
    std::size_t p = 0;
    HPolyhedron graph;

    PolyhedralMap() = default;
    PolyhedralMap(std::size_t in_dim, std::size_t out_dim, HPolyhedron g);

    static PolyhedralMap from_affine(const AffineMap& B);

    /// F(x) as an H-polyhedron in R^p.
    HPolyhedron value_poly(const RatVector& x) const;

    /// dom(F) = {x | F(x) nonempty}: coordinate projection of the graph.
    HPolyhedron domain_poly() const;

    bool graph_contains(const RatVector& x, const RatVector& y) const;
};

struct CoderivativeQuery {
    RatVector base;  // (x,y) on the graph
    RatVector v;     // direction in R^p
};

/// D*F(x,y)(v) = {u | (u,-v) in N((x,y); gph F)}: the normal cone is
/// converted to inequality form and the second block substituted with -v.
/// The result may be empty. Throws PointOutsideGraph off the graph.
VPolyhedron coderivative(const PolyhedralMap& F, const CoderivativeQuery& q);

/// N(x; dom F) = D*F(x,y)(0) for every y in F(x); the right side is checked
/// at every vertex of F(x) and at a relative interior point, all of which
/// must agree.
RuleReport domain_normal(const PolyhedralMap& F, const RatVector& x);

/// Subdifferential of mu(x) = inf{phi(x,y) | y in F(x)} at x, against the
/// coderivative formula; the minimizer is produced by an LP over the lifted
/// epigraph (ValueUnattained when the infimum is -infinity).
RuleReport optimal_value_subdiff(const MaxAffineFunction& phi, const PolyhedralMap& F,
                                 const RatVector& x);

/// Chain rule for g(f_1(x),...,f_p(x)) with g componentwise nondecreasing
/// (certified through nonnegative piece gradients and domain normals) and
/// all subdifferentials bounded.
RuleReport componentwise_chain(const MaxAffineFunction& g,
                               const std::vector<MaxAffineFunction>& fns,
                               const RatVector& x);

/// N(x; F^{-1}(Theta)) versus D*F(x,y)(N(y;Theta)).
RuleReport preimage_normal(const PolyhedralMap& F, const HPolyhedron& Theta,
                           const RatVector& x, const RatVector& y);

RuleReport coderivative_sum(const PolyhedralMap& F1, const PolyhedralMap& F2,
                            const RatVector& x, const RatVector& y, const RatVector& v);

RuleReport coderivative_chain(const PolyhedralMap& F, const PolyhedralMap& G,
                              const RatVector& x, const RatVector& z, const RatVector& w);

RuleReport coderivative_intersect(const PolyhedralMap& F1, const PolyhedralMap& F2,
                                  const RatVector& x, const RatVector& y,
                                  const RatVector& v);

/// Coderivative of the solution map S(x) = {y | 0 in F(x,y) + G(x,y)} where
/// F, G map R^{n+p} into R^q; a residual point z in F(x,y) ∩ [-G(x,y)] is
/// located by an LP (NoResidualPoint when none exists).
RuleReport solution_map_coderivative(const PolyhedralMap& F, const PolyhedralMap& G,
                                     std::size_t n, std::size_t p,
                                     const RatVector& x, const RatVector& y,
                                     const RatVector& v);

}  // namespace convexcalc
