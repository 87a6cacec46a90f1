#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "convexcalc/linalg.hpp"

namespace convexcalc {

/// Polyhedron as rational linear constraints: {x | Ax <= b, Ex = d}.
/// May be infeasible; operations that need a nonempty set throw EmptySet.
struct HPolyhedron {
    std::size_t dim = 0;
    RatMatrix A;  // inequality normals
    RatVector b;
    RatMatrix E;  // equality normals
    RatVector d;

    HPolyhedron() = default;
    explicit HPolyhedron(std::size_t n) : dim(n), A(n), E(n) {}

    static HPolyhedron full_space(std::size_t n) { return HPolyhedron(n); }
    static HPolyhedron empty_set(std::size_t n);

    void add_ineq(RatVector a, Rat rhs);
    void add_eq(RatVector e, Rat rhs);

    std::size_t ineq_count() const { return A.row_count(); }
    std::size_t eq_count() const { return E.row_count(); }

    bool contains(const RatVector& x) const;
    /// Inequality row indices that hold with equality at x.
    std::vector<std::size_t> active_rows(const RatVector& x) const;
};

/// Polyhedron as generators:
/// conv(points) + cone(rays) + span(lineality); empty iff points is empty.
struct VPolyhedron {
    std::size_t dim = 0;
    std::vector<RatVector> points;
    std::vector<RatVector> rays;
    std::vector<RatVector> lineality;

    VPolyhedron() = default;
    explicit VPolyhedron(std::size_t n) : dim(n) {}

    static VPolyhedron empty_set(std::size_t n) { return VPolyhedron(n); }
    static VPolyhedron single_point(RatVector p);

    bool empty() const { return points.empty(); }

    /// Drops zero rays/lineality vectors, canonicalizes directions and
    /// dedupes generators. An empty set keeps no generators at all.
    void normalize();
};

/// x -> Ax + b from R^n to R^p.
struct AffineMap {
    RatMatrix A;
    RatVector b;

    AffineMap() = default;
    AffineMap(RatMatrix a, RatVector offset);

    std::size_t in_dim() const { return A.cols; }
    std::size_t out_dim() const { return A.row_count(); }
    RatVector apply(const RatVector& x) const;

    static AffineMap identity(std::size_t n);
};

/// Witness that `point` lies in the relative interior: it satisfies the
/// equalities and the listed implicit rows exactly and every other
/// inequality row strictly.
struct RiCertificate {
    RatVector point;
    std::vector<std::size_t> implicit_rows;
};

// --- feasibility / relative interior -------------------------------------

bool is_feasible(const HPolyhedron& P);

/// Inequality rows that are tight on all of P (one LP per row).
std::vector<std::size_t> implicit_equalities(const HPolyhedron& P);

/// {x | Ex = d, A_impl x = b_impl}: the affine hull, equalities only.
HPolyhedron affine_hull(const HPolyhedron& P);

RiCertificate ri_point(const HPolyhedron& P);

bool ri_contains(const HPolyhedron& P, const RatVector& x);

/// True iff x satisfies every inequality strictly and P has no (nontrivial)
/// equality rows: membership in the topological interior.
bool interior_contains(const HPolyhedron& P, const RatVector& x);

/// Strict-slack LP on the concatenated systems: true iff the relative
/// interiors of all sets share a point.
bool joint_ri_nonempty(const std::vector<HPolyhedron>& sets);

// --- representation conversion (double description) ----------------------

VPolyhedron dd_convert(const HPolyhedron& P);
HPolyhedron dd_convert_back(const VPolyhedron& V);

/// Same conversions without the user-facing dimension cap; used internally
/// on lifted spaces whose inputs were already validated.
VPolyhedron dd_convert_nocap(const HPolyhedron& P);
HPolyhedron dd_convert_back_nocap(const VPolyhedron& V);

// --- set algebra ----------------------------------------------------------

VPolyhedron linear_image(const AffineMap& B, const VPolyhedron& V);
VPolyhedron minkowski_sum(const VPolyhedron& a, const VPolyhedron& b);
VPolyhedron minkowski_diff(const VPolyhedron& a, const VPolyhedron& b);
VPolyhedron negate_set(const VPolyhedron& v);
HPolyhedron intersect(const std::vector<HPolyhedron>& parts);
VPolyhedron project_coords(const VPolyhedron& V, const std::vector<std::size_t>& keep);

// --- membership and equality ----------------------------------------------

bool v_contains(const VPolyhedron& V, const RatVector& x);

/// nullopt when conv(V) is a subset of P; otherwise a point of V violating P.
std::optional<RatVector> subset_witness(const VPolyhedron& V, const HPolyhedron& P);

bool set_equal(const HPolyhedron& P, const HPolyhedron& Q);
bool set_equal(const HPolyhedron& P, const VPolyhedron& Q);
bool set_equal(const VPolyhedron& P, const HPolyhedron& Q);
bool set_equal(const VPolyhedron& P, const VPolyhedron& Q);

// --- helpers shared by the calculus modules --------------------------------

/// Place P's coordinates in a larger space at `offset` (other coords free).
HPolyhedron embed(const HPolyhedron& P, std::size_t total_dim, std::size_t offset);

/// Substitute fixed values for the coordinate block [offset, offset+vals.size())
/// and return the polyhedron in the remaining coordinates.
HPolyhedron substitute_block(const HPolyhedron& P, std::size_t offset, const RatVector& vals);

/// Exact orthogonal projection of an H-polyhedron onto a coordinate subset.
HPolyhedron project_h(const HPolyhedron& P, const std::vector<std::size_t>& keep);

/// Irredundant H-representation of the same set (dd round trip).
HPolyhedron canonicalize(const HPolyhedron& P);

/// Configurable double-description dimension cap (default 8); the CLI reads
/// the CONVEXCALC_DIM_CAP environment variable into this.
std::size_t dim_cap();
void set_dim_cap(std::size_t cap);

}  // namespace convexcalc
