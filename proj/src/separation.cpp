#include "convexcalc/separation.hpp"

#include "convexcalc/errors.hpp"
#include "convexcalc/lp.hpp"

namespace convexcalc {

namespace {

// Projection of x onto the affine set {z | Mz = c}: z = x + M^T lambda with
// (M M^T) lambda = c - Mx. Consistent solutions give a unique z even when
// the multiplier is not unique. nullopt when the affine set is empty.
std::optional<RatVector> project_affine(const RatVector& x, const RatMatrix& M,
                                        const RatVector& c) {
    if (M.row_count() == 0) return x;
    RatMatrix gram = mat_mul(M, transpose(M));
    RatVector rhs = sub(c, mat_vec(M, x));
    auto lambda = solve_linear(gram, rhs);
    if (!lambda) return std::nullopt;
    RatVector z = add(x, mat_vec(transpose(M), *lambda));
    // Guard against inconsistent input rows (gram system solvable but Mz != c).
    if (mat_vec(M, z) != c) return std::nullopt;
    return z;
}

}  // namespace

ProjectionResult euclid_project(const RatVector& x, const HPolyhedron& P) {
    if (x.size() != P.dim) throw DimensionMismatch("euclid_project point dim");
    if (P.ineq_count() > 20)
        throw EnumerationCapExceeded("euclid_project supports at most 20 inequality rows");
    if (!is_feasible(P)) throw EmptySet("euclid_project onto empty set");

    const std::size_t m = P.ineq_count();
    const std::size_t max_active = std::min<std::size_t>(m, P.dim);

    std::optional<RatVector> best;
    Rat best_dist;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
        std::size_t size = 0;
        for (std::uint64_t t = mask; t; t >>= 1) size += t & 1;
        if (size > max_active) continue;

        RatMatrix M(P.dim);
        RatVector c;
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1) {
                M.rows.push_back(P.A.rows[i]);
                c.push_back(P.b[i]);
            }
        for (std::size_t j = 0; j < P.eq_count(); ++j) {
            M.rows.push_back(P.E.rows[j]);
            c.push_back(P.d[j]);
        }

        auto z = project_affine(x, M, c);
        if (!z || !P.contains(*z)) continue;
        Rat dist = inner(sub(x, *z), sub(x, *z));
        if (!best || dist < best_dist) {
            best = z;
            best_dist = dist;
        } else if (dist == best_dist && *z != *best) {
            throw std::logic_error("euclid_project: two distinct nearest points");
        }
    }
    if (!best) throw std::logic_error("euclid_project: no feasible candidate found");

    // Certify optimality: max <x - z, w - z> over P must be exactly 0.
    RatVector v = sub(x, *best);
    ERat sup = lp_extremum(v, P, Sense::Max);
    if (!(sup.is_finite() && sup.value == inner(v, *best)))
        throw std::logic_error("euclid_project: variational inequality failed");

    return ProjectionResult{*best, best_dist, P.active_rows(*best)};
}

SeparationCertificate strictly_separate(const RatVector& x, const HPolyhedron& P) {
    if (x.size() != P.dim) throw DimensionMismatch("strictly_separate point dim");
    if (P.contains(x)) throw PointInsideSet("strictly_separate: point belongs to the set");
    ProjectionResult proj = euclid_project(x, P);
    RatVector v = sub(x, proj.point);

    SeparationCertificate cert;
    cert.v = v;
    cert.sup_left = lp_extremum(v, P, Sense::Max);
    cert.inf_left = lp_extremum(v, P, Sense::Min);
    cert.sup_right = cert.inf_right = ERat::finite(inner(v, x));
    if (!(cert.sup_left < cert.sup_right))
        throw std::logic_error("strictly_separate: certificate failed LP verification");
    return cert;
}

SeparationOutcome properly_separate(const HPolyhedron& P1, const HPolyhedron& P2) {
    if (P1.dim != P2.dim) throw DimensionMismatch("properly_separate dims");
    if (!is_feasible(P1) || !is_feasible(P2))
        throw EmptySet("properly_separate needs nonempty sets");

    VPolyhedron diff = minkowski_diff(dd_convert_nocap(P1), dd_convert_nocap(P2));
    HPolyhedron diff_h = dd_convert_back_nocap(diff);
    RatVector zero = zero_vector(P1.dim);

    if (ri_contains(diff_h, zero)) return SeparationOutcome{false, std::nullopt};

    RatVector v;
    if (!diff_h.contains(zero)) {
        v = strictly_separate(zero, diff_h).v;
    } else {
        // 0 sits on the boundary: any facet of the difference set active at 0
        // separates properly (facet rows are never implicit equalities here).
        for (std::size_t i = 0; i < diff_h.ineq_count(); ++i)
            if (diff_h.b[i] == 0) {
                v = diff_h.A.rows[i];
                break;
            }
        if (v.empty())
            throw std::logic_error("properly_separate: no active facet at the origin");
    }

    SeparationCertificate cert;
    cert.v = v;
    cert.sup_left = lp_extremum(v, P1, Sense::Max);
    cert.inf_left = lp_extremum(v, P1, Sense::Min);
    cert.sup_right = lp_extremum(v, P2, Sense::Max);
    cert.inf_right = lp_extremum(v, P2, Sense::Min);
    if (!(cert.sup_left <= cert.inf_right) || !(cert.inf_left < cert.sup_right))
        throw std::logic_error("properly_separate: certificate failed LP verification");
    return SeparationOutcome{true, std::move(cert)};
}

bool check_basic_qc(const HPolyhedron& P1, const HPolyhedron& P2, const RatVector& x) {
    if (P1.dim != P2.dim) throw DimensionMismatch("check_basic_qc dims");
    if (!P1.contains(x) || !P2.contains(x))
        throw PointOutsideSet("check_basic_qc point outside the intersection");
    Cone n1 = normal_cone(P1, x);
    Cone n2 = normal_cone(P2, x);
    HPolyhedron meet =
        intersect({cone_to_hpoly(n1), cone_to_hpoly(negate_cone(n2))});
    VPolyhedron v = dd_convert_nocap(meet);
    return v.rays.empty() && v.lineality.empty();
}

}  // namespace convexcalc
