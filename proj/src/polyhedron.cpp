#include "convexcalc/polyhedron.hpp"

#include <algorithm>
#include <atomic>

#include "convexcalc/errors.hpp"
#include "convexcalc/lp.hpp"

namespace convexcalc {

namespace {
std::atomic<std::size_t> g_dim_cap{8};
}

std::size_t dim_cap() { return g_dim_cap.load(); }
void set_dim_cap(std::size_t cap) { g_dim_cap.store(cap); }

// --- HPolyhedron ------------------------------------------------------------

HPolyhedron HPolyhedron::empty_set(std::size_t n) {
    HPolyhedron P(n);
    P.add_ineq(zero_vector(n), Rat(-1));
    return P;
}

void HPolyhedron::add_ineq(RatVector a, Rat rhs) {
    if (a.size() != dim) throw DimensionMismatch("inequality row dim");
    A.rows.push_back(std::move(a));
    b.push_back(std::move(rhs));
}

void HPolyhedron::add_eq(RatVector e, Rat rhs) {
    if (e.size() != dim) throw DimensionMismatch("equality row dim");
    E.rows.push_back(std::move(e));
    d.push_back(std::move(rhs));
}

bool HPolyhedron::contains(const RatVector& x) const {
    if (x.size() != dim) throw DimensionMismatch("membership point dim");
    for (std::size_t i = 0; i < ineq_count(); ++i)
        if (inner(A.rows[i], x) > b[i]) return false;
    for (std::size_t j = 0; j < eq_count(); ++j)
        if (inner(E.rows[j], x) != d[j]) return false;
    return true;
}

std::vector<std::size_t> HPolyhedron::active_rows(const RatVector& x) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ineq_count(); ++i)
        if (inner(A.rows[i], x) == b[i]) out.push_back(i);
    return out;
}

// --- VPolyhedron ------------------------------------------------------------

VPolyhedron VPolyhedron::single_point(RatVector p) {
    VPolyhedron V(p.size());
    V.points.push_back(std::move(p));
    return V;
}

namespace {
void dedupe_sorted(std::vector<RatVector>& vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}
}  // namespace

void VPolyhedron::normalize() {
    if (points.empty()) {
        rays.clear();
        lineality.clear();
        return;
    }
    std::vector<RatVector> rs, ls;
    for (auto& r : rays)
        if (!is_zero(r)) rs.push_back(canonical_direction(r));
    for (auto& l : lineality)
        if (!is_zero(l)) ls.push_back(canonical_line(l));
    dedupe_sorted(points);
    dedupe_sorted(rs);
    dedupe_sorted(ls);
    rays = std::move(rs);
    lineality = std::move(ls);
}

// --- AffineMap --------------------------------------------------------------

AffineMap::AffineMap(RatMatrix a, RatVector offset) : A(std::move(a)), b(std::move(offset)) {
    if (A.row_count() != b.size()) throw DimensionMismatch("affine map offset dim");
}

RatVector AffineMap::apply(const RatVector& x) const { return add(mat_vec(A, x), b); }

AffineMap AffineMap::identity(std::size_t n) {
    RatMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        RatVector row = zero_vector(n);
        row[i] = 1;
        a.rows.push_back(std::move(row));
    }
    return AffineMap(std::move(a), zero_vector(n));
}

// --- feasibility / relative interior ----------------------------------------

bool is_feasible(const HPolyhedron& P) {
    return !lp_infeasible(lp_solve(zero_vector(P.dim), P, Sense::Min));
}

std::vector<std::size_t> implicit_equalities(const HPolyhedron& P) {
    if (!is_feasible(P)) throw EmptySet("implicit_equalities of empty set");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < P.ineq_count(); ++i) {
        ERat lo = lp_extremum(P.A.rows[i], P, Sense::Min);
        if (lo.is_finite() && lo.value == P.b[i]) out.push_back(i);
    }
    return out;
}

HPolyhedron affine_hull(const HPolyhedron& P) {
    auto implicit = implicit_equalities(P);
    HPolyhedron H(P.dim);
    for (std::size_t j = 0; j < P.eq_count(); ++j) H.add_eq(P.E.rows[j], P.d[j]);
    for (auto i : implicit) H.add_eq(P.A.rows[i], P.b[i]);
    return H;
}

namespace {

// max t over {(x,t) | rows_i x + t <= b_i (i slack), rows_i x = b_i (i tight),
// extra equalities, t <= 1}. Returns the LP outcome in (x,t)-space.
struct SlackLP {
    HPolyhedron Q;
    explicit SlackLP(std::size_t n) : Q(n + 1) {
        RatVector tcap = zero_vector(n + 1);
        tcap[n] = 1;
        Q.add_ineq(std::move(tcap), Rat(1));
    }
    void add_strict(const RatVector& a, const Rat& rhs) {
        RatVector row = a;
        row.push_back(Rat(1));
        Q.add_ineq(std::move(row), rhs);
    }
    void add_exact_ineq(const RatVector& a, const Rat& rhs) {
        RatVector row = a;
        row.push_back(Rat(0));
        Q.add_eq(std::move(row), rhs);
    }
    void add_eq(const RatVector& e, const Rat& rhs) {
        RatVector row = e;
        row.push_back(Rat(0));
        Q.add_eq(std::move(row), rhs);
    }
    void add_set(const HPolyhedron& P, const std::vector<std::size_t>& implicit) {
        std::vector<bool> is_impl(P.ineq_count(), false);
        for (auto i : implicit) is_impl[i] = true;
        for (std::size_t i = 0; i < P.ineq_count(); ++i) {
            if (is_impl[i])
                add_exact_ineq(P.A.rows[i], P.b[i]);
            else
                add_strict(P.A.rows[i], P.b[i]);
        }
        for (std::size_t j = 0; j < P.eq_count(); ++j) add_eq(P.E.rows[j], P.d[j]);
    }
    LPOutcome solve(std::size_t n) {
        RatVector obj = zero_vector(n + 1);
        obj[n] = 1;
        return lp_solve(obj, Q, Sense::Max);
    }
};

}  // namespace

RiCertificate ri_point(const HPolyhedron& P) {
    auto implicit = implicit_equalities(P);  // throws EmptySet when infeasible
    SlackLP lp(P.dim);
    lp.add_set(P, implicit);
    auto out = lp.solve(P.dim);
    const auto* opt = lp_optimal(out);
    if (!opt || opt->value <= 0)
        throw std::logic_error("ri_point: slack LP did not certify a relative interior point");
    RatVector x(opt->point.begin(), opt->point.begin() + P.dim);
    return RiCertificate{std::move(x), std::move(implicit)};
}

bool ri_contains(const HPolyhedron& P, const RatVector& x) {
    if (x.size() != P.dim) throw DimensionMismatch("ri_contains point dim");
    if (!P.contains(x)) return false;
    auto implicit = implicit_equalities(P);  // P is nonempty: x is a member
    std::vector<bool> is_impl(P.ineq_count(), false);
    for (auto i : implicit) is_impl[i] = true;
    for (std::size_t i = 0; i < P.ineq_count(); ++i)
        if (!is_impl[i] && inner(P.A.rows[i], x) == P.b[i]) return false;
    return true;
}

bool interior_contains(const HPolyhedron& P, const RatVector& x) {
    if (x.size() != P.dim) throw DimensionMismatch("interior_contains point dim");
    for (std::size_t j = 0; j < P.eq_count(); ++j) {
        if (is_zero(P.E.rows[j])) {
            if (P.d[j] != 0) return false;
        } else {
            return false;
        }
    }
    for (std::size_t i = 0; i < P.ineq_count(); ++i) {
        if (is_zero(P.A.rows[i])) {
            if (P.b[i] < 0) return false;
        } else if (inner(P.A.rows[i], x) >= P.b[i]) {
            return false;
        }
    }
    return true;
}

bool joint_ri_nonempty(const std::vector<HPolyhedron>& sets) {
    if (sets.empty()) throw InvalidInput("joint_ri_nonempty needs at least one set");
    std::size_t n = sets[0].dim;
    for (const auto& P : sets)
        if (P.dim != n) throw DimensionMismatch("joint_ri_nonempty dims");
    SlackLP lp(n);
    for (const auto& P : sets) {
        if (!is_feasible(P)) return false;
        lp.add_set(P, implicit_equalities(P));
    }
    auto out = lp.solve(n);
    const auto* opt = lp_optimal(out);
    return opt && opt->value > 0;
}

// --- set algebra ------------------------------------------------------------

VPolyhedron linear_image(const AffineMap& B, const VPolyhedron& V) {
    if (B.in_dim() != V.dim) throw DimensionMismatch("linear_image dims");
    VPolyhedron out(B.out_dim());
    if (V.empty()) return out;
    for (const auto& p : V.points) out.points.push_back(B.apply(p));
    for (const auto& r : V.rays) out.rays.push_back(mat_vec(B.A, r));
    for (const auto& l : V.lineality) out.lineality.push_back(mat_vec(B.A, l));
    out.normalize();
    return out;
}

VPolyhedron minkowski_sum(const VPolyhedron& a, const VPolyhedron& b) {
    if (a.dim != b.dim) throw DimensionMismatch("minkowski_sum dims");
    VPolyhedron out(a.dim);
    if (a.empty() || b.empty()) return out;
    for (const auto& p : a.points)
        for (const auto& q : b.points) out.points.push_back(add(p, q));
    out.rays = a.rays;
    out.rays.insert(out.rays.end(), b.rays.begin(), b.rays.end());
    out.lineality = a.lineality;
    out.lineality.insert(out.lineality.end(), b.lineality.begin(), b.lineality.end());
    out.normalize();
    return out;
}

VPolyhedron negate_set(const VPolyhedron& v) {
    VPolyhedron out(v.dim);
    for (const auto& p : v.points) out.points.push_back(negate(p));
    for (const auto& r : v.rays) out.rays.push_back(negate(r));
    out.lineality = v.lineality;
    return out;
}

VPolyhedron minkowski_diff(const VPolyhedron& a, const VPolyhedron& b) {
    return minkowski_sum(a, negate_set(b));
}

HPolyhedron intersect(const std::vector<HPolyhedron>& parts) {
    if (parts.empty()) throw InvalidInput("intersect needs at least one set");
    HPolyhedron out(parts[0].dim);
    for (const auto& P : parts) {
        if (P.dim != out.dim) throw DimensionMismatch("intersect dims");
        for (std::size_t i = 0; i < P.ineq_count(); ++i) out.add_ineq(P.A.rows[i], P.b[i]);
        for (std::size_t j = 0; j < P.eq_count(); ++j) out.add_eq(P.E.rows[j], P.d[j]);
    }
    return out;
}

VPolyhedron project_coords(const VPolyhedron& V, const std::vector<std::size_t>& keep) {
    for (auto k : keep)
        if (k >= V.dim) throw BadIndex("project_coords index out of range");
    auto pick = [&](const RatVector& x) {
        RatVector out;
        out.reserve(keep.size());
        for (auto k : keep) out.push_back(x[k]);
        return out;
    };
    VPolyhedron out(keep.size());
    if (V.empty()) return out;
    for (const auto& p : V.points) out.points.push_back(pick(p));
    for (const auto& r : V.rays) out.rays.push_back(pick(r));
    for (const auto& l : V.lineality) out.lineality.push_back(pick(l));
    out.normalize();
    return out;
}

// --- membership -------------------------------------------------------------

bool v_contains(const VPolyhedron& V, const RatVector& x) {
    if (x.size() != V.dim) throw DimensionMismatch("v_contains point dim");
    if (V.empty()) return false;
    std::size_t np = V.points.size(), nr = V.rays.size(), nl = V.lineality.size();
    std::size_t vars = np + nr + nl;
    HPolyhedron Q(vars);
    for (std::size_t c = 0; c < V.dim; ++c) {
        RatVector row(vars, Rat(0));
        for (std::size_t k = 0; k < np; ++k) row[k] = V.points[k][c];
        for (std::size_t k = 0; k < nr; ++k) row[np + k] = V.rays[k][c];
        for (std::size_t k = 0; k < nl; ++k) row[np + nr + k] = V.lineality[k][c];
        Q.add_eq(std::move(row), x[c]);
    }
    RatVector ones(vars, Rat(0));
    for (std::size_t k = 0; k < np; ++k) ones[k] = 1;
    Q.add_eq(std::move(ones), Rat(1));
    for (std::size_t k = 0; k < np + nr; ++k) {
        RatVector row(vars, Rat(0));
        row[k] = -1;
        Q.add_ineq(std::move(row), Rat(0));
    }
    return is_feasible(Q);
}

std::optional<RatVector> subset_witness(const VPolyhedron& V, const HPolyhedron& P) {
    if (V.dim != P.dim) throw DimensionMismatch("subset_witness dims");
    if (V.empty()) return std::nullopt;
    for (const auto& p : V.points)
        if (!P.contains(p)) return p;
    const RatVector& base = V.points.front();

    auto escape = [&](const RatVector& dir) -> std::optional<RatVector> {
        for (std::size_t i = 0; i < P.ineq_count(); ++i) {
            Rat slope = inner(P.A.rows[i], dir);
            if (slope > 0) {
                Rat tau = (P.b[i] - inner(P.A.rows[i], base) + 1) / slope;
                return add(base, scale(tau, dir));
            }
        }
        for (std::size_t j = 0; j < P.eq_count(); ++j)
            if (inner(P.E.rows[j], dir) != 0) return add(base, dir);
        return std::nullopt;
    };

    for (const auto& r : V.rays)
        if (auto w = escape(r)) return w;
    for (const auto& l : V.lineality) {
        if (auto w = escape(l)) return w;
        if (auto w = escape(negate(l))) return w;
    }
    return std::nullopt;
}

// --- lift / substitute helpers ----------------------------------------------

HPolyhedron embed(const HPolyhedron& P, std::size_t total_dim, std::size_t offset) {
    if (offset + P.dim > total_dim) throw DimensionMismatch("embed block out of range");
    auto widen = [&](const RatVector& row) {
        RatVector out = zero_vector(total_dim);
        for (std::size_t j = 0; j < P.dim; ++j) out[offset + j] = row[j];
        return out;
    };
    HPolyhedron out(total_dim);
    for (std::size_t i = 0; i < P.ineq_count(); ++i) out.add_ineq(widen(P.A.rows[i]), P.b[i]);
    for (std::size_t j = 0; j < P.eq_count(); ++j) out.add_eq(widen(P.E.rows[j]), P.d[j]);
    return out;
}

HPolyhedron substitute_block(const HPolyhedron& P, std::size_t offset, const RatVector& vals) {
    if (offset + vals.size() > P.dim) throw DimensionMismatch("substitute block out of range");
    std::size_t rest = P.dim - vals.size();
    auto reduce = [&](const RatVector& row, const Rat& rhs) {
        RatVector out;
        out.reserve(rest);
        Rat shift(0);
        for (std::size_t j = 0; j < P.dim; ++j) {
            if (j >= offset && j < offset + vals.size())
                shift += row[j] * vals[j - offset];
            else
                out.push_back(row[j]);
        }
        return std::pair<RatVector, Rat>(std::move(out), rhs - shift);
    };
    HPolyhedron out(rest);
    for (std::size_t i = 0; i < P.ineq_count(); ++i) {
        auto [row, rhs] = reduce(P.A.rows[i], P.b[i]);
        out.add_ineq(std::move(row), std::move(rhs));
    }
    for (std::size_t j = 0; j < P.eq_count(); ++j) {
        auto [row, rhs] = reduce(P.E.rows[j], P.d[j]);
        out.add_eq(std::move(row), std::move(rhs));
    }
    return out;
}

HPolyhedron project_h(const HPolyhedron& P, const std::vector<std::size_t>& keep) {
    return dd_convert_back_nocap(project_coords(dd_convert_nocap(P), keep));
}

HPolyhedron canonicalize(const HPolyhedron& P) {
    return dd_convert_back_nocap(dd_convert_nocap(P));
}

}  // namespace convexcalc
