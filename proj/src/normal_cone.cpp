#include "convexcalc/normal_cone.hpp"

#include "convexcalc/errors.hpp"
#include "convexcalc/lp.hpp"

namespace convexcalc {

VPolyhedron cone_to_vpoly(const Cone& c) {
    VPolyhedron v(c.dim);
    v.points.push_back(zero_vector(c.dim));
    v.rays = c.generators;
    v.lineality = c.lineality;
    v.normalize();
    return v;
}

HPolyhedron cone_to_hpoly(const Cone& c) { return dd_convert_back_nocap(cone_to_vpoly(c)); }

Cone cone_from_vpoly(const VPolyhedron& v) {
    Cone c(v.dim);
    for (const auto& p : v.points)
        if (!is_zero(p))
            throw InvalidInput("cone_from_vpoly: generator set has a nonzero point");
    if (v.points.empty()) throw InvalidInput("cone_from_vpoly: empty set is not a cone");
    c.generators = v.rays;
    c.lineality = v.lineality;
    return c;
}

Cone cone_sum(const Cone& a, const Cone& b) {
    if (a.dim != b.dim) throw DimensionMismatch("cone_sum dims");
    Cone c(a.dim);
    c.generators = a.generators;
    c.generators.insert(c.generators.end(), b.generators.begin(), b.generators.end());
    c.lineality = a.lineality;
    c.lineality.insert(c.lineality.end(), b.lineality.begin(), b.lineality.end());
    return c;
}

Cone negate_cone(const Cone& c) {
    Cone out(c.dim);
    for (const auto& g : c.generators) out.generators.push_back(negate(g));
    out.lineality = c.lineality;
    return out;
}

bool cone_is_zero(const Cone& c) {
    VPolyhedron v = dd_convert_nocap(cone_to_hpoly(c));
    return v.rays.empty() && v.lineality.empty() && !v.empty();
}

bool cone_member(const Cone& c, const RatVector& v) { return v_contains(cone_to_vpoly(c), v); }

Cone normal_cone(const HPolyhedron& P, const RatVector& x) {
    if (x.size() != P.dim) throw DimensionMismatch("normal_cone point dim");
    if (!P.contains(x)) throw PointOutsideSet("normal_cone at a point outside the set");
    Cone c(P.dim);
    for (auto i : P.active_rows(x)) {
        if (is_zero(P.A.rows[i])) continue;
        c.generators.push_back(P.A.rows[i]);
    }
    for (std::size_t j = 0; j < P.eq_count(); ++j) {
        if (is_zero(P.E.rows[j])) continue;
        c.lineality.push_back(P.E.rows[j]);
    }
    // Definitional self-check: sup <v, . - x> over P must be exactly 0 for
    // every emitted generator and for both signs of each lineality vector.
    auto check = [&](const RatVector& v) {
        ERat sup = lp_extremum(v, P, Sense::Max);
        if (!(sup.is_finite() && sup.value == inner(v, x)))
            throw std::logic_error("normal_cone: generator failed the defining LP");
    };
    for (const auto& g : c.generators) check(g);
    for (const auto& l : c.lineality) {
        check(l);
        check(negate(l));
    }
    return c;
}

std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Equal: return "Equal";
        case Verdict::LhsStrictlySmaller: return "LhsStrictlySmaller";
        case Verdict::RhsStrictlySmaller: return "RhsStrictlySmaller";
        default: return "Incomparable";
    }
}

RuleReport make_report(std::string rule, VPolyhedron lhs, VPolyhedron rhs,
                       bool qualification_holds) {
    RuleReport rep;
    rep.rule = std::move(rule);
    rep.qualification_holds = qualification_holds;

    HPolyhedron lhs_h = dd_convert_back_nocap(lhs);
    HPolyhedron rhs_h = dd_convert_back_nocap(rhs);
    auto lhs_escape = subset_witness(lhs, rhs_h);   // lhs ⊆ rhs fails here
    auto rhs_escape = subset_witness(rhs, lhs_h);   // rhs ⊆ lhs fails here

    if (!lhs_escape && !rhs_escape) {
        rep.verdict = Verdict::Equal;
    } else if (!lhs_escape) {
        rep.verdict = Verdict::LhsStrictlySmaller;
        rep.witness = rhs_escape;
    } else if (!rhs_escape) {
        rep.verdict = Verdict::RhsStrictlySmaller;
        rep.witness = lhs_escape;
    } else {
        rep.verdict = Verdict::Incomparable;
        rep.witness = lhs_escape;
    }
    rep.lhs = std::move(lhs);
    rep.rhs = std::move(rhs);
    return rep;
}

// --- subdifferentials -------------------------------------------------------

VPolyhedron subdifferential(const MaxAffineFunction& f, const RatVector& x) {
    auto fx = f.value(x);
    if (!fx) throw PointOutsideDomain("subdifferential outside the domain");
    RatVector lifted = x;
    lifted.push_back(*fx);
    Cone c = normal_cone(f.epigraph(), lifted);

    // Epigraph normals never point upward; lineality stays horizontal.
    VPolyhedron out(f.n);
    for (const auto& l : c.lineality) {
        if (l[f.n] != 0)
            throw std::logic_error("subdifferential: epigraph lineality with vertical part");
        out.lineality.emplace_back(l.begin(), l.begin() + f.n);
    }
    for (const auto& g : c.generators) {
        Rat last = g[f.n];
        if (last > 0) throw std::logic_error("subdifferential: upward epigraph normal");
        RatVector head(g.begin(), g.begin() + f.n);
        if (last == 0)
            out.rays.push_back(std::move(head));
        else
            out.points.push_back(scale(Rat(-1) / last, head));
    }
    out.normalize();
    return out;
}

bool fermat_check(const MaxAffineFunction& f, const RatVector& x) {
    if (!f.in_domain(x)) throw PointOutsideDomain("fermat_check outside the domain");
    return v_contains(subdifferential(f, x), zero_vector(f.n));
}

bool subdiff_nonempty_on_ri(const MaxAffineFunction& f) {
    RiCertificate cert = ri_point(f.domain);  // EmptySet when dom(f) is empty
    return !subdifferential(f, cert.point).empty();
}

// --- calculus rules ---------------------------------------------------------

RuleReport intersection_rule(const std::vector<HPolyhedron>& sets, const RatVector& x) {
    if (sets.empty()) throw InvalidInput("intersection_rule needs at least one set");
    for (const auto& P : sets)
        if (!P.contains(x))
            throw PointOutsideSet("intersection_rule point outside a factor set");

    // The left side is computed on an irredundant re-representation of the
    // intersection so the two sides do not share row data syntactically.
    Cone lhs = normal_cone(canonicalize(intersect(sets)), x);
    Cone rhs(sets[0].dim);
    for (const auto& P : sets) rhs = cone_sum(rhs, normal_cone(P, x));

    bool qual = joint_ri_nonempty(sets);
    return make_report("intersection", cone_to_vpoly(lhs), cone_to_vpoly(rhs), qual);
}

RuleReport sum_rule(const std::vector<MaxAffineFunction>& fns, const RatVector& x) {
    if (fns.empty()) throw InvalidInput("sum_rule needs at least one function");
    std::vector<HPolyhedron> doms;
    for (const auto& f : fns) {
        if (!f.in_domain(x)) throw PointOutsideDomain("sum_rule point outside a domain");
        doms.push_back(f.domain);
    }
    VPolyhedron lhs = subdifferential(sum_function(fns), x);
    VPolyhedron rhs = subdifferential(fns[0], x);
    for (std::size_t i = 1; i < fns.size(); ++i)
        rhs = minkowski_sum(rhs, subdifferential(fns[i], x));
    bool qual = joint_ri_nonempty(doms);
    return make_report("sum", std::move(lhs), std::move(rhs), qual);
}

namespace {

// Strict-slack LP deciding whether the range of B meets ri(dom f).
bool range_meets_ri_dom(const MaxAffineFunction& f, const AffineMap& B) {
    if (!is_feasible(f.domain)) return false;
    auto implicit = implicit_equalities(f.domain);
    std::vector<bool> is_impl(f.domain.ineq_count(), false);
    for (auto i : implicit) is_impl[i] = true;

    std::size_t n = B.in_dim();
    HPolyhedron Q(n + 1);
    RatMatrix At = transpose(B.A);
    for (std::size_t i = 0; i < f.domain.ineq_count(); ++i) {
        const RatVector& c = f.domain.A.rows[i];
        RatVector row = mat_vec(At, c);
        row.push_back(is_impl[i] ? Rat(0) : Rat(1));
        Rat rhs = f.domain.b[i] - inner(c, B.b);
        if (is_impl[i])
            Q.add_eq(std::move(row), std::move(rhs));
        else
            Q.add_ineq(std::move(row), std::move(rhs));
    }
    for (std::size_t j = 0; j < f.domain.eq_count(); ++j) {
        const RatVector& e = f.domain.E.rows[j];
        RatVector row = mat_vec(At, e);
        row.push_back(Rat(0));
        Q.add_eq(std::move(row), f.domain.d[j] - inner(e, B.b));
    }
    RatVector tcap = zero_vector(n + 1);
    tcap[n] = 1;
    Q.add_ineq(tcap, Rat(1));
    auto out = lp_solve(tcap, Q, Sense::Max);
    const auto* opt = lp_optimal(out);
    return opt && opt->value > 0;
}

}  // namespace

RuleReport chain_rule_affine(const MaxAffineFunction& f, const AffineMap& B,
                             const RatVector& x) {
    if (B.out_dim() != f.n) throw DimensionMismatch("chain_rule_affine dims");
    RatVector y = B.apply(x);
    if (!f.in_domain(y))
        throw PointOutsideDomain("chain_rule_affine: B(x) outside dom f");

    VPolyhedron lhs = subdifferential(compose_affine(f, B), x);
    AffineMap adjoint(transpose(B.A), zero_vector(B.in_dim()));
    VPolyhedron rhs = linear_image(adjoint, subdifferential(f, y));
    bool qual = range_meets_ri_dom(f, B);
    return make_report("chain", std::move(lhs), std::move(rhs), qual);
}

RuleReport max_rule(const std::vector<MaxAffineFunction>& fns, const RatVector& x) {
    if (fns.empty()) throw InvalidInput("max_rule needs at least one function");
    for (const auto& f : fns) {
        if (!f.in_domain(x)) throw PointOutsideDomain("max_rule point outside a domain");
        if (!interior_contains(f.domain, x))
            throw ContinuityHypothesisUnverifiable(
                "max_rule: point not interior to every domain");
    }
    MaxAffineFunction combined = max_function(fns);
    VPolyhedron lhs = subdifferential(combined, x);

    Rat fx = *combined.value(x);
    VPolyhedron rhs(combined.n);
    for (const auto& f : fns) {
        if (*f.value(x) != fx) continue;  // inactive
        VPolyhedron part = subdifferential(f, x);
        rhs.points.insert(rhs.points.end(), part.points.begin(), part.points.end());
        rhs.rays.insert(rhs.rays.end(), part.rays.begin(), part.rays.end());
        rhs.lineality.insert(rhs.lineality.end(), part.lineality.begin(),
                             part.lineality.end());
    }
    rhs.normalize();
    return make_report("max", std::move(lhs), std::move(rhs), true);
}

}  // namespace convexcalc
