#include "convexcalc/oracle.hpp"

#include <algorithm>

#include "convexcalc/errors.hpp"
#include "convexcalc/lp.hpp"

namespace convexcalc {

long Rng::range(long lo, long hi) {
    return lo + static_cast<long>(bits() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rat Rng::rat(long bound) { return Rat(Int(range(-bound, bound)), Int(range(1, bound))); }

Rat Rng::pos_rat(long bound) { return Rat(Int(range(1, bound)), Int(range(1, bound))); }

RatVector Rng::vec(std::size_t n, long bound) {
    RatVector v(n);
    for (auto& e : v) e = rat(bound);
    return v;
}

RatVector Rng::nonzero_vec(std::size_t n, long bound) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        RatVector v = vec(n, bound);
        if (!is_zero(v)) return v;
    }
    RatVector v = zero_vector(n);
    v[0] = 1;
    return v;
}

bool Rng::chance(long num, long den) { return range(1, den) <= num; }

// --- definitional oracles ----------------------------------------------------

bool oracle_normal_membership(const RatVector& v, const HPolyhedron& P, const RatVector& x) {
    if (!P.contains(x)) throw PointOutsideSet("oracle_normal_membership base point");
    LPOutcome out = lp_solve(v, P, Sense::Max);
    const auto* opt = lp_optimal(out);
    return opt && opt->value == inner(v, x);
}

bool oracle_subgradient(const RatVector& v, const MaxAffineFunction& f, const RatVector& x) {
    auto fx = f.value(x);
    if (!fx) throw PointOutsideDomain("oracle_subgradient base point");
    RatVector obj = negate(v);
    obj.push_back(Rat(1));  // minimize t - <v,y> over the epigraph
    LPOutcome out = lp_solve(obj, f.epigraph(), Sense::Min);
    const auto* opt = lp_optimal(out);
    return opt && opt->value == *fx - inner(v, x);
}

VPolyhedron closed_form_subdiff(const MaxAffineFunction& f, const RatVector& x) {
    auto active = f.active_indices(x);  // PointOutsideDomain when outside
    VPolyhedron hull(f.n);
    for (auto i : active) hull.points.push_back(f.pieces[i].first);
    hull.normalize();
    return minkowski_sum(hull, cone_to_vpoly(normal_cone(f.domain, x)));
}

// --- generated instances -------------------------------------------------------

HPolyhedron gen_anchored_poly(Rng& rng, std::size_t n, const RatVector& anchor,
                              const RatVector& base, const InstanceSpec& spec,
                              bool bounded) {
    HPolyhedron P(n);
    const RatVector delta = sub(base, anchor);
    const bool distinct = !is_zero(delta);
    const long rows = rng.range(1, static_cast<long>(spec.max_rows));
    for (long r = 0; r < rows; ++r) {
        RatVector a = rng.nonzero_vec(n, spec.coeff_bound);
        bool tight = distinct && rng.chance(1, 2);
        if (tight) {
            Rat s = inner(a, delta);
            if (s == 0) tight = false;
            else {
                if (s < 0) a = negate(a);
                P.add_ineq(a, inner(a, base));
                continue;
            }
        }
        Rat lo = inner(a, anchor);
        Rat hi = inner(a, base);
        P.add_ineq(a, (lo > hi ? lo : hi) + rng.pos_rat(spec.coeff_bound));
    }
    if (rng.chance(1, 4)) {
        // One equality row through both points.
        RatVector e = rng.nonzero_vec(n, spec.coeff_bound);
        if (distinct) {
            Rat proj = inner(e, delta) / inner(delta, delta);
            e = sub(e, scale(proj, delta));
        }
        if (!is_zero(e)) P.add_eq(e, inner(e, anchor));
    }
    if (bounded) {
        for (std::size_t i = 0; i < n; ++i) {
            Rat lo = anchor[i] < base[i] ? anchor[i] : base[i];
            Rat hi = anchor[i] < base[i] ? base[i] : anchor[i];
            RatVector up = zero_vector(n), down = zero_vector(n);
            up[i] = 1;
            down[i] = -1;
            P.add_ineq(std::move(up), hi + rng.pos_rat(spec.coeff_bound));
            P.add_ineq(std::move(down), -(lo - rng.pos_rat(spec.coeff_bound)));
        }
    }
    return P;
}

MaxAffineFunction gen_maxaffine(Rng& rng, std::size_t n, const InstanceSpec& spec,
                                const RatVector& anchor, const RatVector& base,
                                bool full_domain, bool bounded_domain) {
    const long count = rng.range(1, static_cast<long>(spec.max_pieces));
    std::vector<std::pair<RatVector, Rat>> pieces;
    for (long i = 0; i < count; ++i)
        pieces.emplace_back(rng.vec(n, spec.coeff_bound), rng.rat(spec.coeff_bound));
    if (full_domain) return MaxAffineFunction(n, std::move(pieces));
    return MaxAffineFunction(n, std::move(pieces),
                             gen_anchored_poly(rng, n, anchor, base, spec, bounded_domain));
}

PolyhedralMap gen_map(Rng& rng, std::size_t n, std::size_t p, const InstanceSpec& spec,
                      const RatVector& anchor, const RatVector& base, bool bounded) {
    if (rng.chance(1, 4)) {
        // Affine single-valued map whose graph passes through the anchor.
        RatMatrix A(n);
        for (std::size_t i = 0; i < p; ++i) A.rows.push_back(rng.vec(n, spec.coeff_bound));
        RatVector ax(anchor.begin(), anchor.begin() + n);
        RatVector ay(anchor.begin() + n, anchor.end());
        RatVector off = sub(ay, mat_vec(A, ax));
        return PolyhedralMap::from_affine(AffineMap(std::move(A), std::move(off)));
    }
    return PolyhedralMap(n, p, gen_anchored_poly(rng, n + p, anchor, base, spec, bounded));
}

RatVector sample_point(Rng& rng, const VPolyhedron& V, long bound) {
    if (V.empty()) throw EmptySet("sample_point of empty set");
    RatVector x = zero_vector(V.dim);
    Rat total(0);
    std::vector<Rat> weights;
    for (std::size_t i = 0; i < V.points.size(); ++i) {
        Rat w = rng.pos_rat(bound);
        total += w;
        weights.push_back(std::move(w));
    }
    for (std::size_t i = 0; i < V.points.size(); ++i)
        x = add(x, scale(weights[i] / total, V.points[i]));
    for (const auto& r : V.rays)
        if (rng.chance(1, 3)) x = add(x, scale(rng.pos_rat(bound), r));
    for (const auto& l : V.lineality)
        if (rng.chance(1, 3)) x = add(x, scale(rng.rat(bound), l));
    return x;
}

// --- fuzz harness ---------------------------------------------------------------

namespace {

RatVector concat(const RatVector& a, const RatVector& b) {
    RatVector out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

// A member of P, or nullopt when P is empty.
std::optional<RatVector> member_point(const HPolyhedron& P) {
    LPOutcome out = lp_solve(zero_vector(P.dim), P, Sense::Min);
    if (lp_infeasible(out)) return std::nullopt;
    if (const auto* opt = lp_optimal(out)) return opt->point;
    return lp_unbounded(out)->feasible_point;
}

// The intended base output, adjusted to an actual member of F(x).
std::optional<RatVector> base_output(const PolyhedralMap& F, const RatVector& x,
                                     const RatVector& wanted) {
    if (F.graph.contains(concat(x, wanted))) return wanted;
    return member_point(F.value_poly(x));
}

void oracle_check_points(const VPolyhedron& side, const MaxAffineFunction& f,
                         const RatVector& x, const char* tag) {
    for (const auto& v : side.points)
        if (!oracle_subgradient(v, f, x))
            throw std::logic_error(std::string("oracle rejects subgradient from ") + tag);
}

void oracle_check_cone(const VPolyhedron& side, const HPolyhedron& set, const RatVector& x,
                       const char* tag) {
    for (const auto& v : side.rays)
        if (!oracle_normal_membership(v, set, x))
            throw std::logic_error(std::string("oracle rejects normal from ") + tag);
    for (const auto& l : side.lineality) {
        if (!oracle_normal_membership(l, set, x) ||
            !oracle_normal_membership(negate(l), set, x))
            throw std::logic_error(std::string("oracle rejects normal from ") + tag);
    }
}

// Direction with a nonempty coderivative slice: minus the tail block of a
// normal-cone generator, or a random vector half the time.
RatVector pick_direction(Rng& rng, const HPolyhedron& graph, const RatVector& base,
                         std::size_t head, std::size_t tail, long bound) {
    if (rng.chance(1, 2)) {
        Cone N = normal_cone(graph, base);
        std::vector<RatVector> cands = N.generators;
        cands.insert(cands.end(), N.lineality.begin(), N.lineality.end());
        if (!cands.empty()) {
            const RatVector& g = cands[rng.bits() % cands.size()];
            RatVector v(g.begin() + head, g.begin() + head + tail);
            return negate(v);
        }
    }
    return rng.vec(tail, bound);
}

struct TrialContext {
    Rng rng;
    InstanceSpec spec;
    std::size_t n, p, q;
    explicit TrialContext(std::uint64_t seed, const InstanceSpec& s)
        : rng(seed ^ (s.seed * 0x9E3779B97F4A7C15ull)), spec(s) {
        n = static_cast<std::size_t>(rng.range(1, static_cast<long>(s.max_dim)));
        p = static_cast<std::size_t>(rng.range(1, static_cast<long>(s.max_dim)));
        q = static_cast<std::size_t>(rng.range(1, static_cast<long>(s.max_dim)));
    }
    RatVector pair_points(std::size_t dim, RatVector& base_out) {
        RatVector anchor = rng.vec(dim, spec.coeff_bound);
        base_out = rng.chance(1, 3) ? anchor : rng.vec(dim, spec.coeff_bound);
        return anchor;
    }
};

TrialOutcome run_trial(const std::string& rule, TrialContext& ctx) {
    Rng& rng = ctx.rng;
    const InstanceSpec& spec = ctx.spec;
    const long B = spec.coeff_bound;
    const std::size_t n = ctx.n, p = ctx.p, q = ctx.q;
    TrialOutcome out;

    auto finish = [&](const RuleReport& rep) {
        out.qualified = rep.qualification_holds;
        out.equal = rep.verdict == Verdict::Equal;
        if (out.qualified && !out.equal)
            out.detail = "qualified trial returned " + verdict_str(rep.verdict);
        return out;
    };

    if (rule == "intersection") {
        RatVector base;
        RatVector anchor = ctx.pair_points(n, base);
        std::vector<HPolyhedron> sets;
        const long m = rng.range(2, 3);
        for (long i = 0; i < m; ++i)
            sets.push_back(gen_anchored_poly(rng, n, anchor, base, spec, false));
        RuleReport rep = intersection_rule(sets, base);
        oracle_check_cone(rep.lhs, intersect(sets), base, "intersection lhs");
        oracle_check_cone(rep.rhs, intersect(sets), base, "intersection rhs");
        return finish(rep);
    }
    if (rule == "sum") {
        RatVector base;
        RatVector anchor = ctx.pair_points(n, base);
        std::vector<MaxAffineFunction> fns;
        const long m = rng.range(2, 3);
        for (long i = 0; i < m; ++i)
            fns.push_back(gen_maxaffine(rng, n, spec, anchor, base, rng.chance(1, 3), false));
        RuleReport rep = sum_rule(fns, base);
        MaxAffineFunction total = sum_function(fns);
        oracle_check_points(rep.lhs, total, base, "sum lhs");
        oracle_check_points(rep.rhs, total, base, "sum rhs");
        return finish(rep);
    }
    if (rule == "chain") {
        RatMatrix A(n);
        for (std::size_t i = 0; i < p; ++i) A.rows.push_back(rng.vec(n, B));
        AffineMap Bmap(A, rng.vec(p, B));
        RatVector base_x = rng.vec(n, B);
        RatVector anchor_x = rng.chance(1, 3) ? base_x : rng.vec(n, B);
        // Anchor the domain of f on the range of B so the rule qualifies.
        MaxAffineFunction f = gen_maxaffine(rng, p, spec, Bmap.apply(anchor_x),
                                            Bmap.apply(base_x), rng.chance(1, 3), false);
        RuleReport rep = chain_rule_affine(f, Bmap, base_x);
        MaxAffineFunction composite = compose_affine(f, Bmap);
        oracle_check_points(rep.lhs, composite, base_x, "chain lhs");
        oracle_check_points(rep.rhs, composite, base_x, "chain rhs");
        return finish(rep);
    }
    if (rule == "max") {
        RatVector base = rng.vec(n, B);
        std::vector<MaxAffineFunction> fns;
        const long m = rng.range(2, 3);
        for (long i = 0; i < m; ++i)
            fns.push_back(gen_maxaffine(rng, n, spec, base, base, true, false));
        // Force ties at the base point half the time so several pieces are active.
        if (rng.chance(1, 2)) {
            Rat target = *fns[0].value(base);
            for (std::size_t i = 1; i < fns.size(); ++i) {
                if (!rng.chance(1, 2)) continue;
                Rat cur = *fns[i].value(base);
                for (auto& piece : fns[i].pieces) piece.second += target - cur;
            }
        }
        RuleReport rep = max_rule(fns, base);
        MaxAffineFunction total = max_function(fns);
        oracle_check_points(rep.lhs, total, base, "max lhs");
        oracle_check_points(rep.rhs, total, base, "max rhs");
        return finish(rep);
    }
    if (rule == "optimal-value") {
        RatVector base_xy;
        RatVector anchor_xy = ctx.pair_points(n + p, base_xy);
        PolyhedralMap F = gen_map(rng, n, p, spec, anchor_xy, base_xy, true);
        MaxAffineFunction phi = gen_maxaffine(rng, n + p, spec, anchor_xy, base_xy, true, false);
        RatVector x(base_xy.begin(), base_xy.begin() + n);
        if (!is_feasible(F.value_poly(x))) {
            out.skipped = true;
            out.detail = "x outside dom F";
            return out;
        }
        RuleReport rep = optimal_value_subdiff(phi, F, x);
        // Definitional check through the materialized epigraph of mu.
        HPolyhedron epi_phi = phi.epigraph();
        HPolyhedron lifted = intersect({epi_phi, embed(F.graph, n + p + 1, 0)});
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < n; ++i) keep.push_back(i);
        keep.push_back(n + p);
        HPolyhedron epi_mu = project_h(lifted, keep);
        Rat mu(0);
        for (const auto& [k, val] : rep.notes)
            if (k == "mu") mu = parse_rat(val);
        for (const auto& wvec : rep.lhs.points) {
            RatVector lift = wvec;
            lift.push_back(Rat(-1));
            if (!oracle_normal_membership(lift, epi_mu, concat(x, {mu})))
                throw std::logic_error("oracle rejects optimal-value subgradient");
        }
        return finish(rep);
    }
    if (rule == "componentwise") {
        std::vector<MaxAffineFunction> fns;
        RatVector base = rng.vec(n, B);
        for (std::size_t i = 0; i < p; ++i)
            fns.push_back(gen_maxaffine(rng, n, spec, base, base, true, false));
        // Componentwise-nondecreasing g: nonnegative piece gradients.
        std::vector<std::pair<RatVector, Rat>> gpieces;
        const long count = rng.range(1, static_cast<long>(spec.max_pieces));
        for (long i = 0; i < count; ++i) {
            RatVector a = rng.vec(p, B);
            for (auto& e : a) e = abs(e);
            gpieces.emplace_back(std::move(a), rng.rat(B));
        }
        MaxAffineFunction g(p, std::move(gpieces));
        RuleReport rep = componentwise_chain(g, fns, base);
        return finish(rep);
    }
    if (rule == "preimage") {
        RatVector base_xy;
        RatVector anchor_xy = ctx.pair_points(n + p, base_xy);
        PolyhedralMap F = gen_map(rng, n, p, spec, anchor_xy, base_xy, false);
        RatVector anchor_y(anchor_xy.begin() + n, anchor_xy.end());
        RatVector base_y(base_xy.begin() + n, base_xy.end());
        HPolyhedron Theta = gen_anchored_poly(rng, p, anchor_y, base_y, spec, false);
        RatVector x(base_xy.begin(), base_xy.begin() + n);
        RuleReport rep = preimage_normal(F, Theta, x, base_y);
        HPolyhedron pre = project_h(intersect({F.graph, embed(Theta, n + p, n)}),
                                    [&] {
                                        std::vector<std::size_t> k;
                                        for (std::size_t i = 0; i < n; ++i) k.push_back(i);
                                        return k;
                                    }());
        oracle_check_cone(rep.lhs, pre, x, "preimage lhs");
        oracle_check_cone(rep.rhs, pre, x, "preimage rhs");
        return finish(rep);
    }
    if (rule == "cod-sum") {
        RatVector x = rng.vec(n, B);
        RatVector anchor_x = rng.chance(1, 3) ? x : rng.vec(n, B);
        auto mk = [&](RatVector& y_out) -> std::optional<PolyhedralMap> {
            RatVector ay = rng.vec(p, B);
            RatVector by = rng.chance(1, 3) ? ay : rng.vec(p, B);
            PolyhedralMap F =
                gen_map(rng, n, p, spec, concat(anchor_x, ay), concat(x, by), false);
            auto adj = base_output(F, x, by);
            if (!adj) return std::nullopt;
            y_out = *adj;
            return F;
        };
        RatVector y1, y2;
        auto F1 = mk(y1), F2 = mk(y2);
        if (!F1 || !F2) {
            out.skipped = true;
            out.detail = "x outside dom F";
            return out;
        }
        RatVector y = add(y1, y2);
        RatVector v = pick_direction(rng, F1->graph, concat(x, y1), n, p, B);
        RuleReport rep = coderivative_sum(*F1, *F2, x, y, v);
        return finish(rep);
    }
    if (rule == "cod-chain") {
        RatVector x = rng.vec(n, B);
        RatVector y = rng.vec(p, B);
        RatVector z = rng.vec(q, B);
        RatVector ax = rng.chance(1, 3) ? x : rng.vec(n, B);
        RatVector ay = rng.chance(1, 3) ? y : rng.vec(p, B);
        RatVector az = rng.chance(1, 3) ? z : rng.vec(q, B);
        PolyhedralMap F = gen_map(rng, n, p, spec, concat(ax, ay), concat(x, y), false);
        auto y_adj = base_output(F, x, y);
        if (!y_adj) {
            out.skipped = true;
            out.detail = "x outside dom F";
            return out;
        }
        y = *y_adj;
        PolyhedralMap G = gen_map(rng, p, q, spec, concat(ay, az), concat(y, z), false);
        auto z_adj = base_output(G, y, z);
        if (!z_adj) {
            out.skipped = true;
            out.detail = "y outside dom G";
            return out;
        }
        z = *z_adj;
        RatVector w = pick_direction(rng, G.graph, concat(y, z), p, q, B);
        RuleReport rep = coderivative_chain(F, G, x, z, w);
        return finish(rep);
    }
    if (rule == "cod-intersect") {
        RatVector base;
        RatVector anchor = ctx.pair_points(n + p, base);
        PolyhedralMap F1 = gen_map(rng, n, p, spec, anchor, base, false);
        PolyhedralMap F2 = gen_map(rng, n, p, spec, anchor, base, false);
        if (!F1.graph.contains(base) || !F2.graph.contains(base)) {
            out.skipped = true;
            out.detail = "base escaped a graph";
            return out;
        }
        RatVector x(base.begin(), base.begin() + n);
        RatVector y(base.begin() + n, base.end());
        RatVector v = pick_direction(rng, F1.graph, base, n, p, B);
        RuleReport rep = coderivative_intersect(F1, F2, x, y, v);
        return finish(rep);
    }
    if (rule == "domain") {
        RatVector base;
        RatVector anchor = ctx.pair_points(n + p, base);
        PolyhedralMap F = gen_map(rng, n, p, spec, anchor, base, false);
        RatVector x(base.begin(), base.begin() + n);
        RuleReport rep = domain_normal(F, x);
        oracle_check_cone(rep.lhs, F.domain_poly(), x, "domain lhs");
        oracle_check_cone(rep.rhs, F.domain_poly(), x, "domain rhs");
        for (const auto& [k, val] : rep.notes)
            if (k == "fiber_points_agree" && val != "true")
                throw std::logic_error("domain formula disagrees across the fiber");
        return finish(rep);
    }
    if (rule == "solution-map") {
        RatVector xy = rng.vec(n + p, B);
        RatVector axy = rng.chance(1, 3) ? xy : rng.vec(n + p, B);
        RatVector z = rng.vec(q, B);
        RatVector az = rng.chance(1, 3) ? z : rng.vec(q, B);
        PolyhedralMap F = gen_map(rng, n + p, q, spec, concat(axy, az), concat(xy, z), false);
        PolyhedralMap G =
            gen_map(rng, n + p, q, spec, concat(axy, negate(az)), concat(xy, negate(z)), false);
        RatVector x(xy.begin(), xy.begin() + n);
        RatVector y(xy.begin() + n, xy.end());
        RatVector v = rng.vec(p, B);
        RuleReport rep = solution_map_coderivative(F, G, n, p, x, y, v);
        return finish(rep);
    }
    throw InvalidInput("unknown rule id: " + rule);
}

}  // namespace

const std::vector<std::string>& rule_ids() {
    static const std::vector<std::string> ids = {
        "intersection", "sum",        "chain",     "max",
        "optimal-value", "componentwise", "preimage", "cod-sum",
        "cod-chain",    "cod-intersect", "domain",  "solution-map"};
    return ids;
}

TrialOutcome verify_rule(const std::string& rule, std::uint64_t seed,
                         const InstanceSpec& spec) {
    const auto& ids = rule_ids();
    if (std::find(ids.begin(), ids.end(), rule) == ids.end())
        throw InvalidInput("unknown rule id: " + rule);
    TrialContext ctx(seed, spec);
    try {
        return run_trial(rule, ctx);
    } catch (const Error& e) {
        // Precondition violations of generated instances are skips, not failures.
        TrialOutcome out;
        out.skipped = true;
        out.detail = std::string(e.code()) + ": " + e.what();
        return out;
    }
}

FuzzReport fuzz_rule(const std::string& rule, const InstanceSpec& spec, std::size_t trials) {
    FuzzReport rep;
    rep.rule = rule;
    for (std::size_t t = 0; t < trials; ++t) {
        TrialOutcome out = verify_rule(rule, spec.seed + t, spec);
        ++rep.trials;
        if (out.skipped) {
            ++rep.skipped;
            continue;
        }
        if (out.qualified) {
            ++rep.qualified_trials;
            if (out.equal)
                ++rep.equal_count;
            else
                rep.witnesses.push_back("seed " + std::to_string(spec.seed + t) + ": " +
                                        out.detail);
        }
    }
    return rep;
}

}  // namespace convexcalc
