#include "convexcalc/setvalued.hpp"

#include <algorithm>

#include "convexcalc/errors.hpp"
#include "convexcalc/lp.hpp"

namespace convexcalc {

namespace {

RatVector concat(const RatVector& a, const RatVector& b) {
    RatVector out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::vector<std::size_t> iota_range(std::size_t from, std::size_t to) {
    std::vector<std::size_t> out;
    for (std::size_t i = from; i < to; ++i) out.push_back(i);
    return out;
}

// Place P's coordinate j at position coord_of[j] of a larger space.
HPolyhedron embed_map(const HPolyhedron& P, std::size_t total,
                      const std::vector<std::size_t>& coord_of) {
    auto widen = [&](const RatVector& row) {
        RatVector out = zero_vector(total);
        for (std::size_t j = 0; j < P.dim; ++j) out[coord_of[j]] = row[j];
        return out;
    };
    HPolyhedron out(total);
    for (std::size_t i = 0; i < P.ineq_count(); ++i) out.add_ineq(widen(P.A.rows[i]), P.b[i]);
    for (std::size_t j = 0; j < P.eq_count(); ++j) out.add_eq(widen(P.E.rows[j]), P.d[j]);
    return out;
}

// Negate the coordinate block [offset, offset+len): the image of P under the
// corresponding reflection.
HPolyhedron flip_block(const HPolyhedron& P, std::size_t offset, std::size_t len) {
    HPolyhedron out = P;
    for (auto& row : out.A.rows)
        for (std::size_t j = offset; j < offset + len; ++j) row[j] = -row[j];
    for (auto& row : out.E.rows)
        for (std::size_t j = offset; j < offset + len; ++j) row[j] = -row[j];
    return out;
}

// Decomposition points to evaluate a per-base-point formula at: the vertices
// of the (nonempty) polyhedron plus one relative interior point. The relative
// interior point realizes the intersection over the full set: its active set
// is minimal, so its term is contained in every other term.
std::vector<RatVector> eval_points(const HPolyhedron& P) {
    std::vector<RatVector> pts = dd_convert_nocap(P).points;
    pts.push_back(ri_point(P).point);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

VPolyhedron intersect_vpolys(const std::vector<VPolyhedron>& parts) {
    std::vector<HPolyhedron> hs;
    for (const auto& v : parts) hs.push_back(dd_convert_back_nocap(v));
    return dd_convert_nocap(intersect(hs));
}

// D* of a raw graph at a base point: slice the graph normal cone at -v.
VPolyhedron coderivative_of_graph(const HPolyhedron& graph, std::size_t n, std::size_t p,
                                  const RatVector& base, const RatVector& v) {
    if (v.size() != p) throw DimensionMismatch("coderivative direction dim");
    Cone N = normal_cone(graph, base);
    HPolyhedron cone_h = cone_to_hpoly(N);
    return dd_convert_nocap(substitute_block(cone_h, n, negate(v)));
}

}  // namespace

// --- PolyhedralMap -----------------------------------------------------------

PolyhedralMap::PolyhedralMap(std::size_t in_dim, std::size_t out_dim, HPolyhedron g)
    : n(in_dim), p(out_dim), graph(std::move(g)) {
    if (graph.dim != n + p) throw DimensionMismatch("polyhedral map graph dim");
}

PolyhedralMap PolyhedralMap::from_affine(const AffineMap& B) {
    std::size_t n = B.in_dim(), p = B.out_dim();
    HPolyhedron g(n + p);
    for (std::size_t i = 0; i < p; ++i) {
        RatVector row = B.A.rows[i];
        row.resize(n + p, Rat(0));
        row[n + i] = -1;
        g.add_eq(std::move(row), -B.b[i]);
    }
    return PolyhedralMap(n, p, std::move(g));
}

HPolyhedron PolyhedralMap::value_poly(const RatVector& x) const {
    if (x.size() != n) throw DimensionMismatch("value_poly argument dim");
    return substitute_block(graph, 0, x);
}

HPolyhedron PolyhedralMap::domain_poly() const { return project_h(graph, iota_range(0, n)); }

bool PolyhedralMap::graph_contains(const RatVector& x, const RatVector& y) const {
    return graph.contains(concat(x, y));
}

// --- coderivative ------------------------------------------------------------

VPolyhedron coderivative(const PolyhedralMap& F, const CoderivativeQuery& q) {
    if (q.base.size() != F.n + F.p) throw DimensionMismatch("coderivative base dim");
    if (!F.graph.contains(q.base))
        throw PointOutsideGraph("coderivative base point off the graph");
    return coderivative_of_graph(F.graph, F.n, F.p, q.base, q.v);
}

// --- domain formula ----------------------------------------------------------

RuleReport domain_normal(const PolyhedralMap& F, const RatVector& x) {
    HPolyhedron dom = F.domain_poly();
    if (!dom.contains(x)) throw PointOutsideDomain("domain_normal point outside dom F");

    VPolyhedron lhs = cone_to_vpoly(normal_cone(dom, x));

    HPolyhedron fiber = F.value_poly(x);
    std::vector<VPolyhedron> terms;
    for (const auto& y : eval_points(fiber))
        terms.push_back(coderivative(F, {concat(x, y), zero_vector(F.p)}));

    bool agree = true;
    for (std::size_t i = 1; i < terms.size(); ++i)
        if (!set_equal(terms[0], terms[i])) agree = false;

    RuleReport rep = make_report("domain", std::move(lhs), std::move(terms[0]), true);
    rep.notes.emplace_back("fiber_points_agree", agree ? "true" : "false");
    return rep;
}

// --- optimal value -----------------------------------------------------------

RuleReport optimal_value_subdiff(const MaxAffineFunction& phi, const PolyhedralMap& F,
                                 const RatVector& x) {
    const std::size_t n = F.n, p = F.p;
    if (phi.n != n + p) throw DimensionMismatch("optimal_value_subdiff dims");
    if (x.size() != n) throw DimensionMismatch("optimal_value_subdiff point dim");

    // Locate a minimizer: min t over {(x,y,t) in epi(phi), (x,y) in gph F, x fixed}.
    HPolyhedron feas = phi.epigraph();
    {
        HPolyhedron lifted_graph = embed(F.graph, n + p + 1, 0);
        feas = intersect({feas, lifted_graph});
        for (std::size_t i = 0; i < n; ++i) {
            RatVector row = zero_vector(n + p + 1);
            row[i] = 1;
            feas.add_eq(std::move(row), x[i]);
        }
    }
    RatVector obj = zero_vector(n + p + 1);
    obj[n + p] = 1;
    LPOutcome out = lp_solve(obj, feas, Sense::Min);
    if (lp_infeasible(out))
        throw PointOutsideDomain("optimal_value_subdiff: mu(x) is +infinity");
    if (lp_unbounded(out))
        throw ValueUnattained("optimal_value_subdiff: mu(x) is -infinity");
    const auto& opt = *lp_optimal(out);
    RatVector y(opt.point.begin() + n, opt.point.begin() + n + p);
    RatVector base = concat(x, y);

    VPolyhedron dphi = subdifferential(phi, base);
    Cone N = normal_cone(F.graph, base);

    // Reference route: {w | (w, 0) in dphi + N}.
    VPolyhedron lhs;
    {
        VPolyhedron sum = minkowski_sum(dphi, cone_to_vpoly(N));
        HPolyhedron sum_h = dd_convert_back_nocap(sum);
        lhs = dd_convert_nocap(substitute_block(sum_h, n, zero_vector(p)));
    }

    // Coderivative route, with the union over (u,v) in dphi taken exactly:
    // image of {(u,v,rho) | (u,v) in dphi, (rho,-v) in N} under u + rho.
    VPolyhedron rhs;
    {
        const std::size_t total = (n + p) + n;
        HPolyhedron Q = embed(dd_convert_back_nocap(dphi), total, 0);
        HPolyhedron cone_h = cone_to_hpoly(N);
        auto lift_row = [&](const RatVector& c) {
            // <c_head, rho> - <c_tail, v> <= 0 in (u,v,rho)-coordinates
            RatVector row = zero_vector(total);
            for (std::size_t j = 0; j < n; ++j) row[n + p + j] = c[j];
            for (std::size_t j = 0; j < p; ++j) row[n + j] = -c[n + j];
            return row;
        };
        for (std::size_t i = 0; i < cone_h.ineq_count(); ++i)
            Q.add_ineq(lift_row(cone_h.A.rows[i]), cone_h.b[i]);
        for (std::size_t j = 0; j < cone_h.eq_count(); ++j)
            Q.add_eq(lift_row(cone_h.E.rows[j]), cone_h.d[j]);

        RatMatrix image(total);
        for (std::size_t i = 0; i < n; ++i) {
            RatVector row = zero_vector(total);
            row[i] = 1;
            row[n + p + i] = 1;
            image.rows.push_back(std::move(row));
        }
        rhs = linear_image(AffineMap(std::move(image), zero_vector(n)),
                           dd_convert_nocap(Q));
    }

    bool qual = joint_ri_nonempty({phi.domain, F.graph});
    RuleReport rep = make_report("optimal-value", std::move(lhs), std::move(rhs), qual);
    rep.notes.emplace_back("mu", rat_str(opt.value));
    return rep;
}

// --- componentwise chain rule --------------------------------------------------

RuleReport componentwise_chain(const MaxAffineFunction& g,
                               const std::vector<MaxAffineFunction>& fns,
                               const RatVector& x) {
    const std::size_t p = fns.size();
    const std::size_t n = x.size();
    if (g.n != p) throw DimensionMismatch("componentwise_chain: g dim vs component count");
    for (const auto& f : fns) {
        if (f.n != n) throw DimensionMismatch("componentwise_chain component dim");
        if (f.domain.ineq_count() != 0 || f.domain.eq_count() != 0)
            throw InvalidInput("componentwise_chain needs real-valued components");
    }

    // Monotonicity certificate: nonnegative piece gradients, and a domain
    // that is recession-closed under decreases (nonnegative inequality
    // normals, no nontrivial equality rows).
    for (const auto& [a, b] : g.pieces)
        for (const auto& e : a)
            if (e < 0)
                throw MonotonicityUncertified("componentwise_chain: negative piece gradient");
    for (const auto& row : g.domain.A.rows)
        for (const auto& e : row)
            if (e < 0)
                throw MonotonicityUncertified("componentwise_chain: negative domain normal");
    for (const auto& row : g.domain.E.rows)
        if (!is_zero(row))
            throw MonotonicityUncertified("componentwise_chain: equality row in dom g");

    RatVector hx(p);
    for (std::size_t i = 0; i < p; ++i) hx[i] = *fns[i].value(x);
    if (!g.in_domain(hx)) throw PointOutsideDomain("componentwise_chain: h(x) outside dom g");

    VPolyhedron dg = subdifferential(g, hx);
    std::vector<VPolyhedron> dfs;
    for (const auto& f : fns) dfs.push_back(subdifferential(f, x));
    auto bounded = [](const VPolyhedron& v) { return v.rays.empty() && v.lineality.empty(); };
    if (!bounded(dg)) throw UnboundedSubdifferential("componentwise_chain: dg unbounded");
    for (const auto& df : dfs)
        if (!bounded(df)) throw UnboundedSubdifferential("componentwise_chain: df unbounded");

    // Piece tuples of the symbolic composite.
    std::size_t tuple_count = 1;
    for (const auto& f : fns) tuple_count = std::min<std::size_t>(tuple_count * f.pieces.size(), 10001);
    if (tuple_count * std::max<std::size_t>(g.pieces.size(), g.domain.ineq_count()) > 10000)
        throw PieceCapExceeded("componentwise_chain: composite expansion too large");

    std::vector<std::vector<std::size_t>> tuples;
    {
        std::vector<std::size_t> idx(p, 0);
        for (;;) {
            tuples.push_back(idx);
            std::size_t k = 0;
            while (k < p) {
                if (++idx[k] < fns[k].pieces.size()) break;
                idx[k] = 0;
                ++k;
            }
            if (k == p) break;
        }
    }

    auto tuple_piece = [&](const RatVector& coeff, const std::vector<std::size_t>& idx) {
        RatVector grad = zero_vector(n);
        Rat off(0);
        for (std::size_t i = 0; i < p; ++i) {
            const auto& [a, b] = fns[i].pieces[idx[i]];
            grad = add(grad, scale(coeff[i], a));
            off += coeff[i] * b;
        }
        return std::pair<RatVector, Rat>(std::move(grad), std::move(off));
    };

    std::vector<std::pair<RatVector, Rat>> pieces;
    for (const auto& [c, dconst] : g.pieces)
        for (const auto& idx : tuples) {
            auto [grad, off] = tuple_piece(c, idx);
            pieces.emplace_back(std::move(grad), off + dconst);
        }
    HPolyhedron dom(n);
    for (std::size_t r = 0; r < g.domain.ineq_count(); ++r)
        for (const auto& idx : tuples) {
            auto [grad, off] = tuple_piece(g.domain.A.rows[r], idx);
            dom.add_ineq(std::move(grad), g.domain.b[r] - off);
        }
    MaxAffineFunction composite(n, std::move(pieces), std::move(dom));
    VPolyhedron lhs = subdifferential(composite, x);

    // Right side: convex hull over vertex tuples of sum gamma_i v_i.
    VPolyhedron rhs(n);
    {
        std::vector<std::vector<std::size_t>> vertex_tuples;
        std::vector<std::size_t> idx(p, 0);
        for (;;) {
            vertex_tuples.push_back(idx);
            std::size_t k = 0;
            while (k < p) {
                if (++idx[k] < dfs[k].points.size()) break;
                idx[k] = 0;
                ++k;
            }
            if (k == p) break;
        }
        for (const auto& gamma : dg.points)
            for (const auto& vt : vertex_tuples) {
                RatVector pt = zero_vector(n);
                for (std::size_t i = 0; i < p; ++i)
                    pt = add(pt, scale(gamma[i], dfs[i].points[vt[i]]));
                rhs.points.push_back(std::move(pt));
            }
        rhs.normalize();
    }

    // Qualification: some (u, lambda) with lambda in ri(dom g) and
    // lambda_i > f_i(u) for every i, decided by a strict-slack LP.
    bool qual = false;
    {
        auto implicit = implicit_equalities(g.domain);
        std::vector<bool> is_impl(g.domain.ineq_count(), false);
        for (auto i : implicit) is_impl[i] = true;
        // variables (u, lambda, t)
        HPolyhedron Q(n + p + 1);
        for (std::size_t r = 0; r < g.domain.ineq_count(); ++r) {
            RatVector row = zero_vector(n + p + 1);
            for (std::size_t i = 0; i < p; ++i) row[n + i] = g.domain.A.rows[r][i];
            row[n + p] = is_impl[r] ? Rat(0) : Rat(1);
            if (is_impl[r])
                Q.add_eq(std::move(row), g.domain.b[r]);
            else
                Q.add_ineq(std::move(row), g.domain.b[r]);
        }
        for (std::size_t i = 0; i < p; ++i)
            for (const auto& [a, b] : fns[i].pieces) {
                RatVector row = zero_vector(n + p + 1);
                for (std::size_t j = 0; j < n; ++j) row[j] = a[j];
                row[n + i] = -1;
                row[n + p] = 1;
                Q.add_ineq(std::move(row), -b);  // <a,u>+b - lambda_i + t <= 0
            }
        RatVector tcap = zero_vector(n + p + 1);
        tcap[n + p] = 1;
        Q.add_ineq(tcap, Rat(1));
        auto out = lp_solve(tcap, Q, Sense::Max);
        const auto* opt = lp_optimal(out);
        qual = opt && opt->value > 0;
    }
    return make_report("componentwise", std::move(lhs), std::move(rhs), qual);
}

// --- preimage ------------------------------------------------------------------

RuleReport preimage_normal(const PolyhedralMap& F, const HPolyhedron& Theta,
                           const RatVector& x, const RatVector& y) {
    const std::size_t n = F.n, p = F.p;
    if (Theta.dim != p) throw DimensionMismatch("preimage_normal Theta dim");
    if (!F.graph_contains(x, y) || !Theta.contains(y))
        throw BasePointInvalid("preimage_normal: y not in F(x) ∩ Theta");

    HPolyhedron theta_lift = embed(Theta, n + p, n);
    HPolyhedron preimage = project_h(intersect({F.graph, theta_lift}), iota_range(0, n));
    VPolyhedron lhs = cone_to_vpoly(normal_cone(preimage, x));

    // {u | exists v in N(y;Theta): (u,-v) in N((x,y);gph F)} via a lifted
    // cone intersection in (u,v)-space projected to u.
    VPolyhedron rhs;
    {
        HPolyhedron ngraph = cone_to_hpoly(normal_cone(F.graph, concat(x, y)));
        HPolyhedron ntheta = cone_to_hpoly(normal_cone(Theta, y));
        HPolyhedron Q(n + p);
        for (std::size_t i = 0; i < ngraph.ineq_count(); ++i) {
            RatVector row = ngraph.A.rows[i];
            for (std::size_t j = n; j < n + p; ++j) row[j] = -row[j];
            Q.add_ineq(std::move(row), ngraph.b[i]);
        }
        for (std::size_t j = 0; j < ngraph.eq_count(); ++j) {
            RatVector row = ngraph.E.rows[j];
            for (std::size_t k = n; k < n + p; ++k) row[k] = -row[k];
            Q.add_eq(std::move(row), ngraph.d[j]);
        }
        HPolyhedron vcone = embed(ntheta, n + p, n);
        Q = intersect({Q, vcone});
        rhs = project_coords(dd_convert_nocap(Q), iota_range(0, n));
    }

    bool qual = joint_ri_nonempty({F.graph, theta_lift});
    return make_report("preimage", std::move(lhs), std::move(rhs), qual);
}

// --- coderivative sum ------------------------------------------------------------

RuleReport coderivative_sum(const PolyhedralMap& F1, const PolyhedralMap& F2,
                            const RatVector& x, const RatVector& y, const RatVector& v) {
    if (F1.n != F2.n || F1.p != F2.p) throw DimensionMismatch("coderivative_sum map dims");
    const std::size_t n = F1.n, p = F1.p;

    // gph(F1+F2) from the lifted polyhedron {(x,y1,y2,y) | yi in Fi(x), y=y1+y2}.
    std::vector<std::size_t> c1 = iota_range(0, n + p);
    std::vector<std::size_t> c2 = iota_range(0, n);
    for (std::size_t j = 0; j < p; ++j) c2.push_back(n + p + j);
    HPolyhedron lifted =
        intersect({embed_map(F1.graph, n + 3 * p, c1), embed_map(F2.graph, n + 3 * p, c2)});
    for (std::size_t j = 0; j < p; ++j) {
        RatVector row = zero_vector(n + 3 * p);
        row[n + j] = 1;
        row[n + p + j] = 1;
        row[n + 2 * p + j] = -1;
        lifted.add_eq(std::move(row), Rat(0));
    }
    std::vector<std::size_t> keep = iota_range(0, n);
    for (std::size_t j = 0; j < p; ++j) keep.push_back(n + 2 * p + j);
    HPolyhedron sum_graph = project_h(lifted, keep);
    PolyhedralMap sum_map(n, p, sum_graph);

    if (!sum_map.graph_contains(x, y))
        throw BasePointInvalid("coderivative_sum: y not in (F1+F2)(x)");
    VPolyhedron lhs = coderivative(sum_map, {concat(x, y), v});

    // Splitting polyhedron S(x,y) = {(y1,y2) | y1+y2 = y, yi in Fi(x)}.
    HPolyhedron split(2 * p);
    split = intersect({embed_map(F1.value_poly(x), 2 * p, iota_range(0, p)),
                       embed_map(F2.value_poly(x), 2 * p, iota_range(p, 2 * p))});
    for (std::size_t j = 0; j < p; ++j) {
        RatVector row = zero_vector(2 * p);
        row[j] = 1;
        row[p + j] = 1;
        split.add_eq(std::move(row), y[j]);
    }

    std::vector<VPolyhedron> terms;
    for (const auto& dec : eval_points(split)) {
        RatVector y1(dec.begin(), dec.begin() + p);
        RatVector y2(dec.begin() + p, dec.end());
        terms.push_back(minkowski_sum(coderivative(F1, {concat(x, y1), v}),
                                      coderivative(F2, {concat(x, y2), v})));
    }
    bool agree = true;
    for (std::size_t i = 1; i < terms.size(); ++i)
        if (!set_equal(terms[0], terms[i])) agree = false;
    VPolyhedron rhs = terms.size() == 1 ? terms[0] : intersect_vpolys(terms);

    // Qualification on the shared-x lift (x,y1,y2).
    bool qual = joint_ri_nonempty(
        {embed_map(F1.graph, n + 2 * p, iota_range(0, n + p)),
         embed_map(F2.graph, n + 2 * p, c2)});

    RuleReport rep = make_report("cod-sum", std::move(lhs), std::move(rhs), qual);
    rep.notes.emplace_back("decompositions_agree", agree ? "true" : "false");
    return rep;
}

// --- coderivative chain -----------------------------------------------------------

RuleReport coderivative_chain(const PolyhedralMap& F, const PolyhedralMap& G,
                              const RatVector& x, const RatVector& z, const RatVector& w) {
    if (F.p != G.n) throw DimensionMismatch("coderivative_chain middle dims");
    const std::size_t n = F.n, p = F.p, q = G.p;

    HPolyhedron lifted = intersect({embed_map(F.graph, n + p + q, iota_range(0, n + p)),
                                    embed_map(G.graph, n + p + q, iota_range(n, n + p + q))});
    std::vector<std::size_t> keep = iota_range(0, n);
    for (std::size_t j = 0; j < q; ++j) keep.push_back(n + p + j);
    PolyhedralMap comp(n, q, project_h(lifted, keep));
    if (!comp.graph_contains(x, z))
        throw BasePointInvalid("coderivative_chain: z not in (G∘F)(x)");
    VPolyhedron lhs = coderivative(comp, {concat(x, z), w});

    // Intermediate set M(x,z) = F(x) ∩ G^{-1}(z).
    HPolyhedron M = intersect({F.value_poly(x), [&] {
        // {y | (y,z) in gph G}: substitute the tail block of G's graph.
        HPolyhedron g = G.graph;
        HPolyhedron out(p);
        for (std::size_t i = 0; i < g.ineq_count(); ++i) {
            RatVector head(g.A.rows[i].begin(), g.A.rows[i].begin() + p);
            RatVector tail(g.A.rows[i].begin() + p, g.A.rows[i].end());
            out.add_ineq(std::move(head), g.b[i] - inner(tail, z));
        }
        for (std::size_t j = 0; j < g.eq_count(); ++j) {
            RatVector head(g.E.rows[j].begin(), g.E.rows[j].begin() + p);
            RatVector tail(g.E.rows[j].begin() + p, g.E.rows[j].end());
            out.add_eq(std::move(head), g.d[j] - inner(tail, z));
        }
        return out;
    }()});

    std::vector<VPolyhedron> terms;
    for (const auto& y : eval_points(M)) {
        HPolyhedron nf = cone_to_hpoly(normal_cone(F.graph, concat(x, y)));
        HPolyhedron ng = cone_to_hpoly(normal_cone(G.graph, concat(y, z)));
        // (u,v)-space: (u,-v) in N_F and (v,-w) in N_G with w fixed.
        HPolyhedron Q(n + p);
        for (std::size_t i = 0; i < nf.ineq_count(); ++i) {
            RatVector row = nf.A.rows[i];
            for (std::size_t j = n; j < n + p; ++j) row[j] = -row[j];
            Q.add_ineq(std::move(row), nf.b[i]);
        }
        for (std::size_t j = 0; j < nf.eq_count(); ++j) {
            RatVector row = nf.E.rows[j];
            for (std::size_t k = n; k < n + p; ++k) row[k] = -row[k];
            Q.add_eq(std::move(row), nf.d[j]);
        }
        auto lift_g = [&](const RatVector& c, const Rat& rhs) {
            RatVector row = zero_vector(n + p);
            Rat shift(0);
            for (std::size_t j = 0; j < p; ++j) row[n + j] = c[j];
            for (std::size_t j = 0; j < q; ++j) shift += c[p + j] * w[j];
            return std::pair<RatVector, Rat>(std::move(row), rhs + shift);
        };
        for (std::size_t i = 0; i < ng.ineq_count(); ++i) {
            auto [row, rhs] = lift_g(ng.A.rows[i], ng.b[i]);
            Q.add_ineq(std::move(row), std::move(rhs));
        }
        for (std::size_t j = 0; j < ng.eq_count(); ++j) {
            auto [row, rhs] = lift_g(ng.E.rows[j], ng.d[j]);
            Q.add_eq(std::move(row), std::move(rhs));
        }
        terms.push_back(project_coords(dd_convert_nocap(Q), iota_range(0, n)));
    }
    bool agree = true;
    for (std::size_t i = 1; i < terms.size(); ++i)
        if (!set_equal(terms[0], terms[i])) agree = false;
    VPolyhedron rhs = terms.size() == 1 ? terms[0] : intersect_vpolys(terms);

    bool qual = joint_ri_nonempty({embed_map(F.graph, n + p + q, iota_range(0, n + p)),
                                   embed_map(G.graph, n + p + q, iota_range(n, n + p + q))});
    RuleReport rep = make_report("cod-chain", std::move(lhs), std::move(rhs), qual);
    rep.notes.emplace_back("intermediates_agree", agree ? "true" : "false");
    return rep;
}

// --- coderivative intersection ------------------------------------------------------

RuleReport coderivative_intersect(const PolyhedralMap& F1, const PolyhedralMap& F2,
                                  const RatVector& x, const RatVector& y,
                                  const RatVector& v) {
    if (F1.n != F2.n || F1.p != F2.p) throw DimensionMismatch("coderivative_intersect dims");
    const std::size_t n = F1.n, p = F1.p;
    if (!F1.graph_contains(x, y) || !F2.graph_contains(x, y))
        throw BasePointInvalid("coderivative_intersect: y not in F1(x) ∩ F2(x)");

    RatVector base = concat(x, y);
    PolyhedralMap meet(n, p, canonicalize(intersect({F1.graph, F2.graph})));
    VPolyhedron lhs = coderivative(meet, {base, v});

    // Union over splittings v1+v2 = v equals the slice of N1 + N2 at -v.
    Cone sum = cone_sum(normal_cone(F1.graph, base), normal_cone(F2.graph, base));
    VPolyhedron rhs = dd_convert_nocap(substitute_block(cone_to_hpoly(sum), n, negate(v)));

    bool qual = joint_ri_nonempty({F1.graph, F2.graph});
    return make_report("cod-intersect", std::move(lhs), std::move(rhs), qual);
}

// --- solution maps -----------------------------------------------------------------

RuleReport solution_map_coderivative(const PolyhedralMap& F, const PolyhedralMap& G,
                                     std::size_t n, std::size_t p,
                                     const RatVector& x, const RatVector& y,
                                     const RatVector& v) {
    if (F.n != n + p || G.n != n + p || F.p != G.p)
        throw DimensionMismatch("solution_map_coderivative dims");
    const std::size_t q = F.p;
    RatVector xy = concat(x, y);

    // Residual z in F(x,y) ∩ [-G(x,y)].
    HPolyhedron zset = intersect({F.value_poly(xy), flip_block(G.value_poly(xy), 0, q)});
    LPOutcome zout = lp_solve(zero_vector(q), zset, Sense::Min);
    if (lp_infeasible(zout))
        throw NoResidualPoint("solution_map_coderivative: F(x,y) ∩ -G(x,y) is empty");
    RatVector z = lp_optimal(zout) ? lp_optimal(zout)->point : lp_unbounded(zout)->feasible_point;

    // gph S = projection of {(x,y,z) | z in F(x,y), -z in G(x,y)} onto (x,y).
    HPolyhedron lifted =
        intersect({F.graph, flip_block(G.graph, n + p, q)});
    PolyhedralMap S(n, p, project_h(lifted, iota_range(0, n + p)));
    if (!S.graph_contains(x, y))
        throw BasePointInvalid("solution_map_coderivative: base off gph S");
    VPolyhedron lhs = coderivative(S, {xy, v});

    // rhs: {u | exists w, rho1: (rho1,-w) in N_F, ((u,-v)-rho1, -w) in N_G}
    // in (u, rho1, w)-space projected to u.
    VPolyhedron rhs;
    {
        HPolyhedron nf = cone_to_hpoly(normal_cone(F.graph, concat(xy, z)));
        HPolyhedron ng = cone_to_hpoly(normal_cone(G.graph, concat(xy, negate(z))));
        const std::size_t total = n + (n + p) + q;
        HPolyhedron Q(total);
        auto lift_f = [&](const RatVector& c) {
            RatVector row = zero_vector(total);
            for (std::size_t j = 0; j < n + p; ++j) row[n + j] = c[j];
            for (std::size_t j = 0; j < q; ++j) row[n + (n + p) + j] = -c[n + p + j];
            return row;
        };
        for (std::size_t i = 0; i < nf.ineq_count(); ++i) Q.add_ineq(lift_f(nf.A.rows[i]), nf.b[i]);
        for (std::size_t j = 0; j < nf.eq_count(); ++j) Q.add_eq(lift_f(nf.E.rows[j]), nf.d[j]);
        auto lift_g = [&](const RatVector& c, const Rat& rhs_in) {
            // <c_xy, (u,-v) - rho1> + <c_z, -w> <= rhs
            RatVector row = zero_vector(total);
            Rat shift(0);
            for (std::size_t j = 0; j < n; ++j) row[j] = c[j];
            for (std::size_t j = 0; j < p; ++j) shift += c[n + j] * v[j];
            for (std::size_t j = 0; j < n + p; ++j) row[n + j] = -c[j];
            for (std::size_t j = 0; j < q; ++j) row[n + (n + p) + j] = -c[n + p + j];
            return std::pair<RatVector, Rat>(std::move(row), rhs_in + shift);
        };
        for (std::size_t i = 0; i < ng.ineq_count(); ++i) {
            auto [row, rhs_row] = lift_g(ng.A.rows[i], ng.b[i]);
            Q.add_ineq(std::move(row), std::move(rhs_row));
        }
        for (std::size_t j = 0; j < ng.eq_count(); ++j) {
            auto [row, rhs_row] = lift_g(ng.E.rows[j], ng.d[j]);
            Q.add_eq(std::move(row), std::move(rhs_row));
        }
        rhs = project_coords(dd_convert_nocap(Q), iota_range(0, n));
    }

    bool qual = joint_ri_nonempty({F.graph, flip_block(G.graph, n + p, q)});
    return make_report("solution-map", std::move(lhs), std::move(rhs), qual);
}

}  // namespace convexcalc
