#include <doctest.h>

#include <algorithm>

#include "convexcalc/errors.hpp"
#include "convexcalc/lp.hpp"
#include "convexcalc/oracle.hpp"
#include "convexcalc/polyhedron.hpp"

using namespace convexcalc;

namespace {

RatVector rv(std::initializer_list<long> xs) {
    RatVector out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

HPolyhedron interval01() {  // [0,1] in R^1
    HPolyhedron P(1);
    P.add_ineq(rv({-1}), Rat(0));
    P.add_ineq(rv({1}), Rat(1));
    return P;
}

HPolyhedron unit_triangle() {  // {x >= 0, x1 + x2 <= 1}
    HPolyhedron P(2);
    P.add_ineq(rv({-1, 0}), Rat(0));
    P.add_ineq(rv({0, -1}), Rat(0));
    P.add_ineq(rv({1, 1}), Rat(1));
    return P;
}

HPolyhedron simplex_line() {  // {x >= 0, x1 + x2 = 1}
    HPolyhedron P(2);
    P.add_ineq(rv({-1, 0}), Rat(0));
    P.add_ineq(rv({0, -1}), Rat(0));
    P.add_eq(rv({1, 1}), Rat(1));
    return P;
}

bool has_point(const VPolyhedron& V, const RatVector& p) {
    return std::find(V.points.begin(), V.points.end(), p) != V.points.end();
}

}  // namespace

TEST_CASE("implicit equalities") {
    SUBCASE("forced equality") {
        HPolyhedron P(1);
        P.add_ineq(rv({1}), Rat(0));
        P.add_ineq(rv({-1}), Rat(0));
        CHECK(implicit_equalities(P) == std::vector<std::size_t>{0, 1});
    }
    SUBCASE("slack exists") {
        HPolyhedron P(1);
        P.add_ineq(rv({1}), Rat(1));
        CHECK(implicit_equalities(P).empty());
    }
    SUBCASE("sign rows pinched by a sum bound collapse to a point") {
        HPolyhedron P(2);
        P.add_ineq(rv({-1, 0}), Rat(0));
        P.add_ineq(rv({0, -1}), Rat(0));
        P.add_ineq(rv({1, 1}), Rat(0));
        // P = {(0,0)}: every row is tight everywhere.
        CHECK(implicit_equalities(P) == std::vector<std::size_t>{0, 1, 2});
    }
    CHECK_THROWS_AS(implicit_equalities(HPolyhedron::empty_set(2)), EmptySet);
}

TEST_CASE("affine hull") {
    SUBCASE("horizontal segment") {
        HPolyhedron P(2);
        P.add_ineq(rv({-1, 0}), Rat(0));
        P.add_ineq(rv({1, 0}), Rat(1));
        P.add_eq(rv({0, 1}), Rat(0));
        HPolyhedron H = affine_hull(P);
        CHECK(H.ineq_count() == 0);
        HPolyhedron L(2);
        L.add_eq(rv({0, 1}), Rat(0));
        CHECK(set_equal(H, L));
    }
    SUBCASE("simplex spans the diagonal line") {
        HPolyhedron H = affine_hull(simplex_line());
        CHECK(H.ineq_count() == 0);
        HPolyhedron L(2);
        L.add_eq(rv({1, 1}), Rat(1));
        CHECK(set_equal(H, L));
    }
    SUBCASE("full box has full hull") {
        HPolyhedron box(2);
        box.add_ineq(rv({1, 0}), Rat(1));
        box.add_ineq(rv({-1, 0}), Rat(0));
        box.add_ineq(rv({0, 1}), Rat(1));
        box.add_ineq(rv({0, -1}), Rat(0));
        HPolyhedron H = affine_hull(box);
        CHECK(H.ineq_count() == 0);
        CHECK(H.eq_count() == 0);
    }
}

TEST_CASE("ri_point certificates") {
    SUBCASE("simplex") {
        auto cert = ri_point(simplex_line());
        CHECK(cert.point[0] > 0);
        CHECK(cert.point[1] > 0);
        CHECK(cert.point[0] + cert.point[1] == 1);
        CHECK(cert.implicit_rows.empty());
        CHECK(ri_contains(simplex_line(), cert.point));
    }
    SUBCASE("singleton") {
        HPolyhedron P(2);
        P.add_eq(rv({1, 0}), Rat(3));
        P.add_eq(rv({0, 1}), Rat(-2));
        auto cert = ri_point(P);
        CHECK(cert.point == rv({3, -2}));
    }
    SUBCASE("interval") {
        auto cert = ri_point(interval01());
        CHECK(cert.point[0] > 0);
        CHECK(cert.point[0] < 1);
    }
    CHECK_THROWS_AS(ri_point(HPolyhedron::empty_set(1)), EmptySet);
}

TEST_CASE("ri_contains") {
    CHECK(ri_contains(interval01(), {Rat(1, 2)}));
    CHECK(!ri_contains(interval01(), {Rat(0)}));
    SUBCASE("implicit rows are excluded from strictness") {
        HPolyhedron P(2);  // segment {(x,0) | 0 <= x <= 1} with y=0 written as inequalities
        P.add_ineq(rv({-1, 0}), Rat(0));
        P.add_ineq(rv({1, 0}), Rat(1));
        P.add_ineq(rv({0, 1}), Rat(0));
        P.add_ineq(rv({0, -1}), Rat(0));
        CHECK(ri_contains(P, {Rat(1, 2), Rat(0)}));
        CHECK(!ri_contains(P, {Rat(0), Rat(0)}));
        CHECK(!ri_contains(P, {Rat(1, 2), Rat(1, 2)}));  // not even a member
    }
}

TEST_CASE("dd_convert on small fixtures") {
    SUBCASE("unit triangle") {
        VPolyhedron V = dd_convert(unit_triangle());
        CHECK(V.points.size() == 3);
        CHECK(has_point(V, rv({0, 0})));
        CHECK(has_point(V, rv({1, 0})));
        CHECK(has_point(V, rv({0, 1})));
        CHECK(V.rays.empty());
        CHECK(V.lineality.empty());
    }
    SUBCASE("halfplane: point + ray + lineality") {
        HPolyhedron P(2);
        P.add_ineq(rv({-1, 0}), Rat(0));  // x1 >= 0
        VPolyhedron V = dd_convert(P);
        REQUIRE(V.points.size() == 1);
        CHECK(V.points[0] == rv({0, 0}));
        REQUIRE(V.rays.size() == 1);
        CHECK(V.rays[0] == rv({1, 0}));
        REQUIRE(V.lineality.size() == 1);
        CHECK(V.lineality[0] == rv({0, 1}));
    }
    SUBCASE("two points back to an interval") {
        VPolyhedron V(1);
        V.points = {rv({0}), rv({1})};
        HPolyhedron H = dd_convert_back(V);
        CHECK(set_equal(H, interval01()));
        CHECK(H.ineq_count() == 2);
        CHECK(H.eq_count() == 0);
    }
    SUBCASE("empty set round trip") {
        VPolyhedron V = dd_convert(HPolyhedron::empty_set(2));
        CHECK(V.empty());
        CHECK(!is_feasible(dd_convert_back(V)));
    }
    SUBCASE("dimension cap") {
        CHECK_THROWS_AS(dd_convert(HPolyhedron::full_space(9)), DimensionCapExceeded);
        set_dim_cap(10);
        CHECK_NOTHROW(dd_convert(HPolyhedron::full_space(9)));
        set_dim_cap(8);
    }
}

TEST_CASE("linear images") {
    VPolyhedron seg(1);
    seg.points = {rv({0}), rv({1})};
    SUBCASE("embedding into the plane") {
        RatMatrix A(1, {rv({1}), rv({0})});
        VPolyhedron img = linear_image(AffineMap(A, zero_vector(2)), seg);
        CHECK(img.dim == 2);
        CHECK(has_point(img, rv({0, 0})));
        CHECK(has_point(img, rv({1, 0})));
    }
    SUBCASE("identity") {
        VPolyhedron img = linear_image(AffineMap::identity(1), seg);
        CHECK(set_equal(img, seg));
    }
    SUBCASE("sum of coordinates maps the triangle onto an interval") {
        VPolyhedron tri = dd_convert(unit_triangle());
        RatMatrix A(2, {rv({1, 1})});
        VPolyhedron img = linear_image(AffineMap(A, zero_vector(1)), tri);
        CHECK(set_equal(img, interval01()));
    }
}

TEST_CASE("minkowski sums") {
    VPolyhedron a(1), b(1);
    a.points = {rv({0}), rv({1})};
    b.points = {rv({0}), rv({1})};
    SUBCASE("[0,1]+[0,1] = [0,2]") {
        VPolyhedron s = minkowski_sum(a, b);
        HPolyhedron expect(1);
        expect.add_ineq(rv({-1}), Rat(0));
        expect.add_ineq(rv({1}), Rat(2));
        CHECK(set_equal(s, expect));
    }
    SUBCASE("zero is the identity element") {
        VPolyhedron zero = VPolyhedron::single_point(rv({0}));
        CHECK(set_equal(minkowski_sum(a, zero), a));
    }
    SUBCASE("[-1,1] + {-1} = [-2,0]") {
        VPolyhedron c(1), d(1);
        c.points = {rv({-1}), rv({1})};
        d.points = {rv({-1})};
        HPolyhedron expect(1);
        expect.add_ineq(rv({-1}), Rat(2));
        expect.add_ineq(rv({1}), Rat(0));
        CHECK(set_equal(minkowski_sum(c, d), expect));
    }
}

TEST_CASE("intersections") {
    SUBCASE("two halfplanes make a slab") {
        HPolyhedron a(2), b(2);
        a.add_ineq(rv({-1, 0}), Rat(0));
        b.add_ineq(rv({1, 0}), Rat(1));
        HPolyhedron slab = intersect({a, b});
        CHECK(slab.contains(rv({0, 5})));
        CHECK(slab.contains(rv({1, -7})));
        CHECK(!slab.contains(rv({2, 0})));
    }
    SUBCASE("intersecting with the whole space changes nothing") {
        HPolyhedron P = unit_triangle();
        CHECK(set_equal(intersect({P, HPolyhedron::full_space(2)}), P));
    }
    SUBCASE("horizontal line meets the left ray") {
        HPolyhedron line(2);  // R x {0}
        line.add_eq(rv({0, 1}), Rat(0));
        HPolyhedron ray(2);  // (-inf, 0] x {0}
        ray.add_ineq(rv({1, 0}), Rat(0));
        ray.add_eq(rv({0, 1}), Rat(0));
        CHECK(set_equal(intersect({line, ray}), ray));
    }
}

TEST_CASE("coordinate projection") {
    SUBCASE("triangle onto the first axis") {
        VPolyhedron tri = dd_convert(unit_triangle());
        CHECK(set_equal(project_coords(tri, {0}), interval01()));
    }
    SUBCASE("epigraph of the identity projects onto the whole line") {
        HPolyhedron P(2);  // y >= x
        P.add_ineq(rv({1, -1}), Rat(0));
        VPolyhedron proj = project_coords(dd_convert(P), {0});
        CHECK(set_equal(proj, HPolyhedron::full_space(1)));
    }
    SUBCASE("projection onto all coordinates is the identity") {
        VPolyhedron tri = dd_convert(unit_triangle());
        CHECK(set_equal(project_coords(tri, {0, 1}), tri));
    }
    CHECK_THROWS_AS(project_coords(VPolyhedron::single_point(rv({1})), {3}), BadIndex);
}

TEST_CASE("set equality") {
    VPolyhedron seg(1);
    seg.points = {rv({0}), rv({1})};
    CHECK(set_equal(interval01(), seg));
    SUBCASE("[0,1] differs from [0,2]") {
        HPolyhedron other(1);
        other.add_ineq(rv({-1}), Rat(0));
        other.add_ineq(rv({1}), Rat(2));
        CHECK(!set_equal(interval01(), other));
    }
    SUBCASE("round trip is exact") {
        HPolyhedron P = unit_triangle();
        CHECK(set_equal(P, dd_convert(P)));
    }
}

TEST_CASE("round trips on seeded random polyhedra") {
    Rng rng(424242);
    int done = 0;
    for (int trial = 0; done < 40; ++trial) {
        REQUIRE(trial < 400);
        std::size_t n = static_cast<std::size_t>(rng.range(1, 4));
        HPolyhedron P(n);
        long rows = rng.range(1, 5);
        for (long r = 0; r < rows; ++r) P.add_ineq(rng.nonzero_vec(n, 4), rng.rat(4));
        if (rng.chance(1, 4)) P.add_eq(rng.nonzero_vec(n, 4), rng.rat(4));
        VPolyhedron V = dd_convert_nocap(P);
        if (V.empty()) continue;
        ++done;
        HPolyhedron back = dd_convert_back_nocap(V);
        CHECK(set_equal(P, back));
        CHECK(set_equal(P, V));

        // V-rep generators are irredundant: dropping any one changes the set.
        for (std::size_t k = 0; k < V.points.size(); ++k) {
            VPolyhedron W = V;
            W.points.erase(W.points.begin() + k);
            if (W.points.empty()) continue;
            CHECK(!set_equal(W, V));
        }
        for (std::size_t k = 0; k < V.rays.size(); ++k) {
            VPolyhedron W = V;
            W.rays.erase(W.rays.begin() + k);
            CHECK(!set_equal(W, V));
        }
        // H-rep rows are irredundant likewise.
        for (std::size_t k = 0; k < back.ineq_count(); ++k) {
            HPolyhedron Q(back.dim);
            for (std::size_t i = 0; i < back.ineq_count(); ++i)
                if (i != k) Q.add_ineq(back.A.rows[i], back.b[i]);
            for (std::size_t j = 0; j < back.eq_count(); ++j) Q.add_eq(back.E.rows[j], back.d[j]);
            CHECK(!set_equal(Q, back));
        }
    }
}

TEST_CASE("relative interior commutes with affine images") {
    Rng rng(515151);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = static_cast<std::size_t>(rng.range(1, 3));
        std::size_t p = static_cast<std::size_t>(rng.range(1, 3));
        VPolyhedron V(n);
        long k = rng.range(2, 4);
        for (long i = 0; i < k; ++i) V.points.push_back(rng.vec(n, 4));
        V.normalize();
        RatMatrix A(n);
        for (std::size_t r = 0; r < p; ++r) A.rows.push_back(rng.vec(n, 3));
        AffineMap B(A, rng.vec(p, 3));

        HPolyhedron src = dd_convert_back_nocap(V);
        VPolyhedron img = linear_image(B, V);
        HPolyhedron dst = dd_convert_back_nocap(img);

        RatVector x = ri_point(src).point;
        CHECK(ri_contains(dst, B.apply(x)));

        // The ri point of the image has a preimage inside ri(src): the
        // strict-slack system with the image pinned stays solvable.
        RatVector y = ri_point(dst).point;
        auto implicit = implicit_equalities(src);
        HPolyhedron Q(src.dim + 1);
        std::vector<bool> is_impl(src.ineq_count(), false);
        for (auto i : implicit) is_impl[i] = true;
        for (std::size_t i = 0; i < src.ineq_count(); ++i) {
            RatVector row = src.A.rows[i];
            row.push_back(is_impl[i] ? Rat(0) : Rat(1));
            if (is_impl[i])
                Q.add_eq(std::move(row), src.b[i]);
            else
                Q.add_ineq(std::move(row), src.b[i]);
        }
        for (std::size_t r = 0; r < p; ++r) {
            RatVector row = B.A.rows[r];
            row.push_back(Rat(0));
            Q.add_eq(std::move(row), y[r] - B.b[r]);
        }
        RatVector obj = zero_vector(src.dim + 1);
        obj[src.dim] = 1;
        Q.add_ineq(obj, Rat(1));
        auto out = lp_extremum(obj, Q, Sense::Max);
        CHECK(out.is_finite());
        CHECK(out.value > 0);
    }
}

TEST_CASE("relative interior of intersections") {
    Rng rng(616161);
    int qualified = 0;
    for (int trial = 0; qualified < 15; ++trial) {
        REQUIRE(trial < 300);
        std::size_t n = static_cast<std::size_t>(rng.range(1, 3));
        RatVector anchor = rng.vec(n, 3);
        InstanceSpec spec;
        HPolyhedron P = gen_anchored_poly(rng, n, anchor, anchor, spec, false);
        HPolyhedron Q = gen_anchored_poly(rng, n, anchor, anchor, spec, false);
        if (!joint_ri_nonempty({P, Q})) continue;
        ++qualified;
        HPolyhedron both = intersect({P, Q});
        VPolyhedron V = dd_convert_nocap(both);
        for (int s = 0; s < 5; ++s) {
            RatVector x = sample_point(rng, V, 3);
            CHECK(ri_contains(both, x) == (ri_contains(P, x) && ri_contains(Q, x)));
        }
        CHECK(ri_contains(both, anchor));
    }
}

TEST_CASE("full-dimensional sets: ri equals interior") {
    HPolyhedron box(2);
    box.add_ineq(rv({1, 0}), Rat(1));
    box.add_ineq(rv({-1, 0}), Rat(0));
    box.add_ineq(rv({0, 1}), Rat(1));
    box.add_ineq(rv({0, -1}), Rat(0));
    CHECK(implicit_equalities(box).empty());
    RatVector inside = {Rat(1, 3), Rat(2, 3)};
    CHECK(ri_contains(box, inside) == interior_contains(box, inside));
    RatVector edge = {Rat(0), Rat(1, 2)};
    CHECK(!ri_contains(box, edge));
    CHECK(!interior_contains(box, edge));
}

TEST_CASE("minkowski membership on sampled points") {
    Rng rng(717171);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = static_cast<std::size_t>(rng.range(1, 3));
        VPolyhedron a(n), b(n);
        for (long i = 0, k = rng.range(1, 3); i <= k; ++i) a.points.push_back(rng.vec(n, 4));
        for (long i = 0, k = rng.range(1, 3); i <= k; ++i) b.points.push_back(rng.vec(n, 4));
        if (rng.chance(1, 3)) a.rays.push_back(rng.nonzero_vec(n, 3));
        a.normalize();
        b.normalize();
        VPolyhedron s = minkowski_sum(a, b);
        HPolyhedron s_h = dd_convert_back_nocap(s);
        for (int probe = 0; probe < 5; ++probe) {
            RatVector u = sample_point(rng, a, 3);
            RatVector w = sample_point(rng, b, 3);
            CHECK(s_h.contains(add(u, w)));
        }
    }
}

TEST_CASE("half-open segments stay in the relative interior") {
    // For a in ri(P) and b in P, every point a*t + b*(1-t) with 0 < t <= 1
    // stays in ri(P); checked pointwise on sampled t.
    Rng rng(818181);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = static_cast<std::size_t>(rng.range(1, 3));
        InstanceSpec spec;
        RatVector anchor = rng.vec(n, 3);
        HPolyhedron P = gen_anchored_poly(rng, n, anchor, rng.vec(n, 3), spec, true);
        RatVector a = ri_point(P).point;
        VPolyhedron V = dd_convert_nocap(P);
        RatVector b = V.points[rng.bits() % V.points.size()];  // vertex: may sit on the boundary
        for (Rat t : {Rat(1), Rat(1, 2), Rat(1, 4), Rat(3, 4), Rat(1, 100)}) {
            RatVector pt = add(scale(t, a), scale(Rat(1) - t, b));
            CHECK(ri_contains(P, pt));
        }
    }
}

TEST_CASE("degenerate representations") {
    SUBCASE("duplicate and redundant input rows do not leak into the output") {
        HPolyhedron P(2);
        P.add_ineq(rv({1, 0}), Rat(1));
        P.add_ineq(rv({1, 0}), Rat(1));   // duplicate
        P.add_ineq(rv({2, 0}), Rat(2));   // scaled duplicate
        P.add_ineq(rv({1, 0}), Rat(5));   // dominated
        P.add_ineq(rv({-1, 0}), Rat(0));
        P.add_ineq(rv({0, 1}), Rat(1));
        P.add_ineq(rv({0, -1}), Rat(0));
        HPolyhedron Q = canonicalize(P);
        CHECK(Q.ineq_count() == 4);
        CHECK(set_equal(P, Q));
    }
    SUBCASE("a single point") {
        HPolyhedron P(3);
        P.add_eq(rv({1, 0, 0}), Rat(1));
        P.add_eq(rv({0, 1, 0}), Rat(2));
        P.add_eq(rv({0, 0, 1}), Rat(3));
        VPolyhedron V = dd_convert_nocap(P);
        CHECK(V.points == std::vector<RatVector>{rv({1, 2, 3})});
        CHECK(V.rays.empty());
        CHECK(V.lineality.empty());
        HPolyhedron back = dd_convert_back_nocap(V);
        CHECK(back.ineq_count() == 0);
        CHECK(set_equal(P, back));
    }
    SUBCASE("a full line") {
        HPolyhedron P(2);
        P.add_eq(rv({0, 1}), Rat(3));  // the horizontal line at height 3
        VPolyhedron V = dd_convert_nocap(P);
        CHECK(V.points.size() == 1);
        CHECK(V.rays.empty());
        REQUIRE(V.lineality.size() == 1);
        CHECK(V.lineality[0] == rv({1, 0}));
        CHECK(set_equal(P, dd_convert_back_nocap(V)));
    }
    SUBCASE("whole space both ways") {
        VPolyhedron V = dd_convert_nocap(HPolyhedron::full_space(3));
        CHECK(V.points.size() == 1);
        CHECK(V.lineality.size() == 3);
        HPolyhedron back = dd_convert_back_nocap(V);
        CHECK(back.ineq_count() == 0);
        CHECK(back.eq_count() == 0);
    }
    SUBCASE("contradictory zero rows give the empty set") {
        HPolyhedron P(2);
        P.add_eq(zero_vector(2), Rat(1));  // 0 = 1
        CHECK(!is_feasible(P));
        CHECK(dd_convert_nocap(P).empty());
        HPolyhedron Q(2);
        Q.add_ineq(zero_vector(2), Rat(-2));  // 0 <= -2
        CHECK(dd_convert_nocap(Q).empty());
    }
}

TEST_CASE("five-dimensional cross polytope and cube round trip") {
    const std::size_t n = 5;
    HPolyhedron cube(n);
    for (std::size_t i = 0; i < n; ++i) {
        RatVector up = zero_vector(n), down = zero_vector(n);
        up[i] = 1;
        down[i] = -1;
        cube.add_ineq(std::move(up), Rat(1));
        cube.add_ineq(std::move(down), Rat(1));
    }
    VPolyhedron cube_v = dd_convert_nocap(cube);
    CHECK(cube_v.points.size() == 32);  // 2^5 vertices
    CHECK(set_equal(cube, dd_convert_back_nocap(cube_v)));

    // The dual: conv(+-e_i) has 2^5 facets and 10 vertices.
    VPolyhedron cross(n);
    for (std::size_t i = 0; i < n; ++i) {
        RatVector up = zero_vector(n), down = zero_vector(n);
        up[i] = 1;
        down[i] = -1;
        cross.points.push_back(std::move(up));
        cross.points.push_back(std::move(down));
    }
    HPolyhedron cross_h = dd_convert_back_nocap(cross);
    CHECK(cross_h.ineq_count() == 32);
    CHECK(set_equal(cross_h, cross));
    CHECK(dd_convert_nocap(cross_h).points.size() == 10);
}
