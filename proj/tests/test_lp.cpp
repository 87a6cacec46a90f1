#include <doctest.h>

#include "convexcalc/errors.hpp"
#include "convexcalc/lp.hpp"
#include "convexcalc/oracle.hpp"

using namespace convexcalc;

namespace {

RatVector rv(std::initializer_list<long> xs) {
    RatVector out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

// Direct re-substitution checks of the LPOutcome contract.
void check_optimal(const HPolyhedron& P, const RatVector& c, const LPOptimal& o) {
    CHECK(P.contains(o.point));
    CHECK(inner(c, o.point) == o.value);
}

void check_unbounded(const HPolyhedron& P, const RatVector& c, Sense sense,
                     const LPUnbounded& u) {
    CHECK(P.contains(u.feasible_point));
    for (std::size_t i = 0; i < P.ineq_count(); ++i) CHECK(inner(P.A.rows[i], u.ray) <= 0);
    for (std::size_t j = 0; j < P.eq_count(); ++j) CHECK(inner(P.E.rows[j], u.ray) == 0);
    Rat slope = inner(c, u.ray);
    if (sense == Sense::Max)
        CHECK(slope > 0);
    else
        CHECK(slope < 0);
}

void check_infeasible(const HPolyhedron& P, const LPInfeasible& cert) {
    REQUIRE(cert.farkas.size() == P.ineq_count() + P.eq_count());
    RatVector combo = zero_vector(P.dim);
    Rat rhs(0);
    for (std::size_t i = 0; i < P.ineq_count(); ++i) {
        CHECK(cert.farkas[i] >= 0);
        combo = add(combo, scale(cert.farkas[i], P.A.rows[i]));
        rhs += cert.farkas[i] * P.b[i];
    }
    for (std::size_t j = 0; j < P.eq_count(); ++j) {
        combo = add(combo, scale(cert.farkas[P.ineq_count() + j], P.E.rows[j]));
        rhs += cert.farkas[P.ineq_count() + j] * P.d[j];
    }
    CHECK(is_zero(combo));
    CHECK(rhs < 0);
}

}  // namespace

TEST_CASE("single bound, maximized") {
    HPolyhedron P(1);
    P.add_ineq(rv({1}), Rat(3));
    auto out = lp_solve(rv({1}), P, Sense::Max);
    const auto* opt = lp_optimal(out);
    REQUIRE(opt);
    CHECK(opt->value == 3);
    CHECK(opt->point == rv({3}));
    check_optimal(P, rv({1}), *opt);
}

TEST_CASE("halfspace is unbounded upward") {
    HPolyhedron P(2);
    P.add_ineq(rv({-1, 0}), Rat(0));  // x1 >= 0
    auto out = lp_solve(rv({1, 0}), P, Sense::Max);
    const auto* ub = lp_unbounded(out);
    REQUIRE(ub);
    check_unbounded(P, rv({1, 0}), Sense::Max, *ub);
    CHECK(inner(rv({1, 0}), ub->ray) > 0);
}

TEST_CASE("contradictory bounds give a Farkas certificate") {
    HPolyhedron P(1);
    P.add_ineq(rv({1}), Rat(-1));   // x <= -1
    P.add_ineq(rv({-1}), Rat(0));   // x >= 0
    auto out = lp_solve(rv({1}), P, Sense::Max);
    const auto* inf = lp_infeasible(out);
    REQUIRE(inf);
    check_infeasible(P, *inf);
}

TEST_CASE("equality rows and rational data") {
    HPolyhedron P(2);
    P.add_eq({Rat(1), Rat(1)}, Rat(1));      // x + y = 1
    P.add_ineq({Rat(-1), Rat(0)}, Rat(0));   // x >= 0
    P.add_ineq({Rat(0), Rat(-1)}, Rat(0));   // y >= 0
    auto out = lp_solve({Rat(1, 2), Rat(2)}, P, Sense::Min);
    const auto* opt = lp_optimal(out);
    REQUIRE(opt);
    CHECK(opt->value == Rat(1, 2));  // all weight on x
    CHECK(opt->point == rv({1, 0}));
}

TEST_CASE("lp_extremum wraps the three outcomes") {
    HPolyhedron box(1);
    box.add_ineq(rv({1}), Rat(2));
    box.add_ineq(rv({-1}), Rat(0));
    CHECK(lp_extremum(rv({1}), box, Sense::Max) == ERat::finite(Rat(2)));
    CHECK(lp_extremum(rv({1}), box, Sense::Min) == ERat::finite(Rat(0)));

    HPolyhedron half(1);
    half.add_ineq(rv({-1}), Rat(0));
    CHECK(lp_extremum(rv({1}), half, Sense::Max) == ERat::pos_inf());

    CHECK_THROWS_AS(lp_extremum(rv({1}), HPolyhedron::empty_set(1), Sense::Max), EmptySet);
}

TEST_CASE("seeded random LPs satisfy the outcome contracts and the pivot cap") {
    Rng rng(7);
    for (int trial = 0; trial < 120; ++trial) {
        std::size_t n = static_cast<std::size_t>(rng.range(1, 4));
        HPolyhedron P(n);
        long rows = rng.range(1, 6);
        for (long r = 0; r < rows; ++r) P.add_ineq(rng.nonzero_vec(n, 4), rng.rat(4));
        if (rng.chance(1, 3)) P.add_eq(rng.nonzero_vec(n, 4), rng.rat(4));
        RatVector c = rng.vec(n, 4);
        Sense sense = rng.chance(1, 2) ? Sense::Max : Sense::Min;

        LPStats stats;
        auto out = lp_solve(c, P, sense, &stats);
        std::size_t all_rows = P.ineq_count() + P.eq_count();
        std::size_t cols = 2 * n + P.ineq_count() + all_rows;
        CHECK(stats.pivots <= 10 * (all_rows + cols) * (all_rows + cols));

        if (const auto* opt = lp_optimal(out)) {
            check_optimal(P, c, *opt);
            // Optimality against 30 sampled feasible points.
            VPolyhedron V = dd_convert_nocap(P);
            for (int probe = 0; probe < 30; ++probe) {
                Rat val = inner(c, sample_point(rng, V, 4));
                if (sense == Sense::Max)
                    CHECK(val <= opt->value);
                else
                    CHECK(val >= opt->value);
            }
        } else if (const auto* ub = lp_unbounded(out)) {
            check_unbounded(P, c, sense, *ub);
        } else {
            check_infeasible(P, *lp_infeasible(out));
        }
    }
}

TEST_CASE("determinism: identical inputs, identical outcomes") {
    Rng rng(99);
    HPolyhedron P(3);
    for (int r = 0; r < 5; ++r) P.add_ineq(rng.nonzero_vec(3, 4), rng.rat(4));
    RatVector c = rng.vec(3, 4);
    auto a = lp_solve(c, P, Sense::Max);
    auto b = lp_solve(c, P, Sense::Max);
    REQUIRE(lp_optimal(a));
    REQUIRE(lp_optimal(b));
    CHECK(lp_optimal(a)->point == lp_optimal(b)->point);
    CHECK(lp_optimal(a)->value == lp_optimal(b)->value);
}
