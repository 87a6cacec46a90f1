#include <doctest.h>

#include "convexcalc/gallery.hpp"
#include "convexcalc/normal_cone.hpp"

using namespace convexcalc;

namespace {
RatVector rv(std::initializer_list<long> xs) {
    RatVector out;
    for (long x : xs) out.emplace_back(x);
    return out;
}
}  // namespace

TEST_CASE("norm subdifferential membership at the origin") {
    CHECK(ball_subdiff_member({Rat(3, 5), Rat(4, 5)}, rv({0, 0})));
    CHECK(ball_subdiff_member({Rat(1, 2), Rat(1, 2)}, rv({0, 0})));
    CHECK(ball_subdiff_member(rv({0, 0}), rv({0, 0})));
    CHECK(ball_subdiff_member(rv({1, 0}), rv({0, 0})));
    CHECK(!ball_subdiff_member(rv({1, 1}), rv({0, 0})));
    CHECK(!ball_subdiff_member({Rat(6, 5), Rat(0)}, rv({0, 0})));
}

TEST_CASE("norm subdifferential membership away from the origin") {
    CHECK(ball_subdiff_member({Rat(3, 5), Rat(4, 5)}, rv({3, 4})));
    CHECK(!ball_subdiff_member({Rat(4, 5), Rat(3, 5)}, rv({3, 4})));   // wrong direction
    CHECK(!ball_subdiff_member({Rat(-3, 5), Rat(-4, 5)}, rv({3, 4})));
    CHECK(!ball_subdiff_member({Rat(3, 10), Rat(4, 10)}, rv({3, 4})));  // not unit length
    CHECK(ball_subdiff_member(rv({1, 0}), rv({2, 0})));
    CHECK(ball_subdiff_member({Rat(1, 1), Rat(0)}, rv({7, 0})));
}

TEST_CASE("parabola counterexample report") {
    RuleReport rep = parabola_counterexample();
    CHECK(rep.verdict == Verdict::RhsStrictlySmaller);
    CHECK(!rep.qualification_holds);
    REQUIRE(rep.witness.has_value());
    // The canonical witness (1,0) of the symmetric difference.
    CHECK((*rep.witness == rv({1, 0}) || *rep.witness == rv({-1, 0})));

    // Memberships from the closed forms.
    VPolyhedron sum = rep.rhs;   // {0} x R
    VPolyhedron full = rep.lhs;  // R^2
    CHECK(v_contains(full, rv({1, 0})));
    CHECK(!v_contains(sum, rv({1, 0})));
    CHECK(v_contains(sum, rv({0, -1})));
    CHECK(v_contains(sum, rv({0, 5})));
}

TEST_CASE("grid probes reject bad normals") {
    CHECK(parabola_grid_probe_upper(rv({0, -1})));
    CHECK(parabola_grid_probe_lower(rv({0, 1})));
    // (1,-1) fails against the upper parabola at t = 1/2: 1/2 - 1/4 > 0.
    CHECK(!parabola_grid_probe_upper(rv({1, -1})));
    CHECK(!parabola_grid_probe_upper(rv({0, 1})));
    CHECK(!parabola_grid_probe_lower(rv({0, -1})));
}

TEST_CASE("gallery items carry statements") {
    CHECK(gallery_ball_item().id == "ball-norm");
    CHECK(gallery_parabola_item().id == "parabola-pair");
    CHECK(!gallery_ball_item().statement.empty());
    CHECK(!gallery_parabola_item().statement.empty());
}
