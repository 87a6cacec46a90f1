#include <doctest.h>

#include "convexcalc/errors.hpp"
#include "convexcalc/linalg.hpp"

using namespace convexcalc;

namespace {
RatVector rv(std::initializer_list<long> xs) {
    RatVector out;
    for (long x : xs) out.emplace_back(x);
    return out;
}
}  // namespace

TEST_CASE("inner product examples") {
    CHECK(inner(rv({1, 2}), rv({3, 4})) == 11);
    CHECK(inner(rv({5, -7, 2}), zero_vector(3)) == 0);
    CHECK(inner({Rat(1, 2), Rat(1, 3)}, rv({2, 3})) == 2);
    CHECK_THROWS_AS(inner(rv({1}), rv({1, 2})), DimensionMismatch);
}

TEST_CASE("nullspace examples") {
    SUBCASE("single row in the plane") {
        RatMatrix M(2, {rv({1, 0})});
        auto basis = nullspace(M);
        REQUIRE(basis.size() == 1);
        CHECK(basis[0] == rv({0, 1}));
    }
    SUBCASE("identity has trivial kernel") {
        RatMatrix M(2, {rv({1, 0}), rv({0, 1})});
        CHECK(nullspace(M).empty());
    }
    SUBCASE("rank-one 2x2") {
        RatMatrix M(2, {rv({1, 1}), rv({2, 2})});
        auto basis = nullspace(M);
        REQUIRE(basis.size() == 1);
        // (1,-1) up to scaling; canonical_line fixes the sign.
        CHECK(basis[0] == rv({1, -1}));
        CHECK(inner(M.rows[0], basis[0]) == 0);
        CHECK(inner(M.rows[1], basis[0]) == 0);
    }
}

TEST_CASE("rref and solve") {
    RatMatrix M(3, {rv({1, 2, 3}), rv({0, 1, 1}), rv({1, 3, 4})});
    CHECK(rank(M) == 2);
    auto x = solve_linear(M, rv({6, 2, 8}));
    REQUIRE(x.has_value());
    CHECK(mat_vec(M, *x) == rv({6, 2, 8}));
    CHECK(!solve_linear(M, rv({6, 2, 9})).has_value());  // inconsistent
}

TEST_CASE("matrix helpers") {
    RatMatrix M(2, {rv({1, 2}), rv({3, 4}), rv({5, 6})});
    RatMatrix Mt = transpose(M);
    CHECK(Mt.row_count() == 2);
    CHECK(Mt.rows[0] == rv({1, 3, 5}));
    RatMatrix P = mat_mul(Mt, M);  // 2x2 Gram matrix
    CHECK(P.rows[0] == rv({35, 44}));
    CHECK(P.rows[1] == rv({44, 56}));
    CHECK_THROWS_AS(RatMatrix(2, {rv({1, 2, 3})}), DimensionMismatch);
}

TEST_CASE("canonical directions") {
    CHECK(canonical_direction({Rat(1, 2), Rat(-1, 3)}) == rv({3, -2}));
    CHECK(canonical_line({Rat(-1, 2), Rat(1, 4)}) == rv({2, -1}));
    CHECK(canonical_direction(zero_vector(2)) == zero_vector(2));
    CHECK(canonical_direction(rv({4, -6})) == rv({2, -3}));
}
