#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "convexcalc/errors.hpp"
#include "convexcalc/json_io.hpp"
#include "convexcalc/task.hpp"

using namespace convexcalc;

namespace {

RatVector rv(std::initializer_list<long> xs) {
    RatVector out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

struct TempFile {
    std::string path;
    TempFile(const std::string& name, const std::string& content)
        : path("/tmp/convexcalc_test_" + name) {
        std::ofstream f(path);
        f << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

struct RunResult {
    int code;
    Json json;
    std::string raw;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_task(args, out, err);
    RunResult r{code, Json(), out.str()};
    if (!r.raw.empty() && (r.raw[0] == '{' || r.raw[0] == '[')) r.json = Json::parse(r.raw);
    return r;
}

}  // namespace

TEST_CASE("rational and vector JSON") {
    CHECK(rat_to_json(Rat(1, 2)) == Json("1/2"));
    CHECK(rat_to_json(Rat(-7)) == Json(-7));
    CHECK(rat_from_json(Json::parse("\"2/4\"")) == Rat(1, 2));
    CHECK(rat_from_json(Json(5)) == Rat(5));
    CHECK_THROWS_AS(rat_from_json(Json(1.5)), InvalidInput);
    CHECK(vec_from_json(Json::parse("[1, \"1/3\", -2]")) ==
          RatVector{Rat(1), Rat(1, 3), Rat(-2)});
}

TEST_CASE("polyhedron JSON round trips") {
    HPolyhedron P(2);
    P.add_ineq({Rat(1), Rat(1, 2)}, Rat(3));
    P.add_eq(rv({0, 1}), Rat(-1));
    HPolyhedron back = hpoly_from_json(hpoly_to_json(P));
    CHECK(set_equal(P, back));

    VPolyhedron V(2);
    V.points = {rv({0, 0}), rv({1, 0})};
    V.rays = {rv({0, 1})};
    VPolyhedron vback = vpoly_from_json(vpoly_to_json(V));
    CHECK(set_equal(V, vback));

    // Empty sets keep their dimension through the round trip.
    VPolyhedron empty = VPolyhedron::empty_set(3);
    CHECK(vpoly_from_json(vpoly_to_json(empty)).dim == 3);

    CHECK_THROWS_AS(hpoly_from_json(Json::parse("{\"ineq\": []}")), InvalidInput);
    CHECK_THROWS_AS(hpoly_from_json(Json::parse(
                        "{\"dim\": 2, \"ineq\": [{\"a\": [1], \"b\": 0}]}")),
                    InvalidInput);
    CHECK_THROWS_AS(vpoly_from_json(Json::parse("{\"points\": []}")), InvalidInput);
}

TEST_CASE("function and map JSON round trips") {
    MaxAffineFunction f = maxaffine_from_json(Json::parse(
        R"({"n": 1, "pieces": [{"a": [1], "b": 0}, {"a": [-1], "b": 0}], "domain": null})"));
    CHECK(f.pieces.size() == 2);
    CHECK(set_equal(subdifferential(f, rv({0})), [] {
        VPolyhedron V(1);
        V.points = {RatVector{Rat(-1)}, RatVector{Rat(1)}};
        return V;
    }()));
    Json fj = maxaffine_to_json(f);
    CHECK(fj["domain"].is_null());

    PolyhedralMap F = polymap_from_json(Json::parse(
        R"({"n": 1, "p": 1, "graph": {"dim": 2, "ineq": [{"a": [1, -1], "b": 0}]}})"));
    CHECK(F.graph_contains(rv({0}), rv({1})));
    PolyhedralMap back = polymap_from_json(polymap_to_json(F));
    CHECK(set_equal(F.graph, back.graph));
}

TEST_CASE("cli: normal cone of the crossing fixture") {
    TempFile omega2("omega2.json", R"({
        "dim": 2,
        "ineq": [{"a": [1, 0], "b": 0}],
        "eq": [{"e": [0, 1], "d": 0}]
    })");
    auto r = run({"normal-cone", "--set", omega2.path, "--point", "[0,0]"});
    CHECK(r.code == 0);
    CHECK(r.json["dim"] == 2);
    REQUIRE(r.json["generators"].size() == 1);
    CHECK(vec_from_json(r.json["generators"][0]) == rv({1, 0}));
    REQUIRE(r.json["lineality"].size() == 1);
    CHECK(vec_from_json(r.json["lineality"][0]) == rv({0, 1}));
}

TEST_CASE("cli: sum rule fixture returns Equal and exit 0") {
    TempFile f1("f1.json",
                R"({"n": 1, "pieces": [{"a": [1], "b": 0}, {"a": [-1], "b": 0}]})");
    TempFile f2("f2.json",
                R"({"n": 1, "pieces": [{"a": [1], "b": -1}, {"a": [-1], "b": 1}]})");
    auto r = run({"rule:sum", "--fns", f1.path, "--fns", f2.path, "--point", "[0]"});
    CHECK(r.code == 0);
    CHECK(r.json["verdict"] == "Equal");
    CHECK(r.json["qualification_holds"] == true);
    VPolyhedron lhs = vpoly_from_json(r.json["lhs"]);
    VPolyhedron expect(1);
    expect.points = {RatVector{Rat(-2)}, RatVector{Rat(0)}};
    CHECK(set_equal(lhs, expect));
}

TEST_CASE("cli: fuzz verb") {
    auto r = run({"fuzz", "--rule", "intersection", "--seed", "7", "--trials", "10"});
    CHECK(r.code == 0);
    CHECK(r.json["rule"] == "intersection");
    CHECK(r.json["trials"] == 10);
    CHECK(r.json["equal_count"] == r.json["qualified_trials"]);
}

TEST_CASE("cli: gallery verb") {
    auto r = run({"gallery"});
    CHECK(r.code == 0);
    CHECK(r.json["parabola"]["report"]["verdict"] == "RhsStrictlySmaller");
    CHECK(vec_from_json(r.json["parabola"]["report"]["witness"]) == rv({1, 0}));
}

TEST_CASE("cli: exit codes") {
    SUBCASE("missing file is an input error") {
        auto r = run({"ri-point", "--set", "/tmp/definitely_missing_532.json"});
        CHECK(r.code == 2);
        CHECK(r.json["error"] == "InvalidInput");
    }
    SUBCASE("schema violation is an input error") {
        TempFile bad("bad.json", R"({"dim": 1, "ineq": [{"a": [1, 2], "b": 0}]})");
        auto r = run({"ri-point", "--set", bad.path});
        CHECK(r.code == 2);
    }
    SUBCASE("empty set surfaces the named error") {
        TempFile empty("empty.json",
                       R"({"dim": 1, "ineq": [{"a": [0], "b": -1}]})");
        auto r = run({"ri-point", "--set", empty.path});
        CHECK(r.code == 2);
        CHECK(r.json["error"] == "EmptySet");
    }
    SUBCASE("rule inequality exits 1 with a witness") {
        TempFile neg("neg.json", R"({"dim": 1, "ineq": [{"a": [1], "b": 0}]})");
        TempFile pos("pos.json", R"({"dim": 1, "ineq": [{"a": [-1], "b": 0}]})");
        // Normal cones at 0 are the two half-lines; their sum is all of R,
        // while the intersection {0} has normal cone R as well: Equal.
        auto r = run({"rule:intersection", "--set", neg.path, "--set", pos.path,
                      "--point", "[0]"});
        CHECK((r.code == 0 || r.code == 1));
        CHECK(r.json.contains("verdict"));
    }
}

TEST_CASE("cli: emitted sets reparse to equal sets") {
    TempFile tri("tri.json", R"({
        "dim": 2,
        "ineq": [{"a": [-1, 0], "b": 0}, {"a": [0, -1], "b": 0}, {"a": [1, 1], "b": 1}]
    })");
    auto r = run({"subdiff", "--fns", "/dev/null", "--point", "[0]"});
    CHECK(r.code == 2);  // /dev/null is not valid JSON

    TempFile ind("ind.json", R"({
        "n": 2,
        "pieces": [{"a": [0, 0], "b": 0}],
        "domain": {"dim": 2,
                   "ineq": [{"a": [-1, 0], "b": 0}, {"a": [0, -1], "b": 0},
                             {"a": [1, 1], "b": 1}]}
    })");
    auto r2 = run({"subdiff", "--fns", ind.path, "--point", "[0,0]"});
    CHECK(r2.code == 0);
    VPolyhedron emitted = vpoly_from_json(r2.json);
    // Normal cone of the triangle at the corner: the negative quadrant.
    VPolyhedron expect(2);
    expect.points = {rv({0, 0})};
    expect.rays = {rv({-1, 0}), rv({0, -1})};
    CHECK(set_equal(emitted, expect));
}

TEST_CASE("cli: --out writes the same JSON to a file") {
    TempFile seg("seg.json", R"({"dim": 1, "ineq": [{"a": [1], "b": 1}, {"a": [-1], "b": 0}]})");
    std::string out_path = "/tmp/convexcalc_test_out.json";
    auto r = run({"ri-point", "--set", seg.path, "--out", out_path});
    CHECK(r.code == 0);
    std::ifstream f(out_path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == r.raw);
    std::remove(out_path.c_str());
}

TEST_CASE("cli: help exits zero") {
    auto r = run({"--help"});
    CHECK(r.code == 0);
}
