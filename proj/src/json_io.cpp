#include "convexcalc/json_io.hpp"

#include "convexcalc/errors.hpp"

namespace convexcalc {

Json rat_to_json(const Rat& r) {
    if (denominator(r) == 1) {
        Int num = numerator(r);
        // Keep small integers as JSON numbers, big ones as strings.
        if (num >= -1000000000 && num <= 1000000000)
            return Json(static_cast<long long>(num));
    }
    return Json(rat_str(r));
}

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) return parse_rat(j.get<std::string>());
    throw InvalidInput("rational must be an integer or a \"p/q\" string, got " + j.dump());
}

Json vec_to_json(const RatVector& v) {
    Json out = Json::array();
    for (const auto& e : v) out.push_back(rat_to_json(e));
    return out;
}

RatVector vec_from_json(const Json& j) {
    if (!j.is_array()) throw InvalidInput("vector must be a JSON array, got " + j.dump());
    RatVector out;
    for (const auto& e : j) out.push_back(rat_from_json(e));
    return out;
}

Json hpoly_to_json(const HPolyhedron& P) {
    Json out;
    out["dim"] = P.dim;
    out["ineq"] = Json::array();
    for (std::size_t i = 0; i < P.ineq_count(); ++i)
        out["ineq"].push_back({{"a", vec_to_json(P.A.rows[i])}, {"b", rat_to_json(P.b[i])}});
    out["eq"] = Json::array();
    for (std::size_t j = 0; j < P.eq_count(); ++j)
        out["eq"].push_back({{"e", vec_to_json(P.E.rows[j])}, {"d", rat_to_json(P.d[j])}});
    return out;
}

HPolyhedron hpoly_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_unsigned() ||
        j["dim"].get<std::size_t>() == 0)
        throw InvalidInput("H-polyhedron needs a positive \"dim\" field");
    HPolyhedron P(j["dim"].get<std::size_t>());
    if (j.contains("ineq")) {
        if (!j["ineq"].is_array()) throw InvalidInput("\"ineq\" must be an array");
        std::size_t row = 0;
        for (const auto& r : j["ineq"]) {
            if (!r.contains("a") || !r.contains("b"))
                throw InvalidInput("ineq row " + std::to_string(row) + " needs \"a\" and \"b\"");
            RatVector a = vec_from_json(r["a"]);
            if (a.size() != P.dim)
                throw InvalidInput("ineq row " + std::to_string(row) + ": \"a\" has dimension " +
                                   std::to_string(a.size()) + ", expected " +
                                   std::to_string(P.dim));
            P.add_ineq(std::move(a), rat_from_json(r["b"]));
            ++row;
        }
    }
    if (j.contains("eq")) {
        if (!j["eq"].is_array()) throw InvalidInput("\"eq\" must be an array");
        std::size_t row = 0;
        for (const auto& r : j["eq"]) {
            if (!r.contains("e") || !r.contains("d"))
                throw InvalidInput("eq row " + std::to_string(row) + " needs \"e\" and \"d\"");
            RatVector e = vec_from_json(r["e"]);
            if (e.size() != P.dim)
                throw InvalidInput("eq row " + std::to_string(row) + ": \"e\" has dimension " +
                                   std::to_string(e.size()) + ", expected " +
                                   std::to_string(P.dim));
            P.add_eq(std::move(e), rat_from_json(r["d"]));
            ++row;
        }
    }
    return P;
}

Json vpoly_to_json(const VPolyhedron& V) {
    Json out;
    out["dim"] = V.dim;
    out["points"] = Json::array();
    for (const auto& p : V.points) out["points"].push_back(vec_to_json(p));
    out["rays"] = Json::array();
    for (const auto& r : V.rays) out["rays"].push_back(vec_to_json(r));
    out["lineality"] = Json::array();
    for (const auto& l : V.lineality) out["lineality"].push_back(vec_to_json(l));
    return out;
}

VPolyhedron vpoly_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidInput("V-polyhedron must be a JSON object");
    auto read = [&](const char* key) {
        std::vector<RatVector> out;
        if (!j.contains(key)) return out;
        if (!j[key].is_array()) throw InvalidInput(std::string(key) + " must be an array");
        for (const auto& e : j[key]) out.push_back(vec_from_json(e));
        return out;
    };
    auto points = read("points");
    auto rays = read("rays");
    auto lineality = read("lineality");
    std::size_t dim = 0;
    if (j.contains("dim"))
        dim = j["dim"].get<std::size_t>();
    else if (!points.empty())
        dim = points[0].size();
    else
        throw InvalidInput("V-polyhedron with no points needs an explicit \"dim\"");
    VPolyhedron V(dim);
    for (auto& vecs : {&points, &rays, &lineality})
        for (const auto& v : *vecs)
            if (v.size() != dim) throw InvalidInput("V-polyhedron generator dimension mismatch");
    for (const auto& r : rays)
        if (is_zero(r)) throw InvalidInput("zero ray in V-polyhedron");
    for (const auto& l : lineality)
        if (is_zero(l)) throw InvalidInput("zero lineality vector in V-polyhedron");
    V.points = std::move(points);
    V.rays = std::move(rays);
    V.lineality = std::move(lineality);
    return V;
}

Json cone_to_json(const Cone& c) {
    Json out;
    out["dim"] = c.dim;
    out["generators"] = Json::array();
    for (const auto& g : c.generators) out["generators"].push_back(vec_to_json(g));
    out["lineality"] = Json::array();
    for (const auto& l : c.lineality) out["lineality"].push_back(vec_to_json(l));
    return out;
}

Json maxaffine_to_json(const MaxAffineFunction& f) {
    Json out;
    out["n"] = f.n;
    out["pieces"] = Json::array();
    for (const auto& [a, b] : f.pieces)
        out["pieces"].push_back({{"a", vec_to_json(a)}, {"b", rat_to_json(b)}});
    if (f.domain.ineq_count() == 0 && f.domain.eq_count() == 0)
        out["domain"] = nullptr;
    else
        out["domain"] = hpoly_to_json(f.domain);
    return out;
}

MaxAffineFunction maxaffine_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("pieces"))
        throw InvalidInput("max-affine function needs \"n\" and \"pieces\"");
    if (!j["n"].is_number_unsigned() || j["n"].get<std::size_t>() == 0)
        throw InvalidInput("max-affine function needs a positive \"n\"");
    std::size_t n = j["n"].get<std::size_t>();
    std::vector<std::pair<RatVector, Rat>> pieces;
    std::size_t row = 0;
    for (const auto& p : j["pieces"]) {
        if (!p.contains("a") || !p.contains("b"))
            throw InvalidInput("piece " + std::to_string(row) + " needs \"a\" and \"b\"");
        RatVector a = vec_from_json(p["a"]);
        if (a.size() != n)
            throw InvalidInput("piece " + std::to_string(row) + " dimension mismatch");
        pieces.emplace_back(std::move(a), rat_from_json(p["b"]));
        ++row;
    }
    HPolyhedron dom = HPolyhedron::full_space(n);
    if (j.contains("domain") && !j["domain"].is_null()) {
        dom = hpoly_from_json(j["domain"]);
        if (dom.dim != n) throw InvalidInput("domain dimension mismatch");
    }
    return MaxAffineFunction(n, std::move(pieces), std::move(dom));
}

Json affine_map_to_json(const AffineMap& B) {
    Json rows = Json::array();
    for (const auto& r : B.A.rows) rows.push_back(vec_to_json(r));
    return Json{{"A", rows}, {"b", vec_to_json(B.b)}};
}

AffineMap affine_map_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("A") || !j.contains("b"))
        throw InvalidInput("affine map needs \"A\" and \"b\"");
    if (!j["A"].is_array() || j["A"].empty())
        throw InvalidInput("affine map \"A\" must be a nonempty array of rows");
    std::vector<RatVector> rows;
    for (const auto& r : j["A"]) rows.push_back(vec_from_json(r));
    std::size_t cols = rows[0].size();  // read before the move below
    RatMatrix A(cols, std::move(rows));
    return AffineMap(std::move(A), vec_from_json(j["b"]));
}

Json polymap_to_json(const PolyhedralMap& F) {
    return Json{{"n", F.n}, {"p", F.p}, {"graph", hpoly_to_json(F.graph)}};
}

PolyhedralMap polymap_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("p") || !j.contains("graph"))
        throw InvalidInput("polyhedral map needs \"n\", \"p\" and \"graph\"");
    if (!j["n"].is_number_unsigned() || !j["p"].is_number_unsigned() ||
        j["n"].get<std::size_t>() == 0 || j["p"].get<std::size_t>() == 0)
        throw InvalidInput("polyhedral map needs positive \"n\" and \"p\"");
    return PolyhedralMap(j["n"].get<std::size_t>(), j["p"].get<std::size_t>(),
                         hpoly_from_json(j["graph"]));
}

Json ri_certificate_to_json(const RiCertificate& c) {
    return Json{{"point", vec_to_json(c.point)}, {"implicit_rows", c.implicit_rows}};
}

Json projection_to_json(const ProjectionResult& r) {
    return Json{{"point", vec_to_json(r.point)},
                {"squared_distance", rat_to_json(r.squared_distance)},
                {"active_rows", r.active_rows}};
}

namespace {
Json erat_to_json(const ERat& e) {
    if (e.is_finite()) return rat_to_json(e.value);
    return Json(e.str());
}
}  // namespace

Json separation_outcome_to_json(const SeparationOutcome& s) {
    Json out;
    out["separable"] = s.separable;
    if (s.certificate) {
        out["certificate"] = Json{{"v", vec_to_json(s.certificate->v)},
                                  {"sup_left", erat_to_json(s.certificate->sup_left)},
                                  {"inf_left", erat_to_json(s.certificate->inf_left)},
                                  {"sup_right", erat_to_json(s.certificate->sup_right)},
                                  {"inf_right", erat_to_json(s.certificate->inf_right)}};
    } else {
        out["certificate"] = nullptr;
    }
    return out;
}

Json rule_report_to_json(const RuleReport& rep) {
    Json out;
    out["rule"] = rep.rule;
    out["qualification_holds"] = rep.qualification_holds;
    out["verdict"] = verdict_str(rep.verdict);
    out["lhs"] = vpoly_to_json(rep.lhs);
    out["rhs"] = vpoly_to_json(rep.rhs);
    out["witness"] = rep.witness ? vec_to_json(*rep.witness) : Json(nullptr);
    Json notes = Json::object();
    for (const auto& [k, v] : rep.notes) notes[k] = v;
    out["notes"] = notes;
    return out;
}

Json fuzz_report_to_json(const FuzzReport& rep) {
    return Json{{"rule", rep.rule},
                {"trials", rep.trials},
                {"qualified_trials", rep.qualified_trials},
                {"equal_count", rep.equal_count},
                {"skipped", rep.skipped},
                {"witnesses", rep.witnesses}};
}

}  // namespace convexcalc
