#include "convexcalc/task.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <algorithm>
#include <fstream>
#include <iostream>

#include "convexcalc/errors.hpp"
#include "convexcalc/json_io.hpp"

namespace convexcalc {

namespace {

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

Json parse_inline(const std::string& text, const char* what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed ") + what + ": " + e.what());
    }
}

struct Options {
    std::vector<std::string> sets;
    std::vector<std::string> fns;
    std::vector<std::string> maps;
    std::string point, dir, dims, rule, out_path;
    std::uint64_t seed = 0;
    std::size_t trials = 50;
};

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_option("--set", opt.sets, "H-polyhedron JSON file (repeatable)");
    cmd->add_option("--fns", opt.fns, "max-affine function JSON file (repeatable)");
    cmd->add_option("--map", opt.maps, "map JSON file (repeatable)");
    cmd->add_option("--point", opt.point, "inline JSON vector");
    cmd->add_option("--dir", opt.dir, "inline JSON direction vector");
    cmd->add_option("--dims", opt.dims, "inline JSON dimension list");
    cmd->add_option("--seed", opt.seed, "fuzz seed");
    cmd->add_option("--trials", opt.trials, "fuzz trial count");
    cmd->add_option("--rule", opt.rule, "fuzz rule id");
    cmd->add_option("--out", opt.out_path, "also write the JSON result to this file");
}

RatVector need_point(const Options& opt, const char* name = "--point") {
    if (opt.point.empty()) throw InvalidInput(std::string(name) + " is required");
    return vec_from_json(parse_inline(opt.point, name));
}

RatVector need_dir(const Options& opt) {
    if (opt.dir.empty()) throw InvalidInput("--dir is required");
    return vec_from_json(parse_inline(opt.dir, "--dir"));
}

// Input dimensions are validated against the double-description cap here at
// the boundary; lifted intermediate spaces built by the rules inherit
// validated inputs and are exempt.
void check_input_cap(std::size_t dim, const std::string& path) {
    if (dim > dim_cap())
        throw DimensionCapExceeded("input " + path + " has dimension " +
                                   std::to_string(dim) + " above the cap " +
                                   std::to_string(dim_cap()) +
                                   " (override with CONVEXCALC_DIM_CAP)");
}

std::vector<HPolyhedron> load_sets(const Options& opt, std::size_t at_least) {
    if (opt.sets.size() < at_least)
        throw InvalidInput("this verb needs at least " + std::to_string(at_least) +
                           " --set file(s)");
    std::vector<HPolyhedron> out;
    for (const auto& path : opt.sets) {
        out.push_back(hpoly_from_json(load_json(path)));
        check_input_cap(out.back().dim, path);
    }
    return out;
}

std::vector<MaxAffineFunction> load_fns(const Options& opt, std::size_t at_least) {
    if (opt.fns.size() < at_least)
        throw InvalidInput("this verb needs at least " + std::to_string(at_least) +
                           " --fns file(s)");
    std::vector<MaxAffineFunction> out;
    for (const auto& path : opt.fns) {
        out.push_back(maxaffine_from_json(load_json(path)));
        check_input_cap(out.back().n, path);
    }
    return out;
}

std::vector<PolyhedralMap> load_maps(const Options& opt, std::size_t at_least) {
    if (opt.maps.size() < at_least)
        throw InvalidInput("this verb needs at least " + std::to_string(at_least) +
                           " --map file(s)");
    std::vector<PolyhedralMap> out;
    for (const auto& path : opt.maps) {
        out.push_back(polymap_from_json(load_json(path)));
        check_input_cap(out.back().graph.dim, path);
    }
    return out;
}

// Split a base point given in the product space of a map's input and output.
std::pair<RatVector, RatVector> split_base(const RatVector& base, std::size_t n) {
    if (base.size() < n) throw InvalidInput("--point is shorter than the input dimension");
    return {RatVector(base.begin(), base.begin() + n),
            RatVector(base.begin() + n, base.end())};
}

int rule_exit(const RuleReport& rep) { return rep.verdict == Verdict::Equal ? 0 : 1; }

}  // namespace

int run_task(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (const char* cap = std::getenv("CONVEXCALC_DIM_CAP")) {
        char* end = nullptr;
        long v = std::strtol(cap, &end, 10);
        if (end && *end == '\0' && v > 0) set_dim_cap(static_cast<std::size_t>(v));
    }

    const std::vector<std::string> verbs = {
        "ri-point", "affine-hull", "project", "separate", "normal-cone", "subdiff",
        "fermat", "rule:intersection", "rule:sum", "rule:chain", "rule:max",
        "rule:optimal-value", "rule:componentwise", "rule:preimage", "rule:cod-sum",
        "rule:cod-chain", "rule:cod-intersect", "rule:domain", "rule:solution-map",
        "gallery", "fuzz"};

    // Verbs are dispatched by hand (several contain ':', which CLI11 rejects
    // as a subcommand name); CLI11 handles the flags.
    CLI::App app{"exact polyhedral convex-analysis engine"};
    Options opt;
    add_common(&app, opt);
    auto usage = [&] {
        std::string text = app.help();
        text += "\nVerbs:\n";
        for (const auto& v : verbs) text += "  " + v + "\n";
        return text;
    };

    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        out << usage();
        return args.empty() ? 2 : 0;
    }
    const std::string verb = args[0];
    if (std::find(verbs.begin(), verbs.end(), verb) == verbs.end()) {
        err << "unknown verb: " << verb << "\n" << usage();
        return 2;
    }
    try {
        std::vector<std::string> cli_args(args.rbegin(), args.rend() - 1);
        app.parse(cli_args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help after a verb
            out << usage();
            return 0;
        }
        err << e.what() << "\n";
        return 2;
    }
    Json result;
    int code = 0;
    try {
        if (verb == "ri-point") {
            auto sets = load_sets(opt, 1);
            result = ri_certificate_to_json(ri_point(sets[0]));
        } else if (verb == "affine-hull") {
            auto sets = load_sets(opt, 1);
            result = hpoly_to_json(affine_hull(sets[0]));
        } else if (verb == "project") {
            auto sets = load_sets(opt, 1);
            result = projection_to_json(euclid_project(need_point(opt), sets[0]));
        } else if (verb == "separate") {
            if (opt.sets.size() >= 2) {
                auto sets = load_sets(opt, 2);
                result = separation_outcome_to_json(properly_separate(sets[0], sets[1]));
            } else {
                auto sets = load_sets(opt, 1);
                SeparationOutcome so{true, strictly_separate(need_point(opt), sets[0])};
                result = separation_outcome_to_json(so);
            }
        } else if (verb == "normal-cone") {
            auto sets = load_sets(opt, 1);
            result = cone_to_json(normal_cone(sets[0], need_point(opt)));
        } else if (verb == "subdiff") {
            auto fns = load_fns(opt, 1);
            result = vpoly_to_json(subdifferential(fns[0], need_point(opt)));
        } else if (verb == "fermat") {
            auto fns = load_fns(opt, 1);
            result = Json{{"fermat", fermat_check(fns[0], need_point(opt))}};
        } else if (verb == "rule:intersection") {
            RuleReport rep = intersection_rule(load_sets(opt, 2), need_point(opt));
            result = rule_report_to_json(rep);
            code = rule_exit(rep);
        } else if (verb == "rule:sum") {
            RuleReport rep = sum_rule(load_fns(opt, 2), need_point(opt));
            result = rule_report_to_json(rep);
            code = rule_exit(rep);
        } else if (verb == "rule:chain") {
            auto fns = load_fns(opt, 1);
            if (opt.maps.empty()) throw InvalidInput("rule:chain needs --map (affine map JSON)");
            AffineMap B = affine_map_from_json(load_json(opt.maps[0]));
            RuleReport rep = chain_rule_affine(fns[0], B, need_point(opt));
            result = rule_report_to_json(rep);
            code = rule_exit(rep);
        } else if (verb == "rule:max") {
            RuleReport rep = max_rule(load_fns(opt, 2), need_point(opt));
            result = rule_report_to_json(rep);
            code = rule_exit(rep);
        } else if (verb == "rule:optimal-value") {
            auto fns = load_fns(opt, 1);
            auto maps = load_maps(opt, 1);
            RuleReport rep = optimal_value_subdiff(fns[0], maps[0], need_point(opt));
            result = rule_report_to_json(rep);
            code = rule_exit(rep);
        } else if (verb == "rule:componentwise") {
            auto fns = load_fns(opt, 2);
            MaxAffineFunction g = fns.front();
            std::vector<MaxAffineFunction> comps(fns.begin() + 1, fns.end());
            RuleReport rep = componentwise_chain(g, comps, need_point(opt));
            result = rule_report_to_json(rep);
            code = rule_exit(rep);
        } else if (verb == "rule:preimage") {
            auto maps = load_maps(opt, 1);
            auto sets = load_sets(opt, 1);
            auto [x, y] = split_base(need_point(opt), maps[0].n);
            RuleReport rep = preimage_normal(maps[0], sets[0], x, y);
            result = rule_report_to_json(rep);
            code = rule_exit(rep);
        } else if (verb == "rule:cod-sum") {
            auto maps = load_maps(opt, 2);
            auto [x, y] = split_base(need_point(opt), maps[0].n);
            RuleReport rep = coderivative_sum(maps[0], maps[1], x, y, need_dir(opt));
            result = rule_report_to_json(rep);
            code = rule_exit(rep);
        } else if (verb == "rule:cod-chain") {
            auto maps = load_maps(opt, 2);
            auto [x, z] = split_base(need_point(opt), maps[0].n);
            RuleReport rep = coderivative_chain(maps[0], maps[1], x, z, need_dir(opt));
            result = rule_report_to_json(rep);
            code = rule_exit(rep);
        } else if (verb == "rule:cod-intersect") {
            auto maps = load_maps(opt, 2);
            auto [x, y] = split_base(need_point(opt), maps[0].n);
            RuleReport rep = coderivative_intersect(maps[0], maps[1], x, y, need_dir(opt));
            result = rule_report_to_json(rep);
            code = rule_exit(rep);
        } else if (verb == "rule:domain") {
            auto maps = load_maps(opt, 1);
            RuleReport rep = domain_normal(maps[0], need_point(opt));
            result = rule_report_to_json(rep);
            code = rule_exit(rep);
        } else if (verb == "rule:solution-map") {
            auto maps = load_maps(opt, 2);
            if (opt.dims.empty())
                throw InvalidInput("rule:solution-map needs --dims \"[n,p]\"");
            Json dims = parse_inline(opt.dims, "--dims");
            if (!dims.is_array() || dims.size() != 2)
                throw InvalidInput("--dims must be a two-element array [n,p]");
            std::size_t n = dims[0].get<std::size_t>(), p = dims[1].get<std::size_t>();
            auto [x, y] = split_base(need_point(opt), n);
            RuleReport rep =
                solution_map_coderivative(maps[0], maps[1], n, p, x, y, need_dir(opt));
            result = rule_report_to_json(rep);
            code = rule_exit(rep);
        } else if (verb == "gallery") {
            RuleReport parabola = parabola_counterexample();
            result = Json{{"ball", Json{{"id", gallery_ball_item().id},
                                        {"statement", gallery_ball_item().statement}}},
                          {"parabola", Json{{"id", gallery_parabola_item().id},
                                            {"statement", gallery_parabola_item().statement},
                                            {"report", rule_report_to_json(parabola)}}}};
        } else if (verb == "fuzz") {
            if (opt.rule.empty()) throw InvalidInput("fuzz needs --rule");
            InstanceSpec spec;
            spec.seed = opt.seed;
            if (!opt.dims.empty()) {
                Json dims = parse_inline(opt.dims, "--dims");
                if (dims.is_array() && !dims.empty())
                    spec.max_dim = dims[0].get<std::size_t>();
                else if (dims.is_number_unsigned())
                    spec.max_dim = dims.get<std::size_t>();
            }
            FuzzReport rep = fuzz_rule(opt.rule, spec, opt.trials);
            result = fuzz_report_to_json(rep);
            code = rep.equal_count == rep.qualified_trials ? 0 : 1;
        }
    } catch (const Error& e) {
        Json ej{{"error", e.code()}, {"detail", e.what()}};
        out << ej.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        Json ej{{"error", "InternalError"}, {"detail", e.what()}};
        out << ej.dump(2) << "\n";
        return 2;
    }

    std::string text = result.dump(2);
    out << text << "\n";
    if (!opt.out_path.empty()) {
        std::ofstream f(opt.out_path);
        f << text << "\n";
        if (!f) {
            err << "cannot write " << opt.out_path << "\n";
            return 2;
        }
    }
    return code;
}

}  // namespace convexcalc
