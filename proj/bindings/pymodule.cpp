#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "convexcalc/errors.hpp"
#include "convexcalc/json_io.hpp"

namespace py = pybind11;
using namespace convexcalc;

namespace {

// Structured values cross the boundary as JSON: python objects are dumped
// with the stdlib json module and parsed by nlohmann, and vice versa.
Json to_json(const py::object& obj) {
    if (py::isinstance<py::str>(obj)) return Json::parse(obj.cast<std::string>());
    py::object dumps = py::module_::import("json").attr("dumps");
    return Json::parse(dumps(obj).cast<std::string>());
}

py::object to_py(const Json& j) {
    py::object loads = py::module_::import("json").attr("loads");
    return loads(py::str(j.dump()));
}

RatVector to_vec(const py::object& obj) { return vec_from_json(to_json(obj)); }

struct PyHPoly {
    HPolyhedron value;
};
struct PyVPoly {
    VPolyhedron value;
};
struct PyFn {
    MaxAffineFunction value;
};
struct PyMap {
    PolyhedralMap value;
};

}  // namespace

PYBIND11_MODULE(_convexcalc, m) {
    m.doc() = "exact polyhedral convex-analysis engine";

    py::register_exception<Error>(m, "ConvexCalcError");

    py::class_<PyHPoly>(m, "HPolyhedron")
        .def_static("from_json",
                    [](const py::object& j) { return PyHPoly{hpoly_from_json(to_json(j))}; })
        .def("to_json", [](const PyHPoly& p) { return to_py(hpoly_to_json(p.value)); })
        .def_property_readonly("dim", [](const PyHPoly& p) { return p.value.dim; })
        .def("contains", [](const PyHPoly& p, const py::object& x) {
            return p.value.contains(to_vec(x));
        })
        .def("__repr__", [](const PyHPoly& p) {
            return "HPolyhedron(dim=" + std::to_string(p.value.dim) + ", rows=" +
                   std::to_string(p.value.ineq_count() + p.value.eq_count()) + ")";
        });

    py::class_<PyVPoly>(m, "VPolyhedron")
        .def_static("from_json",
                    [](const py::object& j) { return PyVPoly{vpoly_from_json(to_json(j))}; })
        .def("to_json", [](const PyVPoly& p) { return to_py(vpoly_to_json(p.value)); })
        .def_property_readonly("dim", [](const PyVPoly& p) { return p.value.dim; })
        .def_property_readonly("is_empty", [](const PyVPoly& p) { return p.value.empty(); })
        .def("contains", [](const PyVPoly& p, const py::object& x) {
            return v_contains(p.value, to_vec(x));
        })
        .def("__repr__", [](const PyVPoly& p) {
            return "VPolyhedron(dim=" + std::to_string(p.value.dim) + ", points=" +
                   std::to_string(p.value.points.size()) + ")";
        });

    py::class_<PyFn>(m, "MaxAffineFunction")
        .def_static("from_json",
                    [](const py::object& j) { return PyFn{maxaffine_from_json(to_json(j))}; })
        .def("to_json", [](const PyFn& f) { return to_py(maxaffine_to_json(f.value)); })
        .def("value", [](const PyFn& f, const py::object& x) -> py::object {
            auto v = f.value.value(to_vec(x));
            if (!v) return py::none();
            return py::str(rat_str(*v));
        })
        .def("__repr__", [](const PyFn& f) {
            return "MaxAffineFunction(n=" + std::to_string(f.value.n) + ", pieces=" +
                   std::to_string(f.value.pieces.size()) + ")";
        });

    py::class_<PyMap>(m, "PolyhedralMap")
        .def_static("from_json",
                    [](const py::object& j) { return PyMap{polymap_from_json(to_json(j))}; })
        .def("to_json", [](const PyMap& f) { return to_py(polymap_to_json(f.value)); })
        .def("__repr__", [](const PyMap& f) {
            return "PolyhedralMap(" + std::to_string(f.value.n) + " -> " +
                   std::to_string(f.value.p) + ")";
        });

    // --- conversions and set algebra ---------------------------------------
    m.def("dd_convert", [](const PyHPoly& p) { return PyVPoly{dd_convert(p.value)}; });
    m.def("dd_convert_back",
          [](const PyVPoly& v) { return PyHPoly{dd_convert_back(v.value)}; });
    m.def("set_equal",
          [](const PyHPoly& a, const PyHPoly& b) { return set_equal(a.value, b.value); });
    m.def("set_equal",
          [](const PyVPoly& a, const PyVPoly& b) { return set_equal(a.value, b.value); });
    m.def("set_equal",
          [](const PyHPoly& a, const PyVPoly& b) { return set_equal(a.value, b.value); });
    m.def("set_equal",
          [](const PyVPoly& a, const PyHPoly& b) { return set_equal(a.value, b.value); });

    m.def("ri_point",
          [](const PyHPoly& p) { return to_py(ri_certificate_to_json(ri_point(p.value))); });
    m.def("ri_contains", [](const PyHPoly& p, const py::object& x) {
        return ri_contains(p.value, to_vec(x));
    });
    m.def("affine_hull", [](const PyHPoly& p) { return PyHPoly{affine_hull(p.value)}; });
    m.def("implicit_equalities",
          [](const PyHPoly& p) { return implicit_equalities(p.value); });

    // --- projection and separation ------------------------------------------
    m.def("euclid_project", [](const py::object& x, const PyHPoly& p) {
        return to_py(projection_to_json(euclid_project(to_vec(x), p.value)));
    });
    m.def("strictly_separate", [](const py::object& x, const PyHPoly& p) {
        SeparationOutcome out{true, strictly_separate(to_vec(x), p.value)};
        return to_py(separation_outcome_to_json(out));
    });
    m.def("properly_separate", [](const PyHPoly& a, const PyHPoly& b) {
        return to_py(separation_outcome_to_json(properly_separate(a.value, b.value)));
    });
    m.def("check_basic_qc", [](const PyHPoly& a, const PyHPoly& b, const py::object& x) {
        return check_basic_qc(a.value, b.value, to_vec(x));
    });

    // --- normal cones and subdifferentials -----------------------------------
    m.def("normal_cone", [](const PyHPoly& p, const py::object& x) {
        return to_py(cone_to_json(normal_cone(p.value, to_vec(x))));
    });
    m.def("subdifferential", [](const PyFn& f, const py::object& x) {
        return PyVPoly{subdifferential(f.value, to_vec(x))};
    });
    m.def("fermat_check", [](const PyFn& f, const py::object& x) {
        return fermat_check(f.value, to_vec(x));
    });
    m.def("coderivative", [](const PyMap& F, const py::object& base, const py::object& v) {
        return PyVPoly{coderivative(F.value, {to_vec(base), to_vec(v)})};
    });

    // --- calculus rules -------------------------------------------------------
    m.def("intersection_rule", [](const std::vector<PyHPoly>& sets, const py::object& x) {
        std::vector<HPolyhedron> hs;
        for (const auto& s : sets) hs.push_back(s.value);
        return to_py(rule_report_to_json(intersection_rule(hs, to_vec(x))));
    });
    m.def("sum_rule", [](const std::vector<PyFn>& fns, const py::object& x) {
        std::vector<MaxAffineFunction> fs;
        for (const auto& f : fns) fs.push_back(f.value);
        return to_py(rule_report_to_json(sum_rule(fs, to_vec(x))));
    });
    m.def("chain_rule_affine",
          [](const PyFn& f, const py::object& affine, const py::object& x) {
              AffineMap B = affine_map_from_json(to_json(affine));
              return to_py(rule_report_to_json(chain_rule_affine(f.value, B, to_vec(x))));
          });
    m.def("max_rule", [](const std::vector<PyFn>& fns, const py::object& x) {
        std::vector<MaxAffineFunction> fs;
        for (const auto& f : fns) fs.push_back(f.value);
        return to_py(rule_report_to_json(max_rule(fs, to_vec(x))));
    });
    m.def("optimal_value_subdiff",
          [](const PyFn& phi, const PyMap& F, const py::object& x) {
              return to_py(
                  rule_report_to_json(optimal_value_subdiff(phi.value, F.value, to_vec(x))));
          });
    m.def("componentwise_chain",
          [](const PyFn& g, const std::vector<PyFn>& fns, const py::object& x) {
              std::vector<MaxAffineFunction> fs;
              for (const auto& f : fns) fs.push_back(f.value);
              return to_py(
                  rule_report_to_json(componentwise_chain(g.value, fs, to_vec(x))));
          });
    m.def("preimage_normal", [](const PyMap& F, const PyHPoly& theta, const py::object& x,
                                const py::object& y) {
        return to_py(rule_report_to_json(
            preimage_normal(F.value, theta.value, to_vec(x), to_vec(y))));
    });
    m.def("coderivative_sum", [](const PyMap& F1, const PyMap& F2, const py::object& x,
                                 const py::object& y, const py::object& v) {
        return to_py(rule_report_to_json(
            coderivative_sum(F1.value, F2.value, to_vec(x), to_vec(y), to_vec(v))));
    });
    m.def("coderivative_chain", [](const PyMap& F, const PyMap& G, const py::object& x,
                                   const py::object& z, const py::object& w) {
        return to_py(rule_report_to_json(
            coderivative_chain(F.value, G.value, to_vec(x), to_vec(z), to_vec(w))));
    });
    m.def("coderivative_intersect", [](const PyMap& F1, const PyMap& F2, const py::object& x,
                                       const py::object& y, const py::object& v) {
        return to_py(rule_report_to_json(
            coderivative_intersect(F1.value, F2.value, to_vec(x), to_vec(y), to_vec(v))));
    });
    m.def("domain_normal", [](const PyMap& F, const py::object& x) {
        return to_py(rule_report_to_json(domain_normal(F.value, to_vec(x))));
    });
    m.def("solution_map_coderivative",
          [](const PyMap& F, const PyMap& G, std::size_t n, std::size_t p,
             const py::object& x, const py::object& y, const py::object& v) {
              return to_py(rule_report_to_json(solution_map_coderivative(
                  F.value, G.value, n, p, to_vec(x), to_vec(y), to_vec(v))));
          });

    // --- gallery and fuzzing ----------------------------------------------------
    m.def("ball_subdiff_member", [](const py::object& v, const py::object& x) {
        return ball_subdiff_member(to_vec(v), to_vec(x));
    });
    m.def("parabola_counterexample",
          [] { return to_py(rule_report_to_json(parabola_counterexample())); });
    m.def(
        "fuzz_rule",
        [](const std::string& rule, std::uint64_t seed, std::size_t trials,
           std::size_t max_dim) {
            InstanceSpec spec;
            spec.seed = seed;
            spec.max_dim = max_dim;
            return to_py(fuzz_report_to_json(fuzz_rule(rule, spec, trials)));
        },
        py::arg("rule"), py::arg("seed") = 0, py::arg("trials") = 50, py::arg("max_dim") = 3);
    m.def("rule_ids", [] { return rule_ids(); });

    m.def("dim_cap", &dim_cap);
    m.def("set_dim_cap", &set_dim_cap);
}
