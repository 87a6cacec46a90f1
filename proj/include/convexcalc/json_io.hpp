#pragma once

#include <json.hpp>

#include "convexcalc/gallery.hpp"
#include "convexcalc/maxaffine.hpp"
#include "convexcalc/normal_cone.hpp"
#include "convexcalc/oracle.hpp"
#include "convexcalc/polyhedron.hpp"
#include "convexcalc/separation.hpp"
#include "convexcalc/setvalued.hpp"

namespace convexcalc {

using Json = nlohmann::ordered_json;

// Rationals serialize as "p/q" strings or bare integers; vectors as arrays;
// matrices as arrays of arrays.
Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);
Json vec_to_json(const RatVector& v);
RatVector vec_from_json(const Json& j);

Json hpoly_to_json(const HPolyhedron& P);
HPolyhedron hpoly_from_json(const Json& j);

Json vpoly_to_json(const VPolyhedron& V);
VPolyhedron vpoly_from_json(const Json& j);

Json cone_to_json(const Cone& c);

Json maxaffine_to_json(const MaxAffineFunction& f);
MaxAffineFunction maxaffine_from_json(const Json& j);

Json affine_map_to_json(const AffineMap& B);
AffineMap affine_map_from_json(const Json& j);

Json polymap_to_json(const PolyhedralMap& F);
PolyhedralMap polymap_from_json(const Json& j);

Json ri_certificate_to_json(const RiCertificate& c);
Json projection_to_json(const ProjectionResult& r);
Json separation_outcome_to_json(const SeparationOutcome& s);
Json rule_report_to_json(const RuleReport& rep);
Json fuzz_report_to_json(const FuzzReport& rep);

}  // namespace convexcalc
