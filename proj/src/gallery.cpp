#include "convexcalc/gallery.hpp"

#include "convexcalc/errors.hpp"

namespace convexcalc {

bool ball_subdiff_member(const RatVector& v, const RatVector& x) {
    if (v.size() != x.size()) throw DimensionMismatch("ball_subdiff_member dims");
    if (is_zero(x)) return inner(v, v) <= 1;
    // v = x/||x||, tested without leaving the rationals: v parallel to x with
    // a positive factor (Cauchy-Schwarz holds with equality) and unit length.
    Rat vx = inner(v, x);
    return vx > 0 && vx * vx == inner(v, v) * inner(x, x) && inner(v, v) == 1;
}

namespace {

std::vector<Rat> probe_grid() {
    std::vector<Rat> ts;
    for (long k = -6; k <= 6; ++k) ts.emplace_back(Int(k), Int(2));  // -3, -5/2, ..., 3
    return ts;
}

bool probe(const RatVector& v, bool upper) {
    if (v.size() != 2) throw DimensionMismatch("parabola probe needs a plane vector");
    for (const auto& t : probe_grid()) {
        Rat second = upper ? t * t : -t * t;
        if (v[0] * t + v[1] * second > 0) return false;
    }
    return true;
}

}  // namespace

bool parabola_grid_probe_upper(const RatVector& v) { return probe(v, true); }
bool parabola_grid_probe_lower(const RatVector& v) { return probe(v, false); }

RuleReport parabola_counterexample() {
    // Hardcoded closed forms at the origin:
    //   N(0; upper parabola region) = {0} x (-inf, 0]
    //   N(0; lower parabola region) = {0} x [0, inf)
    //   N(0; intersection = {0})    = R^2
    Cone n_upper(2), n_lower(2), n_meet(2);
    n_upper.generators.push_back({Rat(0), Rat(-1)});
    n_lower.generators.push_back({Rat(0), Rat(1)});
    n_meet.lineality.push_back({Rat(1), Rat(0)});
    n_meet.lineality.push_back({Rat(0), Rat(1)});

    // Exact necessary-condition probes guard the transcription.
    for (const auto& g : n_upper.generators)
        if (!parabola_grid_probe_upper(g))
            throw std::logic_error("parabola gallery: upper cone fails its grid probe");
    for (const auto& g : n_lower.generators)
        if (!parabola_grid_probe_lower(g))
            throw std::logic_error("parabola gallery: lower cone fails its grid probe");

    RuleReport rep = make_report("parabola-intersection", cone_to_vpoly(n_meet),
                                 cone_to_vpoly(cone_sum(n_upper, n_lower)),
                                 /*qualification_holds=*/false);
    rep.notes.emplace_back("grid_probes", "pass");
    return rep;
}

const GalleryItem& gallery_ball_item() {
    static const GalleryItem item{
        "ball-norm",
        "subdifferential of the Euclidean norm: the closed unit ball at the "
        "origin, the normalized point elsewhere"};
    return item;
}

const GalleryItem& gallery_parabola_item() {
    static const GalleryItem item{
        "parabola-pair",
        "two parabolic regions meeting only at the origin: the normal-cone "
        "sum {0} x R misses the full plane, so the intersection rule needs "
        "the relative-interior overlap hypothesis"};
    return item;
}

}  // namespace convexcalc
