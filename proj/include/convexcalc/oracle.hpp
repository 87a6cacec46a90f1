#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "convexcalc/maxaffine.hpp"
#include "convexcalc/normal_cone.hpp"
#include "convexcalc/setvalued.hpp"

namespace convexcalc {

/// Reproducible instance-generation parameters; identical seeds yield
/// identical instances byte for byte.
struct InstanceSpec {
    std::uint64_t seed = 0;
    std::size_t max_dim = 3;     // caps n, p and q
    std::size_t max_rows = 4;    // inequality rows per generated set
    std::size_t max_pieces = 3;  // pieces per generated function
    long coeff_bound = 4;        // numerators and denominators live in [-4, 4]
};

/// Deterministic RNG stream. Distributions are hand-rolled on top of
/// mt19937_64 because std::uniform_int_distribution is not portable across
/// standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed * 0x9E3779B97F4A7C15ull + 0x2545F4914F6CDD1Dull) {}

    std::uint64_t bits() { return eng_(); }
    long range(long lo, long hi);  // inclusive
    Rat rat(long bound);           // numerator in [-bound, bound], denominator in [1, bound]
    Rat pos_rat(long bound);       // in (0, bound]
    RatVector vec(std::size_t n, long bound);
    RatVector nonzero_vec(std::size_t n, long bound);
    bool chance(long num, long den);  // true with probability num/den

private:
    std::mt19937_64 eng_;
};

// --- definitional oracles ----------------------------------------------------

/// v in N(x;P) by definition: sup <v, .> over P is attained at x.
bool oracle_normal_membership(const RatVector& v, const HPolyhedron& P, const RatVector& x);

/// v in ∂f(x) by definition: min of (t - <v,x>) over epi(f) equals f(x) - <v,x>.
bool oracle_subgradient(const RatVector& v, const MaxAffineFunction& f, const RatVector& x);

/// Independent cross-check for subdifferentials: the convex hull of the
/// active piece gradients plus the normal cone of the domain.
VPolyhedron closed_form_subdiff(const MaxAffineFunction& f, const RatVector& x);

// --- generated instances -------------------------------------------------------

/// Polyhedron built around an `anchor` placed in its relative interior, with
/// `base` a member (tight rows through `base` when it differs from the
/// anchor). `bounded` adds box rows around both points.
HPolyhedron gen_anchored_poly(Rng& rng, std::size_t n, const RatVector& anchor,
                              const RatVector& base, const InstanceSpec& spec,
                              bool bounded);

MaxAffineFunction gen_maxaffine(Rng& rng, std::size_t n, const InstanceSpec& spec,
                                const RatVector& anchor, const RatVector& base,
                                bool full_domain, bool bounded_domain);

PolyhedralMap gen_map(Rng& rng, std::size_t n, std::size_t p, const InstanceSpec& spec,
                      const RatVector& anchor, const RatVector& base, bool bounded);

/// A random rational point of the set: a convex combination of the points
/// plus occasional small ray/lineality contributions.
RatVector sample_point(Rng& rng, const VPolyhedron& V, long bound);

// --- fuzz harness ---------------------------------------------------------------

struct TrialOutcome {
    bool skipped = false;       // instance did not meet the rule preconditions
    bool qualified = false;
    bool equal = false;
    std::string detail;         // failure/skip description
};

/// Generate one seeded instance of the named rule, evaluate it and
/// cross-check emitted generators against the definitional oracles.
TrialOutcome verify_rule(const std::string& rule, std::uint64_t seed, const InstanceSpec& spec);

struct FuzzReport {
    std::string rule;
    std::size_t trials = 0;
    std::size_t qualified_trials = 0;
    std::size_t equal_count = 0;
    std::size_t skipped = 0;
    std::vector<std::string> witnesses;  // descriptions of non-Equal qualified trials
};

/// All rule identifiers accepted by verify_rule / fuzz_rule.
const std::vector<std::string>& rule_ids();

FuzzReport fuzz_rule(const std::string& rule, const InstanceSpec& spec, std::size_t trials);

}  // namespace convexcalc
