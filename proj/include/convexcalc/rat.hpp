#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <compare>
#include <optional>
#include <string>

namespace convexcalc {

// Expression templates are disabled so Rat behaves like a plain value type
// everywhere (std::max, ternaries, generic containers).
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;

/// Parse "p/q" or "p". GMP keeps rationals canonical (positive denominator,
/// coprime parts) only when values are built from integer parts, so parsing
/// goes through the two-argument constructor, never the string one.
Rat parse_rat(const std::string& text);

/// Render as "p/q", or "p" when the denominator is 1.
std::string rat_str(const Rat& value);

/// Extended rational for LP bounds: -inf, finite, +inf.
struct ERat {
    enum class Kind { NegInf, Finite, PosInf };
    Kind kind = Kind::Finite;
    Rat value;  // meaningful only when finite

    static ERat neg_inf() { return {Kind::NegInf, Rat(0)}; }
    static ERat pos_inf() { return {Kind::PosInf, Rat(0)}; }
    static ERat finite(Rat v) { return {Kind::Finite, std::move(v)}; }

    bool is_finite() const { return kind == Kind::Finite; }
    std::string str() const;
};

bool operator==(const ERat& a, const ERat& b);
bool operator<(const ERat& a, const ERat& b);
inline bool operator<=(const ERat& a, const ERat& b) { return a < b || a == b; }

}  // namespace convexcalc
