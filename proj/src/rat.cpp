#include "convexcalc/rat.hpp"

#include "convexcalc/errors.hpp"

namespace convexcalc {

Rat parse_rat(const std::string& text) {
    auto bad = [&] { return InvalidInput("not a rational: '" + text + "'"); };
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s), Int(1));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw bad();
        if (den < 0) {  // the two-argument constructor needs a positive denominator
            num = -num;
            den = -den;
        }
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

std::string rat_str(const Rat& value) {
    Int num = numerator(value);
    Int den = denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string ERat::str() const {
    switch (kind) {
        case Kind::NegInf: return "-inf";
        case Kind::PosInf: return "+inf";
        default: return rat_str(value);
    }
}

bool operator==(const ERat& a, const ERat& b) {
    if (a.kind != b.kind) return false;
    if (a.kind != ERat::Kind::Finite) return true;
    return a.value == b.value;
}

bool operator<(const ERat& a, const ERat& b) {
    using K = ERat::Kind;
    if (a.kind == K::NegInf) return b.kind != K::NegInf;
    if (a.kind == K::PosInf) return false;
    if (b.kind == K::PosInf) return true;
    if (b.kind == K::NegInf) return false;
    return a.value < b.value;
}

}  // namespace convexcalc
