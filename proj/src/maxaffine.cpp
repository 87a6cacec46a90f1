#include "convexcalc/maxaffine.hpp"

#include <algorithm>

#include "convexcalc/errors.hpp"

namespace convexcalc {

MaxAffineFunction::MaxAffineFunction(std::size_t dim,
                                     std::vector<std::pair<RatVector, Rat>> ps,
                                     HPolyhedron dom)
    : n(dim), pieces(std::move(ps)), domain(std::move(dom)) {
    if (pieces.empty()) throw InvalidInput("max-affine function needs at least one piece");
    for (const auto& [a, b] : pieces)
        if (a.size() != n) throw DimensionMismatch("piece gradient dim");
    if (domain.dim != n) throw DimensionMismatch("domain dim");
}

MaxAffineFunction::MaxAffineFunction(std::size_t dim,
                                     std::vector<std::pair<RatVector, Rat>> ps)
    : MaxAffineFunction(dim, std::move(ps), HPolyhedron::full_space(dim)) {}

MaxAffineFunction MaxAffineFunction::indicator(const HPolyhedron& set) {
    return MaxAffineFunction(set.dim, {{zero_vector(set.dim), Rat(0)}}, set);
}

MaxAffineFunction MaxAffineFunction::single(RatVector a, Rat b) {
    std::size_t dim = a.size();
    return MaxAffineFunction(dim, {{std::move(a), std::move(b)}});
}

std::optional<Rat> MaxAffineFunction::value(const RatVector& x) const {
    if (x.size() != n) throw DimensionMismatch("function argument dim");
    if (!in_domain(x)) return std::nullopt;
    Rat best = inner(pieces[0].first, x) + pieces[0].second;
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        Rat v = inner(pieces[i].first, x) + pieces[i].second;
        if (v > best) best = v;
    }
    return best;
}

HPolyhedron MaxAffineFunction::epigraph() const {
    HPolyhedron epi(n + 1);
    for (const auto& [a, b] : pieces) {
        RatVector row = a;
        row.push_back(Rat(-1));
        epi.add_ineq(std::move(row), -b);
    }
    for (std::size_t i = 0; i < domain.ineq_count(); ++i) {
        RatVector row = domain.A.rows[i];
        row.push_back(Rat(0));
        epi.add_ineq(std::move(row), domain.b[i]);
    }
    for (std::size_t j = 0; j < domain.eq_count(); ++j) {
        RatVector row = domain.E.rows[j];
        row.push_back(Rat(0));
        epi.add_eq(std::move(row), domain.d[j]);
    }
    return epi;
}

std::vector<std::size_t> MaxAffineFunction::active_indices(const RatVector& x) const {
    auto v = value(x);
    if (!v) throw PointOutsideDomain("active_indices outside the domain");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < pieces.size(); ++i)
        if (inner(pieces[i].first, x) + pieces[i].second == *v) out.push_back(i);
    return out;
}

MaxAffineFunction sum_function(const std::vector<MaxAffineFunction>& fns,
                               std::size_t piece_cap) {
    if (fns.empty()) throw InvalidInput("sum_function needs at least one summand");
    std::size_t n = fns[0].n;
    std::size_t count = 1;
    std::vector<HPolyhedron> doms;
    for (const auto& f : fns) {
        if (f.n != n) throw DimensionMismatch("sum_function dims");
        count = std::min(count * f.pieces.size(), piece_cap + 1);
        doms.push_back(f.domain);
    }
    if (count > piece_cap)
        throw PieceCapExceeded("sum would need more than " + std::to_string(piece_cap) +
                               " pieces");

    std::vector<std::pair<RatVector, Rat>> acc = {{zero_vector(n), Rat(0)}};
    for (const auto& f : fns) {
        std::vector<std::pair<RatVector, Rat>> next;
        next.reserve(acc.size() * f.pieces.size());
        for (const auto& [a1, b1] : acc)
            for (const auto& [a2, b2] : f.pieces)
                next.emplace_back(add(a1, a2), b1 + b2);
        acc = std::move(next);
    }
    return MaxAffineFunction(n, std::move(acc), intersect(doms));
}

MaxAffineFunction max_function(const std::vector<MaxAffineFunction>& fns) {
    if (fns.empty()) throw InvalidInput("max_function needs at least one argument");
    std::size_t n = fns[0].n;
    std::vector<std::pair<RatVector, Rat>> pieces;
    std::vector<HPolyhedron> doms;
    for (const auto& f : fns) {
        if (f.n != n) throw DimensionMismatch("max_function dims");
        pieces.insert(pieces.end(), f.pieces.begin(), f.pieces.end());
        doms.push_back(f.domain);
    }
    return MaxAffineFunction(n, std::move(pieces), intersect(doms));
}

MaxAffineFunction compose_affine(const MaxAffineFunction& f, const AffineMap& B) {
    if (B.out_dim() != f.n) throw DimensionMismatch("compose_affine dims");
    RatMatrix At = transpose(B.A);
    std::vector<std::pair<RatVector, Rat>> pieces;
    for (const auto& [a, b] : f.pieces)
        pieces.emplace_back(mat_vec(At, a), b + inner(a, B.b));
    HPolyhedron dom(B.in_dim());
    for (std::size_t i = 0; i < f.domain.ineq_count(); ++i) {
        const RatVector& c = f.domain.A.rows[i];
        dom.add_ineq(mat_vec(At, c), f.domain.b[i] - inner(c, B.b));
    }
    for (std::size_t j = 0; j < f.domain.eq_count(); ++j) {
        const RatVector& e = f.domain.E.rows[j];
        dom.add_eq(mat_vec(At, e), f.domain.d[j] - inner(e, B.b));
    }
    return MaxAffineFunction(B.in_dim(), std::move(pieces), std::move(dom));
}

}  // namespace convexcalc
