#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "convexcalc/rat.hpp"

namespace convexcalc {

using RatVector = std::vector<Rat>;

/// Rectangular rational matrix stored row-major. `cols` is kept explicitly so
/// a matrix with zero rows still remembers its width.
struct RatMatrix {
    std::size_t cols = 0;
    std::vector<RatVector> rows;

    RatMatrix() = default;
    explicit RatMatrix(std::size_t n) : cols(n) {}
    RatMatrix(std::size_t n, std::vector<RatVector> r);

    std::size_t row_count() const { return rows.size(); }
    void append_row(RatVector row);
};

Rat inner(const RatVector& x, const RatVector& y);
RatVector add(const RatVector& x, const RatVector& y);
RatVector sub(const RatVector& x, const RatVector& y);
RatVector scale(const Rat& c, const RatVector& x);
RatVector negate(const RatVector& x);
bool is_zero(const RatVector& x);
RatVector zero_vector(std::size_t n);

RatVector mat_vec(const RatMatrix& m, const RatVector& x);
RatMatrix transpose(const RatMatrix& m);
RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b);

/// Reduce `m` in place to reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m);

std::size_t rank(RatMatrix m);

/// Basis of {x | Mx = 0}; empty when the kernel is trivial.
std::vector<RatVector> nullspace(const RatMatrix& m);

/// One solution of Mx = rhs, or nullopt when inconsistent.
std::optional<RatVector> solve_linear(const RatMatrix& m, const RatVector& rhs);

/// Scale to an integer vector with coprime entries; direction is preserved.
/// Used to keep generator coordinates small and to make dedup reliable.
RatVector canonical_direction(const RatVector& x);

/// Like canonical_direction but also flips so the first nonzero entry is
/// positive (for vectors whose sign carries no meaning, e.g. lineality).
RatVector canonical_line(const RatVector& x);

}  // namespace convexcalc
