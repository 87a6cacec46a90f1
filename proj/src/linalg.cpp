#include "convexcalc/linalg.hpp"

#include "convexcalc/errors.hpp"

namespace convexcalc {

RatMatrix::RatMatrix(std::size_t n, std::vector<RatVector> r) : cols(n), rows(std::move(r)) {
    for (const auto& row : rows)
        if (row.size() != cols) throw DimensionMismatch("ragged matrix row");
}

void RatMatrix::append_row(RatVector row) {
    if (row.size() != cols) throw DimensionMismatch("matrix row width mismatch");
    rows.push_back(std::move(row));
}

Rat inner(const RatVector& x, const RatVector& y) {
    if (x.size() != y.size()) throw DimensionMismatch("inner product dims");
    Rat acc(0);
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
}

RatVector add(const RatVector& x, const RatVector& y) {
    if (x.size() != y.size()) throw DimensionMismatch("vector add dims");
    RatVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
    return out;
}

RatVector sub(const RatVector& x, const RatVector& y) {
    if (x.size() != y.size()) throw DimensionMismatch("vector sub dims");
    RatVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
    return out;
}

RatVector scale(const Rat& c, const RatVector& x) {
    RatVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = c * x[i];
    return out;
}

RatVector negate(const RatVector& x) { return scale(Rat(-1), x); }

bool is_zero(const RatVector& x) {
    for (const auto& e : x)
        if (e != 0) return false;
    return true;
}

RatVector zero_vector(std::size_t n) { return RatVector(n, Rat(0)); }

RatVector mat_vec(const RatMatrix& m, const RatVector& x) {
    if (x.size() != m.cols) throw DimensionMismatch("mat_vec dims");
    RatVector out;
    out.reserve(m.row_count());
    for (const auto& row : m.rows) out.push_back(inner(row, x));
    return out;
}

RatMatrix transpose(const RatMatrix& m) {
    RatMatrix out(m.row_count());
    out.rows.assign(m.cols, RatVector(m.row_count(), Rat(0)));
    for (std::size_t i = 0; i < m.row_count(); ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out.rows[j][i] = m.rows[i][j];
    return out;
}

RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols != b.row_count()) throw DimensionMismatch("mat_mul dims");
    RatMatrix out(b.cols);
    for (const auto& arow : a.rows) {
        RatVector row(b.cols, Rat(0));
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (arow[k] == 0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) row[j] += arow[k] * b.rows[k][j];
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::vector<std::size_t> rref(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.row_count(); ++c) {
        std::size_t sel = r;
        while (sel < m.row_count() && m.rows[sel][c] == 0) ++sel;
        if (sel == m.row_count()) continue;
        std::swap(m.rows[r], m.rows[sel]);
        Rat inv = Rat(1) / m.rows[r][c];
        for (auto& e : m.rows[r]) e *= inv;
        for (std::size_t i = 0; i < m.row_count(); ++i) {
            if (i == r || m.rows[i][c] == 0) continue;
            Rat f = m.rows[i][c];
            for (std::size_t j = 0; j < m.cols; ++j) m.rows[i][j] -= f * m.rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(RatMatrix m) { return rref(m).size(); }

std::vector<RatVector> nullspace(const RatMatrix& m) {
    RatMatrix work = m;
    auto pivots = rref(work);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<RatVector> basis;
    for (std::size_t free_col = 0; free_col < m.cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        RatVector v(m.cols, Rat(0));
        v[free_col] = 1;
        for (std::size_t pr = 0; pr < pivots.size(); ++pr)
            v[pivots[pr]] = -work.rows[pr][free_col];
        basis.push_back(canonical_line(v));
    }
    return basis;
}

std::optional<RatVector> solve_linear(const RatMatrix& m, const RatVector& rhs) {
    if (rhs.size() != m.row_count()) throw DimensionMismatch("solve_linear dims");
    RatMatrix aug(m.cols + 1);
    for (std::size_t i = 0; i < m.row_count(); ++i) {
        RatVector row = m.rows[i];
        row.push_back(rhs[i]);
        aug.rows.push_back(std::move(row));
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;  // 0 = 1 row
    RatVector x(m.cols, Rat(0));
    for (std::size_t pr = 0; pr < pivots.size(); ++pr) x[pivots[pr]] = aug.rows[pr][m.cols];
    return x;
}

RatVector canonical_direction(const RatVector& x) {
    Int num_gcd(0), den_lcm(1);
    for (const auto& e : x) {
        if (e == 0) continue;
        num_gcd = gcd(num_gcd, abs(numerator(e)));
        den_lcm = lcm(den_lcm, denominator(e));
    }
    if (num_gcd == 0) return x;  // zero vector
    Rat factor(den_lcm, num_gcd);
    return scale(factor, x);
}

RatVector canonical_line(const RatVector& x) {
    RatVector v = canonical_direction(x);
    for (const auto& e : v) {
        if (e == 0) continue;
        if (e < 0) return negate(v);
        break;
    }
    return v;
}

}  // namespace convexcalc
