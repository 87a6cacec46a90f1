#include "convexcalc/lp.hpp"

#include <cstddef>
#include <limits>

#include "convexcalc/errors.hpp"

namespace convexcalc {
namespace {

// Standard-form tableau: rows are the constraints of P with free variables
// split (x = u - w), one slack per inequality row and one artificial per row.
// Column layout: [u_0..u_{n-1} | w_0..w_{n-1} | s_0..s_{m1-1} | a_0..a_{m-1}].
struct Tableau {
    std::size_t n, m1, m2, m, ncols, art0;
    std::vector<RatVector> T;   // m x ncols
    RatVector rhs;              // >= 0 throughout
    RatVector zrow;             // reduced costs of the current phase
    Rat zval;                   // objective value of the current phase
    std::vector<std::size_t> basis;
    std::vector<int> flip;      // +1/-1 per row, applied to make rhs >= 0
    std::size_t pivots = 0;

    Tableau(const HPolyhedron& P)
        : n(P.dim), m1(P.ineq_count()), m2(P.eq_count()), m(m1 + m2),
          ncols(2 * n + m1 + m), art0(2 * n + m1) {
        T.assign(m, RatVector(ncols, Rat(0)));
        rhs.assign(m, Rat(0));
        basis.resize(m);
        flip.assign(m, 1);
        for (std::size_t i = 0; i < m; ++i) {
            const RatVector& row = i < m1 ? P.A.rows[i] : P.E.rows[i - m1];
            Rat r = i < m1 ? P.b[i] : P.d[i - m1];
            if (r < 0) {
                flip[i] = -1;
                r = -r;
            }
            for (std::size_t j = 0; j < n; ++j) {
                Rat c = flip[i] * row[j];
                T[i][j] = c;
                T[i][n + j] = -c;
            }
            if (i < m1) T[i][2 * n + i] = flip[i];
            T[i][art0 + i] = 1;
            rhs[i] = r;
            basis[i] = art0 + i;
        }
    }

    void pivot(std::size_t prow, std::size_t pcol) {
        ++pivots;
        Rat inv = Rat(1) / T[prow][pcol];
        for (auto& e : T[prow]) e *= inv;
        rhs[prow] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == prow || T[i][pcol] == 0) continue;
            Rat f = T[i][pcol];
            for (std::size_t j = 0; j < ncols; ++j) T[i][j] -= f * T[prow][j];
            rhs[i] -= f * rhs[prow];
        }
        if (zrow[pcol] != 0) {
            Rat f = zrow[pcol];
            for (std::size_t j = 0; j < ncols; ++j) zrow[j] -= f * T[prow][j];
            zval += f * rhs[prow];  // entering variable moves to rhs[prow]
        }
        basis[prow] = pcol;
    }

    // Reduced-cost row for minimizing cost vector c over the current basis.
    void load_objective(const RatVector& cost) {
        zrow = cost;
        zval = 0;
        for (std::size_t i = 0; i < m; ++i) {
            Rat cb = cost[basis[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j < ncols; ++j) zrow[j] -= cb * T[i][j];
            zval += cb * rhs[i];
        }
    }

    // Bland's rule: lowest-index entering column with negative reduced cost,
    // lowest-index basic variable among the ratio-test minimizers.
    // Returns the entering column on unboundedness, nullopt at optimality.
    std::optional<std::size_t> minimize(bool allow_artificial_entering) {
        for (;;) {
            std::size_t enter = ncols;
            for (std::size_t j = 0; j < ncols; ++j) {
                if (!allow_artificial_entering && j >= art0) break;
                if (zrow[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == ncols) return std::nullopt;

            std::size_t leave = m;
            Rat best;
            for (std::size_t i = 0; i < m; ++i) {
                if (T[i][enter] <= 0) continue;
                Rat ratio = rhs[i] / T[i][enter];
                if (leave == m || ratio < best ||
                    (ratio == best && basis[i] < basis[leave]))
                {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m) return enter;  // unbounded direction
            pivot(leave, enter);
        }
    }

    // After a feasible phase 1 every artificial sits at level zero, but a
    // basic artificial could climb back up during phase 2. Pivot each one out
    // on a structural column, or drop its row as redundant.
    void drive_out_artificials() {
        for (std::size_t i = 0; i < m;) {
            if (basis[i] < art0) {
                ++i;
                continue;
            }
            std::size_t col = ncols;
            for (std::size_t j = 0; j < art0; ++j)
                if (T[i][j] != 0) {
                    col = j;
                    break;
                }
            if (col != ncols) {
                pivot(i, col);  // rhs is zero here, so feasibility is kept
                ++i;
            } else {
                T.erase(T.begin() + i);
                rhs.erase(rhs.begin() + i);
                basis.erase(basis.begin() + i);
                --m;
            }
        }
    }

    RatVector column_value() const {
        RatVector vals(ncols, Rat(0));
        for (std::size_t i = 0; i < m; ++i) vals[basis[i]] = rhs[i];
        return vals;
    }

    RatVector to_point(const RatVector& vals) const {
        RatVector x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = vals[j] - vals[n + j];
        return x;
    }
};

}  // namespace

LPOutcome lp_solve(const RatVector& objective, const HPolyhedron& P, Sense sense,
                   LPStats* stats) {
    if (objective.size() != P.dim) throw DimensionMismatch("lp objective dim");

    Tableau t(P);

    // Phase 1: minimize the sum of artificials.
    RatVector phase1(t.ncols, Rat(0));
    for (std::size_t k = 0; k < t.m; ++k) phase1[t.art0 + k] = 1;
    t.load_objective(phase1);
    t.minimize(true);
    if (stats) stats->pivots = t.pivots;

    if (t.zval > 0) {
        // Dual multipliers read off the artificial columns give the Farkas
        // certificate for the original (unflipped) rows.
        RatVector farkas(t.m);
        for (std::size_t i = 0; i < t.m; ++i)
            farkas[i] = -Rat(t.flip[i]) * (Rat(1) - t.zrow[t.art0 + i]);
        if (stats) stats->pivots = t.pivots;
        return LPInfeasible{std::move(farkas)};
    }

    t.drive_out_artificials();

    // Phase 2 on the real objective; artificials stay out of the running.
    RatVector phase2(t.ncols, Rat(0));
    for (std::size_t j = 0; j < t.n; ++j) {
        Rat c = sense == Sense::Min ? objective[j] : -objective[j];
        phase2[j] = c;
        phase2[t.n + j] = -c;
    }
    t.load_objective(phase2);
    auto unbounded_col = t.minimize(false);
    if (stats) stats->pivots = t.pivots;

    RatVector vals = t.column_value();
    RatVector point = t.to_point(vals);

    if (unbounded_col) {
        RatVector dir(t.ncols, Rat(0));
        dir[*unbounded_col] = 1;
        for (std::size_t i = 0; i < t.m; ++i) dir[t.basis[i]] = -t.T[i][*unbounded_col];
        RatVector ray = t.to_point(dir);
        return LPUnbounded{std::move(point), std::move(ray)};
    }

    Rat value = inner(objective, point);
    return LPOptimal{std::move(value), std::move(point)};
}

ERat lp_extremum(const RatVector& objective, const HPolyhedron& P, Sense sense) {
    LPOutcome out = lp_solve(objective, P, sense);
    if (auto* opt = lp_optimal(out)) return ERat::finite(opt->value);
    if (lp_unbounded(out))
        return sense == Sense::Max ? ERat::pos_inf() : ERat::neg_inf();
    throw EmptySet("lp_extremum over infeasible polyhedron");
}

}  // namespace convexcalc
