#include <algorithm>

#include "convexcalc/errors.hpp"
#include "convexcalc/polyhedron.hpp"

// Double description method on cones. One core (inequality-cone -> extreme
// rays) serves both conversion directions: H -> V works on the homogenized
// constraint cone, V -> H on the dual of the homogenized generator cone.

namespace convexcalc {
namespace {

RatMatrix from_columns(const std::vector<RatVector>& cols, std::size_t nrows) {
    RatMatrix M(cols.size());
    M.rows.assign(nrows, RatVector(cols.size(), Rat(0)));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < nrows; ++r) M.rows[r][c] = cols[c][r];
    return M;
}

// Indices of a maximal linearly independent subset of rows, in order.
std::vector<std::size_t> independent_rows(const RatMatrix& M) {
    std::vector<std::size_t> picked;
    RatMatrix probe(M.cols);
    std::size_t r = 0;
    for (std::size_t i = 0; i < M.row_count(); ++i) {
        probe.rows.push_back(M.rows[i]);
        if (rank(probe) > r) {
            picked.push_back(i);
            ++r;
        } else {
            probe.rows.pop_back();
        }
        if (r == M.cols) break;
    }
    return picked;
}

// Extreme rays of the pointed cone {u | Hu <= 0}; requires rank(H) = dim.
std::vector<RatVector> pointed_cone_rays(const RatMatrix& H) {
    const std::size_t q = H.cols;
    auto base_idx = independent_rows(H);
    if (base_idx.size() != q)
        throw std::logic_error("pointed_cone_rays: cone has a nontrivial lineality space");

    // Simplicial start: rays r_j with <h_i, r_j> = -delta_ij on the base rows.
    std::vector<RatVector> rays;
    {
        RatMatrix B(q);
        for (auto i : base_idx) B.rows.push_back(H.rows[i]);
        for (std::size_t j = 0; j < q; ++j) {
            RatVector e = zero_vector(q);
            e[j] = -1;
            auto r = solve_linear(B, e);
            if (!r) throw std::logic_error("pointed_cone_rays: singular base");
            rays.push_back(canonical_direction(*r));
        }
    }

    std::vector<bool> processed(H.row_count(), false);
    for (auto i : base_idx) processed[i] = true;

    auto zero_set = [&](const RatVector& r) {
        std::vector<bool> z(H.row_count(), false);
        for (std::size_t i = 0; i < H.row_count(); ++i)
            if (processed[i] && inner(H.rows[i], r) == 0) z[i] = true;
        return z;
    };

    for (std::size_t t = 0; t < H.row_count(); ++t) {
        if (processed[t]) continue;
        std::vector<Rat> s(rays.size());
        for (std::size_t k = 0; k < rays.size(); ++k) s[k] = inner(H.rows[t], rays[k]);

        std::vector<std::vector<bool>> zsets(rays.size());
        for (std::size_t k = 0; k < rays.size(); ++k) zsets[k] = zero_set(rays[k]);

        std::vector<RatVector> next;
        for (std::size_t k = 0; k < rays.size(); ++k)
            if (s[k] <= 0) next.push_back(rays[k]);

        for (std::size_t p = 0; p < rays.size(); ++p) {
            if (s[p] >= 0) continue;
            for (std::size_t n = 0; n < rays.size(); ++n) {
                if (s[n] <= 0) continue;
                // Combinatorial adjacency: no third extreme ray whose zero
                // set contains the common zero set of the pair.
                bool adjacent = true;
                for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
                    if (o == p || o == n) continue;
                    bool contains = true;
                    for (std::size_t i = 0; i < H.row_count() && contains; ++i)
                        if (zsets[p][i] && zsets[n][i] && !zsets[o][i]) contains = false;
                    if (contains) adjacent = false;
                }
                if (!adjacent) continue;
                RatVector w = sub(scale(s[n], rays[p]), scale(s[p], rays[n]));
                next.push_back(canonical_direction(w));
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        rays = std::move(next);
        processed[t] = true;
        if (rays.empty()) break;
    }
    return rays;
}

struct ConeGens {
    std::vector<RatVector> rays;
    std::vector<RatVector> lineality;
};

// Minimal generators of {y | My <= 0, Ny = 0}: equalities are eliminated
// through a kernel basis, the lineality space is split off, and the pointed
// remainder goes through incremental double description.
ConeGens cone_generators(const RatMatrix& M, const RatMatrix& N) {
    const std::size_t d = M.cols;
    std::vector<RatVector> kernel;
    if (N.row_count() == 0) {
        for (std::size_t i = 0; i < d; ++i) {
            RatVector e = zero_vector(d);
            e[i] = 1;
            kernel.push_back(std::move(e));
        }
    } else {
        kernel = nullspace(N);
    }
    ConeGens out;
    if (kernel.empty()) return out;  // cone is {0}
    const std::size_t k = kernel.size();
    RatMatrix B = from_columns(kernel, d);

    RatMatrix G(k);
    for (const auto& row : M.rows) {
        RatVector g = mat_vec(transpose(B), row);
        if (!is_zero(g)) G.rows.push_back(std::move(g));
    }

    std::vector<RatVector> lin_z;
    if (G.row_count() == 0) {
        for (std::size_t i = 0; i < k; ++i) {
            RatVector e = zero_vector(k);
            e[i] = 1;
            lin_z.push_back(std::move(e));
        }
    } else {
        lin_z = nullspace(G);
    }
    for (const auto& l : lin_z) out.lineality.push_back(canonical_line(mat_vec(B, l)));

    std::vector<RatVector> comp;
    if (lin_z.empty()) {
        for (std::size_t i = 0; i < k; ++i) {
            RatVector e = zero_vector(k);
            e[i] = 1;
            comp.push_back(std::move(e));
        }
    } else if (lin_z.size() < k) {
        RatMatrix linT(k);
        for (const auto& l : lin_z) linT.rows.push_back(l);
        comp = nullspace(linT);
    }
    if (comp.empty()) return out;  // pure subspace

    RatMatrix W = from_columns(comp, k);
    RatMatrix H = mat_mul(G, W);
    RatMatrix BW = mat_mul(B, W);
    for (const auto& u : pointed_cone_rays(H))
        out.rays.push_back(canonical_direction(mat_vec(BW, u)));
    return out;
}

void check_cap(std::size_t dim) {
    if (dim > dim_cap())
        throw DimensionCapExceeded("dimension " + std::to_string(dim) +
                                   " exceeds double-description cap " +
                                   std::to_string(dim_cap()));
}

}  // namespace

VPolyhedron dd_convert_nocap(const HPolyhedron& P) {
    const std::size_t n = P.dim;
    RatMatrix M(n + 1);
    for (std::size_t i = 0; i < P.ineq_count(); ++i) {
        RatVector row = P.A.rows[i];
        row.push_back(-P.b[i]);
        if (!is_zero(row)) M.rows.push_back(std::move(row));
    }
    {
        RatVector trow = zero_vector(n + 1);
        trow[n] = -1;  // t >= 0
        M.rows.push_back(std::move(trow));
    }
    RatMatrix N(n + 1);
    for (std::size_t j = 0; j < P.eq_count(); ++j) {
        RatVector row = P.E.rows[j];
        row.push_back(-P.d[j]);
        if (!is_zero(row)) N.rows.push_back(std::move(row));
    }

    ConeGens gens = cone_generators(M, N);
    VPolyhedron V(n);
    for (const auto& g : gens.rays) {
        Rat t = g[n];
        RatVector x(g.begin(), g.begin() + n);
        if (t > 0)
            V.points.push_back(scale(Rat(1) / t, x));
        else if (t == 0)
            V.rays.push_back(std::move(x));
        else
            throw std::logic_error("dd_convert: homogenization ray with t < 0");
    }
    for (const auto& l : gens.lineality) {
        if (l[n] != 0) throw std::logic_error("dd_convert: lineality with t != 0");
        V.lineality.emplace_back(l.begin(), l.begin() + n);
    }
    V.normalize();
    return V;
}

HPolyhedron dd_convert_back_nocap(const VPolyhedron& V) {
    const std::size_t n = V.dim;
    if (V.empty()) return HPolyhedron::empty_set(n);

    RatMatrix M(n + 1);
    for (const auto& p : V.points) {
        RatVector row = p;
        row.push_back(Rat(1));
        M.rows.push_back(std::move(row));
    }
    for (const auto& r : V.rays) {
        RatVector row = r;
        row.push_back(Rat(0));
        M.rows.push_back(std::move(row));
    }
    RatMatrix N(n + 1);
    for (const auto& l : V.lineality) {
        RatVector row = l;
        row.push_back(Rat(0));
        N.rows.push_back(std::move(row));
    }

    ConeGens dual = cone_generators(M, N);
    HPolyhedron P(n);
    for (const auto& g : dual.rays) {
        RatVector a(g.begin(), g.begin() + n);
        if (is_zero(a)) continue;  // the trivial t >= 0 facet
        // Facets of the homogenized cone supported only by recession
        // directions have an empty contact set in the polyhedron itself and
        // are therefore redundant rows: keep a row only when some point
        // generator is tight on it.
        bool touches = false;
        for (const auto& p : V.points)
            if (inner(a, p) + g[n] == 0) {
                touches = true;
                break;
            }
        if (!touches) continue;
        P.add_ineq(std::move(a), -g[n]);
    }
    for (const auto& l : dual.lineality) {
        RatVector e(l.begin(), l.begin() + n);
        if (is_zero(e)) continue;
        P.add_eq(std::move(e), -l[n]);
    }
    return P;
}

VPolyhedron dd_convert(const HPolyhedron& P) {
    check_cap(P.dim);
    return dd_convert_nocap(P);
}

HPolyhedron dd_convert_back(const VPolyhedron& V) {
    check_cap(V.dim);
    return dd_convert_back_nocap(V);
}

// --- exact set equality -------------------------------------------------------

bool set_equal(const VPolyhedron& P, const HPolyhedron& Q) {
    if (P.dim != Q.dim) throw DimensionMismatch("set_equal dims");
    if (subset_witness(P, Q)) return false;
    return !subset_witness(dd_convert_nocap(Q), dd_convert_back_nocap(P));
}

bool set_equal(const HPolyhedron& P, const VPolyhedron& Q) { return set_equal(Q, P); }

bool set_equal(const HPolyhedron& P, const HPolyhedron& Q) {
    if (P.dim != Q.dim) throw DimensionMismatch("set_equal dims");
    return !subset_witness(dd_convert_nocap(P), Q) &&
           !subset_witness(dd_convert_nocap(Q), P);
}

bool set_equal(const VPolyhedron& P, const VPolyhedron& Q) {
    if (P.dim != Q.dim) throw DimensionMismatch("set_equal dims");
    return !subset_witness(P, dd_convert_back_nocap(Q)) &&
           !subset_witness(Q, dd_convert_back_nocap(P));
}

}  // namespace convexcalc
