#pragma once

#include <algorithm>
#include <deque>
#include <optional>

#include "ffdioph/polymat.hpp"

namespace ffdioph {

struct Pivot {
    std::size_t col = 0;
    Degree deg = kNegInf;  // shifted row degree
};

/// Rows of R span the same module as the input and have pairwise distinct
/// leading positions. U is present when tracking was requested.
struct ReducedBasis {
    PolyMat R;
    std::optional<PolyMat> U;
    Shift shift;
    std::vector<Pivot> pivots;

    /// Row index owning each column as leading position (npos if none).
    std::vector<std::size_t> pivot_rows() const {
        std::vector<std::size_t> owner(R.cols, static_cast<std::size_t>(-1));
        for (std::size_t i = 0; i < pivots.size(); ++i) owner[pivots[i].col] = i;
        return owner;
    }
};

namespace detail {

inline void row_axpy(PolyMat& m, std::size_t dst, Elem c, std::size_t sh, std::size_t src) {
    for (std::size_t j = 0; j < m.cols; ++j) m.at(dst, j).axpy(c, sh, m.at(src, j));
}

}  // namespace detail

/// Shifted weak Popov form by leading-position collisions. Among colliding
/// rows the one of larger shifted degree is reduced, the higher index on ties.
inline ReducedBasis weak_popov(PolyMat M, const Shift& s, bool track_u = true) {
    const Shift eff = effective_shift(M, s);
    const std::size_t k = M.rows;
    if (k > M.cols) throw RankDeficient();
    ReducedBasis out;
    if (track_u) out.U = PolyMat::identity(M.field, k);
    const auto& F = *M.field;
    std::vector<std::size_t> owner(M.cols, static_cast<std::size_t>(-1));
    std::vector<RowDegree> rd(k);
    std::deque<std::size_t> todo;
    for (std::size_t i = 0; i < k; ++i) todo.push_back(i);
    auto reduce = [&](std::size_t victim, std::size_t by) {
        const Poly& a = M.at(victim, rd[victim].col);
        const Poly& b = M.at(by, rd[by].col);
        const Elem c = F.neg(F.div(a.lead(), b.lead()));
        const auto sh = static_cast<std::size_t>(rd[victim].deg - rd[by].deg);
        detail::row_axpy(M, victim, c, sh, by);
        if (out.U) detail::row_axpy(*out.U, victim, c, sh, by);
    };
    while (!todo.empty()) {
        std::size_t r = todo.front();
        todo.pop_front();
        while (true) {
            rd[r] = shifted_row_degree(M, r, eff);
            if (rd[r].zero()) throw RankDeficient();
            std::size_t& o = owner[rd[r].col];
            if (o == static_cast<std::size_t>(-1)) {
                o = r;
                break;
            }
            const std::size_t other = o;
            if (rd[other].deg > rd[r].deg || (rd[other].deg == rd[r].deg && other > r)) {
                o = r;
                reduce(other, r);
                r = other;
            } else {
                reduce(r, other);
            }
        }
    }
    out.pivots.resize(k);
    for (std::size_t i = 0; i < k; ++i) out.pivots[i] = {rd[i].col, rd[i].deg};
    out.R = std::move(M);
    out.shift = s;
    return out;
}

/// Shifted row degrees in increasing order.
inline std::vector<Degree> successive_minima(const ReducedBasis& b) {
    std::vector<Degree> d;
    for (const auto& p : b.pivots) d.push_back(p.deg);
    std::sort(d.begin(), d.end());
    return d;
}

struct ShortestVector {
    std::size_t row = 0;
    std::vector<Poly> v;  // stored coordinates (scaled columns)
    LaurentVec value;     // true coordinates
    Degree deg = kNegInf;
};

/// Row of least shifted degree, lowest index on ties.
inline ShortestVector shortest_vector(const ReducedBasis& b) {
    if (b.pivots.empty()) throw InvalidArgument("empty basis");
    std::size_t best = 0;
    for (std::size_t i = 1; i < b.pivots.size(); ++i)
        if (b.pivots[i].deg < b.pivots[best].deg) best = i;
    ShortestVector sv;
    sv.row = best;
    sv.deg = b.pivots[best].deg;
    for (std::size_t j = 0; j < b.R.cols; ++j) sv.v.push_back(b.R.at(best, j));
    sv.value = b.R.row_values(best);
    return sv;
}

/// max_j (deg v_j + s_j) with its rightmost attaining column, for exact or
/// inexact vectors. Throws PrecisionExhausted if unknown digits could change
/// either.
inline RowDegree shifted_degree(const LaurentVec& v, const Shift& s) {
    RowDegree r;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (!v[j].is_resolvable() || v[j].is_known_zero()) continue;
        const Degree d = v[j].degree() + s[j];
        if (d >= r.deg) r = {d, j};
    }
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j].is_resolvable()) continue;
        const Degree b = v[j].degree_bound() + s[j];
        if (b > r.deg || (b == r.deg && j > r.col) || r.zero())
            throw PrecisionExhausted("shifted degree depends on unknown digits");
    }
    return r;
}

struct ClosestVector {
    std::vector<Poly> coeffs;  // v = sum_i coeffs[i] * R_i
    LaurentVec v;
    LaurentVec residual;  // w - v
    Degree dist = kNegInf;
};

/// Non-archimedean Babai rounding: cancel the residual's leading position
/// against the pivot row of that column while the pivot degree allows it.
/// The residual then has least shifted degree over the module. Requires a
/// pivot in every column.
inline ClosestVector closest_vector(const ReducedBasis& b, const LaurentVec& w) {
    const std::size_t k = b.R.rows;
    if (w.size() != b.R.cols) throw InvalidArgument("target length does not match column count");
    const auto owner = b.pivot_rows();
    for (auto o : owner)
        if (o == static_cast<std::size_t>(-1)) throw RankDeficient();
    const auto& F = *b.R.field;
    std::vector<LaurentVec> rows(k);
    for (std::size_t i = 0; i < k; ++i) rows[i] = b.R.row_values(i);
    ClosestVector out;
    out.coeffs.assign(k, Poly(b.R.field));
    out.residual = w;
    while (true) {
        const RowDegree rd = shifted_degree(out.residual, b.shift);
        if (rd.zero()) break;
        const std::size_t p = owner[rd.col];
        if (b.pivots[p].deg > rd.deg) {
            out.dist = rd.deg;
            break;
        }
        const Laurent& rj = out.residual[rd.col];
        const Laurent& pj = rows[p][rd.col];
        const Elem c = F.div(rj.leading_coeff(), pj.leading_coeff());
        const Degree e = rd.deg - b.pivots[p].deg;
        const Laurent mult = Laurent::monomial(b.R.field, c, e);
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (!rows[p][j].is_known_zero()) out.residual[j] = out.residual[j] - mult * rows[p][j];
        }
        out.coeffs[p].axpy(c, static_cast<std::size_t>(e), Poly::one(b.R.field));
    }
    out.v.reserve(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
        Laurent x(b.R.field);
        for (std::size_t i = 0; i < k; ++i)
            if (!out.coeffs[i].is_zero()) x = x + Laurent::from_poly(out.coeffs[i]) * rows[i][j];
        out.v.push_back(x);
    }
    return out;
}

}  // namespace ffdioph
