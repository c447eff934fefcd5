#pragma once

#include <functional>

#include "ffdioph/lattice.hpp"

namespace ffdioph::gen {

/// Every polynomial of degree < len.
inline std::vector<Poly> all_polys(const Field& f, std::size_t len) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < len; ++i) count *= f->q();
    std::vector<Poly> out;
    out.reserve(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::vector<Elem> c(len);
        std::size_t v = idx;
        for (auto& x : c) {
            x = static_cast<Elem>(v % f->q());
            v /= f->q();
        }
        out.emplace_back(f, std::move(c));
    }
    return out;
}

/// Calls visit(v) for every combination sum_i c_i M_i with deg c_i < len, in
/// true coordinates, the zero combination included.
inline void for_each_combination(const PolyMat& M, std::size_t len, const std::function<void(const LaurentVec&)>& visit) {
    const auto polys = all_polys(M.field, len);
    std::vector<LaurentVec> rows;
    for (std::size_t i = 0; i < M.rows; ++i) rows.push_back(M.row_values(i));
    std::vector<std::size_t> idx(M.rows, 0);
    while (true) {
        LaurentVec v(M.cols, Laurent(M.field));
        for (std::size_t i = 0; i < M.rows; ++i) {
            const auto& c = polys[idx[i]];
            if (c.is_zero()) continue;
            const Laurent cl = Laurent::from_poly(c);
            for (std::size_t j = 0; j < M.cols; ++j) v[j] = v[j] + cl * rows[i][j];
        }
        visit(v);
        std::size_t i = 0;
        while (i < M.rows && ++idx[i] == polys.size()) idx[i++] = 0;
        if (i == M.rows) break;
    }
}

inline Degree exact_shifted_degree(const LaurentVec& v, const Shift& s) {
    Degree d = kNegInf;
    for (std::size_t j = 0; j < v.size(); ++j)
        if (!v[j].is_known_zero()) d = std::max(d, v[j].degree() + s[j]);
    return d;
}

inline LaurentVec sub(const LaurentVec& a, const LaurentVec& b) {
    LaurentVec r;
    for (std::size_t j = 0; j < a.size(); ++j) r.push_back(a[j] - b[j]);
    return r;
}

}  // namespace ffdioph::gen
