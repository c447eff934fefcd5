#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "ffdioph/laurent.hpp"
#include "ffdioph/literal.hpp"

namespace ffdioph {

/// Per-column integer weights.
using Shift = std::vector<Degree>;

/// Row-major matrix over Lambda. Column j carries a scale exponent c_j: the
/// true entry is at(i, j) * T^{c_j}, which lets Laurent data with finitely
/// many negative-degree terms be reduced over Lambda.
struct PolyMat {
    Field field;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Poly> entries;
    std::vector<Degree> scale;

    PolyMat() = default;
    PolyMat(Field f, std::size_t r, std::size_t c)
        : field(f), rows(r), cols(c), entries(r * c, Poly(f)), scale(c, 0) {}

    static PolyMat identity(const Field& f, std::size_t k) {
        PolyMat m(f, k, k);
        for (std::size_t i = 0; i < k; ++i) m.at(i, i) = Poly::one(f);
        return m;
    }

    Poly& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    const Poly& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

    /// True (unscaled) value of an entry.
    Laurent value(std::size_t i, std::size_t j) const { return Laurent::from_poly(at(i, j)).shifted(scale[j]); }
    LaurentVec row_values(std::size_t i) const {
        LaurentVec v;
        v.reserve(cols);
        for (std::size_t j = 0; j < cols; ++j) v.push_back(value(i, j));
        return v;
    }

    /// Clears denominators column by column. Entries must be exact.
    static PolyMat from_laurent(const LaurentMat& m, const Field& f) {
        PolyMat r(f, m.rows, m.cols);
        for (std::size_t j = 0; j < m.cols; ++j) {
            Degree lo = 0;
            for (std::size_t i = 0; i < m.rows; ++i) {
                const auto& x = m.at(i, j);
                if (!x.is_exact()) throw InvalidArgument("matrix entries must be exact");
                if (!x.is_known_zero()) lo = std::min(lo, x.low());
            }
            r.scale[j] = lo;
            for (std::size_t i = 0; i < m.rows; ++i) r.at(i, j) = m.at(i, j).shifted(-lo).polynomial_part();
        }
        return r;
    }

    friend bool operator==(const PolyMat& a, const PolyMat& b) {
        return a.rows == b.rows && a.cols == b.cols && a.entries == b.entries && a.scale == b.scale;
    }
};

/// Matrix product over Lambda; scales of b are kept, a must be unscaled.
inline PolyMat operator*(const PolyMat& a, const PolyMat& b) {
    if (a.cols != b.rows) throw InvalidArgument("dimension mismatch in matrix product");
    PolyMat r(a.field, a.rows, b.cols);
    r.scale = b.scale;
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return r;
}

/// Effective weight on stored entries: s_j + c_j.
inline Shift effective_shift(const PolyMat& m, const Shift& s) {
    if (s.size() != m.cols) throw InvalidArgument("shift length does not match column count");
    Shift e(m.cols);
    for (std::size_t j = 0; j < m.cols; ++j) e[j] = s[j] + m.scale[j];
    return e;
}

struct RowDegree {
    Degree deg = kNegInf;
    std::size_t col = 0;  // rightmost column attaining deg
    bool zero() const { return deg == kNegInf; }
};

inline RowDegree shifted_row_degree(const PolyMat& m, std::size_t i, const Shift& eff) {
    RowDegree r;
    for (std::size_t j = 0; j < m.cols; ++j) {
        const auto& e = m.at(i, j);
        if (e.is_zero()) continue;
        const Degree d = e.degree() + eff[j];
        if (d >= r.deg) {
            r.deg = d;
            r.col = j;
        }
    }
    return r;
}

/// Determinant by fraction-free (Bareiss) elimination.
inline Poly determinant(const PolyMat& m) {
    if (m.rows != m.cols) throw InvalidArgument("determinant of a non-square matrix");
    const std::size_t n = m.rows;
    if (n == 0) return Poly::one(m.field);
    std::vector<Poly> a = m.entries;
    auto A = [&](std::size_t i, std::size_t j) -> Poly& { return a[i * n + j]; };
    Poly prev = Poly::one(m.field);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (A(k, k).is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n && A(piv, k).is_zero()) ++piv;
            if (piv == n) return Poly(m.field);
            for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                A(i, j) = poly_divmod(A(k, k) * A(i, j) - A(i, k) * A(k, j), prev).first;
            }
            A(i, k) = Poly(m.field);
        }
        prev = A(k, k);
    }
    Poly d = A(n - 1, n - 1);
    return negate ? -d : d;
}

/// Matrix file: header "q=<int> rows=<int> cols=<int> shift=<s1,...,sk>",
/// then one row per line with entries separated by "|". Blank lines and
/// lines starting with '#' are skipped.
struct MatrixFile {
    Field field;
    LaurentMat values;
    PolyMat matrix;
    Shift shift;
};

inline MatrixFile parse_matrix_file(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    auto next = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            auto s = detail::strip_parens(line);
            if (!s.empty() && s.front() != '#') return true;
        }
        return false;
    };
    if (!next()) throw InvalidArgument("matrix file: missing header");
    long q = -1, rows = -1, cols = -1;
    std::optional<Shift> shift;
    {
        std::istringstream h(line);
        std::string tok;
        while (h >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) throw InvalidArgument("matrix file: bad header token '" + tok + "'");
            const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            try {
                if (key == "q") {
                    q = std::stol(val);
                } else if (key == "rows") {
                    rows = std::stol(val);
                } else if (key == "cols") {
                    cols = std::stol(val);
                } else if (key == "shift") {
                    Shift s;
                    std::istringstream sv(val);
                    std::string part;
                    while (std::getline(sv, part, ',')) s.push_back(std::stoll(part));
                    shift = s;
                } else {
                    throw InvalidArgument("matrix file: unknown header key '" + key + "'");
                }
            } catch (const std::logic_error&) {
                throw InvalidArgument("matrix file: bad value for '" + key + "'");
            }
        }
    }
    if (q < 2 || q > 256 || rows < 1 || cols < 1) throw InvalidArgument("matrix file: header needs q, rows and cols");
    MatrixFile mf;
    mf.field = make_field(static_cast<unsigned>(q));
    mf.shift = shift.value_or(Shift(static_cast<std::size_t>(cols), 0));
    if (mf.shift.size() != static_cast<std::size_t>(cols)) throw InvalidArgument("matrix file: shift length != cols");
    std::vector<LaurentVec> rs;
    while (rs.size() < static_cast<std::size_t>(rows)) {
        if (!next()) throw InvalidArgument("matrix file: expected " + std::to_string(rows) + " rows");
        LaurentVec r;
        std::istringstream rl(line);
        std::string cell;
        while (std::getline(rl, cell, '|')) r.push_back(parse_laurent(cell, mf.field));
        if (r.size() != static_cast<std::size_t>(cols))
            throw InvalidArgument("matrix file: line " + std::to_string(lineno) + " has " + std::to_string(r.size()) + " entries");
        rs.push_back(std::move(r));
    }
    if (next()) throw InvalidArgument("matrix file: trailing content at line " + std::to_string(lineno));
    mf.values = LaurentMat::from_rows(rs);
    mf.matrix = PolyMat::from_laurent(mf.values, mf.field);
    return mf;
}

inline std::string format_matrix_file(const LaurentMat& m, const Shift& s) {
    if (m.entries.empty()) throw InvalidArgument("empty matrix");
    std::string out = "q=" + std::to_string(m.entries.front().gf().q()) + " rows=" + std::to_string(m.rows) +
                      " cols=" + std::to_string(m.cols) + " shift=";
    for (std::size_t j = 0; j < s.size(); ++j) out += (j ? "," : "") + std::to_string(s[j]);
    out += "\n";
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) out += (j ? " | " : "") + format_laurent(m.at(i, j));
        out += "\n";
    }
    return out;
}

}  // namespace ffdioph
