#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ffdioph/literal.hpp"

namespace ffdioph {

struct Monomial {
    std::vector<unsigned> exp;
    Laurent coef;
};

/// Polynomial in d variables with Laurent coefficients.
class MPoly {
   public:
    MPoly(Field f, std::size_t d) : field_(std::move(f)), d_(d) {}

    static MPoly constant(const Field& f, std::size_t d, const Laurent& c) {
        MPoly p(f, d);
        p.add_term(std::vector<unsigned>(d, 0), c);
        return p;
    }
    static MPoly variable(const Field& f, std::size_t d, std::size_t i, unsigned power = 1) {
        if (i >= d) throw InvalidArgument("variable index out of range");
        MPoly p(f, d);
        std::vector<unsigned> e(d, 0);
        e[i] = power;
        p.add_term(std::move(e), Laurent::one(f));
        return p;
    }

    const Field& field() const { return field_; }
    std::size_t dim() const { return d_; }
    const std::vector<Monomial>& terms() const { return terms_; }

    void add_term(std::vector<unsigned> e, const Laurent& c) {
        if (e.size() != d_) throw InvalidArgument("monomial exponent has wrong length");
        auto it = std::find_if(terms_.begin(), terms_.end(), [&](const Monomial& m) { return m.exp == e; });
        if (it == terms_.end()) {
            if (!c.is_known_zero()) terms_.push_back({std::move(e), c});
            return;
        }
        it->coef = it->coef + c;
        if (it->coef.is_known_zero()) terms_.erase(it);
    }

    unsigned total_degree() const {
        unsigned t = 0;
        for (const auto& m : terms_) {
            unsigned s = 0;
            for (unsigned e : m.exp) s += e;
            t = std::max(t, s);
        }
        return t;
    }

    bool is_exact() const {
        return std::all_of(terms_.begin(), terms_.end(), [](const Monomial& m) { return m.coef.is_exact(); });
    }

    MPoly scaled(const Laurent& c) const {
        MPoly r(field_, d_);
        for (const auto& m : terms_) r.add_term(m.exp, m.coef * c);
        return r;
    }

    Laurent eval(const LaurentVec& x) const {
        if (x.size() != d_) throw InvalidArgument("evaluation point has wrong dimension");
        std::vector<std::vector<Laurent>> pw(d_);
        auto power = [&](std::size_t i, unsigned e) -> const Laurent& {
            auto& v = pw[i];
            if (v.empty()) v.push_back(Laurent::one(field_));
            while (v.size() <= e) v.push_back(v.back() * x[i]);
            return v[e];
        };
        Laurent s(field_);
        for (const auto& m : terms_) {
            Laurent t = m.coef;
            for (std::size_t i = 0; i < d_; ++i)
                if (m.exp[i]) t = t * power(i, m.exp[i]);
            s = s + t;
        }
        return s;
    }

    friend MPoly operator+(const MPoly& a, const MPoly& b) {
        a.check(b);
        MPoly r = a;
        for (const auto& m : b.terms_) r.add_term(m.exp, m.coef);
        return r;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + b.scaled(-Laurent::one(b.field_)); }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        a.check(b);
        MPoly r(a.field_, a.d_);
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_) {
                std::vector<unsigned> e(a.d_);
                for (std::size_t i = 0; i < a.d_; ++i) e[i] = x.exp[i] + y.exp[i];
                r.add_term(std::move(e), x.coef * y.coef);
            }
        return r;
    }

   private:
    void check(const MPoly& o) const {
        require_same_field(field_, o.field_);
        if (d_ != o.d_) throw InvalidArgument("polynomials in different numbers of variables");
    }

    Field field_;
    std::size_t d_;
    std::vector<Monomial> terms_;
};

/// f = (f_1, ..., f_n): F^d -> F^n.
struct PolyMap {
    Field field;
    std::size_t d = 1;
    std::vector<MPoly> comps;

    std::size_t n() const { return comps.size(); }

    /// (x, x^2, ..., x^n) on F.
    static PolyMap veronese(const Field& f, std::size_t n) {
        PolyMap m{f, 1, {}};
        for (std::size_t k = 1; k <= n; ++k) m.comps.push_back(MPoly::variable(f, 1, 0, static_cast<unsigned>(k)));
        return m;
    }
    static PolyMap identity(const Field& f, std::size_t d) {
        PolyMap m{f, d, {}};
        for (std::size_t i = 0; i < d; ++i) m.comps.push_back(MPoly::variable(f, d, i));
        return m;
    }

    LaurentVec eval(const LaurentVec& x) const {
        LaurentVec out;
        for (const auto& c : comps) out.push_back(c.eval(x));
        return out;
    }

    /// c_0 + sum c_i f_i.
    MPoly linear_combination(const Laurent& c0, const LaurentVec& c) const {
        if (c.size() != comps.size()) throw InvalidArgument("combination has wrong length");
        MPoly r = MPoly::constant(field, d, c0);
        for (std::size_t i = 0; i < c.size(); ++i) r = r + comps[i].scaled(c[i]);
        return r;
    }
};

namespace detail {

class MPolyParser {
   public:
    MPolyParser(std::string_view s, Field f, std::size_t d) : s_(s), f_(std::move(f)), d_(d) {}

    MPoly parse() {
        MPoly r(f_, d_);
        skip();
        if (pos_ >= s_.size()) throw SyntaxError("empty polynomial", pos_);
        bool neg = false;
        if (peek() == '-') neg = true, ++pos_;
        while (true) {
            MPoly t = term();
            r = neg ? r - t : r + t;
            skip();
            if (pos_ >= s_.size()) break;
            const char c = s_[pos_];
            if (c != '+' && c != '-') throw SyntaxError("expected '+' or '-'", pos_);
            neg = c == '-';
            ++pos_;
        }
        return r;
    }

   private:
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    unsigned number() {
        skip();
        const std::size_t start = pos_;
        unsigned v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + static_cast<unsigned>(s_[pos_] - '0');
            if (v > 1000000) throw SyntaxError("number too large", start);
            ++pos_;
        }
        if (pos_ == start) throw SyntaxError("expected a number", start);
        return v;
    }

    MPoly term() {
        MPoly t = MPoly::constant(f_, d_, Laurent::one(f_));
        while (true) {
            t = t * factor();
            if (peek() != '*') return t;
            ++pos_;
        }
    }

    MPoly factor() {
        const char c = peek();
        if (c == '(') {
            const std::size_t start = pos_;
            int depth = 0;
            std::size_t end = pos_;
            for (; end < s_.size(); ++end) {
                if (s_[end] == '(') ++depth;
                if (s_[end] == ')' && --depth == 0) break;
            }
            if (end >= s_.size()) throw SyntaxError("unbalanced parenthesis", start);
            Laurent v = [&] {
                try {
                    return parse_laurent(s_.substr(start + 1, end - start - 1), f_);
                } catch (const SyntaxError& e) {
                    throw SyntaxError("bad coefficient", start + 1 + e.position);
                }
            }();
            pos_ = end + 1;
            return MPoly::constant(f_, d_, v);
        }
        if (c == 'x') {
            ++pos_;
            std::size_t idx = 0;
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                const std::size_t at = pos_;
                const unsigned k = number();
                if (k < 1 || k > d_) throw SyntaxError("variable index out of range", at);
                idx = k - 1;
            } else if (d_ != 1) {
                throw SyntaxError("bare x needs a single variable", pos_ - 1);
            }
            unsigned e = 1;
            if (peek() == '^') {
                ++pos_;
                e = number();
            }
            return MPoly::variable(f_, d_, idx, e);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t at = pos_;
            const unsigned v = number();
            if (v >= f_->q()) throw SyntaxError("field element out of range", at);
            return MPoly::constant(f_, d_, Laurent::monomial(f_, static_cast<Elem>(v), 0));
        }
        throw SyntaxError("unexpected character", pos_);
    }

    std::string_view s_;
    Field f_;
    std::size_t d_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Terms joined by + or -, factors joined by *: x or x1..xd with ^k,
/// field elements as integers, Laurent coefficients in parentheses.
inline MPoly parse_mpoly(std::string_view text, const Field& f, std::size_t d) {
    return detail::MPolyParser(text, f, d).parse();
}

inline std::string format_mpoly(const MPoly& p) {
    if (p.terms().empty()) return "0";
    std::string out;
    for (const auto& m : p.terms()) {
        if (!out.empty()) out += " + ";
        out += "(" + format_laurent(m.coef) + ")";
        for (std::size_t i = 0; i < m.exp.size(); ++i) {
            if (!m.exp[i]) continue;
            out += "*x" + (p.dim() == 1 ? std::string() : std::to_string(i + 1));
            if (m.exp[i] > 1) out += "^" + std::to_string(m.exp[i]);
        }
    }
    return out;
}

}  // namespace ffdioph
