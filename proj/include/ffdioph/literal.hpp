#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>

#include "ffdioph/laurent.hpp"

namespace ffdioph {

// Laurent literal grammar (whitespace insignificant):
//   sum   := term ("+" term)*
//   term  := coeff | coeff "*" "T" ["^" int] | "T" ["^" int] | "O(T^" int ")"
//   coeff := decimal in [0, p)  |  "[" c0 "," ... "," c_{r-1} "]"
// "O(T^k)" marks every term of degree <= k as unknown.

namespace detail {

class LiteralParser {
   public:
    LiteralParser(std::string_view text, const Field& f) : s_(text), f_(f) {}

    Laurent parse_sum() {
        std::map<Degree, Elem> terms;
        std::optional<Degree> big_oh;
        bool first = true;
        while (true) {
            skip_ws();
            if (!first) {
                if (at_end()) break;
                expect('+');
                skip_ws();
            }
            first = false;
            if (peek() == 'O') {
                ++pos_;
                skip_ws();
                expect('(');
                skip_ws();
                Degree k = parse_t_power();
                skip_ws();
                expect(')');
                big_oh = big_oh ? std::max(*big_oh, k) : k;
                continue;
            }
            Elem c = 1;
            Degree e = 0;
            if (peek() == 'T') {
                e = parse_t_power();
            } else {
                c = parse_coeff();
                skip_ws();
                if (peek() == '*') {
                    ++pos_;
                    skip_ws();
                    e = parse_t_power();
                }
            }
            auto& slot = terms[e];
            slot = f_->add(slot, c);
        }
        Degree lo = terms.empty() ? 0 : terms.begin()->first;
        Degree hi = terms.empty() ? -1 : terms.rbegin()->first;
        if (big_oh) {
            // unknown terms of degree <= k: floor is k + 1
            const Degree floor = *big_oh + 1;
            std::vector<Elem> v;
            for (Degree k = floor; k <= hi; ++k) {
                auto it = terms.find(k);
                v.push_back(it == terms.end() ? Elem{0} : it->second);
            }
            return Laurent::approx(f_, floor, std::move(v));
        }
        std::vector<Elem> v;
        for (Degree k = lo; k <= hi; ++k) {
            auto it = terms.find(k);
            v.push_back(it == terms.end() ? Elem{0} : it->second);
        }
        return Laurent::exact(f_, lo, std::move(v));
    }

    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }

   private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    void expect(char c) {
        if (peek() != c) throw SyntaxError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    Degree parse_t_power() {
        expect('T');
        skip_ws();
        if (peek() != '^') return 1;
        ++pos_;
        skip_ws();
        return parse_int();
    }

    Degree parse_int() {
        bool neg = false;
        if (peek() == '-' || peek() == '+') {
            neg = peek() == '-';
            ++pos_;
        }
        skip_ws();
        const std::size_t start = pos_;
        Degree v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            if (v > (Degree{1} << 40)) throw SyntaxError("exponent too large", start);
            ++pos_;
        }
        if (pos_ == start) throw SyntaxError("expected integer", pos_);
        return neg ? -v : v;
    }

    unsigned parse_uint() {
        const std::size_t start = pos_;
        unsigned long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + static_cast<unsigned long>(peek() - '0');
            if (v > 1000000) throw CoefficientOutOfRange("coefficient " + std::string(s_.substr(start, pos_ - start + 1)) + "... out of range");
            ++pos_;
        }
        if (pos_ == start) throw SyntaxError("expected coefficient", pos_);
        return static_cast<unsigned>(v);
    }

    Elem parse_coeff() {
        if (peek() == '[') {
            ++pos_;
            std::vector<unsigned> d;
            while (true) {
                skip_ws();
                d.push_back(parse_uint());
                skip_ws();
                if (peek() == ',') {
                    ++pos_;
                    continue;
                }
                expect(']');
                break;
            }
            return f_->from_digits(d);
        }
        const std::size_t start = pos_;
        unsigned v = parse_uint();
        if (f_->r() != 1) {
            if (v >= f_->p()) throw CoefficientOutOfRange("coefficient " + std::to_string(v) + " not in [0, p) at position " + std::to_string(start));
            return static_cast<Elem>(v);
        }
        if (v >= f_->p())
            throw CoefficientOutOfRange("coefficient " + std::to_string(v) + " not in [0, " + std::to_string(f_->p()) +
                                        ") at position " + std::to_string(start));
        return static_cast<Elem>(v);
    }

    std::string_view s_;
    const Field& f_;
    std::size_t pos_ = 0;
};

inline std::string format_coeff(const GaloisField& F, Elem c) {
    if (F.r() == 1) return std::to_string(c);
    std::string s = "[";
    auto d = F.digits(c);
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(d[i]);
    }
    return s + "]";
}

inline std::string format_term(const GaloisField& F, Elem c, Degree e) {
    if (e == 0) return format_coeff(F, c);
    std::string t = e == 1 ? "T" : "T^" + std::to_string(e);
    if (c == 1) return t;
    return format_coeff(F, c) + "*" + t;
}

inline std::string_view strip_parens(std::string_view s) {
    auto trim = [](std::string_view v) {
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
        return v;
    };
    s = trim(s);
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = trim(s.substr(1, s.size() - 2));
    return s;
}

}  // namespace detail

inline Laurent parse_laurent(std::string_view text, const Field& f) {
    detail::LiteralParser p(text, f);
    if (p.at_end()) throw SyntaxError("empty literal", 0);
    return p.parse_sum();
}

/// Canonical text: terms in strictly decreasing degree joined by " + ",
/// followed by "O(T^k)" for inexact values.
inline std::string format_laurent(const Laurent& a) {
    const auto& F = a.gf();
    std::string out;
    auto s = a.stored();
    for (std::size_t i = s.size(); i-- > 0;) {
        if (s[i] == 0) continue;
        if (!out.empty()) out += " + ";
        out += detail::format_term(F, s[i], a.low() + static_cast<Degree>(i));
    }
    if (!a.is_exact()) {
        if (!out.empty()) out += " + ";
        const Degree k = a.precision_floor() - 1;
        out += k == 1 ? std::string("O(T)") : "O(T^" + std::to_string(k) + ")";
    }
    return out.empty() ? "0" : out;
}

inline Poly parse_poly(std::string_view text, const Field& f) {
    Laurent a = parse_laurent(text, f);
    if (!a.is_exact() || (!a.stored().empty() && a.low() < 0)) throw SyntaxError("not a polynomial literal", 0);
    return a.polynomial_part();
}

inline std::string format_poly(const Poly& p) { return format_laurent(Laurent::from_poly(p)); }

/// "A/B" with each side a (possibly parenthesized) exact literal, or a plain literal.
inline RatFn parse_ratfn(std::string_view text, const Field& f) {
    int depth = 0;
    std::size_t slash = std::string_view::npos;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '(') ++depth;
        if (text[i] == ')') --depth;
        if (text[i] == '/' && depth == 0) {
            slash = i;
            break;
        }
    }
    auto side = [&](std::string_view v) {
        Laurent a = parse_laurent(detail::strip_parens(v), f);
        return a.to_ratfn();
    };
    if (slash == std::string_view::npos) return side(text);
    return side(text.substr(0, slash)) / side(text.substr(slash + 1));
}

inline std::string format_ratfn(const RatFn& r) {
    if (r.is_polynomial()) return format_poly(r.num());
    return "(" + format_poly(r.num()) + ")/(" + format_poly(r.den()) + ")";
}

}  // namespace ffdioph
