#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <optional>
#include <ostream>
#include <string>

namespace ffdioph {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// "a/b" with b >= 1, always with the slash.
inline std::string format_rational(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Rational or +infinity (nullopt).
using ExtRational = std::optional<Rational>;

inline std::string format_ext(const ExtRational& r) { return r ? format_rational(*r) : "inf"; }

inline bool ext_less(const ExtRational& a, const ExtRational& b) {
    if (!a) return false;
    if (!b) return true;
    return *a < *b;
}

inline double to_double(const ExtRational& r) {
    return r ? static_cast<double>(*r) : std::numeric_limits<double>::infinity();
}

/// coef * q^exp with coef >= 0 and exp rational: exact positive reals of
/// the shape met in measure estimates with exponents in units of ln q.
struct QPow {
    unsigned q = 2;
    Rational coef = 0;
    Rational exp = 0;

    static QPow zero(unsigned q) { return {q, 0, 0}; }
    static QPow one(unsigned q) { return {q, 1, 0}; }
    bool is_zero() const { return coef == 0; }

    friend QPow operator*(const QPow& a, const QPow& b) { return {a.q, a.coef * b.coef, a.exp + b.exp}; }

    double approx() const {
        return static_cast<double>(coef) * std::pow(static_cast<double>(q), static_cast<double>(exp));
    }

    std::string str() const {
        if (exp == 0 || coef == 0) return format_rational(coef);
        if (denominator(exp) == 1) {
            const BigInt e = numerator(exp);
            const BigInt b = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(abs(e)));
            return format_rational(e > 0 ? coef * Rational(b) : coef / Rational(b));
        }
        return format_rational(coef) + "*" + std::to_string(q) + "^(" + format_rational(exp) + ")";
    }
};

namespace detail {

inline BigInt pow_big(const BigInt& b, const BigInt& e) {
    return boost::multiprecision::pow(b, static_cast<unsigned>(e));
}

}  // namespace detail

/// a <= b, decided exactly by raising both sides to the exponent denominator.
inline bool operator<=(const QPow& a, const QPow& b) {
    if (a.q != b.q) throw std::invalid_argument("QPow bases differ");
    if (a.coef == 0) return true;
    if (b.coef == 0) return false;
    const Rational r = a.coef / b.coef;
    const Rational e = b.exp - a.exp;  // need r <= q^e
    const BigInt u = numerator(e), v = denominator(e);
    const BigInt rn = detail::pow_big(numerator(r), v), rd = detail::pow_big(denominator(r), v);
    const BigInt qq = a.q;
    if (u >= 0) return rn <= rd * detail::pow_big(qq, u);
    return rn * detail::pow_big(qq, -u) <= rd;
}

inline bool operator<(const QPow& a, const QPow& b) { return !(b <= a); }
inline bool operator==(const QPow& a, const QPow& b) { return a <= b && b <= a; }

inline std::ostream& operator<<(std::ostream& os, const QPow& a) { return os << a.str(); }

}  // namespace ffdioph
