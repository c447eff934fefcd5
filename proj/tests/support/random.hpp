#pragma once

#include <random>

#include "ffdioph/laurent.hpp"

namespace ffdioph::gen {

inline Elem random_elem(const GaloisField& F, std::mt19937_64& rng) {
    return static_cast<Elem>(std::uniform_int_distribution<unsigned>(0, F.q() - 1)(rng));
}

inline Elem random_unit(const GaloisField& F, std::mt19937_64& rng) {
    return static_cast<Elem>(std::uniform_int_distribution<unsigned>(1, F.q() - 1)(rng));
}

/// Polynomial of degree exactly `deg` (deg < 0 gives zero).
inline Poly random_poly(const Field& f, int deg, std::mt19937_64& rng) {
    if (deg < 0) return Poly(f);
    std::vector<Elem> c(static_cast<std::size_t>(deg) + 1);
    for (auto& x : c) x = random_elem(*f, rng);
    c.back() = random_unit(*f, rng);
    return Poly(f, std::move(c));
}

/// Polynomial of degree at most `deg`, possibly zero.
inline Poly random_poly_upto(const Field& f, int deg, std::mt19937_64& rng) {
    std::vector<Elem> c(static_cast<std::size_t>(std::max(deg + 1, 0)));
    for (auto& x : c) x = random_elem(*f, rng);
    return Poly(f, std::move(c));
}

/// Nonzero Laurent value with leading degree `lead`, `len` known coefficients,
/// exact or known only down to its lowest stored degree.
inline Laurent random_laurent(const Field& f, Degree lead, std::size_t len, bool exact, std::mt19937_64& rng) {
    std::vector<Elem> c(len);
    for (auto& x : c) x = random_elem(*f, rng);
    c.back() = random_unit(*f, rng);
    const Degree low = lead - static_cast<Degree>(len) + 1;
    return exact ? Laurent::exact(f, low, std::move(c)) : Laurent::approx(f, low, std::move(c));
}

/// Element of the open unit ball: coefficients of T^-1..T^-len, exact.
inline Laurent random_unit_ball(const Field& f, std::size_t len, std::mt19937_64& rng) {
    std::vector<Elem> c(len);
    for (auto& x : c) x = random_elem(*f, rng);
    return Laurent::exact(f, -static_cast<Degree>(len), std::move(c));
}

}  // namespace ffdioph::gen
