#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ffdioph/errors.hpp"

namespace ffdioph {

/// Element of F_q encoded as the integer c_0 + c_1 p + ... + c_{r-1} p^{r-1},
/// where (c_0, ..., c_{r-1}) are its coordinates in the basis 1, u, ..., u^{r-1}.
using Elem = std::uint8_t;

/// The finite field F_q, q = p^r <= 256, with full operation tables.
class GaloisField {
   public:
    /// `modulus` lists the coefficients (low to high) of a monic irreducible
    /// polynomial of degree r over F_p; empty for the prime field.
    GaloisField(unsigned p, std::vector<unsigned> modulus = {}) : p_(p), modulus_(std::move(modulus)) {
        if (!is_prime(p_)) throw InvalidField("characteristic " + std::to_string(p_) + " is not prime");
        if (modulus_.empty()) {
            r_ = 1;
        } else {
            if (modulus_.size() < 2) throw InvalidField("modulus must have degree >= 1");
            for (auto& c : modulus_) {
                if (c >= p_) throw InvalidField("modulus coefficient out of range");
            }
            if (modulus_.back() != 1) throw InvalidField("modulus must be monic");
            r_ = static_cast<unsigned>(modulus_.size() - 1);
            if (r_ == 1) {
                modulus_.clear();
            } else if (!is_irreducible(p_, modulus_)) {
                throw InvalidField("modulus is reducible over F_" + std::to_string(p_));
            }
        }
        unsigned long q = 1;
        for (unsigned i = 0; i < r_; ++i) q *= p_;
        if (q > 256) throw InvalidField("field order " + std::to_string(q) + " exceeds 256");
        q_ = static_cast<unsigned>(q);
        build_tables();
    }

    /// Fields with a built-in modulus: any prime p <= 251 and q in {4, 8, 9}.
    static std::shared_ptr<const GaloisField> builtin(unsigned q) {
        switch (q) {
            case 4: return std::make_shared<const GaloisField>(2, std::vector<unsigned>{1, 1, 1});
            case 8: return std::make_shared<const GaloisField>(2, std::vector<unsigned>{1, 1, 0, 1});
            case 9: return std::make_shared<const GaloisField>(3, std::vector<unsigned>{1, 0, 1});
            default:
                if (is_prime(q)) return std::make_shared<const GaloisField>(q);
        }
        throw InvalidField("no built-in modulus for q = " + std::to_string(q));
    }

    unsigned p() const noexcept { return p_; }
    unsigned r() const noexcept { return r_; }
    unsigned q() const noexcept { return q_; }
    const std::vector<unsigned>& modulus() const noexcept { return modulus_; }

    Elem add(Elem a, Elem b) const noexcept { return add_[a * q_ + b]; }
    Elem sub(Elem a, Elem b) const noexcept { return add_[a * q_ + neg_[b]]; }
    Elem mul(Elem a, Elem b) const noexcept { return mul_[a * q_ + b]; }
    Elem neg(Elem a) const noexcept { return neg_[a]; }
    Elem inv(Elem a) const {
        if (a == 0) throw DivisionByZero();
        return inv_[a];
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    std::vector<unsigned> digits(Elem a) const {
        std::vector<unsigned> d(r_);
        unsigned v = a;
        for (unsigned i = 0; i < r_; ++i) {
            d[i] = v % p_;
            v /= p_;
        }
        return d;
    }

    Elem from_digits(std::span<const unsigned> d) const {
        if (d.size() != r_) throw CoefficientOutOfRange("expected " + std::to_string(r_) + " basis coordinates");
        unsigned v = 0;
        for (std::size_t i = d.size(); i-- > 0;) {
            if (d[i] >= p_) throw CoefficientOutOfRange("coordinate " + std::to_string(d[i]) + " not in [0, p)");
            v = v * p_ + d[i];
        }
        return static_cast<Elem>(v);
    }

    bool same_as(const GaloisField& o) const noexcept {
        return this == &o || (p_ == o.p_ && modulus_ == o.modulus_);
    }

    static bool is_prime(unsigned n) noexcept {
        if (n < 2) return false;
        for (unsigned d = 2; d * d <= n; ++d) {
            if (n % d == 0) return false;
        }
        return true;
    }

    /// Trial division by every monic polynomial of degree 1..deg/2 over F_p.
    static bool is_irreducible(unsigned p, const std::vector<unsigned>& f) {
        const std::size_t deg = f.size() - 1;
        for (std::size_t d = 1; d <= deg / 2; ++d) {
            std::size_t count = 1;
            for (std::size_t i = 0; i < d; ++i) count *= p;
            for (std::size_t idx = 0; idx < count; ++idx) {
                std::vector<unsigned> g(d + 1);
                std::size_t v = idx;
                for (std::size_t i = 0; i < d; ++i) {
                    g[i] = static_cast<unsigned>(v % p);
                    v /= p;
                }
                g[d] = 1;
                if (remainder_is_zero(p, f, g)) return false;
            }
        }
        return true;
    }

   private:
    static bool remainder_is_zero(unsigned p, std::vector<unsigned> a, const std::vector<unsigned>& monic) {
        const std::size_t db = monic.size() - 1;
        for (std::size_t i = a.size(); i-- > db;) {
            unsigned c = a[i];
            if (c == 0) continue;
            for (std::size_t j = 0; j <= db; ++j) {
                a[i - db + j] = (a[i - db + j] + (p - c) * monic[j]) % p;
            }
        }
        for (std::size_t i = 0; i < db && i < a.size(); ++i) {
            if (a[i] != 0) return false;
        }
        return true;
    }

    void build_tables() {
        add_.assign(q_ * q_, 0);
        mul_.assign(q_ * q_, 0);
        neg_.assign(q_, 0);
        inv_.assign(q_, 0);
        for (unsigned a = 0; a < q_; ++a) {
            auto da = digits(static_cast<Elem>(a));
            std::vector<unsigned> dn(r_);
            for (unsigned i = 0; i < r_; ++i) dn[i] = (p_ - da[i]) % p_;
            neg_[a] = from_digits(dn);
            for (unsigned b = 0; b < q_; ++b) {
                auto db = digits(static_cast<Elem>(b));
                std::vector<unsigned> s(r_);
                for (unsigned i = 0; i < r_; ++i) s[i] = (da[i] + db[i]) % p_;
                add_[a * q_ + b] = from_digits(s);
                mul_[a * q_ + b] = from_digits(mul_digits(da, db));
            }
        }
        for (unsigned a = 1; a < q_; ++a) {
            for (unsigned b = 1; b < q_; ++b) {
                if (mul_[a * q_ + b] == 1) {
                    inv_[a] = static_cast<Elem>(b);
                    break;
                }
            }
        }
    }

    std::vector<unsigned> mul_digits(const std::vector<unsigned>& a, const std::vector<unsigned>& b) const {
        std::vector<unsigned> prod(2 * r_ - 1, 0);
        for (unsigned i = 0; i < r_; ++i) {
            for (unsigned j = 0; j < r_; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
        }
        // reduce by the monic modulus
        for (std::size_t i = prod.size(); i-- > r_;) {
            unsigned c = prod[i];
            if (c == 0) continue;
            for (unsigned j = 0; j <= r_; ++j) {
                prod[i - r_ + j] = (prod[i - r_ + j] + (p_ - c) * modulus_[j]) % p_;
            }
        }
        prod.resize(r_);
        return prod;
    }

    unsigned p_;
    unsigned r_ = 1;
    unsigned q_ = 0;
    std::vector<unsigned> modulus_;
    std::vector<Elem> add_, mul_, neg_, inv_;
};

using Field = std::shared_ptr<const GaloisField>;

inline Field make_field(unsigned q) { return GaloisField::builtin(q); }

inline Field make_field(unsigned p, std::vector<unsigned> modulus) {
    return std::make_shared<const GaloisField>(p, std::move(modulus));
}

/// F_q from its size, with an explicit modulus for extensions (q = p^r,
/// modulus of degree r, lowest coefficient first).
inline Field make_field_sized(unsigned q, const std::vector<unsigned>& modulus) {
    if (modulus.empty()) return make_field(q);
    const std::size_t r = modulus.size() - 1;
    for (unsigned p = 2; p <= q; ++p) {
        unsigned long long v = 1;
        for (std::size_t i = 0; i < r && v <= q; ++i) v *= p;
        if (v == q) return make_field(p, modulus);
    }
    throw InvalidField("q is not p^r for the modulus degree r");
}

inline void require_same_field(const Field& a, const Field& b) {
    if (!a->same_as(*b)) throw InvalidArgument("operands live in different fields");
}

}  // namespace ffdioph
