#pragma once

#include <algorithm>
#include <span>
#include <utility>
#include <vector>

#include "ffdioph/degree.hpp"
#include "ffdioph/field.hpp"

namespace ffdioph {

/// Element of Lambda = F_q[T]. Coefficients are stored low to high and the
/// top stored coefficient is nonzero, so the zero polynomial has no coefficients.
class Poly {
   public:
    explicit Poly(Field f) : field_(std::move(f)) {}
    Poly(Field f, std::vector<Elem> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) { trim(); }

    static Poly constant(Field f, Elem c) { return Poly(std::move(f), std::vector<Elem>{c}); }
    static Poly one(Field f) { return constant(std::move(f), 1); }
    static Poly monomial(Field f, Elem c, std::size_t k) {
        std::vector<Elem> v(k + 1, 0);
        v[k] = c;
        return Poly(std::move(f), std::move(v));
    }
    /// T^k.
    static Poly t_power(Field f, std::size_t k) { return monomial(std::move(f), 1, k); }

    const Field& field() const noexcept { return field_; }
    const GaloisField& gf() const noexcept { return *field_; }

    Degree degree() const noexcept { return c_.empty() ? kNegInf : static_cast<Degree>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
    Elem coeff(std::size_t k) const noexcept { return k < c_.size() ? c_[k] : Elem{0}; }
    Elem lead() const noexcept { return c_.empty() ? Elem{0} : c_.back(); }
    std::span<const Elem> coeffs() const noexcept { return c_; }
    std::size_t size() const noexcept { return c_.size(); }

    Poly operator-() const {
        Poly r(field_);
        r.c_.resize(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = gf().neg(c_[i]);
        return r;
    }

    Poly& operator+=(const Poly& b) {
        axpy(1, 0, b);
        return *this;
    }
    Poly& operator-=(const Poly& b) {
        axpy(gf().neg(1), 0, b);
        return *this;
    }

    /// this += c * T^shift * b, in place.
    void axpy(Elem c, std::size_t shift, const Poly& b) {
        if (c == 0 || b.is_zero()) return;
        const auto& F = gf();
        if (c_.size() < b.c_.size() + shift) c_.resize(b.c_.size() + shift, 0);
        for (std::size_t i = 0; i < b.c_.size(); ++i) {
            if (b.c_[i] != 0) c_[i + shift] = F.add(c_[i + shift], F.mul(c, b.c_[i]));
        }
        trim();
    }

    Poly scaled(Elem c) const {
        if (c == 0) return Poly(field_);
        Poly r(field_);
        r.c_.resize(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = gf().mul(c, c_[i]);
        return r;
    }

    /// this * T^k.
    Poly shifted(std::size_t k) const {
        if (is_zero()) return *this;
        Poly r(field_);
        r.c_.assign(k, 0);
        r.c_.insert(r.c_.end(), c_.begin(), c_.end());
        return r;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        require_same_field(a.field_, b.field_);
        Poly r(a.field_);
        if (a.is_zero() || b.is_zero()) return r;
        const auto& F = a.gf();
        r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                r.c_[i + j] = F.add(r.c_[i + j], F.mul(a.c_[i], b.c_[j]));
            }
        }
        r.trim();
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) noexcept {
        return a.c_ == b.c_ && (a.field_ == b.field_ || a.field_->same_as(*b.field_));
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(gf().inv(lead()));
    }

    /// Copy of the coefficients with degree >= k, divided by T^k.
    Poly high_part(std::size_t k) const {
        if (k >= c_.size()) return Poly(field_);
        return Poly(field_, std::vector<Elem>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
    }

   private:
    void trim() noexcept {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    Field field_;
    std::vector<Elem> c_;
};

/// Euclidean division a = b*quot + rem with deg rem < deg b.
inline std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZero();
    require_same_field(a.field(), b.field());
    const auto& F = a.gf();
    if (a.degree() < b.degree()) return {Poly(a.field()), a};
    std::vector<Elem> rem(a.coeffs().begin(), a.coeffs().end());
    const auto db = static_cast<std::size_t>(b.degree());
    std::vector<Elem> quot(rem.size() - db, 0);
    const Elem inv_lead = F.inv(b.lead());
    const auto bc = b.coeffs();
    for (std::size_t i = rem.size(); i-- > db;) {
        const Elem c = rem[i];
        if (c == 0) continue;
        const Elem f = F.mul(c, inv_lead);
        quot[i - db] = f;
        for (std::size_t j = 0; j <= db; ++j) {
            if (bc[j] != 0) rem[i - db + j] = F.sub(rem[i - db + j], F.mul(f, bc[j]));
        }
    }
    rem.resize(db);
    return {Poly(a.field(), std::move(quot)), Poly(a.field(), std::move(rem))};
}

/// Monic gcd; gcd(0, 0) = 0.
inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        auto r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

}  // namespace ffdioph
