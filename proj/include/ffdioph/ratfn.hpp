#pragma once

#include "ffdioph/poly.hpp"

namespace ffdioph {

/// Element of F_q(T) in canonical form: monic denominator, gcd(num, den) = 1.
class RatFn {
   public:
    explicit RatFn(Poly num) : num_(std::move(num)), den_(Poly::one(num_.field())) {}
    RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DivisionByZero();
        require_same_field(num_.field(), den_.field());
        canonicalize();
    }

    const Poly& num() const noexcept { return num_; }
    const Poly& den() const noexcept { return den_; }
    const Field& field() const noexcept { return num_.field(); }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const noexcept { return den_.is_one(); }

    /// |num/den| = e^{deg num - deg den}.
    Degree degree() const noexcept { return num_.is_zero() ? kNegInf : num_.degree() - den_.degree(); }

    friend RatFn operator+(const RatFn& a, const RatFn& b) { return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_); }
    friend RatFn operator-(const RatFn& a, const RatFn& b) { return RatFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_); }
    friend RatFn operator*(const RatFn& a, const RatFn& b) { return RatFn(a.num_ * b.num_, a.den_ * b.den_); }
    friend RatFn operator/(const RatFn& a, const RatFn& b) {
        if (b.is_zero()) throw DivisionByZero();
        return RatFn(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFn operator-() const { return RatFn(-num_, den_); }
    friend bool operator==(const RatFn& a, const RatFn& b) noexcept { return a.num_ == b.num_ && a.den_ == b.den_; }

    /// Polynomial part: the quotient of num by den.
    Poly polynomial_part() const { return poly_divmod(num_, den_).first; }

   private:
    void canonicalize() {
        if (num_.is_zero()) {
            den_ = Poly::one(num_.field());
            return;
        }
        Poly g = poly_gcd(num_, den_);
        if (!g.is_one()) {
            num_ = poly_divmod(num_, g).first;
            den_ = poly_divmod(den_, g).first;
        }
        const Elem c = den_.gf().inv(den_.lead());
        num_ = num_.scaled(c);
        den_ = den_.scaled(c);
    }

    Poly num_;
    Poly den_;
};

}  // namespace ffdioph
