#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffdioph/laurent.hpp"
#include "ffdioph/rational.hpp"

namespace ffdioph {

// Haar measure lives on the closed unit ball {deg x <= 0} of F^d with total
// mass 1. At resolution N a cell fixes the coefficients of T^0, ..., T^{-(N-1)}
// of every coordinate; cell indices interleave coordinates level by level,
// most significant first, so every ball is a contiguous index range.

/// Closed ball {x : deg(x_i - center_i) <= radius_exp for all i}.
struct BallSpec {
    LaurentVec center;
    Degree radius_exp = 0;
};

/// Largest k with e^k <= c, for rational c > 0, decided with rational
/// enclosures of e.
inline Degree floor_ln(const Rational& c) {
    if (c <= 0) throw InvalidArgument("floor_ln needs a positive argument");
    for (unsigned terms = 20;; terms *= 2) {
        Rational lo = 0, fact = 1;
        for (unsigned i = 0; i <= terms; ++i) {
            if (i) fact *= i;
            lo += Rational(1) / fact;
        }
        const Rational hi = lo + Rational(2) / (fact * (terms + 1));  // e in [lo, hi]
        // find k with e^k <= c < e^{k+1}, certified by both enclosures
        Degree k = 0;
        Rational plo = 1, phi = 1;  // enclose e^k
        bool ok = true;
        if (c >= 1) {
            while (true) {
                const Rational nlo = plo * lo, nhi = phi * hi;
                if (c < nlo) break;
                if (c < nhi) {
                    ok = false;
                    break;
                }
                plo = nlo, phi = nhi, ++k;
            }
        } else {
            while (true) {
                // need e^k <= c: enclose e^k by [1/phi..., ...]
                const Rational nlo = plo / hi, nhi = phi / lo;  // e^{k-1}
                --k;
                plo = nlo, phi = nhi;
                if (c >= phi) break;
                if (c >= plo) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return k;
        if (terms > 640) throw std::logic_error("floor_ln did not converge");
    }
}

/// cB for real c > 0: distances take values in e^Z, so the radius moves by floor(ln c).
inline BallSpec dilate(const BallSpec& b, const Rational& c) { return {b.center, b.radius_exp + floor_ln(c)}; }

class CylinderSet {
   public:
    CylinderSet(Field f, std::size_t d, int N) : field_(std::move(f)), d_(d), N_(N) {
        if (N < 1 || d < 1) throw InvalidArgument("cylinder resolution and dimension must be positive");
        double total = std::pow(static_cast<double>(field_->q()), static_cast<double>(N) * static_cast<double>(d));
        if (total > 1e8) throw BudgetExceeded("cylinder with " + std::to_string(total) + " cells");
        size_ = 1;
        for (std::size_t i = 0; i < static_cast<std::size_t>(N) * d; ++i) size_ *= field_->q();
        bits_.assign(size_, false);
    }

    static CylinderSet universe(const Field& f, std::size_t d, int N) {
        CylinderSet s(f, d, N);
        s.bits_.assign(s.size_, true);
        return s;
    }

    const Field& field() const { return field_; }
    std::size_t dim() const { return d_; }
    int resolution() const { return N_; }
    std::size_t cells() const { return size_; }

    bool contains(std::size_t i) const { return bits_[i]; }
    void insert(std::size_t i) { bits_[i] = true; }
    void erase(std::size_t i) { bits_[i] = false; }

    std::size_t count() const {
        std::size_t c = 0;
        for (bool b : bits_) c += b;
        return c;
    }
    bool empty() const { return count() == 0; }

    Rational measure() const { return Rational(BigInt(count()), BigInt(size_)); }

    /// Cells of a ball: a half-open index range.
    std::pair<std::size_t, std::size_t> ball_range(const BallSpec& b) const {
        if (b.center.size() != d_) throw InvalidArgument("ball center has wrong dimension");
        if (b.radius_exp >= 0) return {0, size_};
        if (b.radius_exp < -N_) throw InvalidArgument("ball radius below the cell resolution");
        const auto fixed = static_cast<std::size_t>(-b.radius_exp);
        const unsigned q = field_->q();
        std::size_t prefix = 0;
        for (std::size_t l = 0; l < fixed; ++l)
            for (std::size_t i = 0; i < d_; ++i) {
                if (b.center[i].degree_bound() > 0) throw InvalidArgument("ball center outside the unit ball");
                prefix = prefix * q + b.center[i].coeff(-static_cast<Degree>(l));
            }
        std::size_t block = 1;
        for (std::size_t k = 0; k < (static_cast<std::size_t>(N_) - fixed) * d_; ++k) block *= q;
        return {prefix * block, (prefix + 1) * block};
    }

    static CylinderSet ball(const Field& f, const BallSpec& b, int N) {
        CylinderSet s(f, b.center.size(), N);
        auto [lo, hi] = s.ball_range(b);
        for (std::size_t i = lo; i < hi; ++i) s.bits_[i] = true;
        return s;
    }

    /// Digit of coordinate `coord` at T^{-level} in cell `index`.
    Elem digit(std::size_t index, std::size_t level, std::size_t coord) const {
        const std::size_t pos = level * d_ + coord;
        const std::size_t from_right = static_cast<std::size_t>(N_) * d_ - 1 - pos;
        for (std::size_t k = 0; k < from_right; ++k) index /= field_->q();
        return static_cast<Elem>(index % field_->q());
    }

    /// Cell center: all coefficients below T^{-(N-1)} zero.
    LaurentVec center(std::size_t index) const {
        std::vector<std::vector<Elem>> c(d_, std::vector<Elem>(static_cast<std::size_t>(N_)));
        const unsigned q = field_->q();
        for (std::size_t pos = static_cast<std::size_t>(N_) * d_; pos-- > 0;) {
            const std::size_t level = pos / d_, coord = pos % d_;
            c[coord][static_cast<std::size_t>(N_) - 1 - level] = static_cast<Elem>(index % q);
            index /= q;
        }
        LaurentVec out;
        for (auto& v : c) out.push_back(Laurent::exact(field_, -(N_ - 1), std::move(v)));
        return out;
    }

    CylinderSet& operator&=(const CylinderSet& o) {
        check(o);
        for (std::size_t i = 0; i < size_; ++i) bits_[i] = bits_[i] && o.bits_[i];
        return *this;
    }
    CylinderSet& operator|=(const CylinderSet& o) {
        check(o);
        for (std::size_t i = 0; i < size_; ++i) bits_[i] = bits_[i] || o.bits_[i];
        return *this;
    }
    CylinderSet& operator-=(const CylinderSet& o) {
        check(o);
        for (std::size_t i = 0; i < size_; ++i) bits_[i] = bits_[i] && !o.bits_[i];
        return *this;
    }
    friend CylinderSet operator&(CylinderSet a, const CylinderSet& b) { return a &= b; }
    friend CylinderSet operator|(CylinderSet a, const CylinderSet& b) { return a |= b; }
    friend CylinderSet operator-(CylinderSet a, const CylinderSet& b) { return a -= b; }
    friend bool operator==(const CylinderSet& a, const CylinderSet& b) { return a.bits_ == b.bits_ && a.N_ == b.N_ && a.d_ == b.d_; }

    bool subset_of(const CylinderSet& o) const {
        check(o);
        for (std::size_t i = 0; i < size_; ++i)
            if (bits_[i] && !o.bits_[i]) return false;
        return true;
    }

    /// Member cells as coefficient words in index order, one hex group per digit.
    std::vector<std::string> hex_words() const {
        static const char* hex = "0123456789abcdef";
        const bool wide = field_->q() > 16;
        std::vector<std::string> out;
        const std::size_t len = static_cast<std::size_t>(N_) * d_;
        for (std::size_t i = 0; i < size_; ++i) {
            if (!bits_[i]) continue;
            std::string w(len * (wide ? 2 : 1), '0');
            std::size_t v = i;
            for (std::size_t p = len; p-- > 0;) {
                const unsigned dgt = static_cast<unsigned>(v % field_->q());
                v /= field_->q();
                if (wide) {
                    w[2 * p] = hex[dgt >> 4];
                    w[2 * p + 1] = hex[dgt & 15];
                } else {
                    w[p] = hex[dgt];
                }
            }
            out.push_back(std::move(w));
        }
        return out;
    }

   private:
    void check(const CylinderSet& o) const {
        if (o.N_ != N_ || o.d_ != d_ || o.field_->q() != field_->q()) throw InvalidArgument("cylinder sets of different shape");
    }

    Field field_;
    std::size_t d_;
    int N_;
    std::size_t size_ = 0;
    std::vector<bool> bits_;
};

inline Rational cylinder_measure(const CylinderSet& s) { return s.measure(); }

}  // namespace ffdioph
