#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "ffdioph/poly.hpp"
#include "ffdioph/ratfn.hpp"

namespace ffdioph {

/// Precision-tracked element of F = F_q((T^{-1})).
///
/// A value is a finite run of coefficients plus either the statement that
/// every lower coefficient is zero (`exact`) or a valuation floor below which
/// coefficients are unknown. An inexact value stands for
///   sum_{k >= floor} a_k T^k + (unknown terms of degree < floor).
/// Queries that depend on unknown coefficients throw instead of guessing.
class Laurent {
   public:
    /// Exact zero.
    explicit Laurent(Field f) : field_(std::move(f)) {}

    /// Exact value sum_i coeffs[i] T^{low + i}.
    static Laurent exact(Field f, Degree low, std::vector<Elem> coeffs) {
        Laurent r(std::move(f));
        r.low_ = low;
        r.c_ = std::move(coeffs);
        r.normalize();
        return r;
    }

    /// Value known for degrees >= floor; coeffs[i] is the coefficient of T^{floor + i}.
    static Laurent approx(Field f, Degree floor, std::vector<Elem> coeffs) {
        Laurent r(std::move(f));
        r.low_ = floor;
        r.c_ = std::move(coeffs);
        r.exact_ = false;
        r.normalize();
        return r;
    }

    /// Value zero to every known degree >= floor: the big-oh term O(T^{floor-1}).
    static Laurent big_oh(Field f, Degree floor) { return approx(std::move(f), floor, {}); }

    static Laurent monomial(Field f, Elem c, Degree k) { return exact(std::move(f), k, {c}); }
    static Laurent one(Field f) { return monomial(std::move(f), 1, 0); }

    static Laurent from_poly(const Poly& p) {
        return exact(p.field(), 0, std::vector<Elem>(p.coeffs().begin(), p.coeffs().end()));
    }

    const Field& field() const noexcept { return field_; }
    const GaloisField& gf() const noexcept { return *field_; }

    bool is_exact() const noexcept { return exact_; }
    bool is_known_zero() const noexcept { return exact_ && c_.empty(); }
    /// Degree is decidable: a nonzero coefficient is known, or the value is exactly zero.
    bool is_resolvable() const noexcept { return exact_ || !c_.empty(); }

    /// Coefficients of degree below this are unknown; -inf for exact values.
    Degree precision_floor() const noexcept { return exact_ ? kNegInf : low_; }

    /// Degree of the lowest stored coefficient (the floor for inexact values).
    Degree low() const noexcept { return low_; }
    /// Degree of the highest stored coefficient, or low()-1 when nothing is stored.
    Degree top() const noexcept { return low_ + static_cast<Degree>(c_.size()) - 1; }
    std::span<const Elem> stored() const noexcept { return c_; }

    /// deg a; -inf for exact zero.
    Degree degree() const {
        if (!c_.empty()) return top();
        if (exact_) return kNegInf;
        throw AmbiguousZero("degree undecidable: zero down to floor " + std::to_string(low_));
    }

    /// An upper bound for deg a that is always available.
    Degree degree_bound() const noexcept {
        if (!c_.empty()) return top();
        return exact_ ? kNegInf : low_ - 1;
    }

    /// Whether deg a <= k, or nullopt when unknown coefficients decide it.
    std::optional<bool> degree_at_most(Degree k) const noexcept {
        if (!c_.empty() && top() > k) return false;
        if (exact_) return true;
        if (low_ - 1 <= k) return true;
        // known part is zero above k only down to low_; unknown part may reach above k
        return std::nullopt;
    }

    Elem leading_coeff() const { return c_.empty() ? Elem{0} : c_.back(); }

    Elem coeff(Degree k) const {
        if (!exact_ && k < low_) throw PrecisionExhausted("coefficient of T^" + std::to_string(k) + " is below the floor");
        if (k < low_ || k > top()) return 0;
        return c_[static_cast<std::size_t>(k - low_)];
    }

    /// Sum of the terms of degree >= 0.
    Poly polynomial_part() const {
        if (!exact_ && low_ > 0) throw PrecisionExhausted("polynomial part needs the constant coefficient");
        std::vector<Elem> v;
        for (Degree k = 0; k <= top(); ++k) v.push_back(coeff(k));
        return Poly(field_, std::move(v));
    }

    /// Terms of degree < 0, with the same precision.
    Laurent fractional_part() const {
        Laurent r(field_);
        r.exact_ = exact_;
        r.low_ = low_;
        for (Degree k = low_; k <= std::min<Degree>(top(), -1); ++k) r.c_.push_back(coeff(k));
        if (!exact_ && low_ > 0) r.low_ = 0, r.c_.clear();
        r.normalize();
        return r;
    }

    /// Forget every coefficient of degree < floor.
    Laurent truncated(Degree floor) const {
        if (!exact_ && floor <= low_) return *this;
        Laurent r(field_);
        r.exact_ = false;
        r.low_ = floor;
        for (Degree k = floor; k <= top(); ++k) r.c_.push_back(k < low_ ? Elem{0} : c_[static_cast<std::size_t>(k - low_)]);
        r.normalize();
        return r;
    }

    /// a * T^k.
    Laurent shifted(Degree k) const {
        Laurent r = *this;
        r.low_ += k;
        return r;
    }

    Laurent scaled(Elem c) const {
        if (c == 0) return exact_ ? Laurent(field_) : big_oh(field_, low_);
        Laurent r = *this;
        for (auto& x : r.c_) x = gf().mul(c, x);
        return r;
    }

    /// Exact value as P / T^k; requires an exact operand.
    RatFn to_ratfn() const {
        if (!exact_) throw PrecisionExhausted("inexact value is not a rational function");
        if (c_.empty()) return RatFn(Poly(field_));
        if (low_ >= 0) return RatFn(Poly(field_, c_).shifted(static_cast<std::size_t>(low_)));
        return RatFn(Poly(field_, c_), Poly::t_power(field_, static_cast<std::size_t>(-low_)));
    }

    Laurent operator-() const { return scaled(gf().neg(1)); }

    friend Laurent operator+(const Laurent& a, const Laurent& b) { return add_scaled(a, b, 1); }
    friend Laurent operator-(const Laurent& a, const Laurent& b) { return add_scaled(a, b, a.gf().neg(1)); }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        require_same_field(a.field_, b.field_);
        if (a.is_known_zero() || b.is_known_zero()) return Laurent(a.field_);
        Degree floor = kNegInf;
        if (!a.exact_) floor = std::max(floor, b.degree_bound() + a.low_);
        if (!b.exact_) floor = std::max(floor, a.degree_bound() + b.low_);
        Laurent r(a.field_);
        r.exact_ = a.exact_ && b.exact_;
        if (a.c_.empty() || b.c_.empty()) {
            r.low_ = floor;
            return r;
        }
        const auto& F = a.gf();
        const Degree lo = a.low_ + b.low_;
        const Degree start = r.exact_ ? lo : std::max(lo, floor);
        const Degree hi = a.top() + b.top();
        if (hi < start) {
            r.low_ = floor;
            return r;
        }
        r.low_ = start;
        r.c_.assign(static_cast<std::size_t>(hi - start + 1), 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            const Degree di = a.low_ + static_cast<Degree>(i);
            // b index j contributes to degree di + b.low_ + j >= start
            const Degree jmin = std::max<Degree>(0, start - di - b.low_);
            for (auto j = static_cast<std::size_t>(jmin); j < b.c_.size(); ++j) {
                auto& slot = r.c_[static_cast<std::size_t>(di + b.low_ + static_cast<Degree>(j) - start)];
                slot = F.add(slot, F.mul(a.c_[i], b.c_[j]));
            }
        }
        if (!r.exact_ && start > floor) {
            // floor below the lowest product term: pad with known zeros
            r.c_.insert(r.c_.begin(), static_cast<std::size_t>(start - floor), 0);
            r.low_ = floor;
        }
        r.normalize();
        return r;
    }

    /// 1/a. Exact monomials invert exactly; any other exact value needs a
    /// target floor; inexact values lose precision to floor - 2 deg a.
    Laurent inv(std::optional<Degree> target_floor = std::nullopt) const {
        if (is_known_zero()) throw DivisionByZero();
        if (c_.empty()) throw AmbiguousZero("cannot invert a value that is zero to its precision");
        const Degree d = top();
        const auto& F = gf();
        const Elem lc_inv = F.inv(c_.back());
        if (exact_ && c_.size() == 1) return monomial(field_, lc_inv, -d);
        Degree floor;
        if (exact_) {
            if (!target_floor) throw PrecisionExhausted("inverse of a non-monomial exact value needs a target floor");
            floor = *target_floor;
        } else {
            floor = low_ - 2 * d;
            if (target_floor) floor = std::max(floor, *target_floor);
        }
        if (floor > -d) return big_oh(field_, floor);  // nothing known
        const auto terms = static_cast<std::size_t>(-d - floor + 1);
        // normalized a' = a / (lc T^d): a'_0 = 1, a'_{-i} = stored[size-1-i] * lc_inv
        auto an = [&](std::size_t i) -> Elem {
            if (i >= c_.size()) return 0;
            return F.mul(c_[c_.size() - 1 - i], lc_inv);
        };
        std::vector<Elem> b(terms, 0);  // b[k] = coefficient of T^{-k} in 1/a'
        b[0] = 1;
        for (std::size_t k = 1; k < terms; ++k) {
            Elem s = 0;
            for (std::size_t i = 1; i <= k && i < c_.size(); ++i) s = F.add(s, F.mul(an(i), b[k - i]));
            b[k] = F.neg(s);
        }
        std::vector<Elem> out(terms);
        for (std::size_t k = 0; k < terms; ++k) out[terms - 1 - k] = F.mul(b[k], lc_inv);
        return approx(field_, floor, std::move(out));
    }

    /// Structural equality: same exactness, same precision, same known coefficients.
    friend bool operator==(const Laurent& a, const Laurent& b) noexcept {
        return a.exact_ == b.exact_ && a.c_ == b.c_ && (a.c_.empty() && a.exact_ ? true : a.low_ == b.low_) &&
               a.field_->same_as(*b.field_);
    }

    /// Known coefficients agree down to the larger of the two floors.
    bool agrees_with(const Laurent& b) const {
        const Degree floor = std::max(precision_floor(), b.precision_floor());
        const Degree hi = std::max(degree_bound(), b.degree_bound());
        Degree lo = floor;
        if (is_neg_inf(lo)) lo = std::min(low_, b.low_);
        for (Degree k = hi; k >= lo && !is_neg_inf(hi); --k) {
            if (coeff(k) != b.coeff(k)) return false;
        }
        return true;
    }

   private:
    static Laurent add_scaled(const Laurent& a, const Laurent& b, Elem sb) {
        require_same_field(a.field_, b.field_);
        const auto& F = a.gf();
        Laurent r(a.field_);
        r.exact_ = a.exact_ && b.exact_;
        Degree lo;
        if (r.exact_) {
            if (a.c_.empty() && b.c_.empty()) return r;
            lo = a.c_.empty() ? b.low_ : (b.c_.empty() ? a.low_ : std::min(a.low_, b.low_));
        } else {
            lo = kNegInf;
            if (!a.exact_) lo = std::max(lo, a.low_);
            if (!b.exact_) lo = std::max(lo, b.low_);
        }
        const Degree hi = std::max(a.degree_bound(), b.degree_bound());
        r.low_ = lo;
        if (!is_neg_inf(hi) && hi >= lo) {
            r.c_.assign(static_cast<std::size_t>(hi - lo + 1), 0);
            for (Degree k = std::max(lo, a.low_); k <= a.top(); ++k)
                r.c_[static_cast<std::size_t>(k - lo)] = a.c_[static_cast<std::size_t>(k - a.low_)];
            for (Degree k = std::max(lo, b.low_); k <= b.top(); ++k) {
                auto& s = r.c_[static_cast<std::size_t>(k - lo)];
                s = F.add(s, F.mul(sb, b.c_[static_cast<std::size_t>(k - b.low_)]));
            }
        }
        r.normalize();
        return r;
    }

    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
        if (exact_) {
            std::size_t z = 0;
            while (z < c_.size() && c_[z] == 0) ++z;
            if (z > 0) {
                c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(z));
                low_ += static_cast<Degree>(z);
            }
            if (c_.empty()) low_ = 0;
        }
    }

    Field field_;
    Degree low_ = 0;
    std::vector<Elem> c_;
    bool exact_ = true;
};

/// Vector of Laurent series; sup-norm degree is the max entry degree.
using LaurentVec = std::vector<Laurent>;

/// Row-major rectangular matrix of Laurent series.
struct LaurentMat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Laurent> entries;

    const Laurent& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
    Laurent& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }

    LaurentVec row(std::size_t i) const {
        return LaurentVec(entries.begin() + static_cast<std::ptrdiff_t>(i * cols),
                          entries.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols));
    }

    LaurentMat transposed() const {
        LaurentMat t{cols, rows, {}};
        t.entries.reserve(entries.size());
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t i = 0; i < rows; ++i) t.entries.push_back(at(i, j));
        return t;
    }

    static LaurentMat from_rows(const std::vector<LaurentVec>& rs) {
        LaurentMat m{rs.size(), rs.empty() ? 0 : rs.front().size(), {}};
        for (const auto& r : rs) {
            if (r.size() != m.cols) throw InvalidArgument("ragged matrix rows");
            m.entries.insert(m.entries.end(), r.begin(), r.end());
        }
        return m;
    }
};

/// max of entry degrees; -inf for the zero vector. Throws AmbiguousZero if
/// any entry's degree is undecidable.
inline Degree sup_norm(const LaurentVec& v) {
    Degree d = kNegInf;
    for (const auto& x : v) d = std::max(d, x.degree());
    return d;
}

inline Degree sup_norm(const LaurentMat& m) { return sup_norm(m.entries); }

/// Expansion of a rational function, with the periodic tail when detected.
struct SeriesExpansion {
    Laurent value;
    bool terminating = false;  ///< exact: the series is a finite sum
    /// When the coefficient tail is found periodic inside the window: the
    /// highest degree where periodicity starts and the period length.
    std::optional<Degree> period_start;
    std::optional<Degree> period_length;
};

/// Laurent expansion of num/den down to `floor` by long division; records the
/// tail period when a division remainder repeats inside the window.
inline SeriesExpansion laurent_from_rational(const RatFn& f, Degree floor) {
    const Field& F = f.field();
    if (f.is_zero()) return {Laurent(F), true, std::nullopt, std::nullopt};
    if (floor > f.degree()) throw InvalidArgument("floor must not exceed the degree of the value");
    const auto& G = *F;
    const Poly& den = f.den();
    const auto dd = static_cast<std::size_t>(den.degree());
    const Elem inv_lead = G.inv(den.lead());
    auto [whole, r] = poly_divmod(f.num(), den);

    // the remainder before emitting the digit of T^k determines every later digit
    std::vector<Elem> neg;  // digits of T^{-1}, T^{-2}, ...
    std::vector<std::pair<Poly, Degree>> seen;
    SeriesExpansion e{Laurent(F), false, std::nullopt, std::nullopt};
    Degree k = -1;
    for (; !r.is_zero() && k >= floor; --k) {
        if (!e.period_start) {
            for (const auto& [prev, at] : seen) {
                if (prev == r) {
                    e.period_start = at;
                    e.period_length = at - k;
                    break;
                }
            }
            if (!e.period_start) seen.emplace_back(r, k);
        }
        r = r.shifted(1);
        Elem digit = 0;
        if (!r.is_zero() && static_cast<std::size_t>(r.degree()) == dd) {
            digit = G.mul(r.lead(), inv_lead);
            r.axpy(G.neg(digit), 0, den);
        }
        neg.push_back(digit);
    }
    e.terminating = r.is_zero();
    std::vector<Elem> coeffs(neg.rbegin(), neg.rend());
    coeffs.insert(coeffs.end(), whole.coeffs().begin(), whole.coeffs().end());
    const Degree low = -static_cast<Degree>(neg.size());
    if (e.terminating) {
        e.value = Laurent::exact(F, low, std::move(coeffs));
    } else {
        e.value = Laurent::approx(F, low, std::move(coeffs)).truncated(floor);
    }
    return e;
}

}  // namespace ffdioph
