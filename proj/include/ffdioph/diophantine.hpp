#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "ffdioph/lattice.hpp"
#include "ffdioph/rational.hpp"

namespace ffdioph {

// ---------------------------------------------------------------- Dirichlet

/// m linear forms in n variables (rows of Y) with weights t of length m+n.
struct DirichletInstance {
    LaurentMat Y;
    std::vector<Degree> t;
};

struct ApproxSolution {
    std::vector<Poly> p;
    std::vector<Poly> q;
    LaurentVec err;                 // Y_i q - p_i (- theta_i)
    std::vector<Degree> err_deg;    // degree, or an upper bound when unresolved
    std::vector<bool> err_resolved;
    Degree q_deg = kNegInf;
};

namespace detail {

/// The stored coefficients of a, read as an exact value.
inline Laurent known_part(const Laurent& a) {
    if (a.is_exact()) return a;
    return Laurent::exact(a.field(), a.low(), std::vector<Elem>(a.stored().begin(), a.stored().end()));
}

inline LaurentMat known_part(const LaurentMat& m) {
    LaurentMat r = m;
    for (auto& e : r.entries) e = known_part(e);
    return r;
}

inline Field field_of(const LaurentMat& Y) {
    if (Y.entries.empty()) throw InvalidArgument("empty matrix");
    return Y.entries.front().field();
}

/// Rows -e_i (i < m) and (Y_{.j}, e_j) (j < n) in columns (errors | q).
/// A combination with coefficients (p, q) is the vector (Yq - p, q).
inline PolyMat approximation_lattice(const LaurentMat& Yk) {
    const Field f = field_of(Yk);
    const std::size_t m = Yk.rows, n = Yk.cols, k = m + n;
    LaurentMat L{k, k, std::vector<Laurent>(k * k, Laurent(f))};
    for (std::size_t i = 0; i < m; ++i) L.at(i, i) = Laurent::one(f).scaled(f->neg(1));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) L.at(m + j, i) = Yk.at(i, j);
        L.at(m + j, m + j) = Laurent::one(f);
    }
    return PolyMat::from_laurent(L, f);
}

inline Laurent dot_row(const LaurentMat& Y, std::size_t i, const std::vector<Poly>& q) {
    Laurent s(detail::field_of(Y));
    for (std::size_t j = 0; j < Y.cols; ++j)
        if (!q[j].is_zero()) s = s + Y.at(i, j) * Laurent::from_poly(q[j]);
    return s;
}

}  // namespace detail

/// Recomputes errors and degrees of (p, q) from scratch.
inline ApproxSolution evaluate_solution(const LaurentMat& Y, const std::optional<LaurentVec>& theta,
                                        std::vector<Poly> p, std::vector<Poly> q) {
    if (p.size() != Y.rows || q.size() != Y.cols) throw InvalidArgument("solution has wrong dimensions");
    ApproxSolution s;
    for (const auto& x : q) s.q_deg = std::max(s.q_deg, x.degree());
    for (std::size_t i = 0; i < Y.rows; ++i) {
        Laurent e = detail::dot_row(Y, i, q) - Laurent::from_poly(p[i]);
        if (theta) e = e - (*theta)[i];
        s.err_resolved.push_back(e.is_resolvable());
        s.err_deg.push_back(e.degree_bound());
        s.err.push_back(std::move(e));
    }
    s.p = std::move(p);
    s.q = std::move(q);
    return s;
}

/// Independent check of |Y_i q - p_i| < e^{-t_i} and |q_j| <= e^{t_{m+j}}, q != 0.
inline bool satisfies_dirichlet(const DirichletInstance& inst, const ApproxSolution& s) {
    const std::size_t m = inst.Y.rows, n = inst.Y.cols;
    const ApproxSolution r = evaluate_solution(inst.Y, std::nullopt, s.p, s.q);
    if (r.q_deg == kNegInf) return false;
    for (std::size_t i = 0; i < m; ++i)
        if (r.err[i].degree_at_most(-inst.t[i] - 1) != std::optional<bool>(true)) return false;
    for (std::size_t j = 0; j < n; ++j)
        if (r.q[j].degree() > inst.t[m + j]) return false;
    return true;
}

inline ApproxSolution dirichlet_solve(const DirichletInstance& inst) {
    const std::size_t m = inst.Y.rows, n = inst.Y.cols;
    if (m == 0 || n == 0) throw InvalidArgument("need at least one form and one variable");
    if (inst.t.size() != m + n) throw InvalidWeights("weight vector must have length m+n");
    Degree sp = 0, sq = 0, max_p = 0;
    for (std::size_t i = 0; i < m + n; ++i) {
        if (inst.t[i] < 0) throw InvalidWeights("weights must be nonnegative");
        (i < m ? sp : sq) += inst.t[i];
        if (i < m) max_p = std::max(max_p, inst.t[i]);
    }
    if (sp != sq) throw InvalidWeights("weights are not balanced: " + std::to_string(sp) + " != " + std::to_string(sq));
    const Degree need = -(max_p + sq + 2);
    for (const auto& y : inst.Y.entries)
        if (!y.is_exact() && y.precision_floor() > need)
            throw PrecisionExhausted("entry floor " + std::to_string(y.precision_floor()) + " is above " + std::to_string(need));

    const LaurentMat Yk = detail::known_part(inst.Y);
    Shift s(m + n);
    for (std::size_t i = 0; i < m; ++i) s[i] = inst.t[i] + 1;
    for (std::size_t j = 0; j < n; ++j) s[m + j] = -inst.t[m + j];
    const auto b = weak_popov(detail::approximation_lattice(Yk), s, false);
    const auto sv = shortest_vector(b);
    if (sv.deg > 0) throw std::logic_error("Dirichlet lattice has no vector of shifted degree <= 0");
    std::vector<Poly> q, p;
    for (std::size_t j = 0; j < n; ++j) q.push_back(sv.value[m + j].polynomial_part());
    for (std::size_t i = 0; i < m; ++i) p.push_back(detail::dot_row(Yk, i, q).polynomial_part());
    return evaluate_solution(inst.Y, std::nullopt, std::move(p), std::move(q));
}

// ---------------------------------------------------- continued fractions

enum class CFStop { Terminated, MaxTerms, Precision };

inline const char* to_string(CFStop s) {
    switch (s) {
        case CFStop::Terminated: return "terminated";
        case CFStop::MaxTerms: return "max_terms";
        case CFStop::Precision: return "precision";
    }
    return "?";
}

/// y = [a_0; a_1, a_2, ...] with convergents p_k/q_k, k = 0..K.
struct CFExpansion {
    std::vector<Poly> a;
    std::vector<Poly> p;
    std::vector<Poly> q;
    bool terminated = false;
    CFStop stop = CFStop::MaxTerms;
    /// deg(q_k y - p_k) for each emitted k.
    std::vector<Degree> err_deg;
};

namespace detail {

inline void push_quotient(CFExpansion& cf, Poly a) {
    const Field& f = a.field();
    const std::size_t k = cf.a.size();
    if (k == 0) {
        cf.p.push_back(a);
        cf.q.push_back(Poly::one(f));
    } else {
        const Poly pm = k >= 2 ? cf.p[k - 2] : Poly::one(f);
        const Poly qm = k >= 2 ? cf.q[k - 2] : Poly(f);
        cf.p.push_back(a * cf.p[k - 1] + pm);
        cf.q.push_back(a * cf.q[k - 1] + qm);
    }
    cf.a.push_back(std::move(a));
}

inline void cf_rational(const RatFn& y, std::size_t max_terms, CFExpansion& cf) {
    RatFn x = y;
    Poly a = x.polynomial_part();
    RatFn frac = x - RatFn(a);
    push_quotient(cf, std::move(a));
    while (true) {
        if (frac.is_zero()) {
            cf.terminated = true;
            cf.stop = CFStop::Terminated;
            return;
        }
        if (cf.a.size() > max_terms) {
            cf.stop = CFStop::MaxTerms;
            return;
        }
        x = RatFn(Poly::one(y.field())) / frac;
        a = x.polynomial_part();
        frac = x - RatFn(a);
        push_quotient(cf, std::move(a));
    }
}

inline void cf_series(const Laurent& y, std::size_t max_terms, CFExpansion& cf) {
    cf.stop = CFStop::Precision;
    if (!y.is_resolvable() || (y.precision_floor() > 0)) return;
    push_quotient(cf, y.polynomial_part());
    Laurent frac = y.fractional_part();
    while (true) {
        if (cf.a.size() > max_terms) {
            cf.stop = CFStop::MaxTerms;
            return;
        }
        if (!frac.is_resolvable()) return;
        const Laurent x = frac.inv();
        if (x.precision_floor() > 0) return;
        push_quotient(cf, x.polynomial_part());
        frac = x.fractional_part();
    }
}

}  // namespace detail

/// Artin continued fraction. Emits a_0 plus at most max_terms further
/// quotients; every emitted convergent is checked against
/// deg(q_k y - p_k) = -deg q_{k+1}, and quotients whose check cannot be
/// decided at the available precision are dropped.
inline CFExpansion cf_expand(const Laurent& y, std::size_t max_terms) {
    CFExpansion cf;
    if (y.is_exact())
        detail::cf_rational(y.to_ratfn(), max_terms, cf);
    else
        detail::cf_series(y, max_terms, cf);
    for (std::size_t k = 0; k < cf.a.size(); ++k) {
        const Laurent e = y * Laurent::from_poly(cf.q[k]) - Laurent::from_poly(cf.p[k]);
        const bool last = k + 1 == cf.a.size();
        if (!e.is_resolvable()) {
            cf.a.erase(cf.a.begin() + static_cast<std::ptrdiff_t>(k), cf.a.end());
            cf.p.erase(cf.p.begin() + static_cast<std::ptrdiff_t>(k), cf.p.end());
            cf.q.erase(cf.q.begin() + static_cast<std::ptrdiff_t>(k), cf.q.end());
            cf.terminated = false;
            cf.stop = CFStop::Precision;
            break;
        }
        const Degree d = e.degree();
        if (last) {
            if (cf.terminated && d != kNegInf) throw std::logic_error("terminated expansion leaves a nonzero error");
        } else if (d != -cf.q[k + 1].degree()) {
            throw std::logic_error("continued fraction identity failed at k = " + std::to_string(k));
        }
        cf.err_deg.push_back(d);
    }
    return cf;
}

inline CFExpansion cf_expand(const RatFn& y, std::size_t max_terms) {
    CFExpansion cf;
    detail::cf_rational(y, max_terms, cf);
    for (std::size_t k = 0; k < cf.a.size(); ++k) {
        const RatFn e = RatFn(cf.q[k]) * y - RatFn(cf.p[k]);
        const Degree d = e.degree();
        if (k + 1 < cf.a.size() ? d != -cf.q[k + 1].degree() : (cf.terminated && d != kNegInf))
            throw std::logic_error("continued fraction identity failed at k = " + std::to_string(k));
        cf.err_deg.push_back(d);
    }
    return cf;
}

// ------------------------------------------------------------- profiles

/// L(tau) = min over q != 0 with deg q_j < tau and all p of
/// max_i deg(Y_i q - p_i - theta_i). When `exact` is false, L is only an
/// upper bound: the data ran out of digits before the optimum was reached.
struct ProfileEntry {
    int tau = 0;
    Degree L = kNegInf;
    bool exact = true;
    std::vector<Poly> p;
    std::vector<Poly> q;
};

struct BestProfile {
    std::size_t m = 0;
    std::size_t n = 0;
    std::optional<LaurentVec> theta;
    std::vector<ProfileEntry> entries;
};

namespace detail {

class ProfileSearch {
   public:
    ProfileSearch(const LaurentMat& Y, const std::optional<LaurentVec>& theta)
        : field_(field_of(Y)), m_(Y.rows), n_(Y.cols), Yk_(known_part(Y)) {
        if (theta && theta->size() != m_) throw InvalidArgument("theta must have one entry per form");
        Degree low = 0;
        auto scan = [&](const Laurent& a, Degree tau_coeff) {
            if (!a.is_known_zero()) low = std::min(low, a.low());
            if (!a.is_exact()) {
                exact_ = false;
                if (tau_coeff) {
                    y_floor_ = std::max(y_floor_, a.precision_floor());
                } else {
                    th_floor_ = std::max(th_floor_, a.precision_floor());
                }
            }
        };
        for (const auto& y : Y.entries) scan(y, 1);
        if (theta) {
            for (const auto& t : *theta) {
                scan(t, 0);
                thk_.push_back(known_part(t));
            }
        }
        D_ = -low;
        basis_ = approximation_lattice(Yk_);
    }

    bool data_exact() const { return exact_; }
    Degree D() const { return D_; }

    /// Degrees at or below this are not certified by the stored digits.
    Degree threshold(int tau) const {
        Degree e = kNegInf;
        if (y_floor_ != kNegInf) e = std::max(e, y_floor_ + tau - 2);
        if (th_floor_ != kNegInf) e = std::max(e, th_floor_ - 1);
        return e;
    }

    /// Some q != 0 with deg q_j <= tau-1 reaches error degree <= L (L <= -1).
    std::optional<std::vector<Poly>> feasible(int tau, Degree L) {
        Shift s(m_ + n_);
        for (std::size_t i = 0; i < m_; ++i) s[i] = -L;
        for (std::size_t j = 0; j < n_; ++j) s[m_ + j] = -(tau - 1);
        auto b = weak_popov(basis_, s, false);
        std::optional<std::vector<Poly>> out;
        if (thk_.empty()) {
            const auto sv = shortest_vector(b);
            if (sv.deg <= 0) out = q_part(sv.value);
        } else {
            LaurentVec w = thk_;
            w.resize(m_ + n_, Laurent(field_));
            const auto cv = closest_vector(b, w);
            if (cv.dist <= 0) {
                auto q = q_part(cv.v);
                if (!all_zero(q)) {
                    out = std::move(q);
                } else {
                    for (std::size_t i = 0; i < b.R.rows && !out; ++i) {
                        if (b.pivots[i].deg > 0) continue;
                        auto qi = q_part(b.R.row_values(i));
                        if (!all_zero(qi)) out = std::move(qi);
                    }
                }
            }
        }
        basis_ = std::move(b.R);
        return out;
    }

    std::vector<Poly> p_for(const std::vector<Poly>& q) const {
        std::vector<Poly> p;
        for (std::size_t i = 0; i < m_; ++i) {
            Laurent v = dot_row(Yk_, i, q);
            if (!thk_.empty()) v = v - thk_[i];
            p.push_back(v.polynomial_part());
        }
        return p;
    }

   private:
    std::vector<Poly> q_part(const LaurentVec& v) const {
        std::vector<Poly> q;
        for (std::size_t j = 0; j < n_; ++j) q.push_back(v[m_ + j].polynomial_part());
        return q;
    }
    static bool all_zero(const std::vector<Poly>& v) {
        return std::all_of(v.begin(), v.end(), [](const Poly& x) { return x.is_zero(); });
    }

    Field field_;
    std::size_t m_, n_;
    LaurentMat Yk_;
    LaurentVec thk_;
    bool exact_ = true;
    Degree y_floor_ = kNegInf;
    Degree th_floor_ = kNegInf;
    Degree D_ = 0;
    PolyMat basis_;
};

}  // namespace detail

/// L(tau) for tau = 1..tau_max by lattice reduction: galloping then binary
/// search on L, each candidate decided by one reduction of the previous basis.
inline BestProfile best_profile(const LaurentMat& Y, const std::optional<LaurentVec>& theta, int tau_max) {
    if (tau_max < 1) throw InvalidArgument("tau_max must be positive");
    detail::ProfileSearch S(Y, theta);
    BestProfile out;
    out.m = Y.rows;
    out.n = Y.cols;
    out.theta = theta;
    std::vector<Poly> wq;
    for (int tau = 1; tau <= tau_max; ++tau) {
        ProfileEntry e;
        e.tau = tau;
        Degree hi = -1;
        if (tau == 1) {
            auto q = S.feasible(1, -1);
            if (!q) throw std::logic_error("no solution at L = -1");
            wq = std::move(*q);
        } else {
            const auto& prev = out.entries.back();
            hi = prev.L;
            if (hi == kNegInf || !prev.exact) {
                e.L = hi;
                e.exact = prev.exact;
                e.p = prev.p;
                e.q = prev.q;
                out.entries.push_back(std::move(e));
                continue;
            }
        }
        const Degree lo = S.data_exact() ? -S.D() - 1 : std::max(S.threshold(tau), -S.D() - 1);
        Degree good = hi;
        std::optional<Degree> bad;
        if (good > lo) {
            Degree step = 1;
            while (true) {
                const Degree c = std::max(good - step, lo);
                if (auto q = S.feasible(tau, c)) {
                    good = c;
                    wq = std::move(*q);
                    if (c == lo) break;
                    step *= 2;
                } else {
                    bad = c;
                    break;
                }
            }
            if (bad) {
                while (good - *bad > 1) {
                    const Degree mid = *bad + (good - *bad) / 2;
                    if (auto q = S.feasible(tau, mid)) {
                        good = mid;
                        wq = std::move(*q);
                    } else {
                        bad = mid;
                    }
                }
            }
        }
        if (!bad && good <= lo) {
            e.exact = S.data_exact();
            e.L = S.data_exact() ? kNegInf : good;
        } else {
            e.L = good;
        }
        e.q = wq;
        e.p = S.p_for(wq);
        out.entries.push_back(std::move(e));
    }
    return out;
}

/// Exhaustive oracle over all q != 0 with deg q_j < tau_max and all p with
/// deg p_i <= deg_p_max.
inline BestProfile brute_force_profile(const LaurentMat& Y, const std::optional<LaurentVec>& theta, int tau_max,
                                       int deg_p_max, double budget = 1e7) {
    const Field f = detail::field_of(Y);
    const std::size_t m = Y.rows, n = Y.cols;
    const unsigned qq = f->q();
    const double count = std::pow(static_cast<double>(qq), static_cast<double>(n) * tau_max);
    if (count > budget) throw BudgetExceeded("enumeration of " + std::to_string(count) + " vectors exceeds budget");
    std::vector<Poly> ps;
    {
        std::size_t np = 1;
        for (int i = 0; i <= deg_p_max; ++i) np *= qq;
        for (std::size_t idx = 0; idx < np; ++idx) {
            std::vector<Elem> c(static_cast<std::size_t>(deg_p_max) + 1);
            std::size_t v = idx;
            for (auto& x : c) x = static_cast<Elem>(v % qq), v /= qq;
            ps.emplace_back(f, std::move(c));
        }
    }
    struct Best {
        Degree L = std::numeric_limits<Degree>::max();
        bool exact = true;
        std::vector<Poly> p, q;
    };
    std::vector<Best> best(static_cast<std::size_t>(tau_max) + 1);
    const std::size_t len = static_cast<std::size_t>(tau_max);
    std::vector<std::size_t> digits(n * len, 0);
    while (true) {
        std::size_t i = 0;
        while (i < digits.size() && ++digits[i] == qq) digits[i++] = 0;
        if (i == digits.size()) break;
        std::vector<Poly> q;
        Degree qdeg = kNegInf;
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Elem> c(len);
            for (std::size_t d = 0; d < len; ++d) c[d] = static_cast<Elem>(digits[j * len + d]);
            q.emplace_back(f, std::move(c));
            qdeg = std::max(qdeg, q.back().degree());
        }
        Degree err = kNegInf;
        bool exact = true;
        bool all_resolved = true;
        std::vector<Poly> p;
        for (std::size_t r = 0; r < m; ++r) {
            Laurent v = detail::dot_row(Y, r, q);
            if (theta) v = v - (*theta)[r];
            Degree row_best = std::numeric_limits<Degree>::max();
            bool row_exact = true;
            const Poly* arg = nullptr;
            for (const auto& pc : ps) {
                const Laurent e = v - Laurent::from_poly(pc);
                const Degree d = e.degree_bound();
                row_exact = row_exact && e.is_resolvable();
                if (d < row_best) {
                    row_best = d;
                    arg = &pc;
                }
            }
            p.push_back(*arg);
            if (row_best > err) {
                err = row_best;
                exact = row_exact;
            } else if (row_best == err) {
                exact = exact || row_exact;
            }
            all_resolved = all_resolved && row_exact;
        }
        auto& b = best[static_cast<std::size_t>(qdeg) + 1];
        b.exact = b.exact && all_resolved;
        if (err < b.L) {
            b.L = err;
            b.p = std::move(p);
            b.q = std::move(q);
        }
    }
    BestProfile out;
    out.m = m;
    out.n = n;
    out.theta = theta;
    Best run;
    for (int tau = 1; tau <= tau_max; ++tau) {
        const auto& b = best[static_cast<std::size_t>(tau)];
        const bool exact = run.exact && b.exact;
        if (b.L < run.L) run = b;
        run.exact = exact;
        out.entries.push_back({tau, run.L, run.exact, run.p, run.q});
    }
    return out;
}

// ------------------------------------------------------------ exponents

/// m(-L)/(n tau); infinite for L = -inf.
inline ExtRational profile_ratio(const ProfileEntry& e, std::size_t m, std::size_t n) {
    if (e.L == kNegInf) return std::nullopt;
    return Rational(BigInt(static_cast<long long>(m)) * BigInt(-e.L), BigInt(static_cast<long long>(n)) * BigInt(e.tau));
}

struct ExponentEstimate {
    ExtRational omega_lower;
    std::optional<ExtRational> omega_hat_window;  // absent if the window has no certified entry
    int tau_min = 0;
    int tau_max = 0;
    bool precision_limited = false;
};

inline ExponentEstimate omega_estimate(const BestProfile& prof, std::optional<int> tau_min = std::nullopt) {
    if (prof.entries.empty()) throw InvalidArgument("empty profile");
    ExponentEstimate est;
    est.tau_max = prof.entries.back().tau;
    est.tau_min = tau_min.value_or(std::max(1, est.tau_max / 2));
    if (est.tau_min >= est.tau_max && est.tau_max > 1) throw InvalidArgument("tau_min must be below tau_max");
    bool any = false;
    for (const auto& e : prof.entries) {
        if (!e.exact) {
            est.precision_limited = true;
            continue;
        }
        const ExtRational r = profile_ratio(e, prof.m, prof.n);
        if (!any || ext_less(est.omega_lower, r)) est.omega_lower = r;
        any = true;
        if (e.tau >= est.tau_min) {
            if (!est.omega_hat_window || ext_less(r, *est.omega_hat_window)) est.omega_hat_window = r;
        }
    }
    if (!any) throw AllFlagged();
    return est;
}

inline std::string format_profile_csv(const BestProfile& prof) {
    std::string out = "tau,L,exact_flag\n";
    for (const auto& e : prof.entries)
        out += std::to_string(e.tau) + "," + format_degree(e.L) + "," + (e.exact ? "true" : "false") + "\n";
    return out;
}

}  // namespace ffdioph
