#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ffdioph/diophantine.hpp"
#include "ffdioph/goodmaps.hpp"

namespace ffdioph {

/// alpha = (p, q) indexing the near-solution sets.
struct AlphaIndex {
    Poly p;
    std::vector<Poly> q;

    friend bool operator==(const AlphaIndex& a, const AlphaIndex& b) { return a.p == b.p && a.q == b.q; }
};

inline std::string format_alpha(const AlphaIndex& a) {
    std::string s = "(p=" + format_poly(a.p) + "; q=";
    for (std::size_t i = 0; i < a.q.size(); ++i) s += (i ? "," : "") + format_poly(a.q[i]);
    return s + ")";
}

inline AlphaIndex operator-(const AlphaIndex& a, const AlphaIndex& b) {
    AlphaIndex r{a.p - b.p, a.q};
    for (std::size_t i = 0; i < r.q.size(); ++i) r.q[i] = r.q[i] - b.q[i];
    return r;
}

/// Finite instance of the near-solution families of a map f on a ball V.
struct SetFamilyConfig {
    SetFamilyConfig(PolyMap map, BallSpec ball, Laurent shift)
        : f(std::move(map)), V(std::move(ball)), theta(std::move(shift)) {}

    PolyMap f;
    BallSpec V;
    Laurent theta;
    Rational omega = 2;
    int t = 1;
    int N = 8;
    /// Good constants of f: C, and alpha_0 in units of ln q.
    Rational C = 1;
    Rational alpha0 = 1;
    double alpha_budget = 1e6;
    double cell_budget = kDefaultCellBudget;
};

/// psi_w(t) = e^{-n w t}: deg F < -n w t, i.e. deg F <= -floor(n w t) - 1.
inline Degree psi_level(std::size_t n, const Rational& omega, int t) {
    const Rational x = omega * static_cast<long long>(n) * t;
    BigInt fl = numerator(x) / denominator(x);
    if (x < 0 && fl * denominator(x) != numerator(x)) fl -= 1;
    return -static_cast<Degree>(fl) - 1;
}

/// Cells certainly in a set, and cells whose membership precision cannot decide.
struct LevelSet {
    CylinderSet members;
    CylinderSet undecided;
};

struct SetViolation {
    std::string what;
    std::size_t cell = 0;
    std::string word;
};

namespace detail {

inline std::vector<Poly> polys_upto(const Field& f, Degree deg) {
    std::vector<Poly> out{Poly(f)};
    if (deg < 0) return out;
    const unsigned q = f->q();
    std::size_t total = 1;
    for (Degree k = 0; k <= deg; ++k) total *= q;
    for (std::size_t v = 1; v < total; ++v) {
        std::vector<Elem> c;
        for (std::size_t x = v; x; x /= q) c.push_back(static_cast<Elem>(x % q));
        out.emplace_back(f, std::move(c));
    }
    return out;
}

inline std::string cell_word(const CylinderSet& grid, std::size_t idx) {
    CylinderSet one(grid.field(), grid.dim(), grid.resolution());
    one.insert(idx);
    return one.hex_words().front();
}

}  // namespace detail

/// Per-cell values of f on V, shared by every F_alpha = f.q + p (+ theta).
class SetFamily {
   public:
    explicit SetFamily(SetFamilyConfig cfg) : cfg_(std::move(cfg)), grid_(cfg_.f.field, cfg_.f.d, cfg_.N) {
        const Field& F = cfg_.f.field;
        if (cfg_.f.n() == 0) throw InvalidArgument("map has no components");
        if (cfg_.omega <= 1) throw InvalidArgument("omega must exceed 1");
        if (cfg_.t < 0) throw InvalidArgument("t must be nonnegative");
        if (dilate(cfg_.V, 5).radius_exp > 0) throw InvalidArgument("5V must lie in the unit ball");
        if (cfg_.V.radius_exp < -cfg_.N) throw InvalidArgument("V is smaller than a cell");
        detail::check_budget(F, cfg_.f.d, cfg_.N, cfg_.cell_budget);
        std::tie(lo_, hi_) = grid_.ball_range(cfg_.V);
        std::vector<PerturbationBound> pb;
        for (const auto& c : cfg_.f.comps) pb.emplace_back(c);
        for (std::size_t idx = lo_; idx < hi_; ++idx) {
            const LaurentVec c = grid_.center(idx);
            const auto dc = center_degrees(c);
            vals_.push_back(cfg_.f.eval(c));
            std::vector<Degree> b;
            for (const auto& x : pb) b.push_back(x(dc, cfg_.N));
            bounds_.push_back(std::move(b));
        }
        vmask_ = CylinderSet::ball(F, cfg_.V, cfg_.N);
    }

    const SetFamilyConfig& config() const { return cfg_; }
    const CylinderSet& grid() const { return grid_; }
    const CylinderSet& V() const { return vmask_; }
    std::size_t n() const { return cfg_.f.n(); }
    Degree level(const Rational& omega) const { return psi_level(n(), omega, cfg_.t); }

    /// (degree or bound, exact) of F_alpha on each cell of V.
    std::vector<std::pair<Degree, bool>> table(const AlphaIndex& a, bool with_theta) const {
        std::vector<Degree> dq;
        for (const auto& x : a.q) dq.push_back(x.degree());
        Laurent shift = Laurent::from_poly(a.p);
        if (with_theta) shift = shift + cfg_.theta;
        std::vector<std::pair<Degree, bool>> out;
        out.reserve(vals_.size());
        for (std::size_t k = 0; k < vals_.size(); ++k) {
            Laurent v = shift;
            Degree b = kNegInf;
            for (std::size_t i = 0; i < a.q.size(); ++i) {
                if (a.q[i].is_zero()) continue;
                v = v + vals_[k][i] * Laurent::from_poly(a.q[i]);
                b = std::max(b, deg_add(dq[i], bounds_[k][i]));
            }
            out.push_back(classify_cell(v, b));
        }
        return out;
    }

    LevelSet level_set(const AlphaIndex& a, Degree level, bool with_theta) const {
        LevelSet s{CylinderSet(cfg_.f.field, cfg_.f.d, cfg_.N), CylinderSet(cfg_.f.field, cfg_.f.d, cfg_.N)};
        const auto tab = table(a, with_theta);
        for (std::size_t k = 0; k < tab.size(); ++k) {
            if (tab[k].first <= level) s.members.insert(lo_ + k);
            else if (!tab[k].second) s.undecided.insert(lo_ + k);
        }
        return s;
    }

    /// I_t(alpha, e^{level}) and H_t(alpha, e^{level}).
    LevelSet I_set(const AlphaIndex& a, Degree level) const { return level_set(a, level, true); }
    LevelSet H_set(const AlphaIndex& a, Degree level) const { return level_set(a, level, false); }

    /// Every alpha with ||q|| <= e^t whose I_t can be nonempty: if deg p
    /// exceeds sup_V deg(f.q + theta) then |F_alpha| = |p| >= 1 on V.
    std::vector<AlphaIndex> alphas() const {
        const Field& F = cfg_.f.field;
        const auto qs = detail::polys_upto(F, cfg_.t);
        double count = 1;
        for (std::size_t i = 0; i < n(); ++i) count *= static_cast<double>(qs.size());
        if (count > cfg_.alpha_budget) throw BudgetExceeded("q-vector enumeration exceeds the budget");
        const bool dedup = cfg_.theta.is_known_zero();
        std::vector<AlphaIndex> out;
        std::vector<std::size_t> pick(n(), 0);
        std::map<Degree, std::vector<Poly>> pcache;
        while (true) {
            std::size_t i = 0;
            while (i < n() && pick[i] == qs.size() - 1) pick[i++] = 0;
            if (i == n()) break;
            ++pick[i];
            AlphaIndex a{Poly(F), {}};
            for (auto k : pick) a.q.push_back(qs[k]);
            if (dedup) {
                const auto first = std::find_if(a.q.begin(), a.q.end(), [](const Poly& x) { return !x.is_zero(); });
                if (first->lead() != 1) continue;
            }
            Degree sup = kNegInf;
            for (const auto& [v, ex] : table(a, true)) sup = std::max(sup, v);
            const Degree pdeg = std::max<Degree>(sup, -1);
            auto it = pcache.find(pdeg);
            if (it == pcache.end()) it = pcache.emplace(pdeg, detail::polys_upto(F, pdeg)).first;
            if (static_cast<double>(out.size() + it->second.size()) > cfg_.alpha_budget)
                throw BudgetExceeded("alpha enumeration exceeds the budget");
            for (const auto& p : it->second) out.push_back({p, a.q});
        }
        return out;
    }

   private:
    SetFamilyConfig cfg_;
    CylinderSet grid_;
    CylinderSet vmask_{cfg_.f.field, cfg_.f.d, cfg_.N};
    std::size_t lo_ = 0, hi_ = 0;
    std::vector<LaurentVec> vals_;
    std::vector<std::vector<Degree>> bounds_;
};

inline std::vector<AlphaIndex> enum_alphas(const SetFamilyConfig& cfg) { return SetFamily(cfg).alphas(); }

inline LevelSet build_I_set(const SetFamilyConfig& cfg, const AlphaIndex& a) {
    SetFamily fam(cfg);
    return fam.I_set(a, fam.level(cfg.omega));
}

inline LevelSet build_H_set(const SetFamilyConfig& cfg, const AlphaIndex& a) {
    SetFamily fam(cfg);
    return fam.H_set(a, fam.level(cfg.omega));
}

struct IntersectionReport {
    Degree level = 0;
    std::size_t alphas = 0;
    std::size_t pairs = 0;
    std::size_t nonempty_pairs = 0;
    std::size_t same_q_pairs = 0;
    std::size_t undecided_cells = 0;
    std::vector<SetViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// I_t(a, psi) & I_t(a', psi) inside H_t(a - a', psi) for every distinct pair, cellwise.
inline IntersectionReport verify_intersection(const SetFamilyConfig& cfg) {
    const SetFamily fam(cfg);
    IntersectionReport rep;
    rep.level = fam.level(cfg.omega);
    const auto as = fam.alphas();
    rep.alphas = as.size();
    std::vector<CylinderSet> I;
    for (const auto& a : as) I.push_back(fam.I_set(a, rep.level).members);
    for (std::size_t i = 0; i < as.size(); ++i) {
        if (I[i].empty()) {
            rep.pairs += as.size() - i - 1;
            continue;
        }
        for (std::size_t j = i + 1; j < as.size(); ++j) {
            ++rep.pairs;
            const bool same_q = as[i].q == as[j].q;
            rep.same_q_pairs += same_q;
            const CylinderSet meet = I[i] & I[j];
            if (meet.empty()) continue;
            ++rep.nonempty_pairs;
            const std::string tag = format_alpha(as[i]) + " & " + format_alpha(as[j]);
            if (same_q) {
                for (std::size_t c = 0; c < meet.cells(); ++c)
                    if (meet.contains(c)) {
                        rep.violations.push_back({tag + ": same q, distinct p, nonempty intersection", c,
                                                  detail::cell_word(fam.grid(), c)});
                        break;
                    }
                continue;
            }
            const LevelSet H = fam.H_set(as[i] - as[j], rep.level);
            rep.undecided_cells += (meet & H.undecided).count();
            const CylinderSet bad = meet - H.members - H.undecided;
            for (std::size_t c = 0; c < bad.cells(); ++c)
                if (bad.contains(c)) rep.violations.push_back({tag + ": cell outside H", c, detail::cell_word(fam.grid(), c)});
        }
    }
    return rep;
}

struct ContractionBall {
    std::size_t alpha = 0;
    BallSpec ball;
    std::size_t cells_5B = 0;     // cells of 5B inside V
    std::size_t cells_5B_I = 0;   // of those, certainly in I_t(alpha, psi_w)
    std::size_t undecided_5B = 0; // of those, undecided
    Rational ratio;               // mu(5B & I) / mu(5B)
    bool holds = false;           // against q^d C / e^{...}
    bool holds_five = false;      // against 5^n C / e^{...}
    bool boundary_witnessed = true;
    double margin = 0;
};

struct ContractionAlpha {
    AlphaIndex alpha;
    bool subset_ok = true;
    bool empty = false;
    std::size_t balls = 0;
    bool inter1 = true, inter2 = true, inter3 = true;
};

struct ContractionReport {
    Degree level_omega = 0;
    Degree level_plus = 0;
    QPow k_t;
    QPow k_t_five;
    QPow summability_ratio;
    bool summable = false;
    std::size_t subset_failures = 0;
    std::size_t undecided = 0;
    std::vector<ContractionAlpha> alphas;
    std::vector<ContractionBall> balls;
    std::vector<SetViolation> violations;
    bool ok() const { return violations.empty() && subset_failures == 0 && summable; }
};

/// Builds C_{t,alpha} by growing value-group balls around the cells of
/// I_t(alpha, psi_w(t)) inside I_t(alpha, psi_{(w+1)/2}(t)) and checks
/// covering, containment and mu(5B & I) <= k_t mu(5B).
inline ContractionReport verify_contraction(const SetFamilyConfig& cfg) {
    const SetFamily fam(cfg);
    const Field& F = cfg.f.field;
    const unsigned q = F->q();
    const std::size_t n = fam.n(), d = cfg.f.d;
    ContractionReport rep;
    rep.level_omega = fam.level(cfg.omega);
    rep.level_plus = fam.level((cfg.omega + 1) / 2);
    const Rational decay = -cfg.alpha0 * (cfg.omega - 1) * static_cast<long long>(n) * cfg.t / 2;
    BigInt qd = 1, five_n = 1;
    for (std::size_t i = 0; i < d; ++i) qd *= q;
    for (std::size_t i = 0; i < n; ++i) five_n *= 5;
    rep.k_t = QPow{q, Rational(qd) * cfg.C, decay};
    rep.k_t_five = QPow{q, Rational(five_n) * cfg.C, decay};
    rep.summability_ratio = QPow{q, 1, -cfg.alpha0 * (cfg.omega - 1) * static_cast<long long>(n) / 2};
    rep.summable = rep.summability_ratio < QPow::one(q);

    const CylinderSet& grid = fam.grid();
    const Degree rV = std::min<Degree>(cfg.V.radius_exp, 0);
    auto block_of = [&](Degree r) {
        std::size_t b = 1;
        for (Degree s = 0; s < (cfg.N + r) * static_cast<Degree>(d); ++s) b *= q;
        return b;
    };
    const auto [vlo, vhi] = grid.ball_range(cfg.V);
    const auto as = fam.alphas();
    for (std::size_t ai = 0; ai < as.size(); ++ai) {
        ContractionAlpha ca{as[ai]};
        const LevelSet Iw = fam.I_set(as[ai], rep.level_omega);
        const LevelSet Ip = fam.I_set(as[ai], rep.level_plus);
        const std::string tag = format_alpha(as[ai]);
        if ((fam.V() - Ip.members - Ip.undecided).empty()) {
            ca.subset_ok = false;
            ++rep.subset_failures;
            rep.alphas.push_back(std::move(ca));
            continue;
        }
        if (Iw.members.empty()) {
            ca.empty = true;
            rep.alphas.push_back(std::move(ca));
            continue;
        }
        // prefix counts over the whole grid
        std::vector<std::size_t> inP(grid.cells() + 1, 0), inW(grid.cells() + 1, 0), undW(grid.cells() + 1, 0),
            outP(grid.cells() + 1, 0);
        for (std::size_t c = 0; c < grid.cells(); ++c) {
            inP[c + 1] = inP[c] + Ip.members.contains(c);
            inW[c + 1] = inW[c] + Iw.members.contains(c);
            undW[c + 1] = undW[c] + Iw.undecided.contains(c);
            outP[c + 1] = outP[c] + (fam.V().contains(c) && !Ip.members.contains(c) && !Ip.undecided.contains(c));
        }
        std::set<std::pair<std::size_t, Degree>> seen;
        CylinderSet cover(F, d, cfg.N);
        for (std::size_t x = vlo; x < vhi; ++x) {
            if (!Iw.members.contains(x)) continue;
            Degree r = -cfg.N;
            auto range = [&](Degree rr) {
                if (rr >= rV) return std::pair<std::size_t, std::size_t>{vlo, vhi};
                const std::size_t b = block_of(rr);
                return std::pair<std::size_t, std::size_t>{x / b * b, x / b * b + b};
            };
            while (r < rV) {
                const auto [a, b] = range(r + 1);
                if (inP[b] - inP[a] != b - a) break;
                ++r;
            }
            const auto [blo, bhi] = range(r);
            if (!seen.insert({blo, r}).second) continue;
            for (std::size_t c = blo; c < bhi; ++c) cover.insert(c);
            // 5B is one value-group step larger; outside V it contains V
            const auto [flo, fhi] = r + 1 > rV ? std::pair<std::size_t, std::size_t>{vlo, vhi} : range(r + 1);
            ContractionBall cb;
            cb.alpha = ai;
            cb.ball = {grid.center(blo), r};
            cb.cells_5B = fhi - flo;
            cb.cells_5B_I = inW[fhi] - inW[flo];
            cb.undecided_5B = undW[fhi] - undW[flo];
            cb.boundary_witnessed = outP[fhi] - outP[flo] > 0;
            if (!cb.boundary_witnessed) ++rep.undecided;
            const std::size_t worst = cb.cells_5B_I + cb.undecided_5B;
            cb.ratio = Rational(BigInt(cb.cells_5B_I), BigInt(cb.cells_5B));
            const QPow hi{q, Rational(BigInt(worst), BigInt(cb.cells_5B)), 0};
            cb.holds = hi <= rep.k_t;
            cb.holds_five = hi <= rep.k_t_five;
            if (cb.undecided_5B && !cb.holds && QPow{q, cb.ratio, 0} <= rep.k_t) ++rep.undecided;
            cb.margin = rep.k_t.approx() - static_cast<double>(cb.ratio);
            if (!cb.holds) {
                ca.inter3 = false;
                rep.violations.push_back({tag + ": mu(5B & I) > k_t mu(5B)", blo, detail::cell_word(grid, blo)});
            }
            ++ca.balls;
            rep.balls.push_back(std::move(cb));
        }
        const CylinderSet uncovered = Iw.members - cover;
        const CylinderSet outside = cover - Ip.members;
        ca.inter1 = uncovered.empty();
        ca.inter2 = outside.empty();
        if (!ca.inter1) rep.violations.push_back({tag + ": I_t not covered", 0, ""});
        if (!ca.inter2) rep.violations.push_back({tag + ": ball leaves I_t(psi+)", 0, ""});
        rep.alphas.push_back(std::move(ca));
    }
    return rep;
}

enum class CheckStatus { Holds, Violated, Inconclusive };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Holds:
            return "holds";
        case CheckStatus::Violated:
            return "violated";
        default:
            return "inconclusive";
    }
}

/// lhs >= rhs - tol on the extended rationals.
inline CheckStatus compare_at_least(const std::optional<ExtRational>& lhs, const std::optional<ExtRational>& rhs,
                                    const Rational& tol) {
    if (!lhs || !rhs) return CheckStatus::Inconclusive;
    if (!*lhs) return CheckStatus::Holds;
    if (!*rhs) return CheckStatus::Violated;
    return **lhs >= **rhs - tol ? CheckStatus::Holds : CheckStatus::Violated;
}

inline ExtRational ext_reciprocal(const ExtRational& x) {
    if (!x) return Rational(0);
    if (*x == 0) return std::nullopt;
    return 1 / *x;
}

inline std::optional<ExponentEstimate> try_estimate(const LaurentMat& X, const std::optional<LaurentVec>& theta,
                                                    int tau_max) {
    try {
        return omega_estimate(best_profile(X, theta, tau_max));
    } catch (const AllFlagged&) {
        return std::nullopt;
    } catch (const PrecisionExhausted&) {
        return std::nullopt;
    }
}

struct BZReport {
    std::optional<ExponentEstimate> X_theta;
    std::optional<ExponentEstimate> Xt;
    /// omega(X, theta) >= 1 / hat-omega(X^t)
    CheckStatus first = CheckStatus::Inconclusive;
    /// hat-omega(X, theta) >= 1 / omega(X^t)
    CheckStatus second = CheckStatus::Inconclusive;
    /// omega(X, theta) >= hat-omega(X, theta)
    CheckStatus trivial = CheckStatus::Inconclusive;
    Rational tol;
    bool violated() const {
        return first == CheckStatus::Violated || second == CheckStatus::Violated || trivial == CheckStatus::Violated;
    }
};

/// Default slack for comparing finite-horizon estimates: 2 / tau_min with
/// tau_min = max(1, tau_max / 2).
inline Rational default_tolerance(int tau_max) { return Rational(2, std::max(1, tau_max / 2)); }

inline BZReport check_bz(const LaurentMat& X, const LaurentVec& theta, int tau_max,
                         std::optional<Rational> tol = std::nullopt) {
    if (theta.size() != X.rows) throw InvalidArgument("theta length must equal the number of rows");
    BZReport r;
    r.tol = tol.value_or(default_tolerance(tau_max));
    r.X_theta = try_estimate(X, theta, tau_max);
    r.Xt = try_estimate(X.transposed(), std::nullopt, tau_max);
    auto lower = [](const std::optional<ExponentEstimate>& e) -> std::optional<ExtRational> {
        if (!e) return std::nullopt;
        return e->omega_lower;
    };
    auto window = [](const std::optional<ExponentEstimate>& e) -> std::optional<ExtRational> {
        if (!e || !e->omega_hat_window) return std::nullopt;
        return *e->omega_hat_window;
    };
    auto recip = [](const std::optional<ExtRational>& x) -> std::optional<ExtRational> {
        if (!x) return std::nullopt;
        return ext_reciprocal(*x);
    };
    r.first = compare_at_least(lower(r.X_theta), recip(window(r.Xt)), r.tol);
    r.second = compare_at_least(window(r.X_theta), recip(lower(r.Xt)), r.tol);
    r.trivial = compare_at_least(lower(r.X_theta), window(r.X_theta), 0);
    return r;
}

enum class SideClass { One, NotOne, Undetermined };

inline const char* to_string(SideClass c) {
    switch (c) {
        case SideClass::One:
            return "one";
        case SideClass::NotOne:
            return "not_one";
        default:
            return "undetermined";
    }
}

/// One side of the Dyson check, read at tau_max. A flagged entry still
/// bounds the ratio from below, which can certify NotOne.
struct DysonSide {
    std::optional<ExponentEstimate> est;
    std::optional<ExtRational> ratio_end;  // at tau_max, unflagged
    std::optional<Rational> lower_end;     // at tau_max, flagged: ratio >= this
    Rational tol_one;
    Rational tol_far;
    SideClass cls = SideClass::Undetermined;
};

struct DysonReport {
    DysonSide y;   // y as a linear form (1 x n)
    DysonSide yt;  // transpose (n x 1), simultaneous
    CheckStatus biconditional = CheckStatus::Inconclusive;
    CheckStatus trivial = CheckStatus::Inconclusive;
};

/// Slack of `granules` steps of the ratio m(-L)/(n tau) at tau_max.
inline Rational granule_tolerance(std::size_t m, std::size_t n, int tau_max, int granules = 3) {
    return Rational(BigInt(granules) * static_cast<long long>(m), BigInt(static_cast<long long>(n)) * tau_max);
}

namespace detail {

inline DysonSide dyson_side(const LaurentMat& X, int tau_max) {
    DysonSide s;
    s.tol_one = granule_tolerance(X.rows, X.cols, tau_max);
    s.tol_far = s.tol_one + Rational(1, 2);
    BestProfile prof;
    try {
        prof = best_profile(X, std::nullopt, tau_max);
    } catch (const PrecisionExhausted&) {
        return s;
    }
    try {
        s.est = omega_estimate(prof);
    } catch (const AllFlagged&) {
    }
    const ProfileEntry& e = prof.entries.back();
    if (e.exact) {
        s.ratio_end = profile_ratio(e, prof.m, prof.n);
        const ExtRational& r = *s.ratio_end;
        if (!r || *r > 1 + s.tol_far) s.cls = SideClass::NotOne;
        else if (*r <= 1 + s.tol_one) s.cls = SideClass::One;
    } else {
        s.lower_end = *profile_ratio(e, prof.m, prof.n);
        if (*s.lower_end > 1 + s.tol_far) s.cls = SideClass::NotOne;
    }
    return s;
}

}  // namespace detail

/// omega(y) = 1 iff omega(^t y) = 1 on the tau_max reading of each side:
/// One within tol_one of 1, NotOne beyond tol_far, Undetermined between.
inline DysonReport check_dyson(const LaurentVec& y, int tau_max) {
    DysonReport r;
    const LaurentMat row = LaurentMat::from_rows({y});
    r.y = detail::dyson_side(row, tau_max);
    r.yt = detail::dyson_side(row.transposed(), tau_max);
    const auto a = r.y.cls, b = r.yt.cls;
    if (a != SideClass::Undetermined && b != SideClass::Undetermined)
        r.biconditional = a == b ? CheckStatus::Holds : CheckStatus::Violated;
    for (const auto* side : {&r.y, &r.yt}) {
        if (!side->est || !side->est->omega_hat_window) continue;
        const CheckStatus c = compare_at_least(side->est->omega_lower, *side->est->omega_hat_window, 0);
        if (c == CheckStatus::Violated || r.trivial == CheckStatus::Inconclusive) r.trivial = c;
    }
    return r;
}

}  // namespace ffdioph
