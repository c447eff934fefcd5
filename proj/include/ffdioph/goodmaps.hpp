#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ffdioph/cylinder.hpp"
#include "ffdioph/mpoly.hpp"
#include "ffdioph/polymat.hpp"

namespace ffdioph {

/// Per-cell degree of |F| on the cells of resolution N. An exact cell has
/// deg F constant on the whole cell; an ambiguous one only carries an upper
/// bound valid on the cell.
struct CellTable {
    Field field;
    std::size_t d = 1;
    int N = 1;
    std::vector<Degree> value;
    std::vector<std::uint8_t> exact;

    std::size_t cells() const { return value.size(); }
    std::size_t ambiguous() const {
        return static_cast<std::size_t>(std::count(exact.begin(), exact.end(), std::uint8_t{0}));
    }
};

inline constexpr double kDefaultCellBudget = 1e7;

namespace detail {

inline bool binom_nonzero_mod_p(unsigned n, unsigned k, unsigned p) {
    while (n || k) {
        if (k % p > n % p) return false;
        n /= p, k /= p;
    }
    return true;
}

/// Sub-multi-indices 0 != k <= e with nonzero multinomial coefficient mod p.
inline std::vector<std::vector<unsigned>> live_shifts(const std::vector<unsigned>& e, unsigned p) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> k(e.size(), 0);
    while (true) {
        std::size_t i = 0;
        while (i < k.size() && k[i] == e[i]) k[i++] = 0;
        if (i == k.size()) break;
        ++k[i];
        bool live = true;
        for (std::size_t j = 0; j < k.size() && live; ++j) live = binom_nonzero_mod_p(e[j], k[j], p);
        if (live) out.push_back(k);
    }
    return out;
}

inline void check_budget(const Field& f, std::size_t d, int N, double budget) {
    const double cells = std::pow(static_cast<double>(f->q()), static_cast<double>(N) * static_cast<double>(d));
    if (cells > budget) throw BudgetExceeded("q^(N*d) = " + std::to_string(cells) + " cells exceeds the budget");
}

}  // namespace detail

/// Bound on deg(F(c + delta) - F(c)) over deg delta_i <= -N, from the
/// coefficient degrees of F and deg c_i. Binomial terms that vanish mod p are
/// dropped, as are unknown tails of inexact coefficients beyond their floor.
class PerturbationBound {
   public:
    explicit PerturbationBound(const MPoly& F) {
        const unsigned p = F.field()->p();
        for (const auto& m : F.terms())
            terms_.push_back({m.coef.degree_bound(), m.coef.is_exact() ? kNegInf : m.coef.precision_floor() - 1, m.exp,
                              detail::live_shifts(m.exp, p)});
    }

    /// dc[i] = deg c_i (-inf for a zero coordinate).
    Degree operator()(const std::vector<Degree>& dc, int N) const {
        Degree b = kNegInf;
        for (const auto& term : terms_) {
            if (!is_neg_inf(term.unknown)) {
                Degree s = term.unknown;
                for (std::size_t i = 0; i < dc.size(); ++i)
                    s += static_cast<Degree>(term.e[i]) * (is_neg_inf(dc[i]) ? -N : dc[i]);
                b = std::max(b, s);
            }
            if (is_neg_inf(term.coef_deg)) continue;
            for (const auto& k : term.shifts) {
                Degree s = term.coef_deg;
                bool vanish = false;
                for (std::size_t i = 0; i < dc.size() && !vanish; ++i) {
                    const unsigned rest = term.e[i] - k[i];
                    if (rest == 0) continue;
                    if (is_neg_inf(dc[i])) vanish = true;
                    else s += static_cast<Degree>(rest) * dc[i];
                }
                if (vanish) continue;
                for (std::size_t i = 0; i < dc.size(); ++i) s -= static_cast<Degree>(k[i]) * N;
                b = std::max(b, s);
            }
        }
        return b;
    }

   private:
    struct Term {
        Degree coef_deg;
        Degree unknown;
        std::vector<unsigned> e;
        std::vector<std::vector<unsigned>> shifts;
    };
    std::vector<Term> terms_;
};

/// Cell verdict from the value at the center and the perturbation bound.
inline std::pair<Degree, bool> classify_cell(const Laurent& v, Degree bound) {
    if (v.is_resolvable() && (is_neg_inf(bound) || v.degree() > bound)) return {v.degree(), true};
    return {std::max(v.degree_bound(), bound), false};
}

inline std::vector<Degree> center_degrees(const LaurentVec& c) {
    std::vector<Degree> dc;
    for (const auto& x : c) dc.push_back(x.degree_bound());
    return dc;
}

/// Degree table of a single polynomial on every cell of the unit ball.
inline CellTable eval_on_cells(const MPoly& F, int N, double budget = kDefaultCellBudget) {
    detail::check_budget(F.field(), F.dim(), N, budget);
    const CylinderSet grid(F.field(), F.dim(), N);
    const PerturbationBound bound(F);
    CellTable t{F.field(), F.dim(), N, std::vector<Degree>(grid.cells()), std::vector<std::uint8_t>(grid.cells())};
    for (std::size_t idx = 0; idx < grid.cells(); ++idx) {
        const LaurentVec c = grid.center(idx);
        const auto [v, ex] = classify_cell(F.eval(c), bound(center_degrees(c), N));
        t.value[idx] = v;
        t.exact[idx] = ex;
    }
    return t;
}

/// One table per component of f.
inline std::vector<CellTable> eval_map_on_cells(const PolyMap& f, int N, double budget = kDefaultCellBudget) {
    std::vector<CellTable> out;
    for (const auto& c : f.comps) out.push_back(eval_on_cells(c, N, budget));
    return out;
}

/// Cells where deg F <= level, counting ambiguous cells whose bound is <= level.
inline CylinderSet sublevel_set(const CellTable& t, Degree level) {
    CylinderSet s(t.field, t.d, t.N);
    for (std::size_t i = 0; i < t.cells(); ++i)
        if (t.value[i] <= level) s.insert(i);
    return s;
}

/// Cellwise max of |f_i|.
inline CellTable sup_table(const std::vector<CellTable>& ts) {
    if (ts.empty()) throw InvalidArgument("sup of no functions");
    CellTable r = ts.front();
    for (std::size_t i = 0; i < r.cells(); ++i) {
        Degree ex = kNegInf, amb = kNegInf;
        bool any_exact = false, any_amb = false;
        for (const auto& t : ts) {
            if (t.cells() != r.cells()) throw InvalidArgument("cell tables of different shape");
            if (t.exact[i]) ex = std::max(ex, t.value[i]), any_exact = true;
            else amb = std::max(amb, t.value[i]), any_amb = true;
        }
        if (!any_amb) r.value[i] = ex, r.exact[i] = 1;
        else if (any_exact && ex > amb) r.value[i] = ex, r.exact[i] = 1;
        else r.value[i] = std::max(ex, amb), r.exact[i] = 0;
    }
    return r;
}

struct GoodOptions {
    /// Also test the sub-balls of B down to this many value-group steps.
    int sub_depth = 0;
    /// Constant to check; tests above it are listed as violations.
    std::optional<Rational> C;
    double budget = kDefaultCellBudget;
};

/// One (ball, epsilon) pair: epsilon decreasing to e^level against the
/// sup norm e^norm on the ball.
struct GoodTest {
    BallSpec ball;
    Degree norm = 0;
    Degree level = 0;
    std::size_t in_set = 0;
    std::size_t in_ball = 0;
    QPow value;
};

struct GoodReport {
    unsigned q = 2;
    /// alpha in units of ln q.
    Rational alpha;
    QPow c_min;
    std::vector<GoodTest> tests;
    std::vector<GoodTest> violations;
    std::size_t balls_tested = 0;
    std::size_t balls_skipped = 0;
    std::size_t cells = 0;
    std::size_t ambiguous = 0;
    bool inconclusive = false;
};

/// Smallest C with nu{x in B' : |F| < eps} <= C (eps/||F||_{B'})^alpha nu(B')
/// over the tested balls B' and all eps < ||F||_{B'}, from a cell table.
inline GoodReport good_constants(const CellTable& t, const BallSpec& B, const Rational& alpha,
                                 const GoodOptions& opts = {}) {
    if (alpha <= 0) throw InvalidArgument("alpha must be positive");
    const unsigned q = t.field->q();
    GoodReport rep{q, alpha, QPow::zero(q), {}, {}, 0, 0, 0, 0, false};
    const CylinderSet grid(t.field, t.d, t.N);
    const auto [lo, hi] = grid.ball_range(B);
    rep.cells = hi - lo;
    for (std::size_t i = lo; i < hi; ++i) rep.ambiguous += !t.exact[i];
    rep.inconclusive = rep.ambiguous * 100 > rep.cells;

    const Degree r0 = std::min<Degree>(B.radius_exp, 0);
    for (int k = 0; k <= opts.sub_depth && r0 - k >= -t.N; ++k) {
        const Degree r = r0 - k;
        std::size_t block = 1;
        for (Degree s = 0; s < (t.N + r) * static_cast<Degree>(t.d); ++s) block *= q;
        for (std::size_t b0 = lo; b0 < hi; b0 += block) {
            const BallSpec ball{grid.center(b0), r};
            std::vector<Degree> all, amb;
            Degree norm = kNegInf;
            bool any_exact = false;
            for (std::size_t i = b0; i < b0 + block; ++i) {
                all.push_back(t.value[i]);
                if (t.exact[i]) norm = std::max(norm, t.value[i]), any_exact = true;
                else amb.push_back(t.value[i]);
            }
            const Degree amb_max = amb.empty() ? kNegInf : *std::max_element(amb.begin(), amb.end());
            if (!any_exact || is_neg_inf(norm) || amb_max > norm) {
                ++rep.balls_skipped;
                continue;
            }
            ++rep.balls_tested;
            std::sort(all.begin(), all.end());
            std::sort(amb.begin(), amb.end());
            Degree floor_level = norm;
            for (Degree v : all)
                if (!is_neg_inf(v)) floor_level = std::min(floor_level, v);
            for (Degree level = norm - 1; level >= floor_level; --level) {
                const auto in_set = static_cast<std::size_t>(std::upper_bound(all.begin(), all.end(), level) - all.begin());
                const auto amb_out = static_cast<std::size_t>(amb.end() - std::upper_bound(amb.begin(), amb.end(), level));
                const std::size_t in_ball = block - amb_out;
                GoodTest g{ball, norm, level, in_set, in_ball,
                           QPow{q, Rational(BigInt(in_set), BigInt(in_ball)), alpha * (norm - level)}};
                if (rep.c_min < g.value) rep.c_min = g.value;
                if (opts.C && !(g.value <= QPow{q, *opts.C, 0})) rep.violations.push_back(g);
                rep.tests.push_back(std::move(g));
            }
        }
    }
    return rep;
}

inline GoodReport good_constants(const MPoly& F, const BallSpec& B, int N, const Rational& alpha,
                                 const GoodOptions& opts = {}) {
    return good_constants(eval_on_cells(F, N, opts.budget), B, alpha, opts);
}

/// Tests the combination c_0 + sum c_i f_i.
inline GoodReport good_constants(const PolyMap& f, const Laurent& c0, const LaurentVec& c, const BallSpec& B, int N,
                                 const Rational& alpha, const GoodOptions& opts = {}) {
    return good_constants(f.linear_combination(c0, c), B, N, alpha, opts);
}

struct PropertyItem {
    std::string name;
    bool holds = false;
    std::string detail;
};

struct PropertyReport {
    std::vector<PropertyItem> items;
    bool all_hold() const {
        return std::all_of(items.begin(), items.end(), [](const PropertyItem& i) { return i.holds; });
    }
};

struct Relaxation {
    Rational C1 = 1, alpha1 = 1;
    Rational C2 = 2;
    Rational alpha2 = Rational(1, 2);
};

namespace detail {

inline bool same_tests(const GoodReport& a, const GoodReport& b, Degree shift) {
    if (a.tests.size() != b.tests.size()) return false;
    for (std::size_t i = 0; i < a.tests.size(); ++i) {
        const auto &x = a.tests[i], &y = b.tests[i];
        if (x.in_set != y.in_set || x.in_ball != y.in_ball || x.level + shift != y.level || x.norm + shift != y.norm)
            return false;
    }
    return true;
}

}  // namespace detail

/// Re-checks, on measured data, that goodness survives |f| vs unit
/// multiples, scaling by c, finite sups and relaxing (C, alpha).
inline PropertyReport closure_check(const std::vector<MPoly>& fs, const BallSpec& B, int N,
                                          const Rational& alpha, const Laurent& c, const Relaxation& rel = {},
                                          double budget = kDefaultCellBudget) {
    PropertyReport out;
    if (fs.empty()) return out;
    const Field& F = fs.front().field();
    if (!c.is_exact() || c.is_known_zero()) throw InvalidArgument("scaling constant must be exact and nonzero");
    const Degree dc = c.degree();

    std::vector<CellTable> tables;
    std::vector<GoodReport> reps;
    for (const auto& f : fs) {
        tables.push_back(eval_on_cells(f, N, budget));
        reps.push_back(good_constants(tables.back(), B, alpha));
    }

    for (std::size_t i = 0; i < fs.size(); ++i) {
        const std::string tag = "f" + std::to_string(i + 1);
        bool units = true;
        for (unsigned u = 1; u < F->q() && units; ++u) {
            const CellTable tu = eval_on_cells(fs[i].scaled(Laurent::monomial(F, static_cast<Elem>(u), 0)), N, budget);
            units = tu.value == tables[i].value && tu.exact == tables[i].exact;
        }
        out.items.push_back({"(1) unit multiples of " + tag, units, "cell tables of u*f agree for every unit u"});

        const CellTable tc = eval_on_cells(fs[i].scaled(c), N, budget);
        bool shifted = tc.exact == tables[i].exact;
        for (std::size_t k = 0; k < tc.cells() && shifted; ++k)
            shifted = tc.value[k] == deg_add(tables[i].value[k], dc);
        const GoodReport rc = good_constants(tc, B, alpha);
        const bool same_c = rc.c_min == reps[i].c_min && detail::same_tests(reps[i], rc, dc);
        out.items.push_back({"(2) scaling " + tag + " by c", shifted && same_c,
                             "degrees shift by " + std::to_string(dc) + ", C_min " + rc.c_min.str() + " vs " +
                                 reps[i].c_min.str()});

        const GoodReport r1 = good_constants(tables[i], B, rel.alpha1);
        const GoodReport r2 = good_constants(tables[i], B, rel.alpha2);
        const bool premise = r1.c_min <= QPow{F->q(), rel.C1, 0};
        const bool relaxed = rel.C2 >= rel.C1 && rel.alpha2 <= rel.alpha1 && r2.c_min <= QPow{F->q(), rel.C2, 0};
        out.items.push_back({"(5) relaxation for " + tag, !premise || relaxed,
                             "C_min " + r1.c_min.str() + " at alpha1, " + r2.c_min.str() + " at alpha2"});
    }

    if (fs.size() > 1) {
        const CellTable sup = sup_table(tables);
        const GoodReport rs = good_constants(sup, B, alpha);
        QPow worst = QPow::zero(F->q());
        for (const auto& r : reps)
            if (worst <= r.c_min) worst = r.c_min;
        bool inter = true;
        const CylinderSet grid(F, sup.d, N);
        const auto [lo, hi] = grid.ball_range(B);
        Degree top = kNegInf, bottom = 0;
        for (std::size_t k = lo; k < hi; ++k)
            if (!is_neg_inf(sup.value[k])) top = std::max(top, sup.value[k]), bottom = std::min(bottom, sup.value[k]);
        for (Degree level = bottom; level <= top && inter; ++level) {
            CylinderSet meet = CylinderSet::universe(F, sup.d, N);
            for (const auto& t : tables) meet &= sublevel_set(t, level);
            inter = meet == sublevel_set(sup, level);
        }
        out.items.push_back({"(3) sup of all functions", inter && rs.c_min <= worst,
                             "sublevel sets are intersections; C_min " + rs.c_min.str() + " <= " + worst.str()});
    }
    return out;
}

struct NonplanarityResult {
    bool found = false;
    std::vector<LaurentVec> points;
    LaurentMat matrix;
    std::optional<Poly> det;
    std::size_t trials = 0;
};

namespace detail {

inline LaurentVec random_point(const Field& f, const BallSpec& B, int depth, std::mt19937_64& rng) {
    std::uniform_int_distribution<unsigned> dist(0, f->q() - 1);
    const Degree r = B.radius_exp;
    LaurentVec x;
    for (const auto& c : B.center) {
        Laurent head = c.truncated(r + 1);
        std::vector<Elem> tail(static_cast<std::size_t>(depth));
        for (auto& e : tail) e = static_cast<Elem>(dist(rng));
        Laurent low = Laurent::exact(f, r - depth + 1, std::move(tail));
        Laurent h = head.is_exact() ? head : Laurent::exact(f, head.low(), {head.stored().begin(), head.stored().end()});
        x.push_back(h + low);
    }
    return x;
}

}  // namespace detail

/// Looks for n+1 points of B where the rows (1, f(x)) are linearly independent.
inline NonplanarityResult nonplanarity_check(const PolyMap& f, const BallSpec& B, std::size_t trials,
                                             std::uint64_t seed, int depth = 8) {
    for (const auto& c : f.comps)
        if (!c.is_exact()) throw InvalidArgument("nonplanarity needs exact coefficients");
    NonplanarityResult res;
    std::mt19937_64 rng(seed);
    const std::size_t n = f.n();
    for (std::size_t t = 0; t < trials; ++t) {
        res.trials = t + 1;
        std::vector<LaurentVec> pts;
        LaurentMat m{n + 1, n + 1, {}};
        for (std::size_t i = 0; i <= n; ++i) {
            pts.push_back(detail::random_point(f.field, B, depth, rng));
            m.entries.push_back(Laurent::one(f.field));
            for (const auto& v : f.eval(pts.back())) m.entries.push_back(v);
        }
        Poly det = determinant(PolyMat::from_laurent(m, f.field));
        if (!det.is_zero()) {
            res.found = true;
            res.points = std::move(pts);
            res.matrix = std::move(m);
            res.det = std::move(det);
            return res;
        }
    }
    return res;
}

struct DoublingEntry {
    BallSpec ball;
    Rational measure;
    Rational ratio2;
    Rational ratio5;
};

struct DoublingReport {
    std::vector<DoublingEntry> entries;
    Rational D2 = 0;
    Rational D5 = 0;
};

/// nu(2B)/nu(B) and nu(5B)/nu(B) for Haar measure on the unit ball of F^d.
inline DoublingReport doubling_check(const Field& f, const std::vector<BallSpec>& balls, int N) {
    DoublingReport rep;
    for (const auto& b : balls) {
        const Rational m = CylinderSet::ball(f, b, N).measure();
        const Rational m2 = CylinderSet::ball(f, dilate(b, 2), N).measure();
        const Rational m5 = CylinderSet::ball(f, dilate(b, 5), N).measure();
        DoublingEntry e{b, m, m2 / m, m5 / m};
        rep.D2 = std::max(rep.D2, e.ratio2);
        rep.D5 = std::max(rep.D5, e.ratio5);
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

}  // namespace ffdioph
