// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "ffdioph/experiment.hpp"
#include "ffdioph/transference.hpp"
#include "support/random.hpp"
#include "support/series.hpp"

using namespace ffdioph;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

LaurentMat random_matrix(const Field& f, std::size_t m, std::size_t n, Degree lead, std::size_t len, bool exact,
                         std::mt19937_64& rng) {
    LaurentMat Y{m, n, {}};
    for (std::size_t i = 0; i < m * n; ++i) Y.entries.push_back(gen::random_laurent(f, lead, len, exact, rng));
    return Y;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// ------------------------------------------------------------------------ 1

Outcome dirichlet_solvability() {
    std::mt19937_64 rng(1001);
    std::size_t total = 0, valid = 0;
    for (unsigned q : {2u, 3u}) {
        const Field F = make_field(q);
        for (std::size_t m = 1; m <= 3; ++m)
            for (std::size_t n = 1; n <= 3; ++n)
                for (int it = 0; it < 1000; ++it) {
                    std::vector<Degree> t(m + n);
                    Degree sp = 0, sq = 0;
                    do {
                        for (auto& x : t) x = static_cast<Degree>(rng() % 6);
                        sp = sq = 0;
                        for (std::size_t i = 0; i < m; ++i) sp += t[i];
                        for (std::size_t j = 0; j < n; ++j) sq += t[m + j];
                    } while (sp != sq);
                    const Degree mp = *std::max_element(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(m));
                    const Degree lead = static_cast<Degree>(rng() % 3) - 1;
                    const auto len = static_cast<std::size_t>(lead + mp + sq + 3);
                    const DirichletInstance inst{random_matrix(F, m, n, lead, len, rng() % 2, rng), t};
                    const ApproxSolution s = dirichlet_solve(inst);
                    ++total;
                    // re-evaluate from p, q alone
                    bool ok = s.q.size() == n && s.p.size() == m;
                    bool nonzero = false;
                    for (std::size_t j = 0; ok && j < n; ++j) {
                        nonzero |= !s.q[j].is_zero();
                        ok = s.q[j].is_zero() || s.q[j].degree() <= t[m + j];
                    }
                    ok = ok && nonzero;
                    for (std::size_t i = 0; ok && i < m; ++i) {
                        Laurent e = -Laurent::from_poly(s.p[i]);
                        for (std::size_t j = 0; j < n; ++j) e = e + inst.Y.at(i, j) * Laurent::from_poly(s.q[j]);
                        ok = e.degree_at_most(-t[i] - 1) == std::optional<bool>(true);
                    }
                    valid += ok;
                }
    }
    return {valid == total, fmt("%zu/%zu solutions satisfy the system", valid, total)};
}

// ------------------------------------------------------------------------ 2

Outcome lattice_vs_brute() {
    std::mt19937_64 rng(2002);
    const Field F = make_field(2);
    std::size_t mismatches = 0, cases = 0;
    for (int mode = 0; mode < 2; ++mode)
        for (int it = 0; it < 100; ++it) {
            const std::size_t n = 1 + it % 2, m = 1 + (it / 2) % 2;
            const int tau_max = 5;
            const LaurentMat Y = random_matrix(F, m, n, -1, 24, true, rng);
            std::optional<LaurentVec> th;
            if (mode == 1) {
                th.emplace();
                for (std::size_t i = 0; i < m; ++i)
                    th->push_back(gen::random_laurent(F, static_cast<Degree>(rng() % 3) - 1, 16, true, rng));
            }
            const BestProfile lat = best_profile(Y, th, tau_max);
            const BestProfile bf = brute_force_profile(Y, th, tau_max, tau_max + 1);
            ++cases;
            for (int tau = 1; tau <= tau_max; ++tau)
                if (lat.entries[tau - 1].L != bf.entries[tau - 1].L || !lat.entries[tau - 1].exact) {
                    ++mismatches;
                    break;
                }
        }
    return {mismatches == 0, fmt("%zu mismatches in %zu profiles (100 homogeneous, 100 inhomogeneous)", mismatches, cases)};
}

// ------------------------------------------------------------------------ 3

Outcome continued_fractions() {
    std::mt19937_64 rng(3003);
    std::size_t identities = 0, failures = 0, recon_fail = 0;
    Degree worst_gap = 0;
    for (int it = 0; it < 100; ++it) {
        const Field F = make_field(it % 2 ? 3 : 2);
        const Degree lead = -static_cast<Degree>(rng() % 3) + 1;
        const Laurent y = gen::random_laurent(F, lead, static_cast<std::size_t>(lead + 81), false, rng);
        const CFExpansion cf = cf_expand(y, 500);
        const std::size_t K = cf.a.size() - 1;
        for (std::size_t k = 0; k < cf.err_deg.size(); ++k) {
            const Laurent e = Laurent::from_poly(cf.q[k]) * y - Laurent::from_poly(cf.p[k]);
            Degree d;
            try {
                d = e.degree();
            } catch (const AmbiguousZero&) {
                ++failures;
                continue;
            }
            if (d != cf.err_deg[k]) ++failures;
            if (k < K) {
                ++identities;
                if (d != -cf.q[k + 1].degree()) ++failures;
            }
        }
        RatFn r(cf.a[K]);
        for (std::size_t k = K; k-- > 0;) r = RatFn(cf.a[k]) + RatFn(Poly::one(F)) / r;
        if (!(r == RatFn(cf.p[K], cf.q[K]))) ++recon_fail;
        const Laurent diff = y - laurent_from_rational(r, y.precision_floor() - 1).value.truncated(y.precision_floor());
        try {
            const Degree dd = diff.degree();
            if (dd != cf.err_deg[K] - cf.q[K].degree() || dd >= -2 * cf.q[K].degree()) ++recon_fail;
            worst_gap = std::max(worst_gap, dd - y.precision_floor());
        } catch (const AmbiguousZero&) {
            // agrees at every known coefficient
        }
    }
    return {failures == 0 && recon_fail == 0,
            fmt("%zu identities checked, %zu failures, %zu reconstruction failures, agreement within %lld of the floor",
                identities, failures, recon_fail, static_cast<long long>(worst_gap))};
}

// ------------------------------------------------------------------------ 4

Outcome exponent_sanity() {
    std::string detail;
    bool ok = true;
    {
        const Field F = make_field(2);
        const Laurent y = gen::quadratic_root(F, -100);
        const BestProfile prof = best_profile(LaurentMat{1, 1, {y}}, std::nullopt, 40);
        bool all = true;
        for (const auto& e : prof.entries) {
            all &= e.exact && e.L == -e.tau;
            all &= profile_ratio(e, 1, 1) == ExtRational(Rational(1));
        }
        const auto est = omega_estimate(prof);
        all &= est.omega_lower == ExtRational(Rational(1));
        ok &= all;
        detail += fmt("(a) L(tau) = -tau for tau <= 40: %s", all ? "yes" : "no");
    }
    {
        const Field F = make_field(3);
        const Laurent y = parse_laurent("T^-1 + 2*T^-3 + T^-7", F);
        const auto est = omega_estimate(best_profile(LaurentMat{1, 1, {y}}, std::nullopt, 12));
        const bool inf = !est.omega_lower.has_value();
        ok &= inf;
        detail += fmt("; (b) rational omega = %s", format_ext(est.omega_lower).c_str());
    }
    {
        const Field F = make_field(2);
        const Laurent y = gen::liouville(F, 5).truncated(-130);
        const BestProfile prof = best_profile(LaurentMat{1, 1, {y}}, std::nullopt, 25);
        const auto est = omega_estimate(prof);
        const bool big = !ext_less(est.omega_lower, Rational(3));
        ok &= big;
        detail += fmt("; (c) Liouville omega_lower = %s by tau = 25", format_ext(est.omega_lower).c_str());
    }
    return {ok, detail};
}

// ------------------------------------------------------------------------ 5

Outcome extremality() {
    bool ok = true;
    std::string detail;
    for (std::size_t n : {2u, 3u})
        for (const char* theta : {"0", "T^-1+T^-5"}) {
            ExperimentConfig c;
            c.q = 2;
            c.n = n;
            c.theta = theta;
            c.samples = 200;
            c.digits = 60;
            c.tau_max = 20;
            c.seed = 42;
            const auto rep = run_extremal(c);
            const Rational m10 = rep.quantiles[9].median, m15 = rep.quantiles[14].median, m20 = rep.quantiles[19].median;
            const std::size_t excluded = rep.infinite + rep.precision_excluded;
            const bool band = m20 >= 1 && m20 <= Rational(115, 100);
            const bool mono = m15 <= m10 && m20 <= m15;
            const bool few = excluded * 20 < c.samples;
            ok &= band && mono && few;
            if (!detail.empty()) detail += "; ";
            detail += fmt("n=%zu theta=%s medians %s %s %s excluded %zu", n, theta, format_rational(m10).c_str(),
                          format_rational(m15).c_str(), format_rational(m20).c_str(), excluded);
        }
    return {ok, detail};
}

// ------------------------------------------------------------------------ 6

Outcome transference() {
    std::mt19937_64 rng(6006);
    const int tau_max = 20;
    std::size_t bz_viol = 0, dy_viol = 0, triv_viol = 0, dy_decided = 0;
    for (int it = 0; it < 50; ++it) {
        const Field F = make_field(it % 2 ? 3 : 2);
        const std::size_t m = 1 + rng() % 2, n = 1 + rng() % 2;
        const auto len = static_cast<std::size_t>((std::max(m, n) + 1) * tau_max + 10);
        const LaurentMat X = random_matrix(F, m, n, -1, len, true, rng);
        LaurentVec th;
        for (std::size_t i = 0; i < m; ++i) th.push_back(gen::random_laurent(F, -1, len, true, rng));
        const BZReport r = check_bz(X, th, tau_max);
        bz_viol += r.first == CheckStatus::Violated || r.second == CheckStatus::Violated;
        triv_viol += r.trivial == CheckStatus::Violated;
    }
    for (int it = 0; it < 50; ++it) {
        const Field F = make_field(it % 2 ? 3 : 2);
        const std::size_t n = 2 + rng() % 2;
        LaurentVec y;
        for (std::size_t j = 0; j < n; ++j) y.push_back(gen::random_laurent(F, -1, (n + 1) * tau_max + 10, true, rng));
        const DysonReport d = check_dyson(y, tau_max);
        dy_viol += d.biconditional == CheckStatus::Violated;
        triv_viol += d.trivial == CheckStatus::Violated;
        dy_decided += d.biconditional != CheckStatus::Inconclusive;
    }
    return {bz_viol == 0 && dy_viol == 0 && triv_viol == 0,
            fmt("violations: inhomogeneous %zu/50, Dyson %zu/50 (%zu decided), omega >= hat-omega %zu", bz_viol, dy_viol,
                dy_decided, triv_viol)};
}

// ------------------------------------------------------------------------ 7

SetFamilyConfig set_config(std::size_t n, int t, int N) {
    const Field f = make_field(2);
    SetFamilyConfig c(PolyMap::veronese(f, n), {LaurentVec(1, Laurent(f)), -1}, Laurent(f));
    c.omega = 2;
    c.t = t;
    c.N = N;
    return c;
}

Outcome intersection() {
    bool ok = true;
    std::string detail;
    const std::tuple<std::size_t, int, int> cfgs[] = {{1, 1, 8}, {1, 2, 8}, {2, 1, 6}};
    for (const auto& [n, t, N] : cfgs) {
        const IntersectionReport r = verify_intersection(set_config(n, t, N));
        ok &= r.ok() && r.undecided_cells == 0;
        if (!detail.empty()) detail += "; ";
        detail += fmt("n=%zu t=%d N=%d: %zu pairs, %zu violations", n, t, N, r.pairs, r.violations.size());
    }
    return {ok, detail};
}

// ------------------------------------------------------------------------ 8

Outcome contraction() {
    const Field f = make_field(2);
    const MPoly x = MPoly::variable(f, 1, 0);
    // alpha in units of ln q: alpha_0 = 1 is ln 2
    const Rational alpha0 = 1;
    const GoodReport g = good_constants(x, {{Laurent(f)}, 0}, 10, alpha0, {4, std::nullopt, kDefaultCellBudget});
    const bool measured = g.c_min == QPow::one(2) && !g.inconclusive;
    const GoodReport g_more = good_constants(x, {{Laurent(f)}, 0}, 10, alpha0 + Rational(1, 10));
    const bool sharp = QPow::one(2) < g_more.c_min;
    bool ok = measured && sharp;
    std::string detail = fmt("C = %s, alpha_0 = %s ln 2 (C at alpha_0 + 1/10: %s)", g.c_min.str().c_str(),
                             format_rational(alpha0).c_str(), g_more.c_min.str().c_str());
    for (int t : {2, 3, 4}) {
        SetFamilyConfig c = set_config(1, t, 2 * t + 6);
        c.C = g.c_min.coef;
        c.alpha0 = alpha0;
        const ContractionReport r = verify_contraction(c);
        double worst = 1e300;
        bool margins = true;
        for (const auto& b : r.balls) {
            worst = std::min(worst, b.margin);
            margins &= b.margin >= 0 && b.holds;
        }
        bool inter3 = true;
        for (const auto& a : r.alphas) inter3 &= a.inter3;
        const bool step = r.ok() && margins && inter3 && r.summable && r.summability_ratio < QPow::one(2);
        ok &= step;
        detail += fmt("; t=%d: %zu balls, min margin %.3f, ratio %s", t, r.balls.size(), r.balls.empty() ? 0.0 : worst,
                      r.summability_ratio.str().c_str());
    }
    return {ok, detail};
}

// ------------------------------------------------------------------------ 9

Outcome algebra_properties() {
    std::mt19937_64 rng(9009);
    constexpr int kCases = 10000;
    std::size_t ultra = 0, mult = 0, axioms = 0, popov = 0, degsum = 0;
    const unsigned qs[] = {2, 3, 4, 5, 7, 8, 9, 11};
    for (int i = 0; i < kCases; ++i) {
        const Field F = i % 8 == 7 ? make_field(2, {1, 1, 0, 0, 1}) : make_field(qs[i % 8]);
        const auto lead = [&] { return static_cast<Degree>(rng() % 9) - 4; };
        const Laurent a = gen::random_laurent(F, lead(), 1 + rng() % 12, true, rng);
        const Laurent b = gen::random_laurent(F, lead(), 1 + rng() % 12, true, rng);
        const Laurent s = a + b;
        const Degree top = std::max(a.degree(), b.degree());
        // strict when the degrees differ
        if (s.is_known_zero())
            ultra += a.degree() == b.degree();
        else
            ultra += s.degree() <= top && (a.degree() == b.degree() || s.degree() == top);
        mult += (a * b).degree() == a.degree() + b.degree();

        const GaloisField& G = *F;
        const Elem x = gen::random_elem(G, rng), y = gen::random_elem(G, rng), z = gen::random_elem(G, rng);
        bool ax = G.add(G.add(x, y), z) == G.add(x, G.add(y, z)) && G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z)) &&
                  G.add(x, y) == G.add(y, x) && G.mul(x, y) == G.mul(y, x) &&
                  G.mul(x, G.add(y, z)) == G.add(G.mul(x, y), G.mul(x, z)) && G.add(x, 0) == x && G.mul(x, 1) == x &&
                  G.add(x, G.neg(x)) == 0;
        if (x != 0) ax = ax && G.mul(x, G.inv(x)) == 1;
        axioms += ax;
    }
    for (int i = 0; i < kCases; ++i) {
        const Field F = make_field(qs[i % 4]);
        const std::size_t k = 2 + rng() % 3;
        PolyMat M(F, k, k);
        Poly det(F);
        do {
            for (auto& e : M.entries) e = gen::random_poly_upto(F, static_cast<int>(rng() % 5), rng);
            det = determinant(M);
        } while (det.is_zero());
        Shift s(k);
        for (auto& v : s) v = static_cast<Degree>(rng() % 5) - 2;
        const ReducedBasis b = weak_popov(M, s);
        const Shift eff = effective_shift(M, s);
        bool inv = b.U && *b.U * M == b.R && determinant(*b.U).degree() == 0;
        std::vector<bool> seen(k, false);
        Degree total = 0, shift_sum = 0;
        for (std::size_t r = 0; r < k; ++r) {
            const auto rd = shifted_row_degree(b.R, r, eff);
            inv = inv && rd.deg == b.pivots[r].deg && rd.col == b.pivots[r].col && !seen[rd.col];
            if (rd.col < k) seen[rd.col] = true;
            total += rd.deg;
            shift_sum += eff[r];
        }
        popov += inv;
        degsum += total == det.degree() + shift_sum;
    }
    const bool ok = ultra == kCases && mult == kCases && axioms == kCases && popov == kCases && degsum == kCases;
    return {ok, fmt("ultrametric %zu, multiplicativity %zu, field axioms %zu, weak Popov invariants %zu, degree-sum %zu "
                    "(of %d each)",
                    ultra, mult, axioms, popov, degsum, kCases)};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"dirichlet solvability", dirichlet_solvability},
        {"lattice profile equals brute force", lattice_vs_brute},
        {"continued fractions", continued_fractions},
        {"exponent sanity", exponent_sanity},
        {"extremality monte carlo", extremality},
        {"transference inequalities", transference},
        {"intersection property", intersection},
        {"contraction property", contraction},
        {"algebra properties", algebra_properties},
    };
    int failed = 0, idx = 0;
    for (const auto& [name, fn] : criteria) {
        ++idx;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", idx, name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
