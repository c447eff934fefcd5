#include <gtest/gtest.h>

#include <map>

#include "ffdioph/experiment.hpp"

using namespace ffdioph;

namespace {

ExperimentConfig small_cfg(std::size_t n, const char* theta, std::size_t samples) {
    ExperimentConfig c;
    c.n = n;
    c.theta = theta;
    c.tau_max = 12;
    c.digits = 40;
    c.samples = samples;
    c.seed = 7;
    return c;
}

}  // namespace

TEST(Config, ParsesAllKeys) {
    const auto c = parse_experiment_config(
        "q = 3\nmap = veronese # comment\nn = 3\nd = 1\ntheta = T^-1 + 2*T^-2\ntau_max = 15\n"
        "precision = -80\nsamples = 10\nseed = 99\nformat = csv\ndigits = 30\n");
    EXPECT_EQ(c.q, 3u);
    EXPECT_EQ(c.n, 3u);
    EXPECT_EQ(c.theta, "T^-1 + 2*T^-2");
    EXPECT_EQ(c.tau_max, 15);
    EXPECT_EQ(c.precision, -80);
    EXPECT_EQ(c.samples, 10u);
    EXPECT_EQ(c.seed, 99u);
    EXPECT_EQ(c.format, "csv");
    EXPECT_EQ(c.digits, 30u);
}

TEST(Config, RejectsBadInput) {
    EXPECT_THROW(parse_experiment_config("q = 2\n"), InvalidArgument);
    EXPECT_THROW(parse_experiment_config("seed = 1\nwidth = 3\n"), InvalidArgument);
    EXPECT_THROW(parse_experiment_config("seed = 1\nq\n"), InvalidArgument);
    EXPECT_THROW(parse_experiment_config("seed = x\n"), InvalidArgument);
}

TEST(Config, PrecisionFloorMustBeDeepEnough) {
    auto c = small_cfg(2, "0", 2);
    c.precision = -(3 * 12 + 7);
    EXPECT_THROW(run_extremal(c), InvalidArgument);
    c.precision = -(3 * 12 + 8);
    EXPECT_NO_THROW(run_extremal(c));
}

TEST(MapFile, ParsesComponents) {
    const PolyMap m = parse_map_file("# comment\nq=3 d=2\nx1 + x2^2\n\n2*x1*x2\n");
    EXPECT_EQ(m.field->q(), 3u);
    EXPECT_EQ(m.d, 2u);
    ASSERT_EQ(m.n(), 2u);
    const LaurentVec x{parse_laurent("T^-1", m.field), parse_laurent("T^-2", m.field)};
    const LaurentVec y = m.eval(x);
    EXPECT_EQ(format_laurent(y[0]), "T^-1 + T^-4");
    EXPECT_EQ(format_laurent(y[1]), "2*T^-3");
    EXPECT_THROW(parse_map_file("x\n"), InvalidArgument);
    EXPECT_THROW(parse_map_file("q=2 d=1\n"), InvalidArgument);
    EXPECT_THROW(parse_map_file("q=2 d=1\nx3\n"), SyntaxError);
}

TEST(Sampling, DeterministicPerIndex) {
    const Field f = make_field(3);
    const auto a = sample_point(f, 2, 30, 5, 17);
    const auto b = sample_point(f, 2, 30, 5, 17);
    const auto c = sample_point(f, 2, 30, 5, 18);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    for (const auto& x : a) {
        EXPECT_TRUE(x.is_exact());
        EXPECT_LT(x.degree(), 0);
        EXPECT_GE(x.low(), -30);
    }
}

TEST(Sampling, DigitsAreUniform) {
    const Field f = make_field(3);
    std::map<unsigned, std::size_t> counts;
    const std::size_t draws = 3000, digits = 10;
    for (std::size_t i = 0; i < draws; ++i) {
        const Laurent x = sample_point(f, 1, digits, 11, i)[0];
        for (Degree k = -1; k >= -static_cast<Degree>(digits); --k) ++counts[x.coeff(k)];
    }
    const double expected = static_cast<double>(draws * digits) / 3.0;
    double chi2 = 0;
    for (unsigned v = 0; v < 3; ++v) {
        const double d = static_cast<double>(counts[v]) - expected;
        chi2 += d * d / expected;
    }
    EXPECT_LT(chi2, 13.8);  // 2 degrees of freedom, p = 0.001
}

TEST(Quantiles, LowerMedianAndNearestRank) {
    std::vector<Rational> v;
    for (int i = 10; i >= 1; --i) v.push_back(Rational(i, 3));
    const auto t = quantiles_of(4, v);
    EXPECT_EQ(t.count, 10u);
    EXPECT_EQ(t.median, Rational(5, 3));
    EXPECT_EQ(t.p90, Rational(9, 3));
    const auto one = quantiles_of(1, {Rational(7)});
    EXPECT_EQ(one.median, 7);
    EXPECT_EQ(one.p90, 7);
}

TEST(Extremal, QuantilesRecomputeFromRows) {
    const auto rep = run_extremal(small_cfg(2, "T^-1 + T^-5", 40));
    ASSERT_EQ(rep.quantiles.size(), 12u);
    for (int tau = 1; tau <= 12; ++tau) {
        std::vector<Rational> v;
        for (const auto& s : rep.samples)
            if (!s.excluded() && s.ratios[tau - 1] && *s.ratios[tau - 1]) v.push_back(**s.ratios[tau - 1]);
        const auto t = quantiles_of(tau, v);
        EXPECT_EQ(t.median, rep.quantiles[tau - 1].median);
        EXPECT_EQ(t.p90, rep.quantiles[tau - 1].p90);
        EXPECT_EQ(t.count, rep.quantiles[tau - 1].count);
    }
}

TEST(Extremal, SameSeedSameReport) {
    const auto a = run_extremal(small_cfg(2, "0", 15));
    const auto b = run_extremal(small_cfg(2, "0", 15));
    ASSERT_EQ(a.samples.size(), b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        EXPECT_EQ(a.samples[i].x, b.samples[i].x);
        EXPECT_EQ(a.samples[i].ratios, b.samples[i].ratios);
    }
    auto c = small_cfg(2, "0", 15);
    c.seed = 8;
    EXPECT_NE(run_extremal(c).samples[0].x, a.samples[0].x);
}

TEST(Extremal, RatiosMatchDirectProfile) {
    const auto cfg = small_cfg(3, "0", 5);
    const auto rep = run_extremal(cfg);
    for (const auto& s : rep.samples) {
        const LaurentVec y = rep.map.eval(s.x);
        const auto prof = best_profile(LaurentMat::from_rows({y}), LaurentVec{Laurent(rep.map.field)}, cfg.tau_max);
        for (const auto& e : prof.entries) EXPECT_EQ(s.ratios[e.tau - 1], profile_ratio(e, 1, 3));
    }
}

TEST(Extremal, ShortRationalSamplesAreInfinite) {
    auto c = small_cfg(1, "0", 10);
    c.digits = 4;
    const auto rep = run_extremal(c);
    EXPECT_EQ(rep.infinite, 10u);
    for (const auto& q : rep.quantiles) EXPECT_EQ(q.count, 0u);
}

TEST(Extremal, TruncatedValuesStayWellDefined) {
    auto c = small_cfg(2, "T^-1", 20);
    c.precision = -(3 * 12 + 8);
    const auto rep = run_extremal(c);
    EXPECT_EQ(rep.infinite, 0u);
    EXPECT_LE(rep.precision_excluded, 1u);
    for (const auto& s : rep.samples) {
        if (s.est) {
            EXPECT_FALSE(ext_less(s.est->omega_lower, Rational(1, 2)));
        }
    }
}

TEST(Extremal, MediansNearOneForGenericSamples) {
    const auto rep = run_extremal(small_cfg(2, "0", 60));
    const auto& last = rep.quantiles.back();
    EXPECT_GE(last.median, 1);
    EXPECT_LE(last.median, Rational(6, 5));
}
