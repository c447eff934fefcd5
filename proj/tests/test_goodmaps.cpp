#include <gtest/gtest.h>

#include <random>

#include "ffdioph/goodmaps.hpp"
#include "support/random.hpp"

using namespace ffdioph;

namespace {

BallSpec unit_ball(const Field& f, std::size_t d) { return {LaurentVec(d, Laurent(f)), 0}; }

MPoly poly(const char* s, const Field& f, std::size_t d = 1) { return parse_mpoly(s, f, d); }

QPow qp(unsigned q, Rational c, Rational e = 0) { return {q, c, e}; }

}  // namespace

TEST(Cylinder, Measures) {
    auto f2 = make_field(2);
    EXPECT_EQ(CylinderSet::universe(f2, 1, 4).measure(), 1);
    EXPECT_EQ(CylinderSet::ball(f2, {{Laurent(f2)}, -3}, 5).measure(), Rational(1, 8));
    EXPECT_EQ(CylinderSet::ball(f2, {{Laurent(f2), Laurent(f2)}, -1}, 3).measure(), Rational(1, 4));
    // radius above the unit ball clamps to it
    EXPECT_EQ(CylinderSet::ball(f2, {{Laurent(f2)}, 2}, 3).measure(), 1);
}

TEST(Cylinder, BallIsTheCoefficientCondition) {
    auto f3 = make_field(3);
    const int N = 3;
    const BallSpec b{{parse_laurent("2 + T^-1", f3), parse_laurent("1", f3)}, -1};
    const CylinderSet s = CylinderSet::ball(f3, b, N);
    for (std::size_t i = 0; i < s.cells(); ++i) {
        const LaurentVec c = s.center(i);
        const bool inside = (c[0] - b.center[0]).degree_bound() <= -1 && (c[1] - b.center[1]).degree_bound() <= -1;
        EXPECT_EQ(s.contains(i), inside) << i;
    }
}

TEST(Cylinder, InclusionExclusion) {
    auto f = make_field(4);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        CylinderSet a(f, 2, 2), b(f, 2, 2);
        for (std::size_t i = 0; i < a.cells(); ++i) {
            if (rng() % 3 == 0) a.insert(i);
            if (rng() % 2 == 0) b.insert(i);
        }
        EXPECT_EQ((a | b).measure() + (a & b).measure(), a.measure() + b.measure());
        EXPECT_EQ((a - b).measure(), a.measure() - (a & b).measure());
        EXPECT_TRUE((a & b).subset_of(a));
    }
}

TEST(Cylinder, HexWords) {
    auto f2 = make_field(2);
    const auto words = CylinderSet::ball(f2, {{parse_laurent("1 + T^-1", f2)}, -2}, 3).hex_words();
    EXPECT_EQ(words, (std::vector<std::string>{"110", "111"}));
    auto f17 = make_field(17);
    const auto w17 = CylinderSet::ball(f17, {{parse_laurent("16", f17)}, -1}, 1).hex_words();
    EXPECT_EQ(w17, (std::vector<std::string>{"10"}));
    EXPECT_TRUE(std::is_sorted(words.begin(), words.end()));
}

TEST(Cylinder, Dilation) {
    EXPECT_EQ(floor_ln(2), 0);
    EXPECT_EQ(floor_ln(3), 1);
    EXPECT_EQ(floor_ln(5), 1);
    EXPECT_EQ(floor_ln(8), 2);
    EXPECT_EQ(floor_ln(Rational(1, 2)), -1);
    EXPECT_EQ(floor_ln(1), 0);
    EXPECT_EQ(floor_ln(27), 3);   // e^3 ~ 20.09
    EXPECT_EQ(floor_ln(243), 5);  // e^5 ~ 148.4, e^6 ~ 403.4
    EXPECT_THROW(floor_ln(0), InvalidArgument);
    auto f = make_field(2);
    EXPECT_EQ(dilate({{Laurent(f)}, -3}, 2).radius_exp, -3);
    EXPECT_EQ(dilate({{Laurent(f)}, -3}, 5).radius_exp, -2);
}

TEST(MPoly, ParseAndEval) {
    auto f = make_field(3);
    const MPoly p = poly("x1^2 + (T)*x1*x2 + 2", f, 2);
    EXPECT_EQ(p.total_degree(), 2u);
    const LaurentVec x{parse_laurent("T^-1", f), parse_laurent("1 + T^-2", f)};
    EXPECT_EQ(p.eval(x), parse_laurent("2*T^-2", f));
    EXPECT_EQ(poly("x - x", f).terms().size(), 0u);
    EXPECT_THROW(poly("x3", f, 2), SyntaxError);
    EXPECT_THROW(poly("x +", f), SyntaxError);
    EXPECT_THROW(poly("5*x", f), SyntaxError);
    EXPECT_THROW(poly("x", f, 2), SyntaxError);
    const PolyMap v = PolyMap::veronese(f, 3);
    EXPECT_EQ(v.eval({parse_laurent("T", f)})[2], parse_laurent("T^3", f));
}

TEST(CellTable, Identity) {
    auto f = make_field(2);
    const CellTable t = eval_on_cells(poly("x", f), 3);
    ASSERT_EQ(t.cells(), 8u);
    EXPECT_FALSE(t.exact[0]);
    EXPECT_EQ(t.value[0], -3);
    EXPECT_EQ(t.value[1], -2);
    EXPECT_EQ(t.value[2], -1);
    EXPECT_EQ(t.value[3], -1);
    for (std::size_t i = 4; i < 8; ++i) EXPECT_EQ(t.value[i], 0);
    EXPECT_EQ(t.ambiguous(), 1u);
}

TEST(CellTable, SquareDoublesDegrees) {
    for (unsigned q : {2u, 3u, 4u}) {
        auto f = make_field(q);
        const CellTable a = eval_on_cells(poly("x", f), 3);
        const CellTable b = eval_on_cells(poly("x^2", f), 3);
        for (std::size_t i = 1; i < a.cells(); ++i) {
            EXPECT_TRUE(b.exact[i]);
            EXPECT_EQ(b.value[i], 2 * a.value[i]);
        }
        EXPECT_FALSE(b.exact[0]);
    }
}

TEST(CellTable, ConstantMap) {
    auto f = make_field(2);
    const CellTable t = eval_on_cells(poly("1", f), 3);
    for (std::size_t i = 0; i < t.cells(); ++i) {
        EXPECT_TRUE(t.exact[i]);
        EXPECT_EQ(t.value[i], 0);
    }
}

TEST(CellTable, Budget) {
    auto f = make_field(2);
    EXPECT_THROW(eval_on_cells(poly("x", f), 30), BudgetExceeded);
    EXPECT_THROW(eval_on_cells(poly("x", f), 10, 100), BudgetExceeded);
}

// Exact cells must really have constant degree: sample points of each cell.
TEST(CellTable, ExactCellsAreConstant) {
    std::mt19937_64 rng(11);
    for (unsigned q : {2u, 3u, 5u}) {
        auto f = make_field(q);
        for (const char* s : {"x^3 + (T^-1)*x", "(T)*x^2 + x + (T^-2)", "x^4 + (T^-1 + O(T^-6))*x"}) {
            const MPoly p = poly(s, f);
            const int N = 3;
            const CellTable t = eval_on_cells(p, N);
            const CylinderSet grid(f, 1, N);
            for (std::size_t i = 0; i < t.cells(); ++i) {
                const LaurentVec c = grid.center(i);
                for (int k = 0; k < 5; ++k) {
                    Laurent x = c[0] + gen::random_laurent(f, -N, 6, true, rng);
                    Laurent v = p.eval({x});
                    if (t.exact[i]) {
                        EXPECT_EQ(v.degree(), t.value[i]) << s << " cell " << i;
                    } else {
                        EXPECT_LE(v.degree_bound(), t.value[i]) << s << " cell " << i;
                    }
                }
            }
        }
    }
}

TEST(Good, IdentityHasConstantOne) {
    for (unsigned q : {2u, 3u}) {
        auto f = make_field(q);
        const int N = q == 2 ? 7 : 5;
        const GoodReport r = good_constants(poly("x", f), unit_ball(f, 1), N, Rational(1));
        EXPECT_EQ(r.c_min, qp(q, 1));
        EXPECT_FALSE(r.inconclusive);
        EXPECT_EQ(r.tests.size(), static_cast<std::size_t>(N));
        for (const auto& t : r.tests) {
            EXPECT_EQ(t.norm, 0);
            EXPECT_EQ(t.value, qp(q, 1));
        }
    }
}

TEST(Good, SquareHasConstantOneAtHalf) {
    auto f = make_field(2);
    GoodOptions o;
    o.C = Rational(1);
    o.sub_depth = 2;
    const GoodReport r = good_constants(poly("x^2", f), unit_ball(f, 1), 6, Rational(1, 2), o);
    EXPECT_EQ(r.c_min, qp(2, 1));
    EXPECT_TRUE(r.violations.empty());
    // a larger exponent breaks the bound
    GoodOptions o1;
    o1.C = Rational(1);
    const GoodReport r1 = good_constants(poly("x^2", f), unit_ball(f, 1), 6, Rational(1), o1);
    EXPECT_FALSE(r1.violations.empty());
    // deepest level: the zero cell alone, 2^-6 against 2^-12
    EXPECT_EQ(r1.c_min, qp(2, 64));
}

TEST(Good, FewCellsIsInconclusive) {
    auto f = make_field(2);
    EXPECT_TRUE(good_constants(poly("x", f), unit_ball(f, 1), 5, Rational(1)).inconclusive);
}

TEST(Good, ConstantMapIsZero) {
    auto f = make_field(2);
    const PolyMap m = PolyMap::veronese(f, 2);
    const GoodReport r =
        good_constants(m, parse_laurent("T", f), {Laurent(f), Laurent(f)}, unit_ball(f, 1), 4, Rational(1));
    EXPECT_TRUE(r.c_min.is_zero());
    EXPECT_TRUE(r.tests.empty());
}

TEST(Good, NestedSublevelsAndScalingInvariance) {
    std::mt19937_64 rng(5);
    for (unsigned q : {2u, 3u}) {
        auto f = make_field(q);
        for (int trial = 0; trial < 10; ++trial) {
            const PolyMap m = PolyMap::veronese(f, 3);
            LaurentVec c;
            for (int i = 0; i < 3; ++i) c.push_back(Laurent::exact(f, -1, {gen::random_elem(*f, rng), gen::random_elem(*f, rng)}));
            const MPoly g = m.linear_combination(Laurent::exact(f, 0, {gen::random_elem(*f, rng)}), c);
            const CellTable t = eval_on_cells(g, 4);
            for (Degree l = -12; l < 2; ++l) EXPECT_TRUE(sublevel_set(t, l).subset_of(sublevel_set(t, l + 1)));
            const GoodReport r = good_constants(t, unit_ball(f, 1), Rational(1, 3));
            const Laurent s = Laurent::exact(f, 0, {gen::random_unit(*f, rng), 1});
            const GoodReport rs = good_constants(g.scaled(s), unit_ball(f, 1), 4, Rational(1, 3));
            EXPECT_EQ(r.c_min, rs.c_min);
        }
    }
}

TEST(Lemma, ClosureItems) {
    auto f = make_field(2);
    const PropertyReport rep =
        closure_check({poly("x", f), poly("x^2", f)}, unit_ball(f, 1), 5, Rational(1, 2), parse_laurent("T", f));
    ASSERT_EQ(rep.items.size(), 7u);
    for (const auto& it : rep.items) EXPECT_TRUE(it.holds) << it.name << ": " << it.detail;
}

TEST(Lemma, SupIsIntersection) {
    auto f = make_field(3);
    const CellTable a = eval_on_cells(poly("x", f), 3), b = eval_on_cells(poly("x^2 + (T^-1)", f), 3);
    const CellTable s = sup_table({a, b});
    for (Degree l = -6; l <= 0; ++l)
        EXPECT_EQ(sublevel_set(s, l), sublevel_set(a, l) & sublevel_set(b, l)) << l;
}

TEST(Nonplanar, Veronese) {
    auto f = make_field(2);
    const auto r = nonplanarity_check(PolyMap::veronese(f, 2), unit_ball(f, 1), 20, 1);
    ASSERT_TRUE(r.found);
    ASSERT_EQ(r.points.size(), 3u);
    // Vandermonde: det = prod (x_i - x_j)
    Laurent v = Laurent::one(f);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) v = v * (r.points[j][0] - r.points[i][0]);
    EXPECT_FALSE(v.is_known_zero());
    EXPECT_FALSE(r.det->is_zero());
}

TEST(Nonplanar, DependentMaps) {
    auto f = make_field(3);
    const PolyMap dup{f, 1, {poly("x", f), poly("x", f)}};
    EXPECT_FALSE(nonplanarity_check(dup, unit_ball(f, 1), 50, 2).found);
    const PolyMap one{f, 1, {poly("1", f)}};
    const auto r = nonplanarity_check(one, unit_ball(f, 1), 50, 3);
    EXPECT_FALSE(r.found);
    EXPECT_EQ(r.trials, 50u);
}

TEST(Doubling, Ratios) {
    auto f2 = make_field(2);
    const auto r = doubling_check(f2, {{{Laurent(f2)}, -1}, {{parse_laurent("T^-1", f2)}, -3}}, 4);
    EXPECT_EQ(r.D2, 1);
    EXPECT_EQ(r.D5, 2);
    auto f3 = make_field(3);
    const auto r3 = doubling_check(f3, {{{Laurent(f3), Laurent(f3)}, -2}}, 3);
    EXPECT_EQ(r3.D2, 1);
    EXPECT_EQ(r3.D5, 9);
}
