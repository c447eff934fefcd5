#include <gtest/gtest.h>

#include <random>

#include "ffdioph/literal.hpp"
#include "support/random.hpp"

using namespace ffdioph;

TEST(GaloisField, PrimeFieldTables) {
    auto F = make_field(5);
    EXPECT_EQ(F->q(), 5u);
    EXPECT_EQ(F->add(3, 4), 2);
    EXPECT_EQ(F->mul(3, 4), 2);
    EXPECT_EQ(F->inv(2), 3);
    EXPECT_EQ(F->neg(1), 4);
    EXPECT_THROW(F->inv(0), DivisionByZero);
}

TEST(GaloisField, ExtensionFieldsAreFields) {
    for (unsigned q : {4u, 8u, 9u}) {
        auto F = make_field(q);
        EXPECT_EQ(F->q(), q);
        for (unsigned a = 1; a < q; ++a) EXPECT_EQ(F->mul(static_cast<Elem>(a), F->inv(static_cast<Elem>(a))), 1);
        // distributivity over the whole field
        for (unsigned a = 0; a < q; ++a)
            for (unsigned b = 0; b < q; ++b)
                for (unsigned c = 0; c < q; ++c) {
                    auto A = static_cast<Elem>(a), B = static_cast<Elem>(b), C = static_cast<Elem>(c);
                    ASSERT_EQ(F->mul(A, F->add(B, C)), F->add(F->mul(A, B), F->mul(A, C)));
                }
    }
}

TEST(GaloisField, F4RootOfModulus) {
    auto F = make_field(4);  // u^2 + u + 1
    const Elem u = F->from_digits(std::vector<unsigned>{0, 1});
    EXPECT_EQ(F->mul(u, u), F->add(u, 1));
}

TEST(GaloisField, RejectsReducibleModulusAndCompositeCharacteristic) {
    EXPECT_THROW(make_field(2, {1, 0, 1}), InvalidField);  // (u+1)^2
    EXPECT_THROW(make_field(3, {2, 0, 1}), InvalidField);  // u^2 - 1
    EXPECT_THROW(make_field(6), InvalidField);
    EXPECT_THROW(make_field(3, {1, 1, 2}), InvalidField);  // not monic
    EXPECT_NO_THROW(make_field(2, {1, 1, 0, 0, 1}));  // u^4 + u + 1
}

TEST(PolyDivmod, Examples) {
    auto F = make_field(2);
    const Poly a = parse_poly("T^2 + 1", F);
    const Poly b = parse_poly("T", F);
    auto [q, r] = poly_divmod(a, b);
    EXPECT_EQ(q, parse_poly("T", F));
    EXPECT_EQ(r, parse_poly("1", F));
    EXPECT_EQ(b * q + r, a);

    auto [q1, r1] = poly_divmod(a, Poly::one(F));
    EXPECT_EQ(q1, a);
    EXPECT_TRUE(r1.is_zero());

    auto [q2, r2] = poly_divmod(parse_poly("T", F), parse_poly("T^3", F));
    EXPECT_TRUE(q2.is_zero());
    EXPECT_EQ(r2, parse_poly("T", F));

    EXPECT_THROW(poly_divmod(a, Poly(F)), DivisionByZero);
}

TEST(PolyDivmod, RandomMultiplyBack) {
    std::mt19937_64 rng(7);
    for (unsigned q : {2u, 3u, 4u, 9u}) {
        auto F = make_field(q);
        for (int i = 0; i < 300; ++i) {
            Poly a = gen::random_poly_upto(F, static_cast<int>(rng() % 12), rng);
            Poly b = gen::random_poly(F, static_cast<int>(rng() % 6), rng);
            auto [quot, rem] = poly_divmod(a, b);
            ASSERT_EQ(b * quot + rem, a);
            ASSERT_LT(rem.degree(), b.degree());
        }
    }
}

TEST(RatFn, CanonicalForm) {
    auto F = make_field(3);
    const Poly x = parse_poly("T + 1", F);
    const Poly y = parse_poly("T^2 + 1", F);
    RatFn r(x * y, (x * x).scaled(2));
    EXPECT_TRUE(r.den().lead() == 1);
    EXPECT_EQ(r.den(), x);
    EXPECT_EQ(poly_gcd(r.num(), r.den()).degree(), 0);
    EXPECT_EQ(r.degree(), 1);
    EXPECT_EQ(RatFn(y, x) * RatFn(x, y), RatFn(Poly::one(F)));
    EXPECT_THROW(RatFn(x, Poly(F)), DivisionByZero);
}
