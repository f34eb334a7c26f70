#include <gtest/gtest.h>

#include "assoclab/series.hpp"
#include "test_util.hpp"

using namespace assoclab;

namespace {

Series<Rat> from_words(int trunc, const std::vector<std::pair<std::string, Rat>>& t) {
    Series<Rat> s(xy_alphabet(), trunc);
    for (const auto& [text, c] : t) s.add_coeff(Word::parse(*xy_alphabet(), text), c);
    return s;
}

}  // namespace

TEST(Series, ConcatProductDistributes) {
    // (1+X0)(1+X1) = 1 + X0 + X1 + X0X1 at N >= 2
    Series<Rat> a = from_words(3, {{"", Rat(1)}, {"X0", Rat(1)}});
    Series<Rat> b = from_words(3, {{"", Rat(1)}, {"X1", Rat(1)}});
    Series<Rat> expect = from_words(
        3, {{"", Rat(1)}, {"X0", Rat(1)}, {"X1", Rat(1)}, {"X0 X1", Rat(1)}});
    EXPECT_EQ(a * b, expect);
}

TEST(Series, NonCommutativityWitnessed) {
    Series<Rat> x0 = Series<Rat>::generator(xy_alphabet(), 2, 0);
    Series<Rat> x1 = Series<Rat>::generator(xy_alphabet(), 2, 1);
    EXPECT_NE(x0 * x1, x1 * x0);
    EXPECT_EQ((x0 * x1).term_count(), 1u);
}

TEST(Series, TruncationContract) {
    // (1+X0)^2 at N=1 keeps 1 + 2X0 and drops the degree-2 term
    Series<Rat> a = from_words(1, {{"", Rat(1)}, {"X0", Rat(1)}});
    EXPECT_EQ(a * a, from_words(1, {{"", Rat(1)}, {"X0", Rat(2)}}));
    // mixed truncations take the min and record it
    Series<Rat> b = from_words(5, {{"", Rat(1)}, {"X0", Rat(1)}});
    EXPECT_EQ((a * b).truncation(), 1);
}

TEST(Series, AlphabetMismatchRejected) {
    Series<Rat> x(xy_alphabet(), 3);
    Series<Rat> y(y_alphabet(3), 3);
    EXPECT_THROW(x * y, InputError);
    EXPECT_THROW(x + y, InputError);
}

TEST(Series, ExpLowOrder) {
    // exp(X0) at N=2 -> 1 + X0 + X0^2/2
    Series<Rat> x0 = Series<Rat>::generator(xy_alphabet(), 2, 0);
    EXPECT_EQ(exp_series(x0),
              from_words(2, {{"", Rat(1)}, {"X0", Rat(1)}, {"X0 X0", Rat(1, 2)}}));
}

TEST(Series, LogLowOrder) {
    // log(1+X0) at N=3 -> X0 - X0^2/2 + X0^3/3
    Series<Rat> g = from_words(3, {{"", Rat(1)}, {"X0", Rat(1)}});
    EXPECT_EQ(log_series(g), from_words(3, {{"X0", Rat(1)},
                                            {"X0 X0", Rat(-1, 2)},
                                            {"X0 X0 X0", Rat(1, 3)}}));
}

TEST(Series, ExpLogRoundTripExample) {
    Series<Rat> g = from_words(2, {{"", Rat(1)}, {"X0", Rat(1)}, {"X0 X1", Rat(1)}});
    EXPECT_EQ(exp_series(log_series(g)), g);
}

TEST(Series, ExpLogPreconditions) {
    Series<Rat> bad = from_words(2, {{"", Rat(1)}, {"X0", Rat(1)}});
    EXPECT_THROW(exp_series(bad), InputError);  // nonzero constant term
    Series<Rat> bad2 = from_words(2, {{"X0", Rat(1)}});
    EXPECT_THROW(log_series(bad2), InputError);  // constant term not 1
    EXPECT_THROW(inverse_series(bad2), InputError);
}

TEST(Series, ExpLogMutuallyInverseRandom) {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 50; ++trial) {
        Series<Rat> s = tu::random_positive_series(rng, 5);
        EXPECT_EQ(log_series(exp_series(s)), s);
        Series<Rat> g = Series<Rat>::unit(xy_alphabet(), 5) + s;
        EXPECT_EQ(exp_series(log_series(g)), g);
    }
}

TEST(Series, InverseSeries) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Series<Rat> g = Series<Rat>::unit(xy_alphabet(), 4) +
                        tu::random_positive_series(rng, 4);
        Series<Rat> inv = inverse_series(g);
        EXPECT_EQ(g * inv, Series<Rat>::unit(xy_alphabet(), 4));
        EXPECT_EQ(inv * g, Series<Rat>::unit(xy_alphabet(), 4));
    }
}

TEST(Series, MulAssociativityRandom) {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        Series<Rat> a = tu::random_positive_series(rng, 6);
        Series<Rat> b = tu::random_positive_series(rng, 6);
        Series<Rat> c = tu::random_positive_series(rng, 6);
        EXPECT_EQ((a * b) * c, a * (b * c));
    }
}

TEST(Substitute, LinearExpansion) {
    // phi = 1 + X0X1, X0 -> t12, X1 -> t23 + t24 handled in braid tests; here
    // the pure-series analogue: X0 -> X0, X1 -> X0 + X1
    Series<Rat> phi = from_words(2, {{"", Rat(1)}, {"X0 X1", Rat(1)}});
    Series<Rat> x0 = Series<Rat>::generator(xy_alphabet(), 2, 0);
    Series<Rat> x1 = Series<Rat>::generator(xy_alphabet(), 2, 1);
    Series<Rat> got = substitute(phi, std::vector<Series<Rat>>{x0, x0 + x1});
    EXPECT_EQ(got, from_words(2, {{"", Rat(1)}, {"X0 X0", Rat(1)}, {"X0 X1", Rat(1)}}));
}

TEST(Substitute, IdentityMap) {
    std::mt19937 rng(5);
    Series<Rat> phi = Series<Rat>::unit(xy_alphabet(), 4) +
                      tu::random_positive_series(rng, 4);
    Series<Rat> x0 = Series<Rat>::generator(xy_alphabet(), 4, 0);
    Series<Rat> x1 = Series<Rat>::generator(xy_alphabet(), 4, 1);
    EXPECT_EQ(substitute(phi, std::vector<Series<Rat>>{x0, x1}), phi);
}

TEST(Substitute, CommutesWithExp) {
    // exp(X0) with X0 -> X0+X1 equals exp(X0+X1) at truncation
    Series<Rat> x0 = Series<Rat>::generator(xy_alphabet(), 4, 0);
    Series<Rat> x1 = Series<Rat>::generator(xy_alphabet(), 4, 1);
    Series<Rat> lhs =
        substitute(exp_series(x0), std::vector<Series<Rat>>{x0 + x1, x1});
    EXPECT_EQ(lhs, exp_series(x0 + x1));
}

TEST(Substitute, IsRingHomomorphism) {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 15; ++trial) {
        Series<Rat> a = tu::random_positive_series(rng, 5);
        Series<Rat> b = tu::random_positive_series(rng, 5);
        Series<Rat> im0 = tu::random_positive_series(rng, 5, 3);
        Series<Rat> im1 = tu::random_positive_series(rng, 5, 3);
        std::vector<Series<Rat>> images{im0, im1};
        EXPECT_EQ(substitute(a * b, images),
                  substitute(a, images) * substitute(b, images));
    }
}

TEST(Substitute, RejectsBadImages) {
    Series<Rat> phi = Series<Rat>::unit(xy_alphabet(), 3);
    Series<Rat> img = Series<Rat>::unit(xy_alphabet(), 3);  // constant term 1
    Series<Rat> x1 = Series<Rat>::generator(xy_alphabet(), 3, 1);
    EXPECT_THROW(substitute(phi, std::vector<Series<Rat>>{img, x1}), InputError);
    EXPECT_THROW(substitute(phi, std::vector<Series<Rat>>{x1}), InputError);
}

TEST(Series, ComplexCoefficientsCarryPrecision) {
    mpfr_prec_t hi = bits_for_digits(50);
    Series<BigComplex> s(xy_alphabet(), 3);
    s.add_coeff(Word::parse(*xy_alphabet(), "X0"), BigComplex(Rat(1, 3), hi));
    BigComplex third = s.scalar_from_rat(Rat(1, 3));
    EXPECT_EQ(third.prec(), hi);  // fresh scalars adopt the working precision
}
