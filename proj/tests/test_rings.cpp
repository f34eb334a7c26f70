#include <gtest/gtest.h>

#include "assoclab/bigfloat.hpp"
#include "assoclab/poly.hpp"
#include "assoclab/quadext.hpp"
#include "assoclab/rational.hpp"
#include "assoclab/ring.hpp"

using namespace assoclab;

TEST(Rational, ParseAndCanonicalForm) {
    Rat q = rat_from_string("-6/8");
    EXPECT_EQ(rat_to_string(q), "-3/4");
    EXPECT_EQ(rat_to_string(rat_from_string("4/2")), "2");
    EXPECT_THROW(rat_from_string("x"), InputError);
    // positive denominator
    Rat r(3, 4);
    EXPECT_GT(r.get_den(), 0);
}

TEST(Rational, ExactSquareRoot) {
    EXPECT_EQ(*rat_sqrt_exact(Rat(144)), Rat(12));
    EXPECT_EQ(*rat_sqrt_exact(Rat(9, 4)), Rat(3, 2));
    EXPECT_FALSE(rat_sqrt_exact(Rat(24)).has_value());
    EXPECT_FALSE(rat_sqrt_exact(Rat(-4)).has_value());
}

TEST(BigFloat, BasicArithmeticAndPrecisionMax) {
    mpfr_prec_t lo = 64, hi = 200;
    BigFloat a(Rat(1, 3), hi);
    BigFloat b(2L, lo);
    BigFloat c = a * b;
    EXPECT_EQ(c.prec(), hi);  // max precision wins and is recorded
    BigFloat d = c - BigFloat(Rat(2, 3), hi);
    EXPECT_LT(abs(d).to_double(), 1e-55);
}

TEST(BigFloat, MachinPiAgreesWithIndependentMpfrPi) {
    mpfr_prec_t wp = bits_for_digits(60);
    BigFloat mine = pi_machin(wp);
    BigFloat ref = BigFloat::with_prec(wp);
    mpfr_const_pi(ref.raw(), MPFR_RNDN);
    EXPECT_LT(abs(mine - ref).to_double(), 1e-58);
}

TEST(BigFloat, StringRoundTrip) {
    mpfr_prec_t wp = bits_for_digits(50);
    BigFloat x("1.25e-3", wp);
    BigFloat y(x.to_string(45), wp);
    EXPECT_LT(abs(x - y).to_double(), 1e-40);
}

TEST(BigComplex, ArithmeticAndSqrt) {
    mpfr_prec_t wp = bits_for_digits(45);
    BigComplex i(BigFloat(0L, wp), BigFloat(1L, wp));
    BigComplex m1 = i * i;
    EXPECT_LT((m1 + BigComplex(1L, wp)).mag().to_double(), 1e-40);
    // sqrt of a negative real is purely imaginary
    BigComplex s = sqrt(BigComplex(Rat(-4), wp));
    EXPECT_LT(abs(s.re()).to_double(), 1e-40);
    EXPECT_LT(abs(s.im() - BigFloat(2L, wp)).to_double(), 1e-40);
    // general complex square root squares back
    BigComplex z(BigFloat(Rat(3, 7), wp), BigFloat(Rat(-2, 5), wp));
    BigComplex r = sqrt(z);
    EXPECT_LT((r * r - z).mag().to_double(), 1e-38);
}

TEST(Poly, ArithmeticAndPruning) {
    Poly x = Poly::var("x"), y = Poly::var("y");
    Poly p = (x + y) * (x - y);
    Poly q = x * x - y * y;
    EXPECT_EQ(p, q);
    EXPECT_TRUE((p - q).is_zero());
    Poly z = x - x;
    EXPECT_TRUE(z.is_zero());  // zero coefficients are pruned
}

TEST(Poly, ToStringAndParseRoundTrip) {
    Poly p = Poly::var("mu", Rat(3, 2)) * Poly::var("mu") -
             Poly::var("c_X0X1", Rat(24)) + Poly(Rat(-1, 7));
    Poly q = Poly::parse(p.to_string());
    EXPECT_EQ(p, q);
    Poly zsym = Poly::var("zeta(1,2)", Rat(-2));
    EXPECT_EQ(Poly::parse(zsym.to_string()), zsym);
    EXPECT_EQ(Poly::parse("0"), Poly());
}

TEST(Poly, EvaluateOverRationals) {
    Poly p = Poly::var("a") * Poly::var("a") + Poly::var("b", Rat(2));
    Rat v = p.evaluate<Rat>([](const Rat& q) { return q; },
                            [](const std::string& n) { return n == "a" ? Rat(3) : Rat(5); });
    EXPECT_EQ(v, Rat(19));
}

TEST(QuadExt, FieldArithmetic) {
    QuadExt r = QuadExt::root(Rat(24));  // sqrt(24)
    QuadExt x = QuadExt(Rat(2)) + r;     // 2 + sqrt(24)
    QuadExt n = x * (QuadExt(Rat(2)) - r);
    EXPECT_TRUE(n.is_rational());
    EXPECT_EQ(n.rational_part(), Rat(4 - 24));
    QuadExt inv = QuadExt(Rat(1)) / x;
    QuadExt one = inv * x;
    EXPECT_EQ(one, QuadExt(Rat(1)));
    EXPECT_EQ(r * r, QuadExt(Rat(24)));
    EXPECT_THROW(QuadExt::root(Rat(2)) + QuadExt::root(Rat(3)), InputError);
}

TEST(RingTraits, SharedInterface) {
    EXPECT_TRUE(RingTraits<Rat>::exact);
    EXPECT_FALSE(RingTraits<BigComplex>::exact);
    EXPECT_TRUE(RingTraits<Poly>::exact);
    EXPECT_TRUE(RingTraits<QuadExt>::exact);
    EXPECT_EQ(RingTraits<Rat>::mul_long(Rat(1, 3), 6), Rat(2));
    EXPECT_TRUE(RingTraits<Poly>::is_zero(Poly()));
}
