#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

#include "assoclab/rational.hpp"

namespace assoclab {

inline mpfr_prec_t bits_for_digits(int digits) {
    // ceil(digits * log2(10)) plus a little slack for rounding noise
    return static_cast<mpfr_prec_t>(digits * 3.3219280948873626 + 16);
}

// Arbitrary-precision real, RAII wrapper over one mpfr_t. Every value carries
// its own precision; binary operations compute at the max of the operands.
class BigFloat {
  public:
    BigFloat() : BigFloat(0L, 64) {}
    explicit BigFloat(long v, mpfr_prec_t prec = 64) {
        mpfr_init2(x_, prec);
        mpfr_set_si(x_, v, MPFR_RNDN);
    }
    BigFloat(const Rat& q, mpfr_prec_t prec) {
        mpfr_init2(x_, prec);
        mpfr_set_q(x_, q.get_mpq_t(), MPFR_RNDN);
    }
    BigFloat(const std::string& s, mpfr_prec_t prec) {
        mpfr_init2(x_, prec);
        if (mpfr_set_str(x_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw InputError("cannot parse decimal number: '" + s + "'");
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(x_, mpfr_get_prec(o.x_));
        mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(x_, mpfr_get_prec(o.x_));
        mpfr_swap(x_, o.x_);
    }
    BigFloat& operator=(BigFloat o) noexcept {
        mpfr_swap(x_, o.x_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(x_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(x_); }
    bool is_zero() const { return mpfr_zero_p(x_) != 0; }
    int sign() const { return mpfr_sgn(x_); }
    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

    static BigFloat with_prec(mpfr_prec_t p) { return BigFloat(0L, p); }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r = BigFloat::with_prec(std::max(a.prec(), b.prec()));
        mpfr_add(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r = BigFloat::with_prec(std::max(a.prec(), b.prec()));
        mpfr_sub(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r = BigFloat::with_prec(std::max(a.prec(), b.prec()));
        mpfr_mul(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat r = BigFloat::with_prec(std::max(a.prec(), b.prec()));
        mpfr_div(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    BigFloat operator-() const {
        BigFloat r = *this;
        mpfr_neg(r.x_, r.x_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
    BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
    BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
    BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

    friend BigFloat abs(const BigFloat& a) {
        BigFloat r = a;
        mpfr_abs(r.x_, r.x_, MPFR_RNDN);
        return r;
    }
    friend BigFloat sqrt(const BigFloat& a) {
        BigFloat r = a;
        mpfr_sqrt(r.x_, r.x_, MPFR_RNDN);
        return r;
    }
    friend BigFloat max(const BigFloat& a, const BigFloat& b) {
        return cmp(a, b) >= 0 ? a : b;
    }
    friend int cmp(const BigFloat& a, const BigFloat& b) {
        return mpfr_cmp(a.x_, b.x_);
    }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return cmp(a, b) > 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return cmp(a, b) == 0; }

    BigFloat div_ui(unsigned long k) const {
        BigFloat r = *this;
        mpfr_div_ui(r.x_, r.x_, k, MPFR_RNDN);
        return r;
    }
    BigFloat mul_si(long k) const {
        BigFloat r = *this;
        mpfr_mul_si(r.x_, r.x_, k, MPFR_RNDN);
        return r;
    }

    // 10^e at this value's precision
    static BigFloat pow10(long e, mpfr_prec_t prec) {
        BigFloat r = BigFloat::with_prec(prec);
        mpfr_ui_pow_ui(r.x_, 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
        if (e < 0) mpfr_ui_div(r.x_, 1, r.x_, MPFR_RNDN);
        return r;
    }

    std::string to_string(int digits = 0) const {
        if (digits <= 0)
            digits = static_cast<int>(static_cast<double>(prec()) / 3.3219280948873626);
        char fmt[32];
        std::snprintf(fmt, sizeof fmt, "%%.%dRe", digits);
        char* out = nullptr;
        mpfr_asprintf(&out, fmt, x_);
        std::string s(out);
        mpfr_free_str(out);
        return s;
    }

    mpfr_ptr raw() { return x_; }
    mpfr_srcptr raw() const { return x_; }

  private:
    mpfr_t x_;
};

// pi via Machin's formula, pi = 16 atan(1/5) - 4 atan(1/239); computed from
// scratch so that 2*pi*i is not imported from any zeta identity under test.
inline BigFloat atan_inv_ui(unsigned long q, mpfr_prec_t prec) {
    // atan(1/q) = sum_{j>=0} (-1)^j / ((2j+1) q^(2j+1))
    mpfr_prec_t wp = prec + 32;
    BigFloat term(1L, wp), sum(0L, wp);
    mpfr_div_ui(term.raw(), term.raw(), q, MPFR_RNDN);
    unsigned long q2 = q * q;
    for (unsigned long j = 0;; ++j) {
        BigFloat t = term.div_ui(2 * j + 1);
        if (mpfr_zero_p(t.raw()) ||
            mpfr_get_exp(t.raw()) < -static_cast<long>(wp))
            break;
        if (j % 2 == 0)
            sum += t;
        else
            sum -= t;
        mpfr_div_ui(term.raw(), term.raw(), q2, MPFR_RNDN);
    }
    return sum;
}

inline BigFloat pi_machin(mpfr_prec_t prec) {
    BigFloat a = atan_inv_ui(5, prec + 16);
    BigFloat b = atan_inv_ui(239, prec + 16);
    BigFloat r = a.mul_si(16) - b.mul_si(4);
    BigFloat out = BigFloat::with_prec(prec);
    mpfr_set(out.raw(), r.raw(), MPFR_RNDN);
    return out;
}

// Arbitrary-precision complex scalar.
class BigComplex {
  public:
    BigComplex() : re_(), im_() {}
    BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
    explicit BigComplex(long v, mpfr_prec_t prec = 64)
        : re_(v, prec), im_(0L, prec) {}
    BigComplex(const Rat& q, mpfr_prec_t prec) : re_(q, prec), im_(0L, prec) {}

    const BigFloat& re() const { return re_; }
    const BigFloat& im() const { return im_; }
    mpfr_prec_t prec() const { return std::max(re_.prec(), im_.prec()); }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    BigComplex operator-() const { return {-re_, -im_}; }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigFloat d = b.re_ * b.re_ + b.im_ * b.im_;
        return {(a.re_ * b.re_ + a.im_ * b.im_) / d,
                (a.im_ * b.re_ - a.re_ * b.im_) / d};
    }
    BigComplex& operator+=(const BigComplex& o) { return *this = *this + o; }
    BigComplex& operator-=(const BigComplex& o) { return *this = *this - o; }
    BigComplex& operator*=(const BigComplex& o) { return *this = *this * o; }

    friend bool operator==(const BigComplex& a, const BigComplex& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    // modulus upper bound |re|+|im|; cheap and monotone, fine for residuals
    BigFloat mag() const { return abs(re_) + abs(im_); }

    friend BigComplex sqrt(const BigComplex& z) {
        if (z.im_.is_zero()) {
            if (z.re_.sign() >= 0) return {sqrt(z.re_), BigFloat(0L, z.prec())};
            return {BigFloat(0L, z.prec()), sqrt(-z.re_)};
        }
        BigFloat two(2L, z.prec());
        BigFloat m = sqrt(z.re_ * z.re_ + z.im_ * z.im_);
        BigFloat u = sqrt((m + z.re_) / two);
        BigFloat v = sqrt((m - z.re_) / two);
        if (z.im_.sign() < 0) v = -v;
        return {u, v};
    }

  private:
    BigFloat re_, im_;
};

}  // namespace assoclab
