#pragma once

#include "assoclab/bigfloat.hpp"
#include "assoclab/poly.hpp"
#include "assoclab/quadext.hpp"
#include "assoclab/rational.hpp"

namespace assoclab {

// Uniform scalar interface for the series kernels. Every coefficient ring is
// a Q-algebra: it can absorb exact rationals, which is all exp/log/inverse
// need. Rings are "exact" unless they carry floating precision.
template <class R>
struct RingTraits;

template <>
struct RingTraits<Rat> {
    static constexpr bool exact = true;
    static constexpr const char* name = "rational";
    static Rat zero() { return Rat(0); }
    static Rat one() { return Rat(1); }
    static Rat from_rat(const Rat& q) { return q; }
    static Rat one_like(const Rat&) { return Rat(1); }
    static Rat mul_long(const Rat& x, long long m) { return x * static_cast<long>(m); }
    static bool is_zero(const Rat& x) { return x == 0; }
    static double approx_mag(const Rat& x) { return std::fabs(x.get_d()); }
    static std::string to_string(const Rat& x) { return rat_to_string(x); }
};

template <>
struct RingTraits<BigComplex> {
    static constexpr bool exact = false;
    static constexpr const char* name = "complex";
    static BigComplex zero() { return BigComplex(0L, 64); }
    static BigComplex one() { return BigComplex(1L, 64); }
    static BigComplex from_rat(const Rat& q) { return BigComplex(q, 64); }
    static BigComplex one_like(const BigComplex& x) { return BigComplex(1L, x.prec()); }
    static BigComplex mul_long(const BigComplex& x, long long m) {
        return {x.re().mul_si(static_cast<long>(m)), x.im().mul_si(static_cast<long>(m))};
    }
    static bool is_zero(const BigComplex& x) { return x.is_zero(); }
    static double approx_mag(const BigComplex& x) { return x.mag().to_double(); }
    static std::string to_string(const BigComplex& x) {
        return x.re().to_string() + (x.im().sign() < 0 ? "" : "+") +
               x.im().to_string() + "i";
    }
};

template <>
struct RingTraits<Poly> {
    static constexpr bool exact = true;
    static constexpr const char* name = "symbolic";
    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(Rat(1)); }
    static Poly from_rat(const Rat& q) { return Poly(q); }
    static Poly one_like(const Poly&) { return Poly(Rat(1)); }
    static Poly mul_long(const Poly& x, long long m) { return x.scaled(Rat(static_cast<long>(m))); }
    static bool is_zero(const Poly& x) { return x.is_zero(); }
    static double approx_mag(const Poly& x) {
        double worst = 0;
        for (const auto& [m, c] : x.terms())
            worst = std::max(worst, std::fabs(c.get_d()));
        return worst;
    }
    static std::string to_string(const Poly& x) { return x.to_string(); }
};

template <>
struct RingTraits<QuadExt> {
    static constexpr bool exact = true;
    static constexpr const char* name = "quadext";
    static QuadExt zero() { return QuadExt(); }
    static QuadExt one() { return QuadExt(Rat(1)); }
    static QuadExt from_rat(const Rat& q) { return QuadExt(q); }
    static QuadExt one_like(const QuadExt&) { return QuadExt(Rat(1)); }
    static QuadExt mul_long(const QuadExt& x, long long m) {
        return x * QuadExt(Rat(static_cast<long>(m)));
    }
    static bool is_zero(const QuadExt& x) { return x.is_zero(); }
    static double approx_mag(const QuadExt& x) { return x.approx(); }
    static std::string to_string(const QuadExt& x) { return x.to_string(); }
};

}  // namespace assoclab
