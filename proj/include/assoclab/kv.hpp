#pragma once

#include "assoclab/report.hpp"
#include "assoclab/series.hpp"
#include "assoclab/shuffle.hpp"

namespace assoclab {

// Tangential automorphism P of exp F_2, represented by the pair (p1, p2):
// P(e^{X0}) = p1 e^{X0} p1^{-1}, P(e^{X1}) = p2 e^{X1} p2^{-1}. The pair
// determines P uniquely.
template <class R>
struct TAutPair {
    Series<R> p1, p2;

    TAutPair(Series<R> a, Series<R> b) : p1(std::move(a)), p2(std::move(b)) {
        p1.require_same_alphabet(p2);
    }

    static TAutPair identity(const AlphabetPtr& alph, int trunc) {
        return TAutPair(Series<R>::unit(alph, trunc), Series<R>::unit(alph, trunc));
    }

    int truncation() const { return std::min(p1.truncation(), p2.truncation()); }

    // images of the generators under P
    Series<R> image0() const { return conjugate_generator_by(p1, 0); }
    Series<R> image1() const { return conjugate_generator_by(p2, 1); }

    static Series<R> conjugate_generator_by(const Series<R>& g, int letter) {
        Series<R> x = Series<R>::generator(g.alphabet(), g.truncation(), letter);
        return (g * x) * inverse_series(g);
    }
};

// Apply the automorphism to any series expressible in the generators (the
// induced algebra endomorphism X_i -> p_i X_i p_i^{-1}, extended).
template <class R>
Series<R> taut_apply(const TAutPair<R>& P, const Series<R>& g) {
    return substitute(g, std::vector<Series<R>>{P.image0(), P.image1()});
}

// (p1, p2) = ( phi(X0/mu, Xinf/mu), e^{Xinf/2} phi(X1/mu, Xinf/mu) ),
// Xinf = -X0 - X1.
template <class R>
TAutPair<R> kv_pair_from_associator(const R& mu, const Series<R>& phi) {
    if (RingTraits<R>::is_zero(mu))
        throw InputError("kv pair needs mu != 0 (the formula divides by mu)");
    AlphabetPtr a = phi.alphabet();
    int n = phi.truncation();
    // exact unit at full working precision so fresh series do not degrade it
    R ex = phi.scalar_from_rat(Rat(1)) * RingTraits<R>::one_like(mu);
    R inv_mu = ex / mu;
    Series<R> x0 = Series<R>::generator(a, n, 0).scale(ex);
    Series<R> x1 = Series<R>::generator(a, n, 1).scale(ex);
    Series<R> xinf = -(x0 + x1);
    Series<R> p1 =
        substitute(phi, std::vector<Series<R>>{x0.scale(inv_mu), xinf.scale(inv_mu)});
    Series<R> p2 = exp_series(xinf.scale_rat(Rat(1, 2))) *
                   substitute(phi, std::vector<Series<R>>{x1.scale(inv_mu),
                                                          xinf.scale(inv_mu)});
    return TAutPair<R>(std::move(p1), std::move(p2));
}

// residual of P(e^{X0}) P(e^{X1}) = e^{X0+X1}
template <class R>
ResidualReport kv_main_residual(const TAutPair<R>& P) {
    const Series<R>& p1 = P.p1;
    AlphabetPtr a = p1.alphabet();
    int n = P.truncation();
    R ex = P.p1.scalar_from_rat(Rat(1)) * P.p2.scalar_from_rat(Rat(1));
    Series<R> x0 = Series<R>::generator(a, n, 0).scale(ex);
    Series<R> x1 = Series<R>::generator(a, n, 1).scale(ex);
    Series<R> lhs = ((P.p1 * exp_series(x0)) * inverse_series(P.p1)) *
                    ((P.p2 * exp_series(x1)) * inverse_series(P.p2));
    Series<R> rhs = exp_series(x0 + x1);
    return series_residual("kv-main", lhs, rhs);
}

// residual of the KRV fixed-point equation P(e^{X0+X1}) = e^{X0+X1}
template <class R>
ResidualReport krv_fixedpoint_residual(const TAutPair<R>& P) {
    AlphabetPtr a = P.p1.alphabet();
    int n = P.truncation();
    R ex = P.p1.scalar_from_rat(Rat(1)) * P.p2.scalar_from_rat(Rat(1));
    Series<R> x0 = Series<R>::generator(a, n, 0).scale(ex);
    Series<R> x1 = Series<R>::generator(a, n, 1).scale(ex);
    Series<R> e01 = exp_series(x0 + x1);
    return series_residual("krv-fixed-point", taut_apply(P, e01), e01);
}

struct KrvReport {
    ResidualReport group_like_p1, group_like_p2, fixed_point;
    bool linear_free = false;  // no linear terms in either p1 or p2
    bool necessary_pass = false;
};

// Necessary KRV_0 conditions only: the coboundary Jacobian condition is out
// of scope, so this never claims full membership.
template <class R>
KrvReport krv_check(const TAutPair<R>& P, double threshold = 0.0) {
    KrvReport rep;
    rep.group_like_p1 = group_like_residual(P.p1);
    rep.group_like_p2 = group_like_residual(P.p2);
    rep.fixed_point = krv_fixedpoint_residual(P);
    const Alphabet& a = *P.p1.alphabet();
    auto small = [&](const R& c) {
        if (RingTraits<R>::exact) return RingTraits<R>::is_zero(c);
        return RingTraits<R>::approx_mag(c) <= threshold;
    };
    rep.linear_free = small(P.p1.coeff(Word::parse(a, "X0"))) &&
                      small(P.p1.coeff(Word::parse(a, "X1"))) &&
                      small(P.p2.coeff(Word::parse(a, "X0"))) &&
                      small(P.p2.coeff(Word::parse(a, "X1")));
    rep.necessary_pass = rep.group_like_p1.passes(threshold) &&
                         rep.group_like_p2.passes(threshold) &&
                         rep.fixed_point.passes(threshold) && rep.linear_free;
    return rep;
}

// composition: (P o Q)(x) = P(Q(x)); pairs compose on the generator images
template <class R>
Series<R> taut_apply_image(const TAutPair<R>& P, const Series<R>& im) {
    return substitute(im, std::vector<Series<R>>{P.image0(), P.image1()});
}

}  // namespace assoclab
