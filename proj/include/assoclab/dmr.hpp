#pragma once

#include <vector>

#include "assoclab/report.hpp"
#include "assoclab/series.hpp"
#include "assoclab/shuffle.hpp"

namespace assoclab {

// The linear map pi_Y: words ending in X0 die; X0^{n_m-1}X1 ... X0^{n_1-1}X1
// (blocks read left to right) maps to (-1)^m Y_{n_m} ... Y_{n_1}.
template <class R>
Series<R> pi_Y(const Series<R>& phi) {
    int n = phi.truncation();
    AlphabetPtr ya = y_alphabet(std::max(n, 1));
    Series<R> out(ya, n);
    const Alphabet& xa = *phi.alphabet();
    int x0 = xa.index_of("X0"), x1 = xa.index_of("X1");
    if (x0 < 0 || x1 < 0) throw InputError("pi_Y expects a series over {X0, X1}");
    for (const auto& [w, c] : phi.terms()) {
        if (w.empty()) {
            out.add_coeff(Word(), c);
            continue;
        }
        if (w.letter(w.size() - 1) == x0) continue;
        Word yw;
        int m = 0;
        size_t i = 0;
        while (i < w.size()) {
            int run = 0;
            while (w.letter(i) == x0) {
                ++run;
                ++i;
            }
            ++i;  // consume the X1 that ends the block
            yw = yw.appended(run);  // letter index run = Y_{run+1}
            ++m;
        }
        out.add_coeff(yw, m % 2 == 0 ? c : -c);
    }
    return out;
}

// <Delta_*(w), u (x) v> for Y-alphabet words: the letterwise coproduct
// Delta_* Y_n = sum_i Y_i (x) Y_{n-i} (Y_0 = 1) extended multiplicatively.
// A pure splitting count, so it is an integer.
inline long delta_star_count(const Word& w, const Word& u, const Word& v) {
    // DP over (suffix of w, consumed of u, consumed of v)
    size_t lw = w.size(), lu = u.size(), lv = v.size();
    std::vector<long> memo((lw + 1) * (lu + 1) * (lv + 1), -1);
    auto idx = [&](size_t iw, size_t iu, size_t iv) {
        return (iw * (lu + 1) + iu) * (lv + 1) + iv;
    };
    auto rec = [&](auto&& self, size_t iw, size_t iu, size_t iv) -> long {
        long& slot = memo[idx(iw, iu, iv)];
        if (slot >= 0) return slot;
        if (iw == lw) return slot = (iu == lu && iv == lv) ? 1 : 0;
        int n = w.letter(iw) + 1;  // weight of this Y letter
        long total = 0;
        for (int i = 0; i <= n; ++i) {
            size_t nu = iu, nv = iv;
            if (i > 0) {
                if (nu >= lu || u.letter(nu) != i - 1) continue;
                ++nu;
            }
            int j = n - i;
            if (j > 0) {
                if (nv >= lv || v.letter(nv) != j - 1) continue;
                ++nv;
            }
            total += self(self, iw + 1, nu, nv);
        }
        return slot = total;
    };
    return rec(rec, 0, 0, 0);
}

// <Delta_*(s), u (x) v> for a Y-series
template <class R>
R delta_star_pair(const Series<R>& s, const Word& u, const Word& v) {
    R total = RingTraits<R>::zero();
    for (const auto& [w, c] : s.terms()) {
        long m = delta_star_count(w, u, v);
        if (m != 0) total = total + RingTraits<R>::mul_long(c, m);
    }
    return total;
}

// phi_* = exp( sum_n (-1)^n/n c_{X0^{n-1} X1}(phi) Y1^n ) . pi_Y(phi)
template <class R>
Series<R> star_regularize(const Series<R>& phi) {
    R c0 = phi.constant_term();
    if (!RingTraits<R>::is_zero(c0 - RingTraits<R>::one()))
        throw InputError("star_regularize requires constant term 1");
    int n = phi.truncation();
    Series<R> py = pi_Y(phi);
    Series<R> corr(py.alphabet(), n);
    const Alphabet& xa = *phi.alphabet();
    int x0 = xa.index_of("X0"), x1 = xa.index_of("X1");
    for (int k = 1; k <= n; ++k) {
        Word w;  // X0^{k-1} X1
        for (int i = 0; i + 1 < k; ++i) w = w.appended(x0);
        w = w.appended(x1);
        R c = phi.coeff(w);
        if (RingTraits<R>::is_zero(c)) continue;
        Word y1k;  // Y1^k
        for (int i = 0; i < k; ++i) y1k = y1k.appended(0);
        Rat f(k % 2 == 0 ? 1 : -1, k);
        corr.add_coeff(y1k, c * py.scalar_from_rat(f));
    }
    return exp_series(corr) * py;
}

inline std::vector<Word> y_words_up_to(int weight) {
    std::vector<Word> out{Word()};
    auto rec = [&](auto&& self, const Word& w, int rem) -> void {
        for (int k = 1; k <= rem; ++k) {
            Word w2 = w.appended(k - 1);
            out.push_back(w2);
            self(self, w2, rem - k);
        }
    };
    rec(rec, Word(), weight);
    return out;
}

// Eq.-(6) residual: Delta_*(phi_*) = phi_* (x)^ phi_*, checked coefficient-
// pairwise over Y-word pairs with joint weight <= N.
template <class R>
ResidualReport double_shuffle_residual(const Series<R>& phi,
                                       bool kill_linear = false) {
    Series<R> input = phi;
    if (kill_linear) {
        const Alphabet& xa = *phi.alphabet();
        input.set_coeff(Word::parse(xa, "X0"), RingTraits<R>::zero());
        input.set_coeff(Word::parse(xa, "X1"), RingTraits<R>::zero());
    }
    int n = phi.truncation();
    Series<R> phis = star_regularize(input);
    const Alphabet& ya = *phis.alphabet();
    ResidualReport rep = ResidualReport::make<R>("double-shuffle", n);
    std::vector<Word> words = y_words_up_to(n);
    for (const Word& u : words) {
        int wu = u.degree(ya);
        for (const Word& v : words) {
            if (wu + v.degree(ya) > n) continue;
            R lhs = delta_star_pair(phis, u, v);
            R rhs = phis.coeff(u) * phis.coeff(v);
            R diff = lhs - rhs;
            rep.consider(diff, u.display(ya) + " | " + v.display(ya));
        }
    }
    return rep;
}

struct Dmr0Report {
    bool verdict = false;
    ResidualReport group_like, double_shuffle;
    bool linear_zero = false;
    bool quadratic_zero = false;
};

template <class R>
Dmr0Report is_dmr0(const Series<R>& phi, double threshold = 0.0) {
    Dmr0Report rep;
    rep.group_like = group_like_residual(phi);
    if (rep.group_like.infinite) return rep;
    rep.double_shuffle = double_shuffle_residual(phi);
    const Alphabet& a = *phi.alphabet();
    auto small = [&](const R& c) {
        if (RingTraits<R>::exact) return RingTraits<R>::is_zero(c);
        return RingTraits<R>::approx_mag(c) <= threshold;
    };
    rep.linear_zero = small(phi.coeff(Word::parse(a, "X0"))) &&
                      small(phi.coeff(Word::parse(a, "X1")));
    rep.quadratic_zero = small(phi.coeff(Word::parse(a, "X0 X0"))) &&
                         small(phi.coeff(Word::parse(a, "X0 X1"))) &&
                         small(phi.coeff(Word::parse(a, "X1 X0"))) &&
                         small(phi.coeff(Word::parse(a, "X1 X1")));
    rep.verdict = rep.group_like.passes(threshold) &&
                  rep.double_shuffle.passes(threshold) && rep.linear_zero &&
                  rep.quadratic_zero;
    return rep;
}

}  // namespace assoclab
