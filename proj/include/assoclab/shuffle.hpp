#pragma once

#include <map>

#include "assoclab/report.hpp"
#include "assoclab/series.hpp"

namespace assoclab {

// All interleavings of u and v preserving internal order, with multiplicity.
inline std::map<Word, long> shuffle_words(const Word& u, const Word& v) {
    if (u.empty()) return {{v, 1}};
    if (v.empty()) return {{u, 1}};
    std::map<Word, long> out;
    for (const auto& [w, m] : shuffle_words(u.suffix(1), v)) {
        Word w2 = Word::single(u.letter(0)).concat(w);
        out[w2] += m;
    }
    for (const auto& [w, m] : shuffle_words(u, v.suffix(1))) {
        Word w2 = Word::single(v.letter(0)).concat(w);
        out[w2] += m;
    }
    return out;
}

// Max violation of the shuffle identities c_u c_v = sum_{w in sh(u,v)} c_w
// over nonempty word pairs with deg u + deg v <= N. Zero over exact rings
// iff phi is group-like to degree N (Eq. (1) in coefficient form).
template <class R>
ResidualReport group_like_residual(const Series<R>& phi) {
    ResidualReport rep = ResidualReport::make<R>("group-like", phi.truncation());
    R c0 = phi.constant_term();
    if (!RingTraits<R>::is_zero(c0 - RingTraits<R>::one())) {
        rep.infinite = true;
        rep.zero = false;
        rep.note = "constant term is not 1";
        return rep;
    }
    const auto& a = *phi.alphabet();
    int n = phi.truncation();
    std::vector<Word> words;
    // enumerate all nonempty words of degree <= n-1 (the partner needs >= 1)
    auto gen = [&](auto&& self, const Word& w, int deg) -> void {
        for (size_t l = 0; l < a.size(); ++l) {
            int d2 = deg + a.weight(static_cast<int>(l));
            if (d2 > n - 1) continue;
            Word w2 = w.appended(static_cast<int>(l));
            words.push_back(w2);
            self(self, w2, d2);
        }
    };
    gen(gen, Word(), 0);
    for (const Word& u : words) {
        int du = u.degree(a);
        for (const Word& v : words) {
            if (du + v.degree(a) > n) continue;
            R lhs = phi.coeff(u) * phi.coeff(v);
            R rhs = RingTraits<R>::zero();
            for (const auto& [w, m] : shuffle_words(u, v))
                rhs = rhs + phi.coeff(w) * RingTraits<R>::from_rat(Rat(m));
            R diff = lhs - rhs;
            rep.consider(diff, u.display(a) + " | " + v.display(a));
        }
    }
    return rep;
}

}  // namespace assoclab
