#pragma once

#include <vector>

#include "assoclab/series.hpp"

namespace assoclab {

inline bool is_lyndon(const Word& w) {
    if (w.empty()) return false;
    const std::string& b = w.bytes();
    for (size_t i = 1; i < b.size(); ++i) {
        std::string rot = b.substr(i) + b.substr(0, i);
        if (!(b < rot)) return false;
    }
    return true;
}

// Lyndon words of exact length d over the letters of `a` (weight-1 letters
// assumed: degree = length).
inline std::vector<Word> lyndon_words(const Alphabet& a, int d) {
    std::vector<Word> out;
    size_t k = a.size();
    std::string cur(static_cast<size_t>(d), '\0');
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == d) {
            Word w{std::string(cur)};
            if (is_lyndon(w)) out.push_back(w);
            return;
        }
        for (size_t l = 0; l < k; ++l) {
            cur[pos] = static_cast<char>(l);
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    return out;
}

// Number of Lyndon words of length d over q letters (Witt's formula).
inline long witt_count(long q, int d) {
    auto mobius = [](int n) {
        int m = 1;
        for (int p = 2; p * p <= n; ++p) {
            if (n % p == 0) {
                n /= p;
                if (n % p == 0) return 0;
                m = -m;
            }
        }
        if (n > 1) m = -m;
        return m;
    };
    long total = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e != 0) continue;
        long pw = 1;
        for (int i = 0; i < d / e; ++i) pw *= q;
        total += mobius(e) * pw;
    }
    return total / d;
}

// Standard (right) bracketing of a Lyndon word, expanded in the free
// algebra: [u] = u for letters, [w] = [[u],[v]] with v the longest proper
// Lyndon suffix.
template <class R>
Series<R> lyndon_bracketing(AlphabetPtr alph, int trunc, const Word& w) {
    if (w.size() == 1) return Series<R>::generator(alph, trunc, w.letter(0));
    size_t split = 0;
    for (size_t i = 1; i < w.size(); ++i) {
        if (is_lyndon(w.suffix(i))) {
            split = i;
            break;
        }
    }
    Series<R> bu = lyndon_bracketing<R>(alph, trunc, w.prefix(split));
    Series<R> bv = lyndon_bracketing<R>(alph, trunc, w.suffix(split));
    return bu * bv - bv * bu;
}

// Basis of the degree-d component of the free Lie algebra, as expanded
// series, in Lyndon-word order.
template <class R>
std::vector<Series<R>> lie_basis(AlphabetPtr alph, int trunc, int d) {
    std::vector<Series<R>> out;
    for (const Word& w : lyndon_words(*alph, d))
        out.push_back(lyndon_bracketing<R>(alph, trunc, w));
    return out;
}

}  // namespace assoclab
