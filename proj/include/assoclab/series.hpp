#pragma once

#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "assoclab/ring.hpp"
#include "assoclab/word.hpp"

namespace assoclab {

// Degree-truncated formal power series in the free algebra on an alphabet,
// stored as a sparse word -> coefficient map. Immutable in spirit: all
// operations return new values; truncation of a result is the min of the
// operands' truncations.
template <class R>
class Series {
  public:
    using scalar_type = R;
    using Terms = std::map<Word, R>;

    Series(AlphabetPtr alph, int truncation)
        : alph_(std::move(alph)), trunc_(truncation) {}

    static Series unit(AlphabetPtr alph, int truncation) {
        Series s(std::move(alph), truncation);
        s.terms_[Word()] = RingTraits<R>::one();
        return s;
    }
    static Series generator(AlphabetPtr alph, int truncation, int letter) {
        Series s(alph, truncation);
        if (alph->weight(letter) <= truncation)
            s.terms_[Word::single(letter)] = RingTraits<R>::one();
        return s;
    }

    const AlphabetPtr& alphabet() const { return alph_; }
    int truncation() const { return trunc_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    Series unit_like() const { return unit(alph_, trunc_); }
    Series zero_like() const { return Series(alph_, trunc_); }

    R coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? RingTraits<R>::zero() : it->second;
    }
    R constant_term() const { return coeff(Word()); }

    void set_coeff(const Word& w, R c) {
        if (w.degree(*alph_) > trunc_)
            throw InputError("word exceeds truncation degree");
        if (RingTraits<R>::is_zero(c))
            terms_.erase(w);
        else
            terms_[w] = std::move(c);
    }
    void add_coeff(const Word& w, const R& c) {
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            if (!RingTraits<R>::is_zero(c)) terms_.emplace(w, c);
        } else {
            it->second = it->second + c;
            if (RingTraits<R>::is_zero(it->second)) terms_.erase(it);
        }
    }

    int degree_of(const Word& w) const { return w.degree(*alph_); }
    std::string display_word(const Word& w) const { return w.display(*alph_); }

    // a scalar tuned to this series' working precision (no-op on exact rings)
    R scalar_from_rat(const Rat& q) const;

    friend Series operator+(const Series& a, const Series& b) {
        a.require_same_alphabet(b);
        Series r(a.alph_, std::min(a.trunc_, b.trunc_));
        for (const auto& [w, c] : a.terms_)
            if (r.degree_of(w) <= r.trunc_) r.add_coeff(w, c);
        for (const auto& [w, c] : b.terms_)
            if (r.degree_of(w) <= r.trunc_) r.add_coeff(w, c);
        return r;
    }
    friend Series operator-(const Series& a, const Series& b) {
        a.require_same_alphabet(b);
        Series r(a.alph_, std::min(a.trunc_, b.trunc_));
        for (const auto& [w, c] : a.terms_)
            if (r.degree_of(w) <= r.trunc_) r.add_coeff(w, c);
        for (const auto& [w, c] : b.terms_)
            if (r.degree_of(w) <= r.trunc_) r.add_coeff(w, -c);
        return r;
    }
    Series operator-() const {
        Series r(alph_, trunc_);
        for (const auto& [w, c] : terms_) r.terms_[w] = -c;
        return r;
    }

    // concatenation product, truncated to min(N_a, N_b)
    friend Series operator*(const Series& a, const Series& b) {
        a.require_same_alphabet(b);
        Series r(a.alph_, std::min(a.trunc_, b.trunc_));
        for (const auto& [u, cu] : a.terms_) {
            int du = a.degree_of(u);
            if (du > r.trunc_) continue;
            for (const auto& [v, cv] : b.terms_) {
                if (du + b.degree_of(v) > r.trunc_) continue;
                r.add_coeff(u.concat(v), cu * cv);
            }
        }
        return r;
    }

    Series scale(const R& c) const {
        Series r(alph_, trunc_);
        if (RingTraits<R>::is_zero(c)) return r;
        for (const auto& [w, q] : terms_) {
            R v = q * c;
            if (!RingTraits<R>::is_zero(v)) r.terms_[w] = std::move(v);
        }
        return r;
    }
    Series scale_rat(const Rat& q) const { return scale(scalar_from_rat(q)); }

    Series truncated(int new_trunc) const {
        Series r(alph_, std::min(trunc_, new_trunc));
        for (const auto& [w, c] : terms_)
            if (degree_of(w) <= r.trunc_) r.terms_[w] = c;
        return r;
    }

    // homogeneous component of given degree
    Series component(int d) const {
        Series r(alph_, trunc_);
        for (const auto& [w, c] : terms_)
            if (degree_of(w) == d) r.terms_[w] = c;
        return r;
    }

    int min_term_degree() const {
        int best = trunc_ + 1;
        for (const auto& [w, c] : terms_) best = std::min(best, degree_of(w));
        return best;
    }

    void require_same_alphabet(const Series& o) const {
        if (!(*alph_ == *o.alph_))
            throw InputError("alphabet mismatch between series operands");
    }
    void require_same_context(const Series& o) const { require_same_alphabet(o); }

    friend bool operator==(const Series& a, const Series& b) {
        return *a.alph_ == *b.alph_ && a.terms_ == b.terms_;
    }

  private:
    AlphabetPtr alph_;
    int trunc_;
    Terms terms_;
};

template <class R>
R Series<R>::scalar_from_rat(const Rat& q) const {
    return RingTraits<R>::from_rat(q);
}

template <>
inline BigComplex Series<BigComplex>::scalar_from_rat(const Rat& q) const {
    mpfr_prec_t p = 64;
    for (const auto& [w, c] : terms_) p = std::max(p, c.prec());
    return BigComplex(q, p);
}

// --- generic series algorithms; S is Series<R> or BraidSeries<R> ---

template <class S>
S exp_series(const S& s) {
    using R = typename S::scalar_type;
    if (!RingTraits<R>::is_zero(s.constant_term()))
        throw InputError("exp requires zero constant term");
    int n = s.truncation();
    S e = s.unit_like();
    for (int k = n; k >= 1; --k) e = s.unit_like() + (s * e).scale_rat(Rat(1, k));
    return e;
}

template <class S>
S log_series(const S& g) {
    using R = typename S::scalar_type;
    R c0 = g.constant_term();
    if (!RingTraits<R>::is_zero(c0 - RingTraits<R>::one()))
        throw InputError("log requires constant term 1");
    int n = g.truncation();
    S x = g - g.unit_like();
    S power = g.unit_like();
    S out = g.zero_like();
    for (int k = 1; k <= n; ++k) {
        power = power * x;
        if (power.is_zero()) break;
        out = out + power.scale_rat(Rat(k % 2 == 1 ? 1 : -1, k));
    }
    return out;
}

template <class S>
S inverse_series(const S& g) {
    using R = typename S::scalar_type;
    R c0 = g.constant_term();
    if (!RingTraits<R>::is_zero(c0 - RingTraits<R>::one()))
        throw InputError("inverse requires constant term 1");
    int n = g.truncation();
    S x = g.unit_like() - g;  // -higher part
    S power = g.unit_like();
    S out = g.unit_like();
    for (int k = 1; k <= n; ++k) {
        power = power * x;
        if (power.is_zero()) break;
        out = out + power;
    }
    return out;
}

// Continuous algebra homomorphism determined by letter images. The images
// must have zero constant term and lowest degree >= 1 so degrees never drop.
template <class R, class S>
S substitute(const Series<R>& phi, const std::vector<S>& images) {
    using RT = typename S::scalar_type;
    static_assert(std::is_same_v<R, RT>, "coefficient rings must agree");
    if (images.size() < phi.alphabet()->size())
        throw InputError("substitute: missing image for a generator");
    for (size_t i = 0; i < images.size(); ++i) {
        if (!RingTraits<R>::is_zero(images[i].constant_term()))
            throw InputError("substitute: image has nonzero constant term");
        if (i + 1 < images.size()) images[i].require_same_context(images[i + 1]);
    }
    int trunc = images.empty() ? phi.truncation() : images[0].truncation();
    for (const auto& im : images) trunc = std::min(trunc, im.truncation());
    trunc = std::min(trunc, phi.truncation());

    std::unordered_map<Word, S, WordHash> memo;
    auto image_of = [&](auto&& self, const Word& w) -> const S& {
        auto it = memo.find(w);
        if (it != memo.end()) return it->second;
        S val = images[0].unit_like().truncated(trunc);
        if (!w.empty()) {
            const S& head = self(self, w.prefix(w.size() - 1));
            val = head * images[w.letter(w.size() - 1)].truncated(trunc);
        }
        return memo.emplace(w, std::move(val)).first->second;
    };

    S out = images[0].zero_like().truncated(trunc);
    for (const auto& [w, c] : phi.terms()) {
        if (static_cast<int>(w.size()) > trunc) continue;  // image degree >= |w|
        out = out + image_of(image_of, w).scale(c);
    }
    return out;
}

// ring conversion, e.g. Rat -> QuadExt or Rat -> BigComplex
template <class R2, class R1, class F>
Series<R2> convert_series(const Series<R1>& s, F f) {
    Series<R2> out(s.alphabet(), s.truncation());
    for (const auto& [w, c] : s.terms()) out.set_coeff(w, f(c));
    return out;
}

}  // namespace assoclab
