#pragma once

#include <mutex>
#include <unordered_map>

#include "assoclab/report.hpp"
#include "assoclab/series.hpp"

namespace assoclab {

// Universal enveloping algebra of the pure braid Lie algebra a_n (n = 3, 4):
// generators t_ij (i<j), relations t_ij = t_ji, [t_ij, t_ik + t_jk] = 0 and
// [t_ij, t_kl] = 0 for disjoint pairs. Words are kept in the level-sorted
// normal form (level of t_ij is j, levels non-decreasing along the word),
// which is a PBW basis for U(a_n) = U(F_1) (x) ... (x) U(F_{n-1}).
class BraidAlgebra {
  public:
    using LinComb = std::vector<std::pair<Word, long long>>;

    explicit BraidAlgebra(int strands) : n_(strands) {
        if (strands != 3 && strands != 4)
            throw InputError("braid algebra supports 3 or 4 strands");
        std::vector<std::string> names;
        std::vector<int> weights;
        for (int j = 2; j <= n_; ++j)
            for (int i = 1; i < j; ++i) {
                names.push_back("t" + std::to_string(i) + std::to_string(j));
                weights.push_back(1);
                lo_.push_back(i);
                hi_.push_back(j);
            }
        alph_ = std::make_shared<Alphabet>("braid" + std::to_string(n_),
                                           std::move(names), std::move(weights));
    }

    int strands() const { return n_; }
    const AlphabetPtr& alphabet() const { return alph_; }
    size_t generator_count() const { return lo_.size(); }
    int level(int letter) const { return hi_[letter]; }
    int strand_lo(int letter) const { return lo_[letter]; }
    int strand_hi(int letter) const { return hi_[letter]; }

    // letter index of t_ij; pairs are canonicalized (t_ji == t_ij)
    int generator(int i, int j) const {
        if (i == j || i < 1 || j < 1 || i > n_ || j > n_)
            throw InputError("invalid braid generator index pair");
        if (i > j) std::swap(i, j);
        for (size_t g = 0; g < lo_.size(); ++g)
            if (lo_[g] == i && hi_[g] == j) return static_cast<int>(g);
        throw InputError("invalid braid generator index pair");
    }

    // accepts "t21" for "t12"; rejects "t11" and unknown strands
    Word parse_word(const std::string& text) const {
        Word w;
        std::istringstream in(text);
        std::string tok;
        while (in >> tok) {
            if (tok.size() != 3 || tok[0] != 't' || !std::isdigit((unsigned char)tok[1]) ||
                !std::isdigit((unsigned char)tok[2]))
                throw InputError("unknown generator '" + tok + "' in braid word");
            w = w.appended(generator(tok[1] - '0', tok[2] - '0'));
        }
        return w;
    }

    bool is_normal(const Word& w) const {
        for (size_t i = 0; i + 1 < w.size(); ++i)
            if (level(w.letter(i)) > level(w.letter(i + 1))) return false;
        return true;
    }

    // number of level-sorted words of degree d: coefficient of t^d in
    // prod_{m=1}^{n-1} 1/(1 - m t)
    long dimension(int d) const {
        if (d < 0) return 0;
        std::vector<long> dp(static_cast<size_t>(d) + 1, 0);
        dp[0] = 1;
        for (int m = 1; m <= n_ - 1; ++m)
            for (int k = 1; k <= d; ++k) dp[k] += m * dp[k - 1];
        return dp[d];
    }

    // normal form of (normal word) * (single letter), cached
    const LinComb& insert_right(const Word& v, int x) const {
        std::string key = v.bytes();
        key.push_back(static_cast<char>(x));
        {
            std::lock_guard<std::recursive_mutex> lk(mu_);
            auto it = insert_cache_.find(key);
            if (it != insert_cache_.end()) return it->second;
        }
        LinComb result;
        if (v.empty() || level(v.letter(v.size() - 1)) <= level(x)) {
            result.emplace_back(v.appended(x), 1);
        } else {
            Word vp = v.prefix(v.size() - 1);
            int y = v.letter(v.size() - 1);
            std::map<Word, long long> acc;
            for (const auto& [w, c] : insert_right(vp, x)) acc[w.appended(y)] += c;
            // commutator correction [y,x]: zero for disjoint strand pairs,
            // otherwise [t_kn, t_ij] = -+ [t_in, t_jn] with everything level n
            int i = lo_[x], j = hi_[x], k = lo_[y], n = hi_[y];
            if (k == i || k == j) {
                int a = generator(i, n), b = generator(j, n);
                long long sgn = (k == i) ? -1 : +1;
                acc[vp.appended(a).appended(b)] += sgn;
                acc[vp.appended(b).appended(a)] -= sgn;
            }
            for (auto& [w, c] : acc)
                if (c != 0) result.emplace_back(w, c);
        }
        std::lock_guard<std::recursive_mutex> lk(mu_);
        return insert_cache_.emplace(std::move(key), std::move(result)).first->second;
    }

    // normal form of the concatenation u*v of two normal words, cached
    const LinComb& word_mul(const Word& u, const Word& v) const {
        std::string key = u.bytes();
        key.push_back('\x7f');
        key += v.bytes();
        {
            std::lock_guard<std::recursive_mutex> lk(mu_);
            auto it = mul_cache_.find(key);
            if (it != mul_cache_.end()) return it->second;
        }
        std::map<Word, long long> cur{{u, 1}};
        for (size_t p = 0; p < v.size(); ++p) {
            int x = v.letter(p);
            std::map<Word, long long> nxt;
            for (const auto& [w, c] : cur)
                for (const auto& [w2, c2] : insert_right(w, x)) nxt[w2] += c * c2;
            cur.clear();
            for (auto& [w, c] : nxt)
                if (c != 0) cur.emplace(w, c);
        }
        LinComb result(cur.begin(), cur.end());
        std::lock_guard<std::recursive_mutex> lk(mu_);
        return mul_cache_.emplace(std::move(key), std::move(result)).first->second;
    }

    // normal form of an arbitrary raw word
    LinComb normal_form_raw(const Word& raw) const {
        for (size_t i = 0; i < raw.size(); ++i)
            if (raw.letter(i) >= static_cast<int>(generator_count()))
                throw InputError("unknown generator in braid word");
        return word_mul(Word(), raw);
    }

    friend bool operator==(const BraidAlgebra& a, const BraidAlgebra& b) {
        return a.n_ == b.n_;
    }

  private:
    int n_;
    AlphabetPtr alph_;
    std::vector<int> lo_, hi_;
    mutable std::recursive_mutex mu_;
    mutable std::unordered_map<std::string, LinComb> insert_cache_;
    mutable std::unordered_map<std::string, LinComb> mul_cache_;
};

using BraidAlgebraPtr = std::shared_ptr<const BraidAlgebra>;

inline BraidAlgebraPtr braid_algebra(int strands) {
    static const BraidAlgebraPtr a3 = std::make_shared<BraidAlgebra>(3);
    static const BraidAlgebraPtr a4 = std::make_shared<BraidAlgebra>(4);
    if (strands == 3) return a3;
    if (strands == 4) return a4;
    throw InputError("braid algebra supports 3 or 4 strands");
}

// Truncated element of U(a_n) in the level-sorted basis.
template <class R>
class BraidSeries {
  public:
    using scalar_type = R;
    using Terms = std::map<Word, R>;

    BraidSeries(BraidAlgebraPtr alg, int truncation)
        : alg_(std::move(alg)), trunc_(truncation) {}

    static BraidSeries unit(BraidAlgebraPtr alg, int truncation) {
        BraidSeries s(std::move(alg), truncation);
        s.terms_[Word()] = RingTraits<R>::one();
        return s;
    }
    static BraidSeries generator(const BraidAlgebraPtr& alg, int truncation, int i,
                                 int j) {
        BraidSeries s(alg, truncation);
        if (truncation >= 1)
            s.terms_[Word::single(alg->generator(i, j))] = RingTraits<R>::one();
        return s;
    }
    // t_12 + t_13 + t_23: central in U(a_3); used by the hexagon checks
    static BraidSeries central_sum(const BraidAlgebraPtr& alg, int truncation) {
        BraidSeries s(alg, truncation);
        if (truncation >= 1)
            for (size_t g = 0; g < alg->generator_count(); ++g)
                s.terms_[Word::single(static_cast<int>(g))] = RingTraits<R>::one();
        return s;
    }

    const BraidAlgebraPtr& algebra() const { return alg_; }
    const AlphabetPtr& alphabet() const { return alg_->alphabet(); }
    int truncation() const { return trunc_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    BraidSeries unit_like() const { return unit(alg_, trunc_); }
    BraidSeries zero_like() const { return BraidSeries(alg_, trunc_); }

    int degree_of(const Word& w) const { return static_cast<int>(w.size()); }
    std::string display_word(const Word& w) const {
        return w.display(*alg_->alphabet());
    }

    R coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? RingTraits<R>::zero() : it->second;
    }
    R constant_term() const { return coeff(Word()); }

    void add_coeff(const Word& w, const R& c) {
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            if (!RingTraits<R>::is_zero(c)) terms_.emplace(w, c);
        } else {
            it->second = it->second + c;
            if (RingTraits<R>::is_zero(it->second)) terms_.erase(it);
        }
    }
    void set_coeff(const Word& w, R c) {
        if (!alg_->is_normal(w))
            throw InputError("braid coefficient set on a non-normal word");
        if (RingTraits<R>::is_zero(c))
            terms_.erase(w);
        else
            terms_[w] = std::move(c);
    }

    // sum of c * nf(w) for a raw (not necessarily normal) word
    void add_raw(const Word& raw, const R& c) {
        for (const auto& [w, m] : alg_->normal_form_raw(raw))
            add_coeff(w, RingTraits<R>::mul_long(c, m));
    }

    R scalar_from_rat(const Rat& q) const;

    void require_same_context(const BraidSeries& o) const {
        if (!(*alg_ == *o.alg_))
            throw InputError("braid algebra mismatch between operands");
    }

    friend BraidSeries operator+(const BraidSeries& a, const BraidSeries& b) {
        a.require_same_context(b);
        BraidSeries r(a.alg_, std::min(a.trunc_, b.trunc_));
        for (const auto& [w, c] : a.terms_)
            if (r.degree_of(w) <= r.trunc_) r.add_coeff(w, c);
        for (const auto& [w, c] : b.terms_)
            if (r.degree_of(w) <= r.trunc_) r.add_coeff(w, c);
        return r;
    }
    friend BraidSeries operator-(const BraidSeries& a, const BraidSeries& b) {
        a.require_same_context(b);
        BraidSeries r(a.alg_, std::min(a.trunc_, b.trunc_));
        for (const auto& [w, c] : a.terms_)
            if (r.degree_of(w) <= r.trunc_) r.add_coeff(w, c);
        for (const auto& [w, c] : b.terms_)
            if (r.degree_of(w) <= r.trunc_) r.add_coeff(w, -c);
        return r;
    }
    BraidSeries operator-() const {
        BraidSeries r(alg_, trunc_);
        for (const auto& [w, c] : terms_) r.terms_[w] = -c;
        return r;
    }

    friend BraidSeries operator*(const BraidSeries& a, const BraidSeries& b) {
        a.require_same_context(b);
        BraidSeries r(a.alg_, std::min(a.trunc_, b.trunc_));
        for (const auto& [u, cu] : a.terms_) {
            int du = static_cast<int>(u.size());
            if (du > r.trunc_) continue;
            for (const auto& [v, cv] : b.terms_) {
                if (du + static_cast<int>(v.size()) > r.trunc_) continue;
                R cc = cu * cv;
                for (const auto& [w, m] : a.alg_->word_mul(u, v))
                    r.add_coeff(w, RingTraits<R>::mul_long(cc, m));
            }
        }
        return r;
    }

    BraidSeries scale(const R& c) const {
        BraidSeries r(alg_, trunc_);
        if (RingTraits<R>::is_zero(c)) return r;
        for (const auto& [w, q] : terms_) {
            R v = q * c;
            if (!RingTraits<R>::is_zero(v)) r.terms_[w] = std::move(v);
        }
        return r;
    }
    BraidSeries scale_rat(const Rat& q) const { return scale(scalar_from_rat(q)); }

    BraidSeries truncated(int new_trunc) const {
        BraidSeries r(alg_, std::min(trunc_, new_trunc));
        for (const auto& [w, c] : terms_)
            if (static_cast<int>(w.size()) <= r.trunc_) r.terms_[w] = c;
        return r;
    }
    BraidSeries component(int d) const {
        BraidSeries r(alg_, trunc_);
        for (const auto& [w, c] : terms_)
            if (static_cast<int>(w.size()) == d) r.terms_[w] = c;
        return r;
    }

    friend bool operator==(const BraidSeries& a, const BraidSeries& b) {
        return *a.alg_ == *b.alg_ && a.terms_ == b.terms_;
    }

  private:
    BraidAlgebraPtr alg_;
    int trunc_;
    Terms terms_;
};

template <class R>
R BraidSeries<R>::scalar_from_rat(const Rat& q) const {
    return RingTraits<R>::from_rat(q);
}
template <>
inline BigComplex BraidSeries<BigComplex>::scalar_from_rat(const Rat& q) const {
    mpfr_prec_t p = 64;
    for (const auto& [w, c] : terms_) p = std::max(p, c.prec());
    return BigComplex(q, p);
}

// normal_form of a raw word as a series (spec op)
template <class R = Rat>
BraidSeries<R> normal_form(const BraidAlgebraPtr& alg, const Word& raw, int trunc) {
    BraidSeries<R> out(alg, trunc);
    if (static_cast<int>(raw.size()) <= trunc)
        out.add_raw(raw, RingTraits<R>::one());
    return out;
}

// phi(arg0, arg1): substitute a two-letter series into U(a_n) and normalize
template <class R>
BraidSeries<R> inject(const Series<R>& phi, const BraidSeries<R>& arg0,
                      const BraidSeries<R>& arg1) {
    arg0.require_same_context(arg1);
    return substitute(phi, std::vector<BraidSeries<R>>{arg0, arg1});
}

}  // namespace assoclab
