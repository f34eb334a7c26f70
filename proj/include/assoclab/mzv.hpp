#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "assoclab/poly.hpp"
#include "assoclab/report.hpp"
#include "assoclab/series.hpp"

namespace assoclab {

// Index (k1,...,km) of a multiple zeta value, Eq.-(5) convention throughout:
// zeta(k1,...,km) = sum over 0 < n1 < ... < nm of prod ni^{-ki}; the series
// converges iff the LAST entry km exceeds 1 (the admissible condition).
struct MzvIndex {
    std::vector<int> k;

    int weight() const {
        int w = 0;
        for (int x : k) w += x;
        return w;
    }
    int depth() const { return static_cast<int>(k.size()); }
    bool admissible() const { return !k.empty() && k.back() > 1; }
    void validate() const {
        if (k.empty()) throw InputError("empty MZV index");
        for (int x : k)
            if (x < 1) throw InputError("MZV index entries must be positive");
    }

    std::string symbol() const {
        std::string s = "zeta(";
        for (size_t i = 0; i < k.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(k[i]);
        }
        return s + ")";
    }

    static MzvIndex parse(const std::string& text) {
        std::string t = text;
        if (t.rfind("zeta(", 0) == 0 && t.back() == ')')
            t = t.substr(5, t.size() - 6);
        MzvIndex idx;
        std::string cur;
        for (char c : t + ",") {
            if (c == ',') {
                if (cur.empty()) throw InputError("bad MZV index '" + text + "'");
                idx.k.push_back(std::stoi(cur));
                cur.clear();
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                cur += c;
            } else if (c != ' ') {
                throw InputError("bad MZV index '" + text + "'");
            }
        }
        idx.validate();
        return idx;
    }

    // the word X0^{km-1} X1 ... X0^{k1-1} X1 carrying (-1)^m zeta(k) in Phi_KZ
    Word phi_word() const {
        Word w;
        for (auto it = k.rbegin(); it != k.rend(); ++it) {
            for (int i = 0; i + 1 < *it; ++i) w = w.appended(0);
            w = w.appended(1);
        }
        return w;
    }

    // inverse of phi_word for convergent words (start X0, end X1)
    static std::optional<MzvIndex> from_phi_word(const Word& w) {
        if (w.empty() || w.letter(0) != 0 || w.letter(w.size() - 1) != 1)
            return std::nullopt;
        std::vector<int> blocks;
        size_t i = 0;
        while (i < w.size()) {
            int run = 0;
            while (w.letter(i) == 0) {
                ++run;
                ++i;
            }
            ++i;
            blocks.push_back(run + 1);
        }
        MzvIndex idx;
        idx.k.assign(blocks.rbegin(), blocks.rend());
        return idx;
    }
};

inline bool operator<(const MzvIndex& a, const MzvIndex& b) { return a.k < b.k; }

namespace detail {

// Power-series evaluation at 1/2 of the iterated integral whose forms are
// listed innermost-first (letter 0 = dt/t, letter 1 = dt/(1-t)). All series
// coefficients stay in [0,1], so the tail beyond T terms is below 2^{-T}.
inline BigFloat holder_eval_half(const std::vector<int>& inner_first, int terms,
                                 mpfr_prec_t wp) {
    std::vector<BigFloat> c(static_cast<size_t>(terms) + 1, BigFloat(0L, wp));
    c[0] = BigFloat(1L, wp);
    for (int a : inner_first) {
        std::vector<BigFloat> d(static_cast<size_t>(terms) + 1, BigFloat(0L, wp));
        if (a == 0) {
            for (int n = 1; n <= terms; ++n) d[n] = c[n].div_ui(n);
        } else {
            BigFloat run(0L, wp);
            for (int n = 1; n <= terms; ++n) {
                run += c[n - 1];
                d[n] = run.div_ui(n);
            }
        }
        c = std::move(d);
    }
    BigFloat s(0L, wp);
    for (int n = terms; n >= 1; --n) {
        s += c[n];
        s = s.div_ui(2);
    }
    return s + c[0];
}

// Hoelder convolution at 1/2: I(word) = sum_j I_{1/2}(dual of the outer j
// letters) * I_{1/2}(reversal of the rest); geometric 2^{-n} convergence.
inline BigFloat holder_integral(const std::vector<int>& outer_first, int digits) {
    mpfr_prec_t wp = bits_for_digits(digits + 12);
    int terms = static_cast<int>((digits + 12) * 3.3219280948873626) + 16;
    size_t w = outer_first.size();
    BigFloat total(0L, wp);
    for (size_t j = 0; j <= w; ++j) {
        std::vector<int> left;  // dual of outer part, original order
        for (size_t i = 0; i < j; ++i) left.push_back(1 - outer_first[i]);
        std::vector<int> right;  // inner part, reversed (innermost first)
        for (size_t i = w; i > j; --i) right.push_back(outer_first[i - 1]);
        total += holder_eval_half(left, terms, wp) *
                 holder_eval_half(right, terms, wp);
    }
    return total;
}

}  // namespace detail

// zeta(k1,...,km) to `digits` correct digits (tail bound ~ (w+1) 2^{-T}).
inline BigFloat zeta_value(const MzvIndex& idx, int digits) {
    idx.validate();
    if (!idx.admissible())
        throw InputError(idx.symbol() +
                         " is not admissible (last entry must exceed 1); "
                         "regularized values come from shuffle_regularize");
    Word w = idx.phi_word();
    std::vector<int> letters;
    for (size_t i = 0; i < w.size(); ++i) letters.push_back(w.letter(i));
    return detail::holder_integral(letters, digits);
}

// Persistent value cache keyed by index; whole-file atomic replacement on
// save keeps concurrent readers safe.
class MzvTable {
  public:
    explicit MzvTable(int digits, std::string cache_path = "")
        : digits_(digits), path_(std::move(cache_path)) {
        if (!path_.empty()) load();
    }

    int digits() const { return digits_; }

    const BigFloat& value(const MzvIndex& idx) {
        auto it = map_.find(idx.k);
        if (it != map_.end()) return it->second;
        BigFloat v = zeta_value(idx, digits_);
        dirty_ = true;
        return map_.emplace(idx.k, std::move(v)).first->second;
    }

    size_t size() const { return map_.size(); }

    void load() {
        std::ifstream in(path_);
        if (!in) return;
        nlohmann::json j;
        try {
            in >> j;
        } catch (...) {
            return;  // unreadable cache is simply ignored
        }
        if (!j.contains("digits") || j["digits"].get<int>() < digits_) return;
        mpfr_prec_t wp = bits_for_digits(digits_ + 12);
        for (const auto& e : j["entries"]) {
            std::vector<int> k = e["index"].get<std::vector<int>>();
            map_.emplace(std::move(k), BigFloat(e["value"].get<std::string>(), wp));
        }
    }

    void save() const {
        if (path_.empty() || !dirty_) return;
        nlohmann::json j;
        j["digits"] = digits_;
        j["entries"] = nlohmann::json::array();
        for (const auto& [k, v] : map_)
            j["entries"].push_back({{"index", k}, {"value", v.to_string(digits_ + 10)}});
        std::string tmp = path_ + ".tmp";
        {
            std::ofstream out(tmp);
            out << j.dump(1);
        }
        std::rename(tmp.c_str(), path_.c_str());
        dirty_ = false;
    }

  private:
    int digits_;
    std::string path_;
    std::map<std::vector<int>, BigFloat> map_;
    mutable bool dirty_ = false;
};

// Shuffle-regularized coefficients of Phi_KZ as exact linear combinations of
// admissible zeta symbols: convergent words carry (-1)^m zeta(k1..km); the
// rest are forced by the shuffle character property plus c_{X0} = c_{X1} = 0.
class MzvRegularizer {
  public:
    const Poly& coeff(const Word& w) {
        auto it = cache_.find(w);
        if (it != cache_.end()) return it->second;
        Poly p = compute(w);
        return cache_.emplace(w, std::move(p)).first->second;
    }

  private:
    Poly compute(const Word& w) {
        if (w.empty()) return Poly(Rat(1));
        if (w.size() == 1) return Poly();  // c_{X0} = c_{X1} = 0
        if (w.letter(0) == 0 && w.letter(w.size() - 1) == 1) {
            auto idx = MzvIndex::from_phi_word(w);
            return Poly::var(idx->symbol(),
                             Rat(idx->depth() % 2 == 0 ? 1 : -1));
        }
        if (w.letter(w.size() - 1) == 0) {
            // w = v X0^k with v ending in X1 (or empty):
            // 0 = c_v c_{X0} = k c_{v X0^k} + sum over insertions inside v
            size_t i = w.size();
            int kk = 0;
            while (i > 0 && w.letter(i - 1) == 0) {
                ++kk;
                --i;
            }
            Word v = w.prefix(i);
            if (v.empty()) return Poly();  // c_{X0^k} = 0
            Poly acc;
            for (size_t pos = 0; pos < v.size(); ++pos) {
                Word w2 = v.prefix(pos).appended(0).concat(v.suffix(pos));
                for (int t = 0; t + 1 < kk; ++t) w2 = w2.appended(0);
                acc += coeff(w2);
            }
            return acc.scaled(Rat(-1, kk));
        }
        // w = X1^j v with v starting in X0 and ending in X1 (or empty)
        size_t i = 0;
        int jj = 0;
        while (i < w.size() && w.letter(i) == 1) {
            ++jj;
            ++i;
        }
        Word v = w.suffix(i);
        if (v.empty()) return Poly();  // c_{X1^j} = 0
        Poly acc;
        for (size_t pos = 1; pos <= v.size(); ++pos) {
            Word w2;
            for (int t = 0; t + 1 < jj; ++t) w2 = w2.appended(1);
            w2 = w2.concat(v.prefix(pos)).appended(1).concat(v.suffix(pos));
            acc += coeff(w2);
        }
        return acc.scaled(Rat(-1, jj));
    }

    std::map<Word, Poly> cache_;
};

// numeric evaluation of a zeta-symbol polynomial
inline BigFloat eval_zeta_poly(const Poly& p, MzvTable& table) {
    mpfr_prec_t wp = bits_for_digits(table.digits() + 12);
    BigFloat total(0L, wp);
    for (const auto& [mono, c] : p.terms()) {
        BigFloat t(c, wp);
        for (const auto& [name, e] : mono) {
            const BigFloat& v = table.value(MzvIndex::parse(name));
            for (int i = 0; i < e; ++i) t *= v;
        }
        total += t;
    }
    return total;
}

struct AssociatorCandidate {
    BigComplex mu;
    Series<BigComplex> phi;
};

// Drinfeld associator to weight N at the table's precision; mu = 2 pi i with
// pi from the Machin series.
inline AssociatorCandidate build_phi_kz(int weight, MzvTable& table) {
    int digits = table.digits();
    if (digits < 2 * weight + 10)
        throw InputError("precision too low for weight " + std::to_string(weight) +
                         ": need at least " + std::to_string(2 * weight + 10) +
                         " digits");
    mpfr_prec_t wp = bits_for_digits(digits + 12);
    AlphabetPtr a = xy_alphabet();
    Series<BigComplex> phi(a, weight);
    MzvRegularizer reg;
    std::vector<Word> stack{Word()};
    while (!stack.empty()) {
        Word w = stack.back();
        stack.pop_back();
        BigFloat v = eval_zeta_poly(reg.coeff(w), table);
        if (!v.is_zero()) phi.set_coeff(w, BigComplex(v, BigFloat(0L, wp)));
        if (static_cast<int>(w.size()) < weight) {
            stack.push_back(w.appended(0));
            stack.push_back(w.appended(1));
        }
    }
    phi.set_coeff(Word(), BigComplex(1L, wp));
    BigFloat pi = pi_machin(wp);
    return AssociatorCandidate{BigComplex(BigFloat(0L, wp), pi.mul_si(2)),
                               std::move(phi)};
}

// Theorem-1.9 check: zeta(2^{a},3,2^{b}) vs the zeta(odd) * zeta(2,...,2)
// combination with A^r = binom(2r, 2a+2), B^r = (1-2^{-2r}) binom(2r, 2b+1).
inline ResidualReport zagier_check(int a, int b, MzvTable& table) {
    if (a < 0 || b < 0) throw InputError("zagier_check needs a, b >= 0");
    mpfr_prec_t wp = bits_for_digits(table.digits() + 12);
    MzvIndex lhs_idx;
    for (int i = 0; i < a; ++i) lhs_idx.k.push_back(2);
    lhs_idx.k.push_back(3);
    for (int i = 0; i < b; ++i) lhs_idx.k.push_back(2);
    BigFloat lhs = table.value(lhs_idx);

    BigFloat rhs(0L, wp);
    for (int r = 1; r <= a + b + 1; ++r) {
        Rat A = binomial_rat(2 * r, 2 * a + 2);
        Rat B = (Rat(1) - Rat(1, 1) / Rat(mpz_class(1) << (2 * r))) *
                binomial_rat(2 * r, 2 * b + 1);
        Rat f = Rat(2) * (r % 2 == 0 ? Rat(1) : Rat(-1)) * (A - B);
        if (f == 0) continue;
        MzvIndex odd{{2 * r + 1}};
        BigFloat term = BigFloat(f, wp) * table.value(odd);
        int rest = a + b + 1 - r;
        if (rest > 0) {
            MzvIndex evens;
            evens.k.assign(static_cast<size_t>(rest), 2);
            term *= table.value(evens);
        }
        rhs += term;
    }
    ResidualReport rep = ResidualReport::make<BigComplex>("zagier", 0);
    BigFloat diff = lhs - rhs;
    rep.consider(BigComplex(diff, BigFloat(0L, wp)), lhs_idx.symbol());
    rep.note = lhs_idx.symbol() + " vs Zagier RHS at " +
               std::to_string(table.digits()) + " digits";
    return rep;
}

}  // namespace assoclab
