#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "assoclab/rational.hpp"

namespace assoclab {

// Multivariate polynomial over Rat with string-named unknowns. Monomials are
// sorted (name, exponent) lists; zero coefficients are pruned on the spot.
class Poly {
  public:
    using Monomial = std::vector<std::pair<std::string, int>>;  // sorted by name

    Poly() = default;
    explicit Poly(const Rat& c) {
        if (c != 0) terms_[{}] = c;
    }
    static Poly var(const std::string& name, const Rat& coeff = Rat(1)) {
        Poly p;
        if (coeff != 0) p.terms_[{{name, 1}}] = coeff;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    Rat constant_value() const {
        auto it = terms_.find({});
        return it == terms_.end() ? Rat(0) : it->second;
    }
    const std::map<Monomial, Rat>& terms() const { return terms_; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    Poly operator-() const {
        Poly r;
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                r.add_term(mul_monomial(ma, mb), ca * cb);
        return r;
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend bool operator==(const Poly& a, const Poly& b) {
        return a.terms_ == b.terms_;
    }

    Poly scaled(const Rat& c) const {
        Poly r;
        if (c == 0) return r;
        for (const auto& [m, q] : terms_) r.terms_[m] = q * c;
        return r;
    }

    // scale so the leading (lexicographically largest) monomial has coeff 1
    Poly monic() const {
        if (terms_.empty()) return {};
        return scaled(Rat(1) / terms_.rbegin()->second);
    }

    // substitute values for every variable; generic over the target ring
    template <class R, class FromRat, class VarValue>
    R evaluate(FromRat from_rat, VarValue var_value) const {
        R total = from_rat(Rat(0));
        for (const auto& [m, c] : terms_) {
            R t = from_rat(c);
            for (const auto& [name, e] : m)
                for (int i = 0; i < e; ++i) t = t * var_value(name);
            total = total + t;
        }
        return total;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        // emit highest monomial first for readability
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            Rat a = c;
            if (first) {
                if (a < 0) {
                    out += "-";
                    a = -a;
                }
            } else {
                out += (a < 0) ? " - " : " + ";
                if (a < 0) a = -a;
            }
            first = false;
            std::string mono;
            for (const auto& [name, e] : m) {
                if (!mono.empty()) mono += "*";
                mono += name;
                if (e > 1) mono += "^" + std::to_string(e);
            }
            if (mono.empty())
                out += rat_to_string(a);
            else if (a == 1)
                out += mono;
            else
                out += rat_to_string(a) + "*" + mono;
        }
        return out;
    }

    static Poly parse(const std::string& s);

  private:
    static Monomial mul_monomial(const Monomial& a, const Monomial& b) {
        Monomial r;
        size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
                r.push_back(a[i++]);
            else if (i == a.size() || b[j].first < a[i].first)
                r.push_back(b[j++]);
            else {
                r.emplace_back(a[i].first, a[i].second + b[j].second);
                ++i, ++j;
            }
        }
        return r;
    }
    void add_term(const Monomial& m, const Rat& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (c != 0) terms_[m] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::map<Monomial, Rat> terms_;
};

// Parses the canonical to_string() format. Variable names may contain
// letters, digits, '_' and one balanced (...) group (used by zeta symbols).
inline Poly Poly::parse(const std::string& s) {
    Poly out;
    size_t i = 0;
    auto skip_ws = [&] { while (i < s.size() && s[i] == ' ') ++i; };
    skip_ws();
    if (i >= s.size()) throw InputError("empty polynomial string");
    bool first = true;
    while (i < s.size()) {
        skip_ws();
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = (s[i] == '-') ? -1 : 1;
            ++i;
            skip_ws();
        } else if (!first) {
            throw InputError("expected '+'/'-' in polynomial: '" + s + "'");
        }
        first = false;
        // coefficient (optional)
        Rat coeff(1);
        bool saw_coeff = false;
        if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])))) {
            size_t j = i;
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/'))
                ++j;
            coeff = rat_from_string(s.substr(i, j - i));
            i = j;
            saw_coeff = true;
        }
        Monomial mono;
        while (true) {
            skip_ws();
            if (i < s.size() && s[i] == '*') {
                ++i;
                skip_ws();
            } else if (!mono.empty() || saw_coeff || i >= s.size() ||
                       s[i] == '+' || s[i] == '-') {
                break;
            }
            if (i >= s.size()) break;
            // variable name
            size_t j = i;
            int depth = 0;
            while (j < s.size()) {
                char c = s[j];
                if (c == '(') ++depth;
                if (c == ')') {
                    --depth;
                    ++j;
                    if (depth == 0) break;
                    continue;
                }
                if (depth == 0 &&
                    !(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
                    break;
                ++j;
            }
            if (j == i) throw InputError("bad polynomial term in '" + s + "'");
            std::string name = s.substr(i, j - i);
            i = j;
            int e = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                size_t k = i;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
                e = std::stoi(s.substr(i, k - i));
                i = k;
            }
            bool merged = false;
            for (auto& [n, ee] : mono)
                if (n == name) {
                    ee += e;
                    merged = true;
                }
            if (!merged) mono.emplace_back(name, e);
        }
        std::sort(mono.begin(), mono.end());
        Poly t;
        t.terms_[mono] = coeff * sign;
        if (coeff == 0) t.terms_.clear();
        out += t;
        skip_ws();
    }
    return out;
}

}  // namespace assoclab
