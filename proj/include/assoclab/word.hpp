#pragma once

#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "assoclab/rational.hpp"

namespace assoclab {

// Named alphabet with per-letter weights. X0,X1 and the braid generators
// have weight 1; Y_n has weight n.
class Alphabet {
  public:
    Alphabet(std::string name, std::vector<std::string> letters,
             std::vector<int> weights)
        : name_(std::move(name)),
          letters_(std::move(letters)),
          weights_(std::move(weights)) {}

    const std::string& name() const { return name_; }
    size_t size() const { return letters_.size(); }
    const std::string& letter_name(size_t i) const { return letters_[i]; }
    int weight(size_t i) const { return weights_[i]; }
    const std::vector<std::string>& letters() const { return letters_; }
    const std::vector<int>& weights() const { return weights_; }

    int index_of(const std::string& name) const {
        for (size_t i = 0; i < letters_.size(); ++i)
            if (letters_[i] == name) return static_cast<int>(i);
        return -1;
    }

    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        return a.letters_ == b.letters_ && a.weights_ == b.weights_;
    }

  private:
    std::string name_;
    std::vector<std::string> letters_;
    std::vector<int> weights_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

inline AlphabetPtr xy_alphabet() {
    static const AlphabetPtr a = std::make_shared<Alphabet>(
        "X", std::vector<std::string>{"X0", "X1"}, std::vector<int>{1, 1});
    return a;
}

inline AlphabetPtr y_alphabet(int max_weight) {
    std::vector<std::string> names;
    std::vector<int> weights;
    for (int n = 1; n <= max_weight; ++n) {
        names.push_back("Y" + std::to_string(n));
        weights.push_back(n);
    }
    return std::make_shared<Alphabet>("Y", std::move(names), std::move(weights));
}

// Monic monomial: a packed sequence of letter indices. The empty word is the
// unit. Ordering is (length, bytewise) — a valid total order for map keys;
// degree-aware ordering is applied where output demands it.
class Word {
  public:
    Word() = default;
    explicit Word(std::string bytes) : b_(std::move(bytes)) {}
    static Word single(int letter) {
        return Word(std::string(1, static_cast<char>(letter)));
    }

    size_t size() const { return b_.size(); }
    bool empty() const { return b_.empty(); }
    int letter(size_t i) const { return static_cast<unsigned char>(b_[i]); }
    const std::string& bytes() const { return b_; }

    Word concat(const Word& o) const { return Word(b_ + o.b_); }
    Word appended(int letter) const {
        return Word(b_ + static_cast<char>(letter));
    }
    Word prefix(size_t len) const { return Word(b_.substr(0, len)); }
    Word suffix(size_t from) const { return Word(b_.substr(from)); }

    int degree(const Alphabet& a) const {
        int d = 0;
        for (size_t i = 0; i < b_.size(); ++i) d += a.weight(letter(i));
        return d;
    }

    std::string display(const Alphabet& a) const {
        std::string out;
        for (size_t i = 0; i < b_.size(); ++i) {
            if (i) out += " ";
            out += a.letter_name(letter(i));
        }
        return out;
    }

    static Word parse(const Alphabet& a, const std::string& text) {
        Word w;
        std::istringstream in(text);
        std::string tok;
        while (in >> tok) {
            int idx = a.index_of(tok);
            if (idx < 0)
                throw InputError("unknown generator '" + tok + "' for alphabet " +
                                 a.name());
            w = w.appended(idx);
        }
        return w;
    }

    friend bool operator==(const Word& x, const Word& y) { return x.b_ == y.b_; }
    friend bool operator!=(const Word& x, const Word& y) { return x.b_ != y.b_; }
    friend bool operator<(const Word& x, const Word& y) {
        if (x.b_.size() != y.b_.size()) return x.b_.size() < y.b_.size();
        return x.b_ < y.b_;
    }

  private:
    std::string b_;
};

struct WordHash {
    size_t operator()(const Word& w) const {
        return std::hash<std::string>{}(w.bytes());
    }
};

}  // namespace assoclab
