#pragma once

#include <fstream>
#include <variant>

#include <json.hpp>

#include "assoclab/braid.hpp"
#include "assoclab/kv.hpp"
#include "assoclab/report.hpp"
#include "assoclab/series.hpp"

namespace assoclab {

using json = nlohmann::json;

inline int nominal_digits(const Series<BigComplex>& s) {
    mpfr_prec_t p = 64;
    for (const auto& [w, c] : s.terms()) p = std::max(p, c.prec());
    return static_cast<int>(static_cast<double>(p) / 3.3219280948873626);
}

namespace detail {

template <class S>
std::vector<const typename S::Terms::value_type*> sorted_terms(const S& s) {
    std::vector<const typename S::Terms::value_type*> v;
    for (const auto& t : s.terms()) v.push_back(&t);
    std::sort(v.begin(), v.end(), [&](auto* x, auto* y) {
        int dx = s.degree_of(x->first), dy = s.degree_of(y->first);
        if (dx != dy) return dx < dy;
        return x->first < y->first;
    });
    return v;
}

inline void emit_alphabet(json& j, const Alphabet& a) {
    j["alphabet"] = a.letters();
    bool weighted = false;
    for (int w : a.weights()) weighted |= (w != 1);
    if (weighted) j["weights"] = a.weights();
}

template <class R>
struct CoeffIO;

template <>
struct CoeffIO<Rat> {
    static constexpr const char* ring = "rational";
    static void emit(json& t, const Rat& c, int) { t["coeff"] = rat_to_string(c); }
    static Rat parse(const json& t, mpfr_prec_t) {
        return rat_from_string(t.at("coeff").get<std::string>());
    }
};
template <>
struct CoeffIO<BigComplex> {
    static constexpr const char* ring = "complex";
    static void emit(json& t, const BigComplex& c, int digits) {
        t["re"] = c.re().to_string(digits + 10);
        t["im"] = c.im().to_string(digits + 10);
    }
    static BigComplex parse(const json& t, mpfr_prec_t wp) {
        return BigComplex(BigFloat(t.at("re").get<std::string>(), wp),
                          BigFloat(t.at("im").get<std::string>(), wp));
    }
};
template <>
struct CoeffIO<Poly> {
    static constexpr const char* ring = "symbolic";
    static void emit(json& t, const Poly& c, int) { t["coeff"] = c.to_string(); }
    static Poly parse(const json& t, mpfr_prec_t) {
        return Poly::parse(t.at("coeff").get<std::string>());
    }
};

}  // namespace detail

template <class R>
json series_to_json(const Series<R>& s, int digits = 0) {
    json j;
    detail::emit_alphabet(j, *s.alphabet());
    j["truncation"] = s.truncation();
    j["ring"] = detail::CoeffIO<R>::ring;
    if constexpr (std::is_same_v<R, BigComplex>) {
        if (digits == 0) digits = nominal_digits(s);
        j["precision"] = digits;
    }
    j["terms"] = json::array();
    for (auto* t : detail::sorted_terms(s)) {
        json e;
        e["word"] = t->first.display(*s.alphabet());
        detail::CoeffIO<R>::emit(e, t->second, digits);
        j["terms"].push_back(e);
    }
    return j;
}

template <class R>
json braid_series_to_json(const BraidSeries<R>& s, int digits = 0) {
    json j;
    detail::emit_alphabet(j, *s.alphabet());
    j["truncation"] = s.truncation();
    j["ring"] = detail::CoeffIO<R>::ring;
    if constexpr (std::is_same_v<R, BigComplex>) j["precision"] = digits;
    j["terms"] = json::array();
    for (auto* t : detail::sorted_terms(s)) {
        json e;
        e["word"] = t->first.display(*s.alphabet());
        detail::CoeffIO<R>::emit(e, t->second, digits);
        j["terms"].push_back(e);
    }
    return j;
}

inline AlphabetPtr alphabet_from_json(const json& j) {
    if (!j.contains("alphabet") || !j["alphabet"].is_array())
        throw InputError("series JSON lacks an 'alphabet' array");
    std::vector<std::string> names = j["alphabet"].get<std::vector<std::string>>();
    std::vector<int> weights(names.size(), 1);
    if (j.contains("weights")) {
        weights = j["weights"].get<std::vector<int>>();
        if (weights.size() != names.size())
            throw InputError("weights array length mismatch");
    } else {
        for (size_t i = 0; i < names.size(); ++i)
            if (names[i].size() >= 2 && names[i][0] == 'Y')
                weights[i] = std::stoi(names[i].substr(1));
    }
    // reuse the canonical instances when they match
    if (names == xy_alphabet()->letters()) return xy_alphabet();
    return std::make_shared<Alphabet>("custom", std::move(names), std::move(weights));
}

template <class R>
Series<R> series_from_json(const json& j) {
    AlphabetPtr a = alphabet_from_json(j);
    if (!j.contains("truncation"))
        throw InputError("series JSON lacks 'truncation'");
    int n = j["truncation"].get<int>();
    mpfr_prec_t wp = 64;
    if constexpr (std::is_same_v<R, BigComplex>) {
        int digits = j.value("precision", 40);
        wp = bits_for_digits(digits + 12);
    }
    Series<R> s(a, n);
    for (const auto& e : j.value("terms", json::array())) {
        Word w = Word::parse(*a, e.at("word").get<std::string>());
        if (w.degree(*a) > n)
            throw InputError("term exceeds the declared truncation: '" +
                             e.at("word").get<std::string>() + "'");
        s.add_coeff(w, detail::CoeffIO<R>::parse(e, wp));
    }
    return s;
}

template <class R>
BraidSeries<R> braid_series_from_json(const json& j) {
    std::vector<std::string> names = j.at("alphabet").get<std::vector<std::string>>();
    int strands = names.size() == 3 ? 3 : names.size() == 6 ? 4 : 0;
    if (strands == 0)
        throw InputError("braid series alphabet must have 3 or 6 generators");
    BraidAlgebraPtr alg = braid_algebra(strands);
    int n = j.at("truncation").get<int>();
    mpfr_prec_t wp = 64;
    if constexpr (std::is_same_v<R, BigComplex>) {
        int digits = j.value("precision", 40);
        wp = bits_for_digits(digits + 12);
    }
    BraidSeries<R> s(alg, n);
    for (const auto& e : j.value("terms", json::array())) {
        Word w = alg->parse_word(e.at("word").get<std::string>());
        if (static_cast<int>(w.size()) > n)
            throw InputError("term exceeds the declared truncation");
        // non-normal input words are normalized on the way in
        s.add_raw(w, detail::CoeffIO<R>::parse(e, wp));
    }
    return s;
}

using AnySeries = std::variant<Series<Rat>, Series<BigComplex>, Series<Poly>>;

inline AnySeries any_series_from_json(const json& j) {
    std::string ring = j.value("ring", "rational");
    if (ring == "rational") return series_from_json<Rat>(j);
    if (ring == "complex") return series_from_json<BigComplex>(j);
    if (ring == "symbolic") return series_from_json<Poly>(j);
    throw InputError("unknown ring '" + ring + "'");
}

template <class R>
json taut_pair_to_json(const TAutPair<R>& p, int digits = 0) {
    json j;
    j["p1"] = series_to_json(p.p1, digits);
    j["p2"] = series_to_json(p.p2, digits);
    return j;
}

template <class R>
TAutPair<R> taut_pair_from_json(const json& j) {
    return TAutPair<R>(series_from_json<R>(j.at("p1")),
                       series_from_json<R>(j.at("p2")));
}

inline json residual_to_json(const ResidualReport& r) {
    json j;
    j["equation"] = r.equation;
    j["exact"] = r.exact;
    j["zero"] = r.zero;
    if (r.infinite) j["infinite"] = true;
    j["magnitude"] = r.magnitude;
    if (!r.worst_word.empty()) j["word"] = r.worst_word;
    if (!r.worst_value.empty()) j["value"] = r.worst_value;
    j["truncation"] = r.truncation;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError("malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

inline uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    uint64_t h = 1469598103934665603ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace assoclab
