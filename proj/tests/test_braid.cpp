#include <gtest/gtest.h>

#include <random>

#include "assoclab/braid.hpp"
#include "assoclab/linalg.hpp"
#include "assoclab/lyndon.hpp"
#include "assoclab/shuffle.hpp"
#include "test_util.hpp"

using namespace assoclab;

namespace {

BraidSeries<Rat> nf_of(const BraidAlgebraPtr& alg, const std::string& text, int trunc) {
    return normal_form<Rat>(alg, alg->parse_word(text), trunc);
}

std::vector<Word> all_raw_words(const BraidAlgebra& alg, int d) {
    std::vector<Word> out{Word()};
    for (int i = 0; i < d; ++i) {
        std::vector<Word> nxt;
        for (const Word& w : out)
            for (size_t g = 0; g < alg.generator_count(); ++g)
                nxt.push_back(w.appended(static_cast<int>(g)));
        out = std::move(nxt);
    }
    return out;
}

// ---- slow oracle: degreewise quotient of the free algebra on the t_ij by
// the relation ideal, via exact row reduction ----

struct IdealOracle {
    const BraidAlgebra& alg;
    int degree;
    std::map<Word, int> word_id;
    RowReducer ideal;

    explicit IdealOracle(const BraidAlgebra& a, int d) : alg(a), degree(d) {
        for (const Word& w : all_raw_words(alg, d)) {
            int id = static_cast<int>(word_id.size());
            word_id.emplace(w, id);
        }
        // degree-2 relators
        std::vector<std::vector<std::pair<Word, Rat>>> relators;
        size_t g = alg.generator_count();
        for (size_t x = 0; x < g; ++x)
            for (size_t y = x + 1; y < g; ++y) {
                int i = alg.strand_lo(static_cast<int>(x)), j = alg.strand_hi(static_cast<int>(x));
                int k = alg.strand_lo(static_cast<int>(y)), l = alg.strand_hi(static_cast<int>(y));
                bool disjoint = (k != i && k != j && l != i && l != j);
                if (disjoint) {
                    Word xy = Word::single(static_cast<int>(x)).appended(static_cast<int>(y));
                    Word yx = Word::single(static_cast<int>(y)).appended(static_cast<int>(x));
                    relators.push_back({{xy, Rat(1)}, {yx, Rat(-1)}});
                }
            }
        int n = alg.strands();
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k) {
                    if (k == i || k == j) continue;
                    // [t_ij, t_ik + t_jk] = 0
                    int tij = alg.generator(i, j);
                    int tik = alg.generator(i, k);
                    int tjk = alg.generator(j, k);
                    std::vector<std::pair<Word, Rat>> r;
                    auto pm = [&](int p, int q, Rat c) {
                        r.emplace_back(Word::single(p).appended(q), c);
                    };
                    pm(tij, tik, Rat(1));
                    pm(tik, tij, Rat(-1));
                    pm(tij, tjk, Rat(1));
                    pm(tjk, tij, Rat(-1));
                    relators.push_back(std::move(r));
                }
        // rows u * r * v for all paddings within the degree
        for (int a_ = 0; a_ + 2 <= d; ++a_) {
            int b_ = d - 2 - a_;
            for (const Word& u : all_raw_words(alg, a_))
                for (const Word& v : all_raw_words(alg, b_))
                    for (const auto& rel : relators) {
                        SparseVec row;
                        for (const auto& [w, c] : rel)
                            row[word_id.at(u.concat(w).concat(v))] += c;
                        ideal.add_row(row);
                    }
        }
    }

    long quotient_dimension() const {
        return static_cast<long>(word_id.size()) - static_cast<long>(ideal.rank());
    }

    bool equals_mod_ideal(const Word& raw, const BraidAlgebra::LinComb& nf) const {
        SparseVec v;
        v[word_id.at(raw)] += 1;
        for (const auto& [w, c] : nf) v[word_id.at(w)] -= Rat(static_cast<long>(c));
        for (auto it = v.begin(); it != v.end();)
            it = (it->second == 0) ? v.erase(it) : std::next(it);
        return ideal.reduce(v).empty();
    }
};

}  // namespace

TEST(Braid, AlreadySortedWordIsFixed) {
    auto alg = braid_algebra(4);
    BraidSeries<Rat> s = nf_of(alg, "t12 t24", 2);
    EXPECT_EQ(s.terms().size(), 1u);
    EXPECT_EQ(s.coeff(alg->parse_word("t12 t24")), Rat(1));
}

TEST(Braid, StraighteningExample) {
    // t24 t12 -> t12 t24 - t24 t14 + t14 t24
    auto alg = braid_algebra(4);
    BraidSeries<Rat> s = nf_of(alg, "t24 t12", 2);
    EXPECT_EQ(s.coeff(alg->parse_word("t12 t24")), Rat(1));
    EXPECT_EQ(s.coeff(alg->parse_word("t24 t14")), Rat(-1));
    EXPECT_EQ(s.coeff(alg->parse_word("t14 t24")), Rat(1));
    EXPECT_EQ(s.terms().size(), 3u);
}

TEST(Braid, DisjointGeneratorsCommute) {
    auto alg = braid_algebra(4);
    EXPECT_EQ(nf_of(alg, "t12 t34", 2), nf_of(alg, "t34 t12", 2));
    EXPECT_EQ(nf_of(alg, "t13 t24", 2), nf_of(alg, "t24 t13", 2));
}

TEST(Braid, NormalFormIdempotent) {
    auto alg = braid_algebra(4);
    for (const Word& w : all_raw_words(*alg, 3)) {
        if (!alg->is_normal(w)) continue;
        auto nf = alg->normal_form_raw(w);
        ASSERT_EQ(nf.size(), 1u);
        EXPECT_EQ(nf[0].first, w);
        EXPECT_EQ(nf[0].second, 1);
    }
}

TEST(Braid, GeneratorParsingCanonicalizesAndRejects) {
    auto alg = braid_algebra(4);
    EXPECT_EQ(alg->parse_word("t21"), alg->parse_word("t12"));
    EXPECT_THROW(alg->parse_word("t11"), InputError);
    EXPECT_THROW(alg->parse_word("t15"), InputError);
    EXPECT_THROW(alg->parse_word("x12"), InputError);
    EXPECT_THROW(braid_algebra(5), InputError);
}

TEST(Braid, DimensionExamples) {
    auto a4 = braid_algebra(4);
    EXPECT_EQ(a4->dimension(0), 1);
    EXPECT_EQ(a4->dimension(1), 6);
    EXPECT_EQ(a4->dimension(2), 25);  // sum_{a+b+c=2} 2^b 3^c
    EXPECT_EQ(a4->dimension(3), 90);
    auto a3 = braid_algebra(3);
    for (int d = 0; d <= 6; ++d)
        EXPECT_EQ(a3->dimension(d), (1L << (d + 1)) - 1);  // 2^{d+1} - 1
    EXPECT_EQ(a3->dimension(3), 15);
}

TEST(Braid, DimensionCountsLevelSortedWords) {
    auto alg = braid_algebra(4);
    for (int d = 0; d <= 4; ++d) {
        long count = 0;
        for (const Word& w : all_raw_words(*alg, d))
            if (alg->is_normal(w)) ++count;
        EXPECT_EQ(count, alg->dimension(d));
    }
}

TEST(Braid, DefiningRelationsVanish) {
    auto alg = braid_algebra(4);
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> letter(0, 5), len(0, 1);
    auto random_normal = [&]() {
        Word w;
        int l = len(rng);
        for (int i = 0; i < l; ++i) w = w.appended(letter(rng));
        auto nf = alg->normal_form_raw(w);
        return nf.empty() ? Word() : nf[0].first;  // take one normal word
    };
    // relation combinations, as (word, coeff) lists
    std::vector<std::vector<std::pair<Word, long>>> rels;
    rels.push_back({{alg->parse_word("t12 t34"), 1}, {alg->parse_word("t34 t12"), -1}});
    rels.push_back({{alg->parse_word("t12 t13"), 1},
                    {alg->parse_word("t13 t12"), -1},
                    {alg->parse_word("t12 t23"), 1},
                    {alg->parse_word("t23 t12"), -1}});
    rels.push_back({{alg->parse_word("t14 t24"), 1},
                    {alg->parse_word("t24 t14"), -1},
                    {alg->parse_word("t14 t34"), 1},
                    {alg->parse_word("t34 t14"), -1}});
    for (int trial = 0; trial < 40; ++trial) {
        Word u = random_normal(), v = random_normal();
        for (const auto& rel : rels) {
            BraidSeries<Rat> acc(alg, 6);
            for (const auto& [w, c] : rel)
                acc.add_raw(u.concat(w).concat(v), Rat(c));
            EXPECT_TRUE(acc.is_zero());
        }
    }
}

TEST(Braid, NormalFormIsRingHomSection) {
    auto alg = braid_algebra(4);
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> letter(0, 5), len(0, 3);
    for (int trial = 0; trial < 60; ++trial) {
        Word u, v;
        int lu = len(rng), lv = len(rng);
        if (lu + lv > 5) continue;
        for (int i = 0; i < lu; ++i) u = u.appended(letter(rng));
        for (int i = 0; i < lv; ++i) v = v.appended(letter(rng));
        BraidSeries<Rat> a = normal_form<Rat>(alg, u, 6);
        BraidSeries<Rat> b = normal_form<Rat>(alg, v, 6);
        EXPECT_EQ(a * b, normal_form<Rat>(alg, u.concat(v), 6));
    }
}

TEST(Braid, IdealQuotientOracleCertifiesRewriteA4) {
    auto alg = braid_algebra(4);
    for (int d = 0; d <= 4; ++d) {
        IdealOracle oracle(*alg, d);
        EXPECT_EQ(oracle.quotient_dimension(), alg->dimension(d)) << "degree " << d;
        std::set<Word> reachable;
        for (const Word& raw : all_raw_words(*alg, d)) {
            auto nf = alg->normal_form_raw(raw);
            EXPECT_TRUE(oracle.equals_mod_ideal(raw, nf))
                << "degree " << d << " word " << raw.display(*alg->alphabet());
            for (const auto& [w, c] : nf) reachable.insert(w);
        }
        if (d > 0)
            EXPECT_EQ(static_cast<long>(reachable.size()), alg->dimension(d));
    }
}

TEST(Braid, IdealQuotientOracleCertifiesRewriteA3) {
    auto alg = braid_algebra(3);
    for (int d = 0; d <= 4; ++d) {
        IdealOracle oracle(*alg, d);
        EXPECT_EQ(oracle.quotient_dimension(), alg->dimension(d));
        for (const Word& raw : all_raw_words(*alg, d))
            EXPECT_TRUE(oracle.equals_mod_ideal(raw, alg->normal_form_raw(raw)));
    }
}

TEST(Braid, CentralElementOfA3) {
    auto alg = braid_algebra(3);
    BraidSeries<Rat> c = BraidSeries<Rat>::central_sum(alg, 4);
    // commutes with every basis word of degree <= 3
    for (const Word& w : all_raw_words(*alg, 3)) {
        if (!alg->is_normal(w)) continue;
        BraidSeries<Rat> b(alg, 4);
        b.add_coeff(w, Rat(1));
        EXPECT_EQ(c * b, b * c) << w.display(*alg->alphabet());
    }
}

TEST(Inject, DisjointArgumentsKillTheBracket) {
    // phi = 1 + [X0,X1], arg0 = t12, arg1 = t34 -> 1
    auto alg = braid_algebra(4);
    AlphabetPtr xa = xy_alphabet();
    Series<Rat> phi = Series<Rat>::unit(xa, 2) +
                      lyndon_bracketing<Rat>(xa, 2, Word::parse(*xa, "X0 X1"));
    auto g = [&](int i, int j) { return BraidSeries<Rat>::generator(alg, 2, i, j); };
    EXPECT_EQ(inject(phi, g(1, 2), g(3, 4)), BraidSeries<Rat>::unit(alg, 2));
}

TEST(Inject, SimpleSubstitution) {
    // phi = 1 + X0X1 with (t12, t23) in Ua3 -> 1 + t12 t23
    auto alg = braid_algebra(3);
    AlphabetPtr xa = xy_alphabet();
    Series<Rat> phi = Series<Rat>::unit(xa, 2);
    phi.add_coeff(Word::parse(*xa, "X0 X1"), Rat(1));
    auto g = [&](int i, int j) { return BraidSeries<Rat>::generator(alg, 2, i, j); };
    BraidSeries<Rat> got = inject(phi, g(1, 2), g(2, 3));
    BraidSeries<Rat> expect = BraidSeries<Rat>::unit(alg, 2);
    expect.add_coeff(alg->parse_word("t12 t23"), Rat(1));
    EXPECT_EQ(got, expect);
}

TEST(Inject, SpecLinearExpansionExample) {
    // phi = 1 + X0X1, X0 -> t12, X1 -> t23 + t24 gives 1 + t12t23 + t12t24
    auto alg = braid_algebra(4);
    AlphabetPtr xa = xy_alphabet();
    Series<Rat> phi = Series<Rat>::unit(xa, 2);
    phi.add_coeff(Word::parse(*xa, "X0 X1"), Rat(1));
    auto g = [&](int i, int j) { return BraidSeries<Rat>::generator(alg, 2, i, j); };
    BraidSeries<Rat> got = inject(phi, g(1, 2), g(2, 3) + g(2, 4));
    BraidSeries<Rat> expect = BraidSeries<Rat>::unit(alg, 2);
    expect.add_coeff(alg->parse_word("t12 t23"), Rat(1));
    expect.add_coeff(alg->parse_word("t12 t24"), Rat(1));
    EXPECT_EQ(got, expect);
}

TEST(Inject, CentralImageCommutes) {
    // exp(X0) at (t12+t13+t23, 0) is group-like and central at N <= 4
    auto alg = braid_algebra(3);
    AlphabetPtr xa = xy_alphabet();
    Series<Rat> expx0 = exp_series(Series<Rat>::generator(xa, 4, 0));
    BraidSeries<Rat> c = BraidSeries<Rat>::central_sum(alg, 4);
    BraidSeries<Rat> img = inject(expx0, c, BraidSeries<Rat>(alg, 4));
    EXPECT_EQ(img, exp_series(c));
    for (const Word& w : all_raw_words(*alg, 2)) {
        BraidSeries<Rat> b(alg, 4);
        b.add_raw(w, Rat(1));
        EXPECT_EQ(img * b, b * img);
    }
}

TEST(Inject, HomCommutesWithExp) {
    // inject(exp L) = exp(inject L) for Lie L, exact at truncation
    auto alg = braid_algebra(4);
    AlphabetPtr xa = xy_alphabet();
    std::mt19937 rng(2024);
    auto g = [&](int i, int j) { return BraidSeries<Rat>::generator(alg, 4, i, j); };
    BraidSeries<Rat> a0 = g(1, 2) + g(1, 3);
    BraidSeries<Rat> a1 = g(3, 4);
    for (int trial = 0; trial < 5; ++trial) {
        Series<Rat> lie(xa, 4);
        for (int d = 1; d <= 4; ++d)
            for (const auto& b : lie_basis<Rat>(xa, 4, d))
                lie = lie + b.scale(tu::random_rat(rng));
        EXPECT_EQ(inject(exp_series(lie), a0, a1), exp_series(inject(lie, a0, a1)));
    }
}

TEST(Inject, AlgebraMismatchRejected) {
    AlphabetPtr xa = xy_alphabet();
    Series<Rat> phi = Series<Rat>::unit(xa, 2);
    BraidSeries<Rat> a0(braid_algebra(3), 2), a1(braid_algebra(4), 2);
    EXPECT_THROW(inject(phi, a0, a1), InputError);
}
