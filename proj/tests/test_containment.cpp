#include "oracles.hpp"
#include "subposet/containment.hpp"

#include <gtest/gtest.h>

using namespace subposet;

namespace {
Poset K(std::vector<int> w) { return complete_multilevel(LevelSignature(std::move(w))); }

SetFamily fam(int n, std::initializer_list<std::initializer_list<int>> sets)
{
    std::vector<Subset> out;
    for (auto s : sets)
        out.push_back(Subset::of(s));
    return SetFamily(n, out);
}

SetFamily powerset(int n) { return consecutive_levels(n, -1, n + 1); }

bool oracle_contains(const SetFamily& f, const Poset& p, bool induced)
{
    return oracle::contains_brute(oracle::masks(f), oracle::relation(p), induced);
}
} // namespace

TEST(Compare, Examples)
{
    EXPECT_EQ(compare(Subset{}, Subset::of({1})), Comparison::Less);
    EXPECT_EQ(compare(Subset::of({1}), Subset{}), Comparison::Greater);
    EXPECT_EQ(compare(Subset::of({1}), Subset::of({2})), Comparison::Incomparable);
    EXPECT_EQ(compare(Subset::of({1, 2}), Subset::of({1, 2})), Comparison::Equal);
}

TEST(Contains, ChainInTwoSets)
{
    SetFamily f = fam(1, {{}, {1}});
    SearchResult r = contains_subposet(f, chain_poset(2), false);
    ASSERT_TRUE(r.found());
    EXPECT_EQ(r.embedding->images, (std::vector<std::size_t>{0, 1}));
}

TEST(Contains, DiamondInducedInB2)
{
    SetFamily f = powerset(2);
    SearchResult r = contains_subposet(f, K({1, 2, 1}), true);
    ASSERT_TRUE(r.found());
    EXPECT_TRUE(is_valid_embedding(f, K({1, 2, 1}), *r.embedding, true));
    EXPECT_EQ(f[r.embedding->images[0]], Subset{});
    EXPECT_EQ(f[r.embedding->images[3]], Subset::of({1, 2}));
}

TEST(Contains, TwoLevelsAreInducedDiamondFree)
{
    EXPECT_EQ(contains_subposet(consecutive_levels(4, 1, 2), K({1, 2, 1}), true).status, SearchStatus::NotFound);
}

TEST(Contains, SmallFamilyCannotHoldLargePoset)
{
    EXPECT_FALSE(contains_subposet(fam(3, {{1}}), chain_poset(2), false).found());
}

TEST(Contains, BudgetIsNeverReportedAsFree)
{
    // A random family over [7] whose induced K[3,3]-freeness takes a few
    // thousand nodes to prove.
    std::mt19937_64 rng(1);
    SetFamily f(7);
    for (int i = 0; i <= 18; ++i)
        f = oracle::random_family(rng, 7, 0.25 + 0.01 * i);
    const Poset p = K({3, 3});
    SearchResult full = contains_subposet(f, p, true);
    ASSERT_EQ(full.status, SearchStatus::NotFound);
    ASSERT_GT(full.nodes, 100u);
    SearchResult cut = contains_subposet(f, p, true, 100);
    EXPECT_EQ(cut.status, SearchStatus::BudgetExhausted);
    EXPECT_FALSE(cut.embedding.has_value());
}

TEST(ContainsAny, Examples)
{
    const std::vector<Poset> vw{named_poset("vee"), named_poset("wedge")};
    EXPECT_TRUE(contains_any(powerset(2), vw, false).found());
    EXPECT_FALSE(contains_any(level(4, 2), vw, false).found());

    SetFamily f = fam(2, {{}, {1}, {2}});
    const std::vector<Poset> wedge{named_poset("wedge")};
    const std::vector<Poset> vee{named_poset("vee")};
    EXPECT_FALSE(contains_any(f, wedge, false).found());
    AnyResult hit = contains_any(f, vee, false);
    ASSERT_TRUE(hit.found());
    EXPECT_EQ(hit.poset_index, 0u);
}

TEST(ContainsAny, ReportsFirstHitInListOrder)
{
    const std::vector<Poset> list{chain_poset(4), named_poset("vee"), chain_poset(2)};
    AnyResult r = contains_any(powerset(2), list, false);
    ASSERT_TRUE(r.found());
    EXPECT_EQ(r.poset_index, 1u);
}

TEST(Contains, AgreesWithInjectionOracle)
{
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> fsize(1, 10), psize(1, 4), nsize(2, 5);
    for (int i = 0; i < 300; ++i) {
        const int n = nsize(rng);
        SetFamily f = oracle::random_family_of_size(rng, n, std::min(fsize(rng), 1 << n));
        Poset p = i % 2 ? oracle::random_poset(rng, psize(rng), 0.5) : K({1 + i % 2, 1 + (i / 2) % 2, 1 + (i / 4) % 2});
        for (bool induced : {false, true}) {
            SearchResult r = contains_subposet(f, p, induced);
            ASSERT_NE(r.status, SearchStatus::BudgetExhausted);
            ASSERT_EQ(r.found(), oracle_contains(f, p, induced)) << serialize_family(f) << " case " << i;
            if (r.found()) {
                ASSERT_TRUE(oracle::valid_copy(oracle::masks(f), oracle::relation(p), r.embedding->images, induced));
            }
        }
    }
}

TEST(Contains, WitnessIsDeterministic)
{
    std::mt19937_64 rng(9);
    SetFamily f = oracle::random_family(rng, 6, 0.5);
    SearchResult a = contains_subposet(f, K({2, 2, 2}), false);
    SearchResult b = contains_subposet(f, K({2, 2, 2}), false);
    ASSERT_TRUE(a.found());
    EXPECT_EQ(a.embedding, b.embedding);
    EXPECT_EQ(a.nodes, b.nodes);
}

TEST(Contains, DualityUnderComplement)
{
    std::mt19937_64 rng(202);
    std::uniform_int_distribution<int> nsize(2, 5), fsize(1, 12), psize(1, 5);
    for (int i = 0; i < 200; ++i) {
        const int n = nsize(rng);
        SetFamily f = oracle::random_family_of_size(rng, n, std::min(fsize(rng), 1 << n));
        Poset p = oracle::random_poset(rng, psize(rng), 0.4);
        for (bool induced : {false, true})
            ASSERT_EQ(contains_subposet(f, p, induced).found(),
                      contains_subposet(complement_family(f), p.dual(), induced).found());
    }
}

TEST(Contains, MonotoneInTheFamily)
{
    std::mt19937_64 rng(303);
    for (int i = 0; i < 100; ++i) {
        const int n = 3 + i % 3;
        SetFamily f = oracle::random_family(rng, n, 0.3);
        SetFamily extra = oracle::random_family(rng, n, 0.3);
        std::vector<Subset> both(f.begin(), f.end());
        for (Subset s : extra)
            if (!f.contains(s))
                both.push_back(s);
        SetFamily g(n, both);
        Poset p = oracle::random_poset(rng, 1 + i % 4, 0.5);
        for (bool induced : {false, true})
            if (contains_subposet(f, p, induced).found()) {
                ASSERT_TRUE(contains_subposet(g, p, induced).found());
            }
    }
}

TEST(Contains, UsingForcesTheGivenMember)
{
    SetFamily f = powerset(3);
    const std::size_t top = *f.index_of(Subset::full(3));
    SearchResult r = contains_subposet_using(f, chain_poset(2), false, top);
    ASSERT_TRUE(r.found());
    EXPECT_NE(std::find(r.embedding->images.begin(), r.embedding->images.end(), top), r.embedding->images.end());
    // A single level holds no 2-chain at all.
    SetFamily lvl = level(4, 2);
    EXPECT_FALSE(contains_subposet_using(lvl, chain_poset(2), false, 0).found());
}

TEST(Contains, UsingAgreesWithOracle)
{
    std::mt19937_64 rng(404);
    for (int i = 0; i < 150; ++i) {
        const int n = 2 + i % 4;
        SetFamily f = oracle::random_family_of_size(rng, n, std::min(2 + i % 8, 1 << n));
        Poset p = oracle::random_poset(rng, 1 + i % 4, 0.5);
        const std::size_t member = i % f.size();
        for (bool induced : {false, true}) {
            // Oracle: contained in F but not in F minus the member.
            std::vector<Subset> rest;
            for (std::size_t k = 0; k < f.size(); ++k)
                if (k != member)
                    rest.push_back(f[k]);
            const bool with = oracle_contains(f, p, induced);
            const bool without = oracle_contains(SetFamily(n, rest), p, induced);
            const bool uses = contains_subposet_using(f, p, induced, member).found();
            if (!with) {
                ASSERT_FALSE(uses);
            }
            if (with && !without) {
                ASSERT_TRUE(uses);
            }
        }
    }
}

TEST(MaxAntichain, Examples)
{
    EXPECT_EQ(max_antichain(level(4, 2)).size, 6u);
    EXPECT_EQ(max_antichain(fam(5, {{}, {1}, {1, 2}, {1, 2, 3}, {1, 2, 3, 4}})).size, 1u);
    EXPECT_EQ(max_antichain(powerset(3)).size, 3u);
    EXPECT_EQ(max_antichain(SetFamily(3)).size, 0u);
}

TEST(MaxAntichain, AgreesWithBruteForce)
{
    std::mt19937_64 rng(505);
    std::uniform_int_distribution<int> nsize(2, 6), fsize(0, 14);
    for (int i = 0; i < 300; ++i) {
        const int n = nsize(rng);
        SetFamily f = oracle::random_family_of_size(rng, n, std::min(fsize(rng), 1 << n));
        AntichainResult r = max_antichain(f);
        ASSERT_EQ(static_cast<int>(r.size), oracle::antichain_brute(oracle::masks(f))) << serialize_family(f);
        ASSERT_EQ(r.witness.size(), r.size);
        for (std::size_t a = 0; a < r.witness.size(); ++a)
            for (std::size_t b = a + 1; b < r.witness.size(); ++b)
                ASSERT_EQ(compare(f[r.witness[a]], f[r.witness[b]]), Comparison::Incomparable);
    }
}

TEST(MaxAntichain, LargeFamiliesUseMatching)
{
    EXPECT_EQ(max_antichain(powerset(10)).size, 252u);
    EXPECT_EQ(max_antichain(consecutive_levels(9, 2, 4)).size, 126u);
}

TEST(SMinusPlus, Examples)
{
    EXPECT_EQ(s_minus(powerset(3), Subset::full(3)), 3u);
    EXPECT_EQ(s_minus(fam(3, {{}, {1}}), Subset{}), 1u);
    EXPECT_EQ(s_minus(fam(3, {{1}}), Subset{}), 0u);
    EXPECT_EQ(s_plus(level(4, 2), Subset::of({1, 2})), 1u);
}

TEST(SMinusPlus, DualityAndTopValue)
{
    std::mt19937_64 rng(606);
    for (int i = 0; i < 100; ++i) {
        const int n = 2 + i % 5;
        SetFamily f = oracle::random_family(rng, n, 0.4);
        SetFamily c = complement_family(f);
        ASSERT_EQ(s_minus(f, Subset::full(n)), max_antichain(f).size);
        for (std::uint32_t a = 0; a < (1u << n); a += 3)
            ASSERT_EQ(s_plus(f, Subset(a)), s_minus(c, Subset(a).complement(n)));
    }
}

TEST(IntervalCriterion, Examples)
{
    EXPECT_TRUE(interval_induced_k1s1(Subset{}, Subset::of({1, 2}), 2));
    // Literal reading: m*_1 = 1 demands one free element even though [A,A]
    // already holds a one-set antichain.
    EXPECT_FALSE(interval_induced_k1s1(Subset::of({1}), Subset::of({1}), 1));
    EXPECT_TRUE(interval_induced_k1s1(Subset::of({1}), Subset::of({1, 2}), 1));
    EXPECT_FALSE(interval_induced_k1s1(Subset{}, Subset::of({1, 2, 3}), 4));
    EXPECT_THROW(interval_induced_k1s1(Subset::of({1}), Subset::of({2}), 2), PreconditionError);
}

TEST(IntervalCriterion, MatchesAntichainsInIntervals)
{
    // For s >= 2 the criterion equals "the interval holds an antichain of size s".
    for (int d = 0; d <= 5; ++d) {
        std::vector<std::uint32_t> sets;
        for (std::uint32_t m = 0; m < (1u << d); ++m)
            sets.push_back(m);
        const int width = d <= 4 ? oracle::antichain_brute(sets) : 10;
        for (int s = 2; s <= 12; ++s)
            ASSERT_EQ(interval_induced_k1s1(Subset{}, Subset::full(d), s), width >= s) << d << "," << s;
    }
}

TEST(EmpiricalE, Examples)
{
    EXPECT_EQ(empirical_e(K({1, 2, 1}), true, 6, 4), 2);
    EXPECT_EQ(empirical_e(K({2, 2}), true, 6, 4), 2);
    EXPECT_EQ(empirical_e(chain_poset(2), false, 5, 3), 1);
    EXPECT_THROW(empirical_e(chain_poset(2), false, 5, 6), PreconditionError);
    EXPECT_THROW(empirical_e(K({2, 2, 2}), true, 7, 5, 3), BudgetExhaustedError);
}

TEST(EmpiricalE, MatchesClosedFormForSmallSignatures)
{
    // Every signature with e* <= 4 and total width <= 5, at n = e* + width.
    std::function<void(std::vector<int>&, int)> walk = [&](std::vector<int>& w, int left) {
        if (w.size() >= 2) {
            LevelSignature sig(w);
            const int e = e_star_complete(sig);
            if (e <= 4) {
                const int n = e + sig.total();
                ASSERT_EQ(empirical_e(complete_multilevel(sig), true, n, std::min(n, e + 1)), e) << sig.str();
            }
        }
        for (int x = 1; x <= left; ++x) {
            w.push_back(x);
            walk(w, left - x);
            w.pop_back();
        }
    };
    std::vector<int> w;
    walk(w, 5);
}

TEST(LevelUnion, Detection)
{
    EXPECT_TRUE(is_level_union(consecutive_levels(5, 1, 2)));
    EXPECT_TRUE(is_level_union(SetFamily(4)));
    EXPECT_FALSE(is_level_union(fam(3, {{1}})));
}
