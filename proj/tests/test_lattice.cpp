#include "oracles.hpp"
#include "subposet/lattice.hpp"

#include <gtest/gtest.h>

using namespace subposet;

TEST(Binomial, SmallValues)
{
    EXPECT_EQ(binomial(0, 0), 1);
    EXPECT_EQ(binomial(4, 2), 6);
    EXPECT_EQ(binomial(10, 5), 252);
    EXPECT_EQ(binomial(5, -1), 0);
    EXPECT_EQ(binomial(5, 6), 0);
    EXPECT_THROW(binomial(-1, 0), PreconditionError);
}

TEST(Binomial, MatchesPascalTriangle)
{
    for (int n = 0; n <= 40; ++n)
        for (int k = -1; k <= n + 1; ++k)
            ASSERT_EQ(binomial(n, k), oracle::pascal(n, k)) << n << "," << k;
}

TEST(Rational, AlwaysReduced)
{
    Rational q = make_rational(6, 4);
    EXPECT_EQ(numerator(q), 3);
    EXPECT_EQ(denominator(q), 2);
    EXPECT_EQ(to_string(make_rational(-6, 4)), "-3/2");
    EXPECT_EQ(to_string(make_rational(8, 4)), "2");
    EXPECT_THROW(make_rational(1, 0), PreconditionError);
}

TEST(Sigma, Examples)
{
    EXPECT_EQ(sigma(4, 1), 6);
    EXPECT_EQ(sigma(4, 2), 10);
    EXPECT_EQ(sigma(8, 2), 126);
    EXPECT_THROW(sigma(4, 5), PreconditionError);
}

TEST(Sigma, EqualsSumOfLargestLevels)
{
    for (int n = 0; n <= 30; ++n)
        for (int k = 0; k <= n; ++k)
            ASSERT_EQ(sigma(n, k), oracle::top_k_level_sum(n, k)) << n << "," << k;
}

TEST(Level, Examples)
{
    EXPECT_EQ(level(3, 0), SetFamily(3, {Subset{}}));
    EXPECT_EQ(level(3, 1), SetFamily(3, {Subset::of({1}), Subset::of({2}), Subset::of({3})}));
    EXPECT_EQ(level(4, 2).size(), 6u);
    for (Subset s : level(6, 3))
        EXPECT_EQ(s.size(), 3);
    EXPECT_THROW(level(3, 4), PreconditionError);
    EXPECT_THROW(level(3, -1), PreconditionError);
}

TEST(ConsecutiveLevels, Examples)
{
    EXPECT_EQ(consecutive_levels(4, 0, 1), level(4, 1));
    EXPECT_EQ(consecutive_levels(4, 1, 2).size(), 10u);
    EXPECT_EQ(consecutive_levels(5, 1, 2).size(), 20u);
    EXPECT_EQ(consecutive_levels(3, -1, 4).size(), 8u);
    EXPECT_THROW(consecutive_levels(4, 3, 2), PreconditionError);
    EXPECT_THROW(consecutive_levels(4, -2, 1), PreconditionError);
}

TEST(ModularClasses, Examples)
{
    auto c = modular_classes(2, 1);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0], SetFamily(2, {Subset::of({2})}));
    EXPECT_EQ(c[1], SetFamily(2, {Subset::of({1})}));

    std::size_t total = 0;
    for (const auto& f : modular_classes(4, 2))
        total += f.size();
    EXPECT_EQ(total, 6u);

    std::size_t largest = 0;
    for (const auto& f : modular_classes(6, 3))
        largest = std::max(largest, f.size());
    EXPECT_GE(largest, 4u);
}

TEST(ModularClasses, PartitionTheLevel)
{
    for (int n = 1; n <= 10; ++n)
        for (int k = 0; k <= n; ++k) {
            auto classes = modular_classes(n, k);
            ASSERT_EQ(static_cast<int>(classes.size()), n);
            std::vector<bool> seen(1u << n, false);
            std::size_t total = 0;
            for (int i = 0; i < n; ++i)
                for (Subset s : classes[i]) {
                    ASSERT_EQ(s.size(), k);
                    ASSERT_FALSE(seen[s.bits]);
                    seen[s.bits] = true;
                    int sum = 0;
                    for (int e : s.elements())
                        sum += e;
                    ASSERT_EQ(sum % n, i);
                    ++total;
                }
            ASSERT_EQ(BigInt(total), binomial(n, k));
        }
}

TEST(LargestModClasses, Examples)
{
    EXPECT_TRUE(largest_mod_classes(6, 3, 0).empty());
    EXPECT_EQ(largest_mod_classes(6, 3, 6), level(6, 3));
    EXPECT_GE(largest_mod_classes(8, 2, 1).size(), 4u);
}

TEST(LargestModClasses, ExactSizeMatchesEnumeration)
{
    // Class sizes counted by hand-rolled residue tally, then the r largest summed.
    for (int n = 2; n <= 9; ++n)
        for (int k = 0; k <= n; ++k) {
            std::vector<int> count(n, 0);
            for (std::uint32_t m = 0; m < (1u << n); ++m) {
                if (__builtin_popcount(m) != k)
                    continue;
                int sum = 0;
                for (int e = 0; e < n; ++e)
                    if ((m >> e) & 1)
                        sum += e + 1;
                ++count[sum % n];
            }
            std::sort(count.rbegin(), count.rend());
            int acc = 0;
            for (int r = 0; r <= n; ++r) {
                ASSERT_EQ(static_cast<int>(largest_mod_classes(n, k, r).size()), acc) << n << "," << k << "," << r;
                if (r < n)
                    acc += count[r];
            }
        }
}

TEST(LargestModClasses, TieBreakPrefersSmallerResidue)
{
    // Level 1 of [4]: every class has one set, so r=2 takes residues 0 and 1.
    EXPECT_EQ(largest_mod_classes(4, 1, 2), SetFamily(4, {Subset::of({1}), Subset::of({4})}));
}

TEST(LargestModClasses, AveragingBound)
{
    for (int n = 1; n <= 10; ++n)
        for (int k = 0; k <= n; ++k)
            for (int r = 0; r <= n; ++r)
                ASSERT_GE(Rational(largest_mod_classes(n, k, r).size()), make_rational(r * binomial(n, k), n))
                    << n << "," << k << "," << r;
}

TEST(ComplementFamily, Examples)
{
    EXPECT_EQ(complement_family(SetFamily(3, {Subset{}})), SetFamily(3, {Subset::of({1, 2, 3})}));
    EXPECT_EQ(complement_family(level(5, 2)), level(5, 3));
}

TEST(ComplementFamily, InvolutionOnRandomFamilies)
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        SetFamily f = oracle::random_family(rng, 1 + i % 8, 0.4);
        SetFamily c = complement_family(f);
        ASSERT_EQ(c.size(), f.size());
        ASSERT_EQ(complement_family(c), f);
    }
}

TEST(SetFamily, RejectsDuplicatesAndOutOfRange)
{
    EXPECT_THROW(SetFamily(3, {Subset::of({1}), Subset::of({1})}), PreconditionError);
    EXPECT_THROW(SetFamily(2, {Subset::of({3})}), PreconditionError);
    EXPECT_THROW(SetFamily(0), PreconditionError);
    EXPECT_THROW(SetFamily(25), PreconditionError);
}

TEST(SetFamily, CanonicalOrder)
{
    SetFamily f(3, {Subset::of({1, 2}), Subset::of({3}), Subset{}, Subset::of({1})});
    std::vector<Subset> want{Subset{}, Subset::of({1}), Subset::of({3}), Subset::of({1, 2})};
    EXPECT_TRUE(std::equal(f.begin(), f.end(), want.begin(), want.end()));
}

TEST(FamilyFile, ParsesExample)
{
    SetFamily f = parse_family("n=3\n{}\n{1,3}");
    EXPECT_EQ(f, SetFamily(3, {Subset{}, Subset::of({1, 3})}));
}

TEST(FamilyFile, CommentsAndBlankLines)
{
    SetFamily f = parse_family("# header\n\nn=4\n  {2,4}  \n# note\n{1}\n");
    EXPECT_EQ(f, SetFamily(4, {Subset::of({1}), Subset::of({2, 4})}));
}

TEST(FamilyFile, RoundTripIsCanonical)
{
    const std::string messy = "n=4\n{1,2,3}\n{}\n{4}\n{2}\n";
    SetFamily f = parse_family(messy);
    const std::string canon = serialize_family(f);
    EXPECT_EQ(canon, "n=4\n{}\n{2}\n{4}\n{1,2,3}\n");
    EXPECT_EQ(serialize_family(parse_family(canon)), canon);
}

TEST(FamilyFile, RoundTripRandom)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        SetFamily f = oracle::random_family(rng, 1 + i % 7, 0.5);
        ASSERT_EQ(parse_family(serialize_family(f)), f);
    }
}

namespace {
int error_line(const std::string& text)
{
    try {
        parse_family(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}
} // namespace

TEST(FamilyFile, ErrorsCarryLineNumbers)
{
    EXPECT_EQ(error_line("n=2\n{3}"), 2);
    EXPECT_EQ(error_line("n=3\n{1}\n{1,2\n"), 3);
    EXPECT_EQ(error_line("n=3\n{1}\n{2}\n{1}\n"), 4);
    EXPECT_EQ(error_line("n=3\n{2,1}"), 2);
    EXPECT_EQ(error_line("{1}\nn=3"), 1);
    EXPECT_EQ(error_line("n=x"), 1);
    EXPECT_THROW(parse_family(""), ParseError);
}

TEST(Subset, FormatAndOrder)
{
    EXPECT_EQ(format_subset(Subset{}), "{}");
    EXPECT_EQ(format_subset(Subset::of({3, 1})), "{1,3}");
    EXPECT_LT(Subset::of({3}), Subset::of({1, 2}));
    EXPECT_LT(Subset::of({1, 2}), Subset::of({3, 1}));
    EXPECT_EQ(Subset::of({1, 2}).complement(3), Subset::of({3}));
}
