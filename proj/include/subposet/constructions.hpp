#pragma once

// Lower-bound families built from full middle levels plus unions of the
// largest element-sum residue classes on the boundary levels.

#include "subposet/lattice.hpp"
#include "subposet/poset.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace subposet {

enum class ConstructionKind { TwoLevel, ThreeLevelNonInduced, ThreeLevelInduced };

/// Level layout of a construction: a partial level `low` with `low_classes`
/// residue classes, full levels low+1 .. high-1, and a partial level `high`
/// with `high_classes` classes.
struct ConstructionSpec {
    ConstructionKind kind;
    int n = 0;
    int r = 0;
    std::optional<int> s;
    int t = 0;
    int low = 0;
    int high = 0;
    int low_classes = 0;
    int high_classes = 0;
};

namespace detail {

inline void check_layout(const ConstructionSpec& c)
{
    if (c.low < 0 || c.high > c.n || c.low >= c.high)
        throw PreconditionError("construction levels " + std::to_string(c.low) + ".." + std::to_string(c.high) +
                                " do not fit in [0," + std::to_string(c.n) + "]");
    if (c.low_classes > c.n || c.high_classes > c.n)
        throw PreconditionError("more residue classes requested than exist");
}

inline SetFamily build(const ConstructionSpec& c)
{
    check_layout(c);
    SetFamily out = largest_mod_classes(c.n, c.low, c.low_classes);
    for (int k = c.low + 1; k < c.high; ++k)
        out = out.united(level(c.n, k));
    return out.united(largest_mod_classes(c.n, c.high, c.high_classes));
}

/// Middle block of `width` full levels, bottom index k = ceil((n - width)/2) - 1.
inline ConstructionSpec three_level_layout(ConstructionKind kind, int n, int r, int s, int t, int width,
                                           int low_classes, int high_classes)
{
    ConstructionSpec c{kind, n, r, s, t};
    c.low = ceil_div(n - width, 2) - 1;
    c.high = c.low + width + 1;
    c.low_classes = low_classes;
    c.high_classes = high_classes;
    return c;
}

} // namespace detail

/// Levels ceil(n/2)-2 (r-1 classes), ceil(n/2)-1, ceil(n/2), ceil(n/2)+1 (t-1 classes).
inline ConstructionSpec thm1_spec(int n, int r, int t)
{
    check_ground_size(n);
    if (r < 2 || t < 2)
        throw PreconditionError("two-level construction requires r,t >= 2");
    if (n < 6)
        throw PreconditionError("two-level construction requires n >= 6");
    ConstructionSpec c{ConstructionKind::TwoLevel, n, r, std::nullopt, t};
    const int half = ceil_div(n, 2);
    c.low = half - 2;
    c.high = half + 1;
    c.low_classes = r - 1;
    c.high_classes = t - 1;
    detail::check_layout(c);
    return c;
}

inline SetFamily construct_thm1(int n, int r, int t) { return detail::build(thm1_spec(n, r, t)); }

/// m_s + f(r,t) full levels, (r-2)^+ and (t-2)^+ classes at the boundary.
/// Accepts s - f >= 2, and also s = 2 with f > 0.
inline ConstructionSpec thm5_spec(int n, int r, int s, int t)
{
    check_ground_size(n);
    if (r < 1 || s < 1 || t < 1)
        throw PreconditionError("construction requires r,s,t >= 1");
    const int f = f_rt(r, t);
    if (s - f < 2 && !(s == 2 && f > 0))
        throw PreconditionError("non-induced three-level construction requires s - f(r,t) >= 2 or s = 2 with f > 0");
    const int width = m_small(s, f) + f;
    auto c = detail::three_level_layout(ConstructionKind::ThreeLevelNonInduced, n, r, s, t, width, z_plus(r - 2),
                                        z_plus(t - 2));
    detail::check_layout(c);
    return c;
}

inline SetFamily construct_thm5(int n, int r, int s, int t) { return detail::build(thm5_spec(n, r, s, t)); }

/// m*_s + f(r,t) full levels, r-1 and t-1 classes at the boundary.
inline ConstructionSpec thm8_spec(int n, int r, int s, int t)
{
    check_ground_size(n);
    if (r < 1 || t < 1)
        throw PreconditionError("construction requires r,t >= 1");
    if (s < 2)
        throw PreconditionError("induced three-level construction requires s >= 2");
    const int width = m_star(s) + f_rt(r, t);
    auto c = detail::three_level_layout(ConstructionKind::ThreeLevelInduced, n, r, s, t, width, r - 1, t - 1);
    detail::check_layout(c);
    return c;
}

inline SetFamily construct_thm8(int n, int r, int s, int t) { return detail::build(thm8_spec(n, r, s, t)); }

/// Exact rational lower bound on a construction's size from the class-size
/// inequality |union of r largest classes| >= (r/n) C(n,k).
inline Rational construction_size_lower_bound(const ConstructionSpec& c)
{
    Rational total = 0;
    for (int k = c.low + 1; k < c.high; ++k)
        total += Rational(binomial(c.n, k));
    total += make_rational(c.low_classes * binomial(c.n, c.low), c.n);
    total += make_rational(c.high_classes * binomial(c.n, c.high), c.n);
    return total;
}

// ---------------------------------------------------------------------------

struct ModPropertyVerdict {
    bool pass = true;
    bool exhaustive = true;
    std::uint64_t tuples_checked = 0;
    std::vector<Subset> counterexample; ///< empty on pass
};

/// Whether r+1 distinct k-sets satisfy |∩| <= k-2 and |∪| >= k+2.
inline bool mod_tuple_ok(const std::vector<Subset>& sets, int k)
{
    Subset inter = sets.front(), uni = sets.front();
    for (Subset s : sets) {
        inter = inter & s;
        uni = uni | s;
    }
    return inter.size() <= k - 2 && uni.size() >= k + 2;
}

/// Checks the (r+1)-tuple spreading property of the r largest residue classes
/// of level k. Exhaustive when C(|classes|, r+1) <= exhaustive_limit, else
/// `exhaustive_limit` seeded random tuples. On failure reports the first
/// counterexample in lexicographic order of tuple indices (sample order when
/// sampling).
inline ModPropertyVerdict verify_mod_property(int n, int k, int r, std::uint64_t exhaustive_limit,
                                              std::uint64_t seed = 0)
{
    check_ground_size(n);
    if (r < 1 || r >= n)
        throw PreconditionError("verify_mod_property requires 1 <= r < n");
    if (k < 2 || k > n - 2)
        throw PreconditionError("verify_mod_property requires 2 <= k <= n-2");
    const SetFamily g = largest_mod_classes(n, k, r);
    const int m = static_cast<int>(g.size());
    const int q = r + 1;
    ModPropertyVerdict v;
    if (m < q)
        return v;

    std::vector<Subset> tuple(q);
    const BigInt count = binomial(m, q);
    if (count <= exhaustive_limit) {
        std::vector<int> idx(q);
        for (int i = 0; i < q; ++i)
            idx[i] = i;
        while (true) {
            for (int i = 0; i < q; ++i)
                tuple[i] = g[idx[i]];
            ++v.tuples_checked;
            if (!mod_tuple_ok(tuple, k)) {
                v.pass = false;
                v.counterexample = tuple;
                return v;
            }
            int i = q - 1;
            while (i >= 0 && idx[i] == m - q + i)
                --i;
            if (i < 0)
                break;
            ++idx[i];
            for (int j = i + 1; j < q; ++j)
                idx[j] = idx[j - 1] + 1;
        }
        return v;
    }

    v.exhaustive = false;
    std::mt19937_64 rng(seed);
    std::vector<int> pool(m);
    for (int i = 0; i < m; ++i)
        pool[i] = i;
    for (std::uint64_t trial = 0; trial < exhaustive_limit; ++trial) {
        // partial Fisher-Yates for q distinct indices
        for (int i = 0; i < q; ++i) {
            std::uniform_int_distribution<int> pick(i, m - 1);
            std::swap(pool[i], pool[pick(rng)]);
        }
        std::vector<int> chosen(pool.begin(), pool.begin() + q);
        std::sort(chosen.begin(), chosen.end());
        for (int i = 0; i < q; ++i)
            tuple[i] = g[chosen[i]];
        ++v.tuples_checked;
        if (!mod_tuple_ok(tuple, k)) {
            v.pass = false;
            v.counterexample = tuple;
            return v;
        }
    }
    return v;
}

} // namespace subposet
