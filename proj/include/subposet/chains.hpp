#pragma once

// Maximal chains of B_n, the (set, chain) incidence count, and the chain
// partitions used by the LYM-type counting argument: min-max, min_r and
// min_r-max_t. Also the exact per-level pair-count bounds S(n) and R(n).

#include "subposet/containment.hpp"
#include "subposet/lattice.hpp"
#include "subposet/numeric.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

namespace subposet {

inline constexpr int kDefaultChainCap = 8;
inline constexpr int kHardChainCap = 10;

/// The chain ∅ ⊂ {π1} ⊂ {π1,π2} ⊂ ... ⊂ [n] for a permutation π of [n].
struct MaximalChain {
    std::vector<int> order; ///< 1-based permutation

    int ground_size() const { return static_cast<int>(order.size()); }

    /// The i-th chain set (i = 0..n), of size i.
    Subset at(int i) const
    {
        Subset s;
        for (int k = 0; k < i; ++k)
            s.bits |= 1u << (order[k] - 1);
        return s;
    }

    std::vector<Subset> sets() const
    {
        std::vector<Subset> out{Subset{}};
        Subset s;
        for (int e : order) {
            s.bits |= 1u << (e - 1);
            out.push_back(s);
        }
        return out;
    }
};

inline void check_chain_cap(int n, int cap)
{
    check_ground_size(n);
    if (cap > kHardChainCap)
        throw PreconditionError("chain cap cannot exceed " + std::to_string(kHardChainCap));
    if (n > cap)
        throw PreconditionError("n = " + std::to_string(n) + " exceeds the chain enumeration cap " +
                                std::to_string(cap));
}

/// Calls fn(chain_sets) for every maximal chain whose permutation starts with
/// `first`, in lexicographic permutation order. chain_sets[i] has size i.
template <typename Fn>
void for_each_chain_starting(int n, int first, Fn&& fn)
{
    std::vector<int> perm{first};
    for (int e = 1; e <= n; ++e)
        if (e != first)
            perm.push_back(e);
    std::vector<Subset> sets(n + 1);
    do {
        Subset s;
        sets[0] = s;
        for (int i = 0; i < n; ++i) {
            s.bits |= 1u << (perm[i] - 1);
            sets[i + 1] = s;
        }
        fn(static_cast<const std::vector<Subset>&>(sets), static_cast<const std::vector<int>&>(perm));
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
}

/// Calls fn(chain_sets, permutation) for all n! maximal chains in lexicographic order.
template <typename Fn>
void for_each_chain(int n, Fn&& fn, int cap = kDefaultChainCap)
{
    check_chain_cap(n, cap);
    for (int first = 1; first <= n; ++first)
        for_each_chain_starting(n, first, fn);
}

inline std::vector<MaximalChain> enumerate_chains(int n, int cap = kDefaultChainCap)
{
    std::vector<MaximalChain> out;
    for_each_chain(
        n, [&](const std::vector<Subset>&, const std::vector<int>& perm) { out.push_back(MaximalChain{perm}); }, cap);
    return out;
}

/// Σ_{F∈F} |F|! (n-|F|)!
inline BigInt count_pairs_formula(const SetFamily& f)
{
    const int n = f.ground_size();
    std::vector<BigInt> fact(n + 1);
    fact[0] = 1;
    for (int i = 1; i <= n; ++i)
        fact[i] = fact[i - 1] * i;
    BigInt total = 0;
    for (Subset s : f)
        total += fact[s.size()] * fact[n - s.size()];
    return total;
}

/// Same count, by walking every maximal chain.
inline BigInt count_pairs_enumerated(const SetFamily& f, int cap = kDefaultChainCap)
{
    const auto member = f.membership();
    std::uint64_t total = 0;
    for_each_chain(
        f.ground_size(),
        [&](const std::vector<Subset>& sets, const std::vector<int>&) {
            for (Subset s : sets)
                total += member[s.bits];
        },
        cap);
    return total;
}

/// Σ 1/C(n,|F|).
inline Rational lym_sum(const SetFamily& f)
{
    Rational total = 0;
    for (Subset s : f)
        total += make_rational(1, binomial(f.ground_size(), s.size()));
    return total;
}

// ---------------------------------------------------------------------------
// Partitions

struct PartLabel {
    enum class Kind { Degenerate, Regular, MinR, MinMax, Empty };
    Kind kind = Kind::Empty;
    Subset a;
    Subset b;

    static PartLabel degenerate(Subset s) { return {Kind::Degenerate, s, {}}; }
    static PartLabel regular(Subset a, Subset b) { return {Kind::Regular, a, b}; }
    static PartLabel min_r(Subset a) { return {Kind::MinR, a, {}}; }
    static PartLabel min_max(Subset a, Subset b) { return {Kind::MinMax, a, b}; }
    static PartLabel empty() { return {}; }

    /// "S:{1,3}", "AB:{1}|{1,2,4}", "A:{2}" or "EMPTY".
    std::string str() const
    {
        switch (kind) {
        case Kind::Degenerate: return "S:" + format_subset(a);
        case Kind::Regular:
        case Kind::MinMax: return "AB:" + format_subset(a) + "|" + format_subset(b);
        case Kind::MinR: return "A:" + format_subset(a);
        case Kind::Empty: return "EMPTY";
        }
        return "?";
    }

    bool operator==(const PartLabel&) const = default;
    auto operator<=>(const PartLabel& o) const
    {
        if (auto c = kind <=> o.kind; c != 0)
            return c;
        if (auto c = a <=> o.a; c != 0)
            return c;
        return b <=> o.b;
    }
};

struct PartStats {
    BigInt chains = 0;
    BigInt pairs = 0; ///< (F, chain) incidences with F on a chain of this part
};

struct PartitionReport {
    std::string mode;
    int n = 0;
    std::map<PartLabel, PartStats> parts;
    BigInt total_chains = 0;
    BigInt total_pairs = 0;

    /// Chain counts add up to n! and pair counts to the closed-form sum.
    bool is_total(const SetFamily& f) const
    {
        BigInt chains = 0, pairs = 0;
        for (const auto& [label, st] : parts) {
            chains += st.chains;
            pairs += st.pairs;
        }
        return chains == factorial(n) && chains == total_chains && pairs == total_pairs &&
               pairs == count_pairs_formula(f);
    }
};

/// s^- and s^+ for every subset of [n], indexed by mask.
struct AntichainProfile {
    std::vector<int> minus;
    std::vector<int> plus;
    int largest = 0; ///< size of a maximum antichain of the family

    explicit AntichainProfile(const SetFamily& f)
    {
        const std::size_t total = std::size_t{1} << f.ground_size();
        minus.resize(total);
        plus.resize(total);
        for (std::uint32_t a = 0; a < total; ++a) {
            minus[a] = static_cast<int>(s_minus(f, Subset(a)));
            plus[a] = static_cast<int>(s_plus(f, Subset(a)));
        }
        largest = minus[total - 1];
    }
};

namespace detail {

/// Runs label(chain_sets) over all chains, split by first element across
/// `threads` workers, and merges per-label counts.
template <typename LabelFn>
PartitionReport build_report(const SetFamily& f, std::string mode, LabelFn&& label, int threads, int cap)
{
    const int n = f.ground_size();
    check_chain_cap(n, cap);
    const auto member = f.membership();
    threads = std::clamp(threads, 1, n);

    std::vector<std::map<PartLabel, std::pair<std::uint64_t, std::uint64_t>>> partial(threads);
    auto work = [&](int w) {
        auto& acc = partial[w];
        for (int first = 1 + w; first <= n; first += threads)
            for_each_chain_starting(n, first, [&](const std::vector<Subset>& sets, const std::vector<int>&) {
                std::uint64_t hits = 0;
                for (Subset s : sets)
                    hits += member[s.bits];
                auto& slot = acc[label(sets)];
                slot.first += 1;
                slot.second += hits;
            });
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w)
            pool.emplace_back(work, w);
        for (auto& t : pool)
            t.join();
    }

    PartitionReport rep;
    rep.mode = std::move(mode);
    rep.n = n;
    for (const auto& acc : partial)
        for (const auto& [lab, cnt] : acc) {
            auto& st = rep.parts[lab];
            st.chains += cnt.first;
            st.pairs += cnt.second;
            rep.total_chains += cnt.first;
            rep.total_pairs += cnt.second;
        }
    return rep;
}

} // namespace detail

/// Each chain goes to (smallest, largest) member of F on it, or EMPTY.
inline PartitionReport min_max_partition(const SetFamily& f, int threads = 1, int cap = kDefaultChainCap)
{
    const auto member = f.membership();
    return detail::build_report(
        f, "minmax",
        [&](const std::vector<Subset>& sets) {
            int lo = -1, hi = -1;
            for (int i = 0; i < static_cast<int>(sets.size()); ++i)
                if (member[sets[i].bits]) {
                    if (lo < 0)
                        lo = i;
                    hi = i;
                }
            return lo < 0 ? PartLabel::empty() : PartLabel::min_max(sets[lo], sets[hi]);
        },
        threads, cap);
}

/// Each chain goes to its smallest set A with s^-_F(A) >= r.
/// Requires F to contain an antichain of size r.
inline PartitionReport min_r_partition(const SetFamily& f, int r, int threads = 1, int cap = kDefaultChainCap)
{
    if (r < 1)
        throw PreconditionError("min_r partition requires r >= 1");
    check_chain_cap(f.ground_size(), cap);
    AntichainProfile prof(f);
    if (prof.largest < r)
        throw PreconditionError("min_r partition undefined: largest antichain has size " +
                                std::to_string(prof.largest) + " < r = " + std::to_string(r));
    return detail::build_report(
        f, "minr",
        [&](const std::vector<Subset>& sets) {
            for (Subset s : sets)
                if (prof.minus[s.bits] >= r)
                    return PartLabel::min_r(s);
            return PartLabel::empty(); // unreachable: s^-([n]) >= r
        },
        threads, cap);
}

/// The two markers of a chain in the min_r-max_t partition. `a` / `b` are
/// chain positions, -1 when the marker does not exist.
struct ChainMarkers {
    int a = -1;
    int b = -1;
};

inline ChainMarkers minr_maxt_markers(const std::vector<Subset>& sets, const std::vector<bool>& member,
                                      const AntichainProfile& prof, int r, int t)
{
    ChainMarkers mk;
    const int len = static_cast<int>(sets.size());
    for (int i = 0; i < len && mk.a < 0; ++i)
        if (r == 1 ? bool(member[sets[i].bits]) : prof.minus[sets[i].bits] >= r)
            mk.a = i;
    for (int j = len - 1; j >= 0 && mk.b < 0; --j)
        if (t == 1 ? bool(member[sets[j].bits]) : prof.plus[sets[j].bits] >= t)
            mk.b = j;
    return mk;
}

/// min_r-max_t partition. A is the smallest chain set with s^- >= r (for r = 1:
/// smallest member of F on the chain); B is the largest chain set with s^+ >= t
/// (for t = 1: largest member of F on the chain). Chains with A ⊆ B go to
/// AB:A|B; chains whose B marker is missing or below A go to S:A; for r = 1,
/// chains missing F go to EMPTY. For r >= 2, F needs an antichain of size
/// max(r,t).
inline PartitionReport minr_maxt_partition(const SetFamily& f, int r, int t, int threads = 1,
                                           int cap = kDefaultChainCap)
{
    if (r < 1 || t < 1)
        throw PreconditionError("min_r-max_t partition requires r,t >= 1");
    check_chain_cap(f.ground_size(), cap);
    AntichainProfile prof(f);
    if (r >= 2 && prof.largest < std::max(r, t))
        throw PreconditionError("min_r-max_t partition undefined: largest antichain has size " +
                                std::to_string(prof.largest) + " < max(r,t) = " + std::to_string(std::max(r, t)));
    const auto member = f.membership();
    return detail::build_report(
        f, "minrmaxt",
        [&](const std::vector<Subset>& sets) {
            const ChainMarkers mk = minr_maxt_markers(sets, member, prof, r, t);
            if (mk.a < 0)
                return PartLabel::empty();
            if (mk.b < mk.a)
                return PartLabel::degenerate(sets[mk.a]);
            return PartLabel::regular(sets[mk.a], sets[mk.b]);
        },
        threads, cap);
}

// ---------------------------------------------------------------------------
// Per-level pair-count bounds

/// S(n)/n! = 2 + 3 Σ_{i=1}^{n-1} 1/C(n,i): pair count when every inner level
/// holds at most three sets and both ∅ and [n] are present.
inline Rational S_lemma2(int n)
{
    if (n < 1)
        throw PreconditionError("S(n) requires n >= 1");
    Rational inner = 0;
    for (int i = 1; i <= n - 1; ++i)
        inner += make_rational(1, binomial(n, i));
    return Rational(2) + 3 * inner;
}

/// R(n) = Σ_{j=0}^{n} min((s-1)/C(n,j), 1).
inline Rational R_func(int n, int s)
{
    if (n < 0 || s < 1)
        throw PreconditionError("R(n) requires n >= 0 and s >= 1");
    Rational total = 0;
    for (int j = 0; j <= n; ++j)
        total += std::min(make_rational(s - 1, binomial(n, j)), Rational(1));
    return total;
}

struct PairBoundVerdict {
    bool pass = false;
    BigInt pairs;   ///< Σ |F|!(n-|F|)!
    Rational bound; ///< coeff · n!
};

inline PairBoundVerdict pair_bound_check(const SetFamily& f, const Rational& coeff)
{
    PairBoundVerdict v;
    v.pairs = count_pairs_formula(f);
    v.bound = coeff * Rational(factorial(f.ground_size()));
    v.pass = Rational(v.pairs) <= v.bound;
    return v;
}

} // namespace subposet
