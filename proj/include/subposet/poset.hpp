#pragma once

// Finite posets, complete multilevel posets K[r,s1,...,sj,t], and the
// closed-form quantities attached to them: f(r,t), m_s, m*_s, e*, the
// three-level case split and the limit-density bound coefficients.

#include "subposet/lattice.hpp"
#include "subposet/numeric.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace subposet {

inline constexpr int kMaxPosetSize = 32;

class PosetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Finite strict order stored as per-element "strictly above" bitmasks.
/// Always irreflexive, antisymmetric and transitively closed.
class Poset {
public:
    Poset() = default;

    /// Transitive closure of the given 0-based cover pairs (a < b).
    static Poset from_covers(int p, const std::vector<std::pair<int, int>>& covers)
    {
        if (p < 0 || p > kMaxPosetSize)
            throw PosetError("poset size must be in [0," + std::to_string(kMaxPosetSize) + "]");
        Poset P;
        P.above_.assign(p, 0);
        for (auto [a, b] : covers) {
            if (a < 0 || a >= p || b < 0 || b >= p)
                throw PosetError("element index out of range");
            P.above_[a] |= 1u << b;
        }
        // Warshall closure on bit rows.
        for (int k = 0; k < p; ++k)
            for (int i = 0; i < p; ++i)
                if ((P.above_[i] >> k) & 1u)
                    P.above_[i] |= P.above_[k];
        for (int i = 0; i < p; ++i)
            if ((P.above_[i] >> i) & 1u)
                throw PosetError("relation contains a cycle through element " + std::to_string(i + 1));
        P.rebuild_below();
        return P;
    }

    static Poset antichain(int p) { return from_covers(p, {}); }

    int size() const { return static_cast<int>(above_.size()); }
    bool less(int a, int b) const { return (above_[a] >> b) & 1u; }
    bool comparable(int a, int b) const { return less(a, b) || less(b, a); }
    std::uint32_t above(int a) const { return above_[a]; }
    std::uint32_t below(int a) const { return below_[a]; }

    int relation_count() const
    {
        int c = 0;
        for (auto row : above_)
            c += std::popcount(row);
        return c;
    }

    /// Same elements, reversed order.
    Poset dual() const
    {
        Poset d;
        d.above_ = below_;
        d.below_ = above_;
        return d;
    }

    /// Length (number of elements) of a longest chain ending at each element.
    std::vector<int> heights() const
    {
        const int p = size();
        std::vector<int> h(p, 0);
        // Elements with fewer predecessors come first in any topological order.
        std::vector<int> order(p);
        for (int i = 0; i < p; ++i)
            order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return std::popcount(below_[a]) < std::popcount(below_[b]); });
        for (int v : order) {
            int best = 0;
            for (int u = 0; u < p; ++u)
                if (less(u, v))
                    best = std::max(best, h[u]);
            h[v] = best + 1;
        }
        return h;
    }

    /// L(P): number of elements in a longest chain.
    int longest_chain() const
    {
        int best = 0;
        for (int h : heights())
            best = std::max(best, h);
        return best;
    }

    /// Elements sorted by height, then by index. This is a linear extension.
    std::vector<int> linear_extension() const
    {
        auto h = heights();
        std::vector<int> order(size());
        for (int i = 0; i < size(); ++i)
            order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return h[a] < h[b]; });
        return order;
    }

    /// Elements with identical strict up- and down-sets (automatically incomparable).
    bool twins(int a, int b) const { return above_[a] == above_[b] && below_[a] == below_[b]; }

    /// Checks the strict-order axioms directly; used after construction.
    bool is_valid_strict_order() const
    {
        const int p = size();
        for (int a = 0; a < p; ++a) {
            if (less(a, a))
                return false;
            for (int b = 0; b < p; ++b) {
                if (less(a, b) && less(b, a))
                    return false;
                for (int c = 0; c < p; ++c)
                    if (less(a, b) && less(b, c) && !less(a, c))
                        return false;
            }
        }
        return true;
    }

    bool operator==(const Poset&) const = default;

private:
    void rebuild_below()
    {
        below_.assign(above_.size(), 0);
        for (int a = 0; a < size(); ++a)
            for (int b = 0; b < size(); ++b)
                if (less(a, b))
                    below_[b] |= 1u << a;
    }

    std::vector<std::uint32_t> above_;
    std::vector<std::uint32_t> below_;
};

/// Level widths [r, s1, ..., sj, t] from bottom to top.
struct LevelSignature {
    std::vector<int> widths;

    LevelSignature() = default;
    explicit LevelSignature(std::vector<int> w) : widths(std::move(w))
    {
        if (widths.empty())
            throw PreconditionError("signature needs at least one level");
        for (int x : widths)
            if (x < 1)
                throw PreconditionError("signature widths must be positive");
    }

    int total() const
    {
        int s = 0;
        for (int x : widths)
            s += x;
        return s;
    }

    LevelSignature reversed() const { return LevelSignature(std::vector<int>(widths.rbegin(), widths.rend())); }

    std::string str() const
    {
        std::string out = "K[";
        for (std::size_t i = 0; i < widths.size(); ++i) {
            if (i)
                out += ',';
            out += std::to_string(widths[i]);
        }
        return out + "]";
    }

    bool operator==(const LevelSignature&) const = default;
};

/// Parses "K[r,s1,...,t]".
inline LevelSignature parse_signature(std::string_view text)
{
    text = detail::trim(text);
    if (text.size() < 3 || text.substr(0, 2) != "K[" || text.back() != ']')
        throw PreconditionError("signature must look like K[r,...,t]");
    std::string_view body = text.substr(2, text.size() - 3);
    std::vector<int> w;
    while (true) {
        auto comma = body.find(',');
        int v = 0;
        if (!detail::parse_int(body.substr(0, comma), v) || v < 1)
            throw PreconditionError("bad width in signature '" + std::string(text) + "'");
        w.push_back(v);
        if (comma == std::string_view::npos)
            break;
        body = body.substr(comma + 1);
    }
    return LevelSignature(std::move(w));
}

inline Poset complete_multilevel(const LevelSignature& sig)
{
    std::vector<std::pair<int, int>> covers;
    int start = 0;
    for (std::size_t lvl = 0; lvl + 1 < sig.widths.size(); ++lvl) {
        const int next = start + sig.widths[lvl];
        for (int a = start; a < next; ++a)
            for (int b = next; b < next + sig.widths[lvl + 1]; ++b)
                covers.emplace_back(a, b);
        start = next;
    }
    return Poset::from_covers(sig.total(), covers);
}

/// Total order on k elements (P_k).
inline Poset chain_poset(int k)
{
    if (k < 1)
        throw PreconditionError("chain poset needs k >= 1");
    return complete_multilevel(LevelSignature(std::vector<int>(k, 1)));
}

/// "vee" = K[1,2], "wedge" = K[2,1], "butterfly" = K[2,2], "P<k>" = chain on k elements.
inline Poset named_poset(std::string_view name)
{
    if (name == "vee")
        return complete_multilevel(LevelSignature({1, 2}));
    if (name == "wedge")
        return complete_multilevel(LevelSignature({2, 1}));
    if (name == "butterfly")
        return complete_multilevel(LevelSignature({2, 2}));
    if (name.size() >= 2 && name[0] == 'P') {
        int k = 0;
        if (detail::parse_int(name.substr(1), k) && k >= 1)
            return chain_poset(k);
    }
    throw PreconditionError("unknown poset name '" + std::string(name) + "'");
}

/// Poset file v1: "elements=<p>" then one cover "a<b" per line (1-based).
inline Poset parse_poset(std::string_view text)
{
    std::optional<int> p;
    std::vector<std::pair<int, int>> covers;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;
        line = detail::trim(line);
        if (line.empty() || line.front() == '#')
            continue;
        if (!p) {
            const std::string_view key = "elements=";
            int v = 0;
            if (line.substr(0, key.size()) != key || !detail::parse_int(line.substr(key.size()), v))
                throw ParseError(line_no, "expected header 'elements=<p>'");
            if (v > kMaxPosetSize)
                throw ParseError(line_no, "poset larger than " + std::to_string(kMaxPosetSize) + " elements");
            p = v;
            continue;
        }
        auto lt = line.find('<');
        int a = 0, b = 0;
        if (lt == std::string_view::npos || !detail::parse_int(line.substr(0, lt), a) ||
            !detail::parse_int(line.substr(lt + 1), b))
            throw ParseError(line_no, "expected cover 'a<b'");
        if (a < 1 || a > *p || b < 1 || b > *p)
            throw ParseError(line_no, "element index out of range [1," + std::to_string(*p) + "]");
        covers.emplace_back(a - 1, b - 1);
    }
    if (!p)
        throw ParseError(line_no, "missing header 'elements=<p>'");
    try {
        return Poset::from_covers(*p, covers);
    } catch (const PosetError& e) {
        throw ParseError(line_no, e.what());
    }
}

// ---------------------------------------------------------------------------
// Closed-form quantities

/// f(r,t): 0 if r=t=1, 1 if exactly one of r,t is 1, 2 if both are >= 2.
inline int f_rt(int r, int t)
{
    if (r < 1 || t < 1)
        throw PreconditionError("f(r,t) requires r,t >= 1");
    return (r >= 2 ? 1 : 0) + (t >= 2 ? 1 : 0);
}

inline int z_plus(int z) { return z > 0 ? z : 0; }

/// Smallest m with 2^m >= x, for x >= 1. Integer-only.
inline int ceil_log2(std::uint64_t x)
{
    int m = 0;
    while ((std::uint64_t{1} << m) < x)
        ++m;
    return m;
}

/// m_s = ceil(log2(s - f + 2)).
inline int m_small(int s, int f)
{
    if (s - f < 0)
        throw PreconditionError("m_small requires s - f >= 0");
    return ceil_log2(static_cast<std::uint64_t>(s - f + 2));
}

inline BigInt middle_binomial(int m) { return binomial(m, (m + 1) / 2); }

/// m*_s: smallest m >= 1 with s <= C(m, ceil(m/2)).
/// Note m*_1 = 1 although a one-set interval already holds an antichain of size 1.
inline int m_star(int s)
{
    if (s < 1)
        throw PreconditionError("m_star requires s >= 1");
    int m = 1;
    while (middle_binomial(m) < s)
        ++m;
    return m;
}

/// Reduction steps behind e* of a complete multilevel poset.
struct EStarTrace {
    int w = 0;                ///< number of adjacent (1,1) width pairs
    LevelSignature reduced;   ///< signature with all middle ones removed
    int value = 0;
};

/// e* of K[r,s1,...,sj,t]: w + f(r,t) + sum of m* over the middle widths left
/// after dropping every middle width equal to one.
inline EStarTrace e_star_trace(const LevelSignature& sig)
{
    const auto& s = sig.widths;
    if (s.size() < 2)
        throw PreconditionError("e* needs a signature with bottom and top widths");
    EStarTrace tr;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i - 1] == 1 && s[i] == 1)
            ++tr.w;
    std::vector<int> red{s.front()};
    for (std::size_t i = 1; i + 1 < s.size(); ++i)
        if (s[i] != 1)
            red.push_back(s[i]);
    red.push_back(s.back());
    tr.reduced = LevelSignature(red);
    tr.value = tr.w + f_rt(s.front(), s.back());
    for (std::size_t i = 1; i + 1 < red.size(); ++i)
        tr.value += m_star(red[i]);
    return tr;
}

inline int e_star_complete(const LevelSignature& sig) { return e_star_trace(sig).value; }

enum class CaseLabel { Case1, Case2, SEqualsTwoPositiveF, OutOfScope };

inline const char* to_string(CaseLabel c)
{
    switch (c) {
    case CaseLabel::Case1: return "Case1";
    case CaseLabel::Case2: return "Case2";
    case CaseLabel::SEqualsTwoPositiveF: return "SEqualsTwoPositiveF";
    case CaseLabel::OutOfScope: return "OutOfScope";
    }
    return "?";
}

/// The two intervals for d = s - f with m = m_s:
/// [2^(m-1)-1, 2^m - C(m,ceil(m/2)) - 1] and [2^m - C(m,ceil(m/2)), 2^m - 2].
struct CaseIntervals {
    int m;
    BigInt lo1, hi1, lo2, hi2;
};

inline CaseIntervals case_intervals(int m)
{
    const BigInt p = BigInt(1) << m;
    const BigInt c = middle_binomial(m);
    return {m, p / 2 - 1, p - c - 1, p - c, p - 2};
}

inline CaseLabel classify_case(int r, int s, int t)
{
    if (r < 1 || s < 1 || t < 1)
        throw PreconditionError("classify_case requires r,s,t >= 1");
    const int f = f_rt(r, t);
    const int d = s - f;
    if (d >= 2) {
        auto iv = case_intervals(m_small(s, f));
        if (d >= iv.lo1 && d <= iv.hi1)
            return CaseLabel::Case1;
        if (d >= iv.lo2 && d <= iv.hi2)
            return CaseLabel::Case2;
        return CaseLabel::OutOfScope;
    }
    if (s == 2 && f > 0)
        return CaseLabel::SEqualsTwoPositiveF;
    return CaseLabel::OutOfScope;
}

/// Lower and upper coefficient of C(n, n/2) for a limit density.
struct BoundPair {
    Rational lower;
    Rational upper;
};

/// Bounds on lim La(n,K[r,s,t]) / C(n,n/2).
inline BoundPair pi_bounds_nonind(int r, int s, int t)
{
    const CaseLabel c = classify_case(r, s, t);
    const int f = f_rt(r, t);
    switch (c) {
    case CaseLabel::Case1: {
        const int m = m_small(s, f);
        return {m + f, m + f};
    }
    case CaseLabel::Case2: {
        const int m = m_small(s, f);
        const BigInt slack = (BigInt(1) << m) - s + f - 1;
        Rational upper = Rational(m + f + 1) - make_rational(slack, middle_binomial(m));
        return {m + f, upper};
    }
    case CaseLabel::SEqualsTwoPositiveF:
        return {3, 3};
    case CaseLabel::OutOfScope:
        break;
    }
    throw PreconditionError("K[" + std::to_string(r) + "," + std::to_string(s) + "," + std::to_string(t) +
                            "] is outside every proven case (need s - f(r,t) >= 2, or s = 2 with f(r,t) > 0)");
}

/// Which induced-problem statement applies. The large-s thresholds are not
/// constructive, so the caller asserts the regime.
enum class InducedRegime { S4, LargeBounded, LargeGeneral };

inline InducedRegime parse_regime(std::string_view s)
{
    if (s == "S4")
        return InducedRegime::S4;
    if (s == "LargeBounded")
        return InducedRegime::LargeBounded;
    if (s == "LargeGeneral")
        return InducedRegime::LargeGeneral;
    throw PreconditionError("unknown regime '" + std::string(s) + "' (S4, LargeBounded, LargeGeneral)");
}

/// Bounds on lim La*(n,K[r,s,t]) / C(n,n/2).
inline BoundPair pi_bounds_ind(int r, int s, int t, InducedRegime regime)
{
    if (r < 1 || s < 1 || t < 1)
        throw PreconditionError("pi_bounds_ind requires r,s,t >= 1");
    const int f = f_rt(r, t);
    switch (regime) {
    case InducedRegime::S4:
        if (s != 4)
            throw PreconditionError("regime S4 requires s = 4");
        return {4 + f, 4 + f};
    case InducedRegime::LargeBounded:
        return {m_star(s) + f, m_star(s) + f};
    case InducedRegime::LargeGeneral:
        return {m_star(s) + f, m_star(s) + 1 + f};
    }
    throw PreconditionError("bad regime");
}

/// Coefficient of n! bounding (set, chain) pairs of a K[1,s,1]-free family.
inline Rational lemma4_bound(int s)
{
    if (s < 2)
        throw PreconditionError("lemma4_bound requires s >= 2");
    return pi_bounds_nonind(1, s, 1).upper;
}

/// b(P) = (|P| + L(P)) / 2 - 1.
inline Rational bn_bound(const Poset& p)
{
    return Rational(p.size() + p.longest_chain(), 2) - 1;
}

} // namespace subposet
