#pragma once

// Subsets of [n] as bitmasks, set families in canonical order, levels,
// modular residue classes and the family text format.

#include "subposet/numeric.hpp"

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace subposet {

/// Hard cap on the ground set size; masks must fit one 32-bit word.
inline constexpr int kMaxGroundSize = 24;

inline void check_ground_size(int n)
{
    if (n < 1 || n > kMaxGroundSize)
        throw PreconditionError("ground set size must be in [1," + std::to_string(kMaxGroundSize) +
                                "], got " + std::to_string(n));
}

/// A subset of [n]. Element i (1-based) is bit i-1.
struct Subset {
    std::uint32_t bits = 0;

    constexpr Subset() = default;
    constexpr explicit Subset(std::uint32_t b) : bits(b) {}

    static constexpr Subset full(int n) { return Subset(n >= 32 ? ~0u : ((1u << n) - 1u)); }

    /// Build from 1-based element list.
    static Subset of(std::initializer_list<int> elems)
    {
        Subset s;
        for (int e : elems)
            s.bits |= 1u << (e - 1);
        return s;
    }

    constexpr int size() const { return std::popcount(bits); }
    constexpr bool empty() const { return bits == 0; }
    constexpr bool has(int element) const { return (bits >> (element - 1)) & 1u; }
    constexpr bool subset_of(Subset o) const { return (bits & ~o.bits) == 0; }
    constexpr bool proper_subset_of(Subset o) const { return subset_of(o) && bits != o.bits; }
    constexpr bool valid_for(int n) const { return n >= 32 || (bits >> n) == 0; }

    constexpr Subset complement(int n) const { return Subset(full(n).bits & ~bits); }
    constexpr Subset operator|(Subset o) const { return Subset(bits | o.bits); }
    constexpr Subset operator&(Subset o) const { return Subset(bits & o.bits); }
    constexpr Subset minus(Subset o) const { return Subset(bits & ~o.bits); }

    constexpr bool operator==(const Subset&) const = default;

    /// Canonical order: by cardinality, then by numeric mask.
    constexpr std::strong_ordering operator<=>(const Subset& o) const
    {
        if (auto c = size() <=> o.size(); c != 0)
            return c;
        return bits <=> o.bits;
    }

    /// 1-based elements in ascending order.
    std::vector<int> elements() const
    {
        std::vector<int> out;
        for (std::uint32_t b = bits; b != 0; b &= b - 1)
            out.push_back(std::countr_zero(b) + 1);
        return out;
    }
};

inline std::string format_subset(Subset s)
{
    std::string out = "{";
    bool first = true;
    for (int e : s.elements()) {
        if (!first)
            out += ',';
        out += std::to_string(e);
        first = false;
    }
    out += '}';
    return out;
}

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_;
};

/// Family of distinct subsets of [n], always held in canonical order.
class SetFamily {
public:
    explicit SetFamily(int n) : n_(n) { check_ground_size(n); }

    SetFamily(int n, std::vector<Subset> members) : n_(n), members_(std::move(members))
    {
        check_ground_size(n);
        for (Subset s : members_)
            if (!s.valid_for(n))
                throw PreconditionError("subset " + format_subset(s) + " not inside [" + std::to_string(n) + "]");
        std::sort(members_.begin(), members_.end());
        if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
            throw PreconditionError("duplicate member in set family");
    }

    int ground_size() const { return n_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    std::span<const Subset> members() const { return members_; }
    const Subset& operator[](std::size_t i) const { return members_[i]; }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    std::optional<std::size_t> index_of(Subset s) const
    {
        auto it = std::lower_bound(members_.begin(), members_.end(), s);
        if (it == members_.end() || *it != s)
            return std::nullopt;
        return static_cast<std::size_t>(it - members_.begin());
    }

    bool contains(Subset s) const { return index_of(s).has_value(); }

    /// Members F with F ⊆ a (kept in canonical order).
    SetFamily below(Subset a) const
    {
        SetFamily out(n_);
        for (Subset s : members_)
            if (s.subset_of(a))
                out.members_.push_back(s);
        return out;
    }

    /// Members F with a ⊆ F.
    SetFamily above(Subset a) const
    {
        SetFamily out(n_);
        for (Subset s : members_)
            if (a.subset_of(s))
                out.members_.push_back(s);
        return out;
    }

    /// Union with a family over the same ground set; duplicates are an error.
    SetFamily united(const SetFamily& other) const
    {
        if (other.n_ != n_)
            throw PreconditionError("families over different ground sets");
        std::vector<Subset> all(members_);
        all.insert(all.end(), other.members_.begin(), other.members_.end());
        return SetFamily(n_, std::move(all));
    }

    /// Bitset over all 2^n subsets marking membership.
    std::vector<bool> membership() const
    {
        std::vector<bool> m(std::size_t{1} << n_, false);
        for (Subset s : members_)
            m[s.bits] = true;
        return m;
    }

    bool operator==(const SetFamily&) const = default;

private:
    int n_;
    std::vector<Subset> members_;
};

/// Σ(n,k): sum of C(n, floor((n-k)/2) + i) for i = 1..k.
inline BigInt sigma(int n, int k)
{
    if (n < 0 || k < 0 || k > n)
        throw PreconditionError("sigma requires 0 <= k <= n");
    BigInt total = 0;
    const int base = (n - k) / 2;
    for (int i = 1; i <= k; ++i)
        total += binomial(n, base + i);
    return total;
}

inline SetFamily level(int n, int k)
{
    check_ground_size(n);
    if (k < 0 || k > n)
        throw PreconditionError("level index " + std::to_string(k) + " outside [0," + std::to_string(n) + "]");
    std::vector<Subset> sets;
    const std::uint32_t limit = Subset::full(n).bits;
    // Gosper's hack walks k-subsets in increasing mask order.
    if (k == 0) {
        sets.emplace_back(0u);
    } else {
        std::uint32_t x = (1u << k) - 1u;
        while (x <= limit) {
            sets.emplace_back(x);
            const std::uint32_t c = x & (~x + 1u);
            const std::uint32_t r = x + c;
            if (r == 0)
                break;
            x = (((r ^ x) >> 2) / c) | r;
        }
    }
    return SetFamily(n, std::move(sets));
}

/// Union of levels j+1 .. j+k.
inline SetFamily consecutive_levels(int n, int j, int k)
{
    check_ground_size(n);
    if (k < 0 || j + 1 < 0 || j + k > n)
        throw PreconditionError("consecutive_levels: levels " + std::to_string(j + 1) + ".." +
                                std::to_string(j + k) + " outside [0," + std::to_string(n) + "]");
    std::vector<Subset> all;
    for (int i = 1; i <= k; ++i) {
        SetFamily l = level(n, j + i);
        all.insert(all.end(), l.begin(), l.end());
    }
    return SetFamily(n, std::move(all));
}

inline int element_sum_residue(Subset s, int n)
{
    int sum = 0;
    for (int e : s.elements())
        sum += e;
    return sum % n;
}

/// The n classes of level k by element-sum residue mod n, indexed 0..n-1.
inline std::vector<SetFamily> modular_classes(int n, int k)
{
    SetFamily lvl = level(n, k);
    std::vector<std::vector<Subset>> parts(n);
    for (Subset s : lvl)
        parts[element_sum_residue(s, n)].push_back(s);
    std::vector<SetFamily> out;
    out.reserve(n);
    for (auto& p : parts)
        out.emplace_back(n, std::move(p));
    return out;
}

/// Residue indices of the r largest classes; ties go to the smaller residue.
inline std::vector<int> largest_mod_class_indices(int n, int k, int r)
{
    if (r < 0 || r > n)
        throw PreconditionError("largest_mod_classes requires 0 <= r <= n");
    auto classes = modular_classes(n, k);
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return classes[a].size() > classes[b].size(); });
    idx.resize(r);
    return idx;
}

inline SetFamily largest_mod_classes(int n, int k, int r)
{
    auto classes = modular_classes(n, k);
    std::vector<Subset> all;
    for (int i : largest_mod_class_indices(n, k, r))
        all.insert(all.end(), classes[i].begin(), classes[i].end());
    return SetFamily(n, std::move(all));
}

inline SetFamily complement_family(const SetFamily& f)
{
    const int n = f.ground_size();
    std::vector<Subset> out;
    out.reserve(f.size());
    for (Subset s : f)
        out.push_back(s.complement(n));
    return SetFamily(n, std::move(out));
}

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto ws = " \t\r";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline bool parse_int(std::string_view s, int& out)
{
    s = trim(s);
    if (s.empty() || s.size() > 9)
        return false;
    int v = 0;
    for (char c : s) {
        if (c < '0' || c > '9')
            return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

} // namespace detail

/// Parse "{}" or "{a,b,c}" with strictly ascending elements in [1,n].
/// Throws ParseError tagged with `line_no`.
inline Subset parse_subset(std::string_view text, int n, int line_no)
{
    text = detail::trim(text);
    if (text.size() < 2 || text.front() != '{' || text.back() != '}')
        throw ParseError(line_no, "malformed set '" + std::string(text) + "'");
    std::string_view body = detail::trim(text.substr(1, text.size() - 2));
    Subset s;
    if (body.empty())
        return s;
    int prev = 0;
    while (true) {
        auto comma = body.find(',');
        std::string_view tok = body.substr(0, comma);
        int v = 0;
        if (!detail::parse_int(tok, v))
            throw ParseError(line_no, "malformed element '" + std::string(detail::trim(tok)) + "'");
        if (v < 1 || v > n)
            throw ParseError(line_no, "element " + std::to_string(v) + " out of range [1," + std::to_string(n) + "]");
        if (v <= prev)
            throw ParseError(line_no, "elements must be strictly ascending");
        s.bits |= 1u << (v - 1);
        prev = v;
        if (comma == std::string_view::npos)
            break;
        body = body.substr(comma + 1);
    }
    return s;
}

/// Family file v1: '#' comments, a header "n=<int>", then one set per line.
inline SetFamily parse_family(std::string_view text)
{
    std::vector<Subset> sets;
    std::vector<int> lines;
    std::optional<int> n;
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
        if (!n) {
            int v = 0;
            if (line.substr(0, 2) != "n=" || !detail::parse_int(line.substr(2), v))
                throw ParseError(line_no, "expected header 'n=<int>'");
            if (v < 1 || v > kMaxGroundSize)
                throw ParseError(line_no, "ground set size " + std::to_string(v) + " outside [1," +
                                              std::to_string(kMaxGroundSize) + "]");
            n = v;
            continue;
        }
        sets.push_back(parse_subset(line, *n, line_no));
        lines.push_back(line_no);
    }
    if (!n)
        throw ParseError(line_no, "missing header 'n=<int>'");
    std::vector<std::size_t> order(sets.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return sets[a] < sets[b]; });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (sets[order[i]] == sets[order[i - 1]])
            throw ParseError(lines[std::max(order[i], order[i - 1])], "duplicate set " + format_subset(sets[order[i]]));
    return SetFamily(*n, std::move(sets));
}

inline std::string serialize_family(const SetFamily& f)
{
    std::string out = "n=" + std::to_string(f.ground_size()) + "\n";
    for (Subset s : f) {
        out += format_subset(s);
        out += '\n';
    }
    return out;
}

} // namespace subposet
