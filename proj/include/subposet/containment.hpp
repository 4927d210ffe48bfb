#pragma once

// Subposet containment in set families (induced and non-induced), maximum
// antichains via bipartite matching, the s^- / s^+ statistics, and the
// finite-n level-freeness probe.

#include "subposet/lattice.hpp"
#include "subposet/poset.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace subposet {

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

enum class Comparison { Less, Greater, Equal, Incomparable };

inline Comparison compare(Subset a, Subset b)
{
    if (a == b)
        return Comparison::Equal;
    if (a.subset_of(b))
        return Comparison::Less;
    if (b.subset_of(a))
        return Comparison::Greater;
    return Comparison::Incomparable;
}

/// images[p] is the index (into the family) of the set assigned to poset element p.
struct Embedding {
    std::vector<std::size_t> images;
    bool operator==(const Embedding&) const = default;
};

enum class SearchStatus { Found, NotFound, BudgetExhausted };

struct SearchResult {
    SearchStatus status = SearchStatus::NotFound;
    std::optional<Embedding> embedding;
    std::uint64_t nodes = 0;

    bool found() const { return status == SearchStatus::Found; }
    bool exhausted_budget() const { return status == SearchStatus::BudgetExhausted; }
};

class BudgetExhaustedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// True when `images` is a valid (induced) copy of `p` inside `f`.
inline bool is_valid_embedding(const SetFamily& f, const Poset& p, const Embedding& e, bool induced)
{
    if (static_cast<int>(e.images.size()) != p.size())
        return false;
    for (std::size_t i = 0; i < e.images.size(); ++i) {
        if (e.images[i] >= f.size())
            return false;
        for (std::size_t j = 0; j < e.images.size(); ++j) {
            if (i == j)
                continue;
            if (e.images[i] == e.images[j])
                return false;
            const bool below = f[e.images[i]].proper_subset_of(f[e.images[j]]);
            const bool rel = p.less(static_cast<int>(i), static_cast<int>(j));
            if (rel && !below)
                return false;
            if (induced && !rel && below)
                return false;
        }
    }
    return true;
}

/// True when the family is a union of complete levels, i.e. invariant under
/// every permutation of the ground set.
inline bool is_level_union(const SetFamily& f)
{
    const int n = f.ground_size();
    std::vector<std::uint64_t> counts(n + 1, 0);
    for (Subset s : f)
        ++counts[s.size()];
    for (int k = 0; k <= n; ++k)
        if (counts[k] != 0 && counts[k] != binomial_u64(n, k))
            return false;
    return true;
}

namespace detail {

/// Backtracking embedding search over a fixed linear extension of the poset.
///
/// Domains are bitsets over family indices and are filtered forward after each
/// assignment. Candidates are tried in ascending family order, so the first
/// embedding found is the lexicographic minimum (by linear-extension position)
/// among all embeddings. Two reductions keep that property:
///  - images of twin elements are taken in increasing order;
///  - for level-union families, each image must pack into the low end of
///    every cell of the partition generated by earlier images.
class EmbeddingSearch {
public:
    EmbeddingSearch(const SetFamily& f, const Poset& p, bool induced, std::uint64_t budget)
        : f_(f), p_(p), induced_(induced), budget_(budget), size_(f.size()), words_((f.size() + 63) / 64)
    {
        const std::size_t m = size_;
        up_.assign(m * words_, 0);
        down_.assign(m * words_, 0);
        if (induced_)
            incomp_.assign(m * words_, 0);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) {
                if (a == b)
                    continue;
                const Subset A = f[a], B = f[b];
                if (A.proper_subset_of(B))
                    set_bit(&up_[a * words_], b);
                else if (B.proper_subset_of(A))
                    set_bit(&down_[a * words_], b);
                else if (induced_)
                    set_bit(&incomp_[a * words_], b);
            }

        const int np = p.size();
        order_ = p.linear_extension();
        position_.assign(np, 0);
        for (int i = 0; i < np; ++i)
            position_[order_[i]] = i;
        prev_twin_.assign(np, -1);
        group_.assign(np, -1);
        for (int i = 0; i < np; ++i) {
            const int x = order_[i];
            for (int k = i - 1; k >= 0; --k)
                if (p.twins(order_[k], x)) {
                    prev_twin_[x] = order_[k];
                    break;
                }
        }
        for (int x = 0; x < np; ++x) {
            if (group_[x] >= 0)
                continue;
            const int g = static_cast<int>(groups_.size());
            groups_.emplace_back();
            for (int y = x; y < np; ++y)
                if (y == x || p.twins(x, y)) {
                    group_[y] = g;
                    groups_.back().push_back(y);
                }
        }
        group_mstar_.resize(groups_.size());
        for (std::size_t g = 0; g < groups_.size(); ++g)
            group_mstar_[g] = groups_[g].size() >= 2 ? m_star(static_cast<int>(groups_[g].size())) : 0;

        symmetric_ = is_level_union(f);
        domains_.assign((np + 1) * np * words_, 0);
        std::uint64_t* d0 = &domains_[0];
        for (int x = 0; x < np; ++x)
            for (std::size_t b = 0; b < m; ++b)
                set_bit(d0 + x * words_, b);
        images_.assign(np, 0);
        scratch_.assign(words_, 0);
    }

    /// Restrict element x to a single family index (disables level symmetry).
    void force(int x, std::size_t member)
    {
        std::uint64_t* d = &domains_[x * words_];
        std::fill(d, d + words_, 0);
        set_bit(d, member);
        symmetric_ = false;
    }

    SearchResult run()
    {
        SearchResult res;
        const int np = p_.size();
        if (np == 0) {
            res.status = SearchStatus::Found;
            res.embedding = Embedding{};
            return res;
        }
        for (int x = 0; x < np; ++x)
            if (popcount(&domains_[x * words_]) == 0) {
                res.status = SearchStatus::NotFound;
                return res;
            }
        std::vector<std::uint32_t> cells;
        if (symmetric_)
            cells.push_back(Subset::full(f_.ground_size()).bits);
        const bool ok = dfs(0, cells);
        res.nodes = nodes_;
        if (ok) {
            res.status = SearchStatus::Found;
            res.embedding = Embedding{{images_.begin(), images_.end()}};
        } else {
            res.status = out_of_budget_ ? SearchStatus::BudgetExhausted : SearchStatus::NotFound;
        }
        return res;
    }

private:
    static void set_bit(std::uint64_t* w, std::size_t b) { w[b >> 6] |= std::uint64_t{1} << (b & 63); }
    static void clear_bit(std::uint64_t* w, std::size_t b) { w[b >> 6] &= ~(std::uint64_t{1} << (b & 63)); }
    int popcount(const std::uint64_t* w) const
    {
        int c = 0;
        for (std::size_t i = 0; i < words_; ++i)
            c += std::popcount(w[i]);
        return c;
    }
    /// Index of the highest set bit, or -1.
    long top_bit(const std::uint64_t* w) const
    {
        for (std::size_t i = words_; i-- > 0;)
            if (w[i])
                return static_cast<long>(i * 64 + 63 - std::countl_zero(w[i]));
        return -1;
    }

    static bool canonical_in_cells(std::uint32_t c, const std::vector<std::uint32_t>& cells)
    {
        for (std::uint32_t cell : cells) {
            const std::uint32_t part = c & cell;
            // part must be the lowest popcount(part) bits of cell
            std::uint32_t low = 0, rest = cell;
            for (int k = std::popcount(part); k > 0; --k) {
                const std::uint32_t lsb = rest & (~rest + 1u);
                low |= lsb;
                rest ^= lsb;
            }
            if (part != low)
                return false;
        }
        return true;
    }

    static std::vector<std::uint32_t> refine(std::uint32_t c, const std::vector<std::uint32_t>& cells)
    {
        std::vector<std::uint32_t> out;
        out.reserve(cells.size() + 1);
        for (std::uint32_t cell : cells) {
            if (cell & c)
                out.push_back(cell & c);
            if (cell & ~c)
                out.push_back(cell & ~c);
        }
        return out;
    }

    bool dfs(int depth, const std::vector<std::uint32_t>& cells)
    {
        const int np = p_.size();
        if (depth == np)
            return true;
        const int x = order_[depth];
        const std::uint64_t* dom = &domains_[(depth * np + x) * words_];
        const long lower = prev_twin_[x] >= 0 ? static_cast<long>(images_[prev_twin_[x]]) : -1;

        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t bits = dom[w];
            while (bits) {
                const std::size_t c = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                if (static_cast<long>(c) <= lower)
                    continue;
                if (symmetric_ && !canonical_in_cells(f_[c].bits, cells))
                    continue;
                if (++nodes_ > budget_) {
                    out_of_budget_ = true;
                    return false;
                }
                images_[x] = c;
                if (!propagate(depth, x, c))
                    continue;
                if (symmetric_) {
                    if (dfs(depth + 1, refine(f_[c].bits, cells)))
                        return true;
                } else if (dfs(depth + 1, cells)) {
                    return true;
                }
                if (out_of_budget_)
                    return false;
            }
        }
        return false;
    }

    /// Copies domains to depth+1 filtered by x -> c; false if some domain dies.
    bool propagate(int depth, int x, std::size_t c)
    {
        const int np = p_.size();
        const std::uint64_t* src = &domains_[depth * np * words_];
        std::uint64_t* dst = &domains_[(depth + 1) * np * words_];
        const std::uint64_t* up = &up_[c * words_];
        const std::uint64_t* down = &down_[c * words_];
        const std::uint64_t* inc = induced_ ? &incomp_[c * words_] : nullptr;

        for (int i = depth + 1; i < np; ++i) {
            const int y = order_[i];
            const std::uint64_t* s = src + y * words_;
            std::uint64_t* d = dst + y * words_;
            const std::uint64_t* mask = nullptr;
            if (p_.less(x, y))
                mask = up;
            else if (p_.less(y, x))
                mask = down;
            else if (induced_)
                mask = inc;
            for (std::size_t w = 0; w < words_; ++w)
                d[w] = mask ? (s[w] & mask[w]) : s[w];
            clear_bit(d, c);
            if (popcount(d) == 0)
                return false;
        }

        // Each twin group needs as many candidates as it has unplaced members.
        for (std::size_t g = 0; g < groups_.size(); ++g) {
            int unplaced = 0;
            std::fill(scratch_.begin(), scratch_.end(), 0);
            for (int y : groups_[g])
                if (position_[y] > depth) {
                    ++unplaced;
                    for (std::size_t w = 0; w < words_; ++w)
                        scratch_[w] |= dst[y * words_ + w];
                }
            if (unplaced >= 2 && popcount(scratch_.data()) < unplaced)
                return false;
        }

        return !induced_ || intervals_feasible(depth);
    }

    /// Induced mode: a twin group of q >= 2 elements is an antichain of images
    /// inside [L, T], where L is the union of placed images below the group and
    /// T any admissible image above it; that needs |T \ L| >= m*_q.
    bool intervals_feasible(int depth)
    {
        const int np = p_.size();
        const std::uint64_t* dst = &domains_[(depth + 1) * np * words_];
        for (std::size_t g = 0; g < groups_.size(); ++g) {
            if (group_mstar_[g] == 0)
                continue;
            const int rep = groups_[g].front();
            bool any_unplaced = false;
            for (int y : groups_[g])
                any_unplaced |= position_[y] > depth;
            if (!any_unplaced)
                continue;
            Subset low;
            Subset cap = Subset::full(f_.ground_size());
            bool placed_above = false;
            for (int z = 0; z < np; ++z) {
                if (position_[z] > depth)
                    continue;
                if (p_.less(z, rep))
                    low = low | f_[images_[z]];
                else if (p_.less(rep, z)) {
                    cap = cap & f_[images_[z]];
                    placed_above = true;
                }
            }
            const int need = group_mstar_[g];
            if (placed_above) {
                if (!low.subset_of(cap) || cap.minus(low).size() < need)
                    return false;
                continue;
            }
            for (int z = 0; z < np; ++z) {
                if (position_[z] <= depth || !p_.less(rep, z))
                    continue;
                const long top = top_bit(dst + z * words_);
                if (top < 0 || f_[static_cast<std::size_t>(top)].size() - low.size() < need)
                    return false;
            }
        }
        return true;
    }

    const SetFamily& f_;
    const Poset& p_;
    bool induced_;
    std::uint64_t budget_;
    std::size_t size_;
    std::size_t words_;
    std::vector<std::uint64_t> up_, down_, incomp_;
    std::vector<int> order_, position_, prev_twin_, group_;
    std::vector<std::vector<int>> groups_;
    std::vector<int> group_mstar_;
    bool symmetric_ = false;
    std::vector<std::uint64_t> domains_;
    std::vector<std::size_t> images_;
    std::vector<std::uint64_t> scratch_;
    std::uint64_t nodes_ = 0;
    bool out_of_budget_ = false;
};

} // namespace detail

/// Searches for a (possibly induced) copy of `p` in `f`. The returned witness
/// is the lexicographically smallest one, positions taken in the poset's
/// linear extension (height, then index) and values in family order.
inline SearchResult contains_subposet(const SetFamily& f, const Poset& p, bool induced,
                                      std::uint64_t budget = kDefaultNodeBudget)
{
    if (p.size() > static_cast<int>(f.size()))
        return {SearchStatus::NotFound, std::nullopt, 0};
    detail::EmbeddingSearch search(f, p, induced, budget);
    return search.run();
}

/// Like contains_subposet, but only copies that use family member `member`.
inline SearchResult contains_subposet_using(const SetFamily& f, const Poset& p, bool induced, std::size_t member,
                                            std::uint64_t budget = kDefaultNodeBudget)
{
    SearchResult total;
    if (p.size() > static_cast<int>(f.size()))
        return total;
    for (int x = 0; x < p.size(); ++x) {
        detail::EmbeddingSearch search(f, p, induced, budget - std::min(budget, total.nodes));
        search.force(x, member);
        SearchResult r = search.run();
        total.nodes += r.nodes;
        if (r.status != SearchStatus::NotFound) {
            r.nodes = total.nodes;
            return r;
        }
    }
    total.status = SearchStatus::NotFound;
    return total;
}

struct AnyResult {
    SearchStatus status = SearchStatus::NotFound;
    std::size_t poset_index = 0;
    std::optional<Embedding> embedding;
    std::uint64_t nodes = 0;

    bool found() const { return status == SearchStatus::Found; }
};

/// First poset in list order that `f` contains. A budget hit on any poset
/// before a hit stops the scan with BudgetExhausted.
inline AnyResult contains_any(const SetFamily& f, std::span<const Poset> posets, bool induced,
                              std::uint64_t budget = kDefaultNodeBudget)
{
    AnyResult out;
    for (std::size_t i = 0; i < posets.size(); ++i) {
        SearchResult r = contains_subposet(f, posets[i], induced, budget);
        out.nodes += r.nodes;
        if (r.status == SearchStatus::NotFound)
            continue;
        out.status = r.status;
        out.poset_index = i;
        out.embedding = std::move(r.embedding);
        return out;
    }
    out.status = SearchStatus::NotFound;
    return out;
}

// ---------------------------------------------------------------------------
// Maximum antichains

struct AntichainResult {
    std::size_t size = 0;
    std::vector<std::size_t> witness; ///< ascending family indices
};

/// Maximum antichain by Dilworth: |F| minus a maximum matching in the
/// strict-inclusion bipartite graph; the witness comes from König's cover.
inline AntichainResult max_antichain(const SetFamily& f)
{
    const std::size_t m = f.size();
    std::vector<std::vector<std::size_t>> adj(m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) // canonical order: subsets come first
            if (f[a].proper_subset_of(f[b]))
                adj[a].push_back(b);

    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> match_l(m, kNone), match_r(m, kNone), dist(m);

    // Hopcroft-Karp
    auto bfs = [&]() {
        std::deque<std::size_t> q;
        bool reachable_free = false;
        for (std::size_t u = 0; u < m; ++u) {
            if (match_l[u] == kNone) {
                dist[u] = 0;
                q.push_back(u);
            } else {
                dist[u] = kNone;
            }
        }
        while (!q.empty()) {
            auto u = q.front();
            q.pop_front();
            for (auto v : adj[u]) {
                auto w = match_r[v];
                if (w == kNone)
                    reachable_free = true;
                else if (dist[w] == kNone) {
                    dist[w] = dist[u] + 1;
                    q.push_back(w);
                }
            }
        }
        return reachable_free;
    };
    std::vector<std::size_t> it(m);
    auto dfs = [&](auto&& self, std::size_t u) -> bool {
        for (; it[u] < adj[u].size(); ++it[u]) {
            auto v = adj[u][it[u]];
            auto w = match_r[v];
            if (w == kNone || (dist[w] == dist[u] + 1 && self(self, w))) {
                match_l[u] = v;
                match_r[v] = u;
                return true;
            }
        }
        dist[u] = kNone;
        return false;
    };
    std::size_t matching = 0;
    while (bfs()) {
        std::fill(it.begin(), it.end(), 0);
        for (std::size_t u = 0; u < m; ++u)
            if (match_l[u] == kNone && dfs(dfs, u))
                ++matching;
    }

    // König: Z = vertices reachable from free left vertices by alternating paths.
    std::vector<bool> zl(m, false), zr(m, false);
    std::deque<std::size_t> q;
    for (std::size_t u = 0; u < m; ++u)
        if (match_l[u] == kNone) {
            zl[u] = true;
            q.push_back(u);
        }
    while (!q.empty()) {
        auto u = q.front();
        q.pop_front();
        for (auto v : adj[u]) {
            if (zr[v] || match_l[u] == v)
                continue;
            zr[v] = true;
            auto w = match_r[v];
            if (w != kNone && !zl[w]) {
                zl[w] = true;
                q.push_back(w);
            }
        }
    }
    AntichainResult res;
    res.size = m - matching;
    for (std::size_t x = 0; x < m; ++x)
        if (zl[x] && !zr[x])
            res.witness.push_back(x);
    return res;
}

/// s^-_F(A): maximum antichain among members contained in A.
inline std::size_t s_minus(const SetFamily& f, Subset a) { return max_antichain(f.below(a)).size; }

/// s^+_F(A): maximum antichain among members containing A.
inline std::size_t s_plus(const SetFamily& f, Subset a) { return max_antichain(f.above(a)).size; }

/// Whether [A,B] holds an antichain of size s (equivalently an induced
/// K[1,s,1]) per the interval-length criterion |B \ A| >= m*_s. Literal for
/// s = 1 as well, where it demands |B \ A| >= 1.
inline bool interval_induced_k1s1(Subset a, Subset b, int s)
{
    if (!a.subset_of(b))
        throw PreconditionError("interval_induced_k1s1 requires A ⊆ B");
    return b.minus(a).size() >= m_star(s);
}

/// Largest k <= k_max such that every run of k consecutive levels of 2^[n]
/// is (induced-)P-free. A finite-n probe of e(P) / e*(P).
inline int empirical_e(const Poset& p, bool induced, int n, int k_max, std::uint64_t budget = kDefaultNodeBudget)
{
    check_ground_size(n);
    if (k_max < 0 || k_max > n)
        throw PreconditionError("empirical_e requires 0 <= k_max <= n");
    for (int k = 1; k <= k_max; ++k) {
        for (int j = -1; j + k <= n; ++j) {
            SearchResult r = contains_subposet(consecutive_levels(n, j, k), p, induced, budget);
            if (r.exhausted_budget())
                throw BudgetExhaustedError("empirical_e: node budget exhausted at k=" + std::to_string(k) +
                                           ", j=" + std::to_string(j));
            if (r.found())
                return k - 1;
        }
    }
    return k_max;
}

} // namespace subposet
