#pragma once

// Exact La(n, P) / La*(n, P) for small n by branch and bound over the
// subsets of [n], taken middle levels first.

#include "subposet/containment.hpp"
#include "subposet/lattice.hpp"
#include "subposet/poset.hpp"

#include <algorithm>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <vector>

namespace subposet {

inline constexpr int kDefaultSolverCap = 5;

struct SolveOptions {
    std::uint64_t node_budget = kDefaultNodeBudget;
    std::uint64_t containment_budget = kDefaultNodeBudget;
    int n_cap = kDefaultSolverCap;
    /// Require the first chosen set to be {1..k}; sound because La is
    /// invariant under permutations of [n].
    bool root_symmetry = false;
};

struct SolveResult {
    int optimum = 0;
    SetFamily witness{1};
    BigInt nodes_explored = 0;
    bool exhausted = false; ///< true means `optimum` is proven maximal
};

/// Subsets of [n] ordered by distance of their size from n/2, then canonically.
inline std::vector<Subset> middle_out_order(int n)
{
    std::vector<Subset> all;
    for (std::uint32_t m = 0; m < (1u << n); ++m)
        all.emplace_back(m);
    std::stable_sort(all.begin(), all.end(), [n](Subset a, Subset b) {
        const int da = std::abs(2 * a.size() - n), db = std::abs(2 * b.size() - n);
        if (da != db)
            return da < db;
        return a < b;
    });
    return all;
}

namespace detail {

class LaSolver {
public:
    LaSolver(int n, std::span<const Poset> posets, bool induced, const SolveOptions& opt)
        : n_(n), posets_(posets), induced_(induced), opt_(opt), order_(middle_out_order(n)), best_family_(n)
    {
    }

    SolveResult run()
    {
        std::vector<Subset> current;
        dfs(0, current);
        SolveResult res;
        res.optimum = static_cast<int>(best_family_.size());
        res.witness = best_family_;
        res.nodes_explored = nodes_;
        res.exhausted = !stopped_;
        return res;
    }

private:
    /// True if the family stays free after adding `x` (it was free before).
    bool still_free(const std::vector<Subset>& current, Subset x)
    {
        std::vector<Subset> members(current);
        members.push_back(x);
        SetFamily fam(n_, std::move(members));
        const std::size_t idx = *fam.index_of(x);
        for (const Poset& p : posets_) {
            SearchResult r = contains_subposet_using(fam, p, induced_, idx, opt_.containment_budget);
            if (r.exhausted_budget()) {
                stopped_ = true;
                return false;
            }
            if (r.found())
                return false;
        }
        return true;
    }

    void consider(const std::vector<Subset>& current)
    {
        if (current.size() < best_family_.size())
            return;
        SetFamily fam(n_, current);
        const auto a = fam.members(), b = best_family_.members();
        if (current.size() > best_family_.size() || std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()))
            best_family_ = std::move(fam);
    }

    void dfs(std::size_t i, std::vector<Subset>& current)
    {
        if (stopped_)
            return;
        if (++nodes_ > opt_.node_budget) {
            stopped_ = true;
            return;
        }
        if (current.size() + (order_.size() - i) <= best_family_.size() && found_any_)
            return;
        if (i == order_.size()) {
            consider(current);
            found_any_ = true;
            return;
        }
        const Subset x = order_[i];
        const bool root_blocked = opt_.root_symmetry && current.empty() && x.bits != (1u << x.size()) - 1u;
        if (!root_blocked && still_free(current, x)) {
            current.push_back(x);
            dfs(i + 1, current);
            current.pop_back();
        }
        if (stopped_)
            return;
        dfs(i + 1, current);
    }

    int n_;
    std::span<const Poset> posets_;
    bool induced_;
    SolveOptions opt_;
    std::vector<Subset> order_;
    SetFamily best_family_;
    bool found_any_ = false;
    bool stopped_ = false;
    std::uint64_t nodes_ = 0;
};

} // namespace detail

/// Maximum size of a (induced-)P-free subfamily of 2^[n] for every P in
/// `posets`. With exhausted = false the result is only a lower bound.
inline SolveResult la_exact(int n, std::span<const Poset> posets, bool induced, const SolveOptions& opt = {})
{
    check_ground_size(n);
    if (n > opt.n_cap)
        throw PreconditionError("exact solving is limited to n <= " + std::to_string(opt.n_cap));
    if (posets.empty())
        throw PreconditionError("need at least one forbidden poset");
    for (const Poset& p : posets)
        if (p.size() == 0)
            throw PreconditionError("forbidden poset must be non-empty");
    SolveResult res = detail::LaSolver(n, posets, induced, opt).run();
    const AnyResult check = contains_any(res.witness, posets, induced, opt.containment_budget);
    if (check.found())
        throw std::logic_error("solver witness is not free");
    return res;
}

inline SolveResult la_exact(int n, const Poset& p, bool induced, const SolveOptions& opt = {})
{
    return la_exact(n, std::span<const Poset>(&p, 1), induced, opt);
}

class ConstructionNotFreeError : public std::runtime_error {
public:
    ConstructionNotFreeError(std::size_t poset_index, Embedding e)
        : std::runtime_error("family contains forbidden poset #" + std::to_string(poset_index)),
          poset_index_(poset_index), embedding_(std::move(e))
    {
    }
    std::size_t poset_index() const { return poset_index_; }
    const Embedding& embedding() const { return embedding_; }

private:
    std::size_t poset_index_;
    Embedding embedding_;
};

/// |F| after certifying that F is free of every poset in the list.
inline int la_lower_bound_from_construction(const SetFamily& f, std::span<const Poset> posets, bool induced,
                                            std::uint64_t budget = kDefaultNodeBudget)
{
    AnyResult r = contains_any(f, posets, induced, budget);
    if (r.status == SearchStatus::BudgetExhausted)
        throw BudgetExhaustedError("construction check ran out of node budget");
    if (r.found())
        throw ConstructionNotFreeError(r.poset_index, *r.embedding);
    return static_cast<int>(f.size());
}

struct GapResult {
    int la = 0;
    int la_star = 0;
};

/// (La(n,P), La*(n,P)); both searches must finish.
inline GapResult la_star_vs_la_gap(int n, const Poset& p, const SolveOptions& opt = {})
{
    if (n > 4)
        throw PreconditionError("la_star_vs_la_gap is limited to n <= 4");
    SolveResult a = la_exact(n, p, false, opt);
    SolveResult b = la_exact(n, p, true, opt);
    if (!a.exhausted || !b.exhausted)
        throw BudgetExhaustedError("la_star_vs_la_gap: search did not finish");
    return {a.optimum, b.optimum};
}

} // namespace subposet
