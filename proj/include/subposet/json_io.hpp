#pragma once

// JSON views of results. Exact numbers are always strings: integers in
// decimal, rationals as "p/q".

#include "subposet/chains.hpp"
#include "subposet/containment.hpp"
#include "subposet/poset.hpp"
#include "subposet/solver.hpp"

#include <json.hpp>

namespace subposet {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& q) { return to_string(q); }
inline Json to_json(const BigInt& v) { return v.str(); }

/// Family as {"n": n, "sets": ["{}", "{1,3}", ...]} in canonical order.
inline Json to_json(const SetFamily& f)
{
    Json sets = Json::array();
    for (Subset s : f)
        sets.push_back(format_subset(s));
    return Json{{"n", f.ground_size()}, {"sets", sets}};
}

inline Json to_json(const BoundPair& b) { return Json{{"lower", to_string(b.lower)}, {"upper", to_string(b.upper)}}; }

/// Embedding as a list of {"element": p (1-based), "set": "{...}"}.
inline Json to_json(const Embedding& e, const SetFamily& f)
{
    Json out = Json::array();
    for (std::size_t p = 0; p < e.images.size(); ++p)
        out.push_back(Json{{"element", p + 1}, {"set", format_subset(f[e.images[p]])}});
    return out;
}

inline Json to_json(const PartitionReport& r)
{
    Json parts = Json::array();
    for (const auto& [label, st] : r.parts)
        parts.push_back(Json{{"label", label.str()}, {"chains", st.chains.str()}, {"pairs", st.pairs.str()}});
    return Json{{"mode", r.mode},
                {"n", r.n},
                {"parts", parts},
                {"total_chains", r.total_chains.str()},
                {"total_pairs", r.total_pairs.str()}};
}

inline Json to_json(const SolveResult& r)
{
    return Json{{"optimum", r.optimum},
                {"witness", to_json(r.witness)},
                {"nodes", r.nodes_explored.str()},
                {"exhausted", r.exhausted}};
}

inline const char* to_string(SearchStatus s)
{
    switch (s) {
    case SearchStatus::Found: return "contains";
    case SearchStatus::NotFound: return "free";
    case SearchStatus::BudgetExhausted: return "budget_exhausted";
    }
    return "?";
}

} // namespace subposet
