#pragma once

// Command-line front end. Every command prints one JSON object
// {"command", "parameters", "result"} on stdout; diagnostics go to stderr.
//
// Exit codes: 0 success, 1 property violation (or a forbidden copy found by
// `check`), 2 usage or precondition error, 3 budget exhausted.

#include "subposet/chains.hpp"
#include "subposet/constructions.hpp"
#include "subposet/containment.hpp"
#include "subposet/json_io.hpp"
#include "subposet/lattice.hpp"
#include "subposet/poset.hpp"
#include "subposet/solver.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace subposet::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2, kBudget = 3 };

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw PreconditionError("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Accepts "K[...]", a poset name (vee, wedge, butterfly, P<k>) or a poset file path.
inline Poset resolve_poset(const std::string& spec)
{
    if (spec.rfind("K[", 0) == 0)
        return complete_multilevel(parse_signature(spec));
    if (spec == "vee" || spec == "wedge" || spec == "butterfly" ||
        (spec.size() >= 2 && spec[0] == 'P' && std::all_of(spec.begin() + 1, spec.end(), ::isdigit)))
        return named_poset(spec);
    return parse_poset(read_file(spec));
}

class Runner {
public:
    Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(std::vector<std::string> args)
    {
        CLI::App app{"Exact tools for forbidden subposet problems in the Boolean lattice"};
        app.require_subcommand(1);
        app.add_option("--threads", threads_, "worker threads (output does not depend on it)")
            ->check(CLI::PositiveNumber);

        int code = kOk;
        auto guard = [&](auto&& body) {
            return [&, body]() mutable { code = body(); };
        };

        // sigma n k
        auto* sigma_cmd = app.add_subcommand("sigma", "sum of the k largest binomial coefficients of order n");
        int sn = 0, sk = 0;
        sigma_cmd->add_option("n", sn)->required();
        sigma_cmd->add_option("k", sk)->required();
        sigma_cmd->callback(guard([&] {
            return emit("sigma", {{"n", sn}, {"k", sk}}, sigma(sn, sk).str());
        }));

        auto* mstar_cmd = app.add_subcommand("mstar", "smallest m with s <= C(m, ceil(m/2))");
        int ms = 0;
        mstar_cmd->add_option("s", ms)->required();
        mstar_cmd->callback(guard([&] { return emit("mstar", {{"s", ms}}, m_star(ms)); }));

        auto* msmall_cmd = app.add_subcommand("msmall", "ceil(log2(s - f + 2))");
        int mss = 0, msf = 0;
        msmall_cmd->add_option("s", mss)->required();
        msmall_cmd->add_option("f", msf)->required();
        msmall_cmd->callback(guard([&] { return emit("msmall", {{"s", mss}, {"f", msf}}, m_small(mss, msf)); }));

        auto* frt_cmd = app.add_subcommand("frt", "f(r,t)");
        int fr = 0, ft = 0;
        frt_cmd->add_option("r", fr)->required();
        frt_cmd->add_option("t", ft)->required();
        frt_cmd->callback(guard([&] { return emit("frt", {{"r", fr}, {"t", ft}}, f_rt(fr, ft)); }));

        auto* estar_cmd = app.add_subcommand("estar", "e* of a complete multilevel poset K[r,...,t]");
        std::string esig;
        estar_cmd->add_option("signature", esig)->required();
        estar_cmd->callback(guard([&] {
            auto tr = e_star_trace(parse_signature(esig));
            return emit("estar", {{"signature", esig}},
                        Json{{"value", tr.value}, {"w", tr.w}, {"reduced", tr.reduced.str()}});
        }));

        auto* classify_cmd = app.add_subcommand("classify", "case label of K[r,s,t]");
        int cr = 0, cs = 0, ct = 0;
        classify_cmd->add_option("r", cr)->required();
        classify_cmd->add_option("s", cs)->required();
        classify_cmd->add_option("t", ct)->required();
        classify_cmd->callback(guard([&] {
            return emit("classify", {{"r", cr}, {"s", cs}, {"t", ct}}, to_string(classify_case(cr, cs, ct)));
        }));

        auto* bounds_cmd = app.add_subcommand("bounds", "limit density bounds for K[r,s,t]");
        std::string bmode, bregime;
        int br = 0, bs = 0, bt = 0;
        bounds_cmd->add_option("mode", bmode)->required()->check(CLI::IsMember({"nonind", "ind"}));
        bounds_cmd->add_option("r", br)->required();
        bounds_cmd->add_option("s", bs)->required();
        bounds_cmd->add_option("t", bt)->required();
        bounds_cmd->add_option("--regime", bregime, "S4, LargeBounded or LargeGeneral (ind mode)");
        bounds_cmd->callback(guard([&] {
            Json params{{"mode", bmode}, {"r", br}, {"s", bs}, {"t", bt}};
            if (bmode == "nonind") {
                auto label = classify_case(br, bs, bt);
                Json res = to_json(pi_bounds_nonind(br, bs, bt));
                res["case"] = to_string(label);
                return emit("bounds", params, res);
            }
            if (bregime.empty())
                throw PreconditionError("bounds ind requires --regime");
            params["regime"] = bregime;
            return emit("bounds", params, to_json(pi_bounds_ind(br, bs, bt, parse_regime(bregime))));
        }));

        auto* construct_cmd = app.add_subcommand("construct", "build a lower-bound family");
        std::string ckind, cout_file;
        std::vector<int> cargs;
        construct_cmd->add_option("kind", ckind)->required()->check(CLI::IsMember({"thm1", "thm5", "thm8"}));
        construct_cmd->add_option("params", cargs, "thm1: n r t; thm5/thm8: n r s t")->required();
        construct_cmd->add_option("-o,--output", cout_file, "family file to write");
        construct_cmd->callback(guard([&] { return construct(ckind, cargs, cout_file); }));

        auto* check_cmd = app.add_subcommand("check", "decide whether a family is free of a poset");
        std::string kfile, kposet;
        bool kinduced = false;
        std::uint64_t kbudget = kDefaultNodeBudget;
        check_cmd->add_option("file", kfile)->required();
        check_cmd->add_option("--poset", kposet, "K[...], vee, wedge, butterfly, P<k> or a poset file")->required();
        check_cmd->add_flag("--induced", kinduced);
        check_cmd->add_option("--budget", kbudget, "node budget")->capture_default_str();
        check_cmd->callback(guard([&] { return check(kfile, kposet, kinduced, kbudget); }));

        auto* solve_cmd = app.add_subcommand("solve", "exact La(n, P) or La*(n, P)");
        int vn = 0;
        std::vector<std::string> vposets;
        bool vinduced = false, vroot = false;
        SolveOptions vopt;
        solve_cmd->add_option("n", vn)->required();
        solve_cmd->add_option("--poset", vposets, "forbidden poset (repeatable)")->required();
        solve_cmd->add_flag("--induced", vinduced);
        solve_cmd->add_option("--budget", vopt.node_budget, "branch-and-bound node budget")->capture_default_str();
        solve_cmd->add_option("--n-cap", vopt.n_cap, "largest n accepted")->capture_default_str();
        solve_cmd->add_flag("--root-symmetry", vroot, "fix the first chosen set to {1..k}");
        solve_cmd->callback(guard([&] {
            vopt.root_symmetry = vroot;
            std::vector<Poset> ps;
            for (const auto& p : vposets)
                ps.push_back(resolve_poset(p));
            SolveResult r = la_exact(vn, ps, vinduced, vopt);
            emit("solve", {{"n", vn}, {"posets", vposets}, {"induced", vinduced}}, to_json(r));
            return r.exhausted ? kOk : kBudget;
        }));

        auto* chains_cmd = app.add_subcommand("chains", "maximal-chain statistics of a family");
        std::string hmode, hfile;
        int hr = 1, ht = 1, hcap = kDefaultChainCap;
        chains_cmd->add_option("mode", hmode)->required()->check(CLI::IsMember({"pairs", "minmax", "minr", "minrmaxt"}));
        chains_cmd->add_option("file", hfile)->required();
        chains_cmd->add_option("--r", hr)->capture_default_str();
        chains_cmd->add_option("--t", ht)->capture_default_str();
        chains_cmd->add_option("--chain-cap", hcap, "largest n to enumerate")->capture_default_str();
        chains_cmd->callback(guard([&] { return chains(hmode, hfile, hr, ht, hcap); }));

        auto* lym_cmd = app.add_subcommand("lym", "sum of 1/C(n,|F|) over the family");
        std::string lfile;
        lym_cmd->add_option("file", lfile)->required();
        lym_cmd->callback(guard([&] {
            SetFamily f = parse_family(read_file(lfile));
            return emit("lym", {{"file", lfile}}, to_string(lym_sum(f)));
        }));

        auto* lemma_cmd = app.add_subcommand("lemma2", "S(n)/n! or R(n) for a given s");
        std::string lwhich;
        int ln = 0, ls = 0;
        lemma_cmd->add_option("which", lwhich)->required()->check(CLI::IsMember({"S", "R"}));
        lemma_cmd->add_option("n", ln)->required();
        lemma_cmd->add_option("--s", ls);
        lemma_cmd->callback(guard([&] {
            if (lwhich == "S")
                return emit("lemma2", {{"which", "S"}, {"n", ln}}, to_string(S_lemma2(ln)));
            if (ls < 1)
                throw PreconditionError("lemma2 R requires --s >= 1");
            return emit("lemma2", {{"which", "R"}, {"n", ln}, {"s", ls}}, to_string(R_func(ln, ls)));
        }));

        std::reverse(args.begin(), args.end());
        try {
            app.parse(args);
        } catch (const CLI::CallForHelp& e) {
            out_ << app.help();
            return kOk;
        } catch (const CLI::ParseError& e) {
            err_ << "error: " << e.what() << "\n";
            return kUsage;
        } catch (const BudgetExhaustedError& e) {
            err_ << "budget exhausted: " << e.what() << "\n";
            return kBudget;
        } catch (const ParseError& e) {
            err_ << "parse error: " << e.what() << "\n";
            return kUsage;
        } catch (const std::exception& e) {
            err_ << "error: " << e.what() << "\n";
            return kUsage;
        }
        return code;
    }

private:
    int emit(const std::string& command, Json params, Json result)
    {
        Json doc{{"command", command}, {"parameters", std::move(params)}, {"result", std::move(result)}};
        out_ << doc.dump(2) << "\n";
        return kOk;
    }

    int construct(const std::string& kind, const std::vector<int>& a, const std::string& file)
    {
        ConstructionSpec spec{};
        Json params{{"kind", kind}};
        if (kind == "thm1") {
            if (a.size() != 3)
                throw PreconditionError("construct thm1 takes n r t");
            spec = thm1_spec(a[0], a[1], a[2]);
            params.update({{"n", a[0]}, {"r", a[1]}, {"t", a[2]}});
        } else {
            if (a.size() != 4)
                throw PreconditionError("construct " + kind + " takes n r s t");
            spec = kind == "thm5" ? thm5_spec(a[0], a[1], a[2], a[3]) : thm8_spec(a[0], a[1], a[2], a[3]);
            params.update({{"n", a[0]}, {"r", a[1]}, {"s", a[2]}, {"t", a[3]}});
        }
        SetFamily f = detail::build(spec);
        if (file.empty()) {
            out_ << serialize_family(f);
            return kOk;
        }
        std::ofstream o(file, std::ios::binary);
        if (!o)
            throw PreconditionError("cannot write '" + file + "'");
        o << serialize_family(f);
        params["output"] = file;
        return emit("construct", params,
                    Json{{"size", f.size()},
                         {"low_level", spec.low},
                         {"low_classes", spec.low_classes},
                         {"high_level", spec.high},
                         {"high_classes", spec.high_classes},
                         {"size_lower_bound", to_string(construction_size_lower_bound(spec))}});
    }

    int check(const std::string& file, const std::string& poset, bool induced, std::uint64_t budget)
    {
        SetFamily f = parse_family(read_file(file));
        Poset p = resolve_poset(poset);
        SearchResult r = contains_subposet(f, p, induced, budget);
        Json res{{"verdict", to_string(r.status)}, {"nodes", std::to_string(r.nodes)}};
        if (r.found())
            res["witness"] = to_json(*r.embedding, f);
        emit("check", {{"file", file}, {"poset", poset}, {"induced", induced}, {"budget", std::to_string(budget)}},
             res);
        switch (r.status) {
        case SearchStatus::Found: return kViolation;
        case SearchStatus::BudgetExhausted: return kBudget;
        case SearchStatus::NotFound: return kOk;
        }
        return kOk;
    }

    int chains(const std::string& mode, const std::string& file, int r, int t, int cap)
    {
        SetFamily f = parse_family(read_file(file));
        Json params{{"mode", mode}, {"file", file}};
        if (mode == "pairs") {
            BigInt formula = count_pairs_formula(f);
            BigInt walked = count_pairs_enumerated(f, cap);
            emit("chains", params,
                 Json{{"formula", formula.str()}, {"enumerated", walked.str()}, {"equal", formula == walked}});
            return formula == walked ? kOk : kViolation;
        }
        PartitionReport rep;
        if (mode == "minmax") {
            rep = min_max_partition(f, threads_, cap);
        } else if (mode == "minr") {
            params["r"] = r;
            rep = min_r_partition(f, r, threads_, cap);
        } else {
            params["r"] = r;
            params["t"] = t;
            rep = minr_maxt_partition(f, r, t, threads_, cap);
        }
        const bool total = rep.is_total(f);
        Json res = to_json(rep);
        res["total"] = total;
        emit("chains", params, res);
        return total ? kOk : kViolation;
    }

    std::ostream& out_;
    std::ostream& err_;
    int threads_ = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
};

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    return Runner(out, err).run(std::move(args));
}

} // namespace subposet::cli
