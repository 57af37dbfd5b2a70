// Command-line front end: analyze, gen, partitions, verify-paper.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "pgrp/acceptance.hpp"
#include "pgrp/error.hpp"
#include "pgrp/generators.hpp"
#include "pgrp/partitions.hpp"

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kInputError = 2, kBudget = 3 };

using namespace pgrp;

int cmd_analyze(const std::string& file, bool json, const std::string& checks, std::uint64_t seed, unsigned threads,
                std::size_t budget, bool timings) {
    AnalysisOptions opts;
    opts.checks = checks == "fast" ? CheckMode::fast : CheckMode::all;
    opts.seed = seed;
    opts.threads = threads;
    opts.budget = budget;
    AnalysisReport r;
    try {
        r = analyze_file(file, opts);
    } catch (const ParseError& e) {
        std::cerr << file << ": parse error at " << e.what() << "\n";
        return kInputError;
    } catch (const InvariantError& e) {
        std::cerr << file << ": invalid presentation: " << e.what() << "\n";
        return kInputError;
    }
    if (json)
        std::cout << to_json(r, timings).dump(2) << "\n";
    else
        std::cout << to_text(r);
    if (!r.consistent) {
        std::cerr << file << ": presentation is inconsistent: " << *r.consistency_failure << "\n";
        return kInputError;
    }
    return r.any_failed() ? kCheckFailed : kOk;
}

int cmd_gen(const std::string& kind, const std::vector<long long>& params, const std::string& out) {
    auto param = [&](std::size_t i) {
        if (params[i] < 0) throw DomainError("parameters must be nonnegative");
        return static_cast<std::uint64_t>(params[i]);
    };
    PcPresentation pres(2, 0);
    if (kind == "heisenberg") {
        if (params.size() != 2) throw DomainError("gen heisenberg needs P and N");
        if (param(0) > gfp::kMaxPrime) throw DomainError("prime too large");
        pres = heisenberg(static_cast<std::uint32_t>(param(0)), param(1));
    } else if (kind == "extraspecial") {
        if (params.size() != 1) throw DomainError("gen extraspecial needs P");
        if (param(0) > gfp::kMaxPrime) throw DomainError("prime too large");
        pres = extraspecial_p3(static_cast<std::uint32_t>(param(0)));
    } else {
        throw DomainError("unknown generator kind '" + kind + "' (heisenberg or extraspecial)");
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw DomainError("cannot write " + out);
    f << serialize(pres);
    f.close();
    if (!f) throw DomainError("write to " + out + " failed");
    std::cout << "wrote " << out << " (" << pres.ngens() << " generators, p = " << pres.prime() << ")\n";
    return kOk;
}

nlohmann::ordered_json subspace_rows(const gfp::Subspace& S) {
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < S.dim(); ++i) rows.push_back(S.basis_vector(i));
    return rows;
}

int cmd_partitions(std::uint32_t p, std::size_t n, bool exhaustive, std::size_t budget, bool json) {
    gfp::require_prime(p);
    const auto bound = partition_bound(p, n);
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["p"] = p;
    j["n"] = n;
    j["bound"] = {{"threshold", bound.threshold}, {"strict", bound.strict}};
    std::ostringstream text;
    text << "GF(" << p << ")^" << n << ": any partition into proper subspaces has k " << (bound.strict ? ">" : ">=")
         << " " << bound.threshold << "\n";
    bool ok = true;
    if (!exhaustive) {
        j["search"] = nullptr;
        text << "exhaustive search skipped (pass --exhaustive)\n";
    } else {
        const MinPartition m = min_partition_size(p, n, budget);
        const PartitionCheck pc = verify_partition(m.witness);
        const DualCoverCheck dc = verify_dual_cover(dual_of(m.witness));
        ok = pc.valid && pc.bound_ok && dc.hypotheses_ok && dc.k == m.k_min;
        auto parts = nlohmann::ordered_json::array();
        for (const auto& S : m.witness.parts) parts.push_back(subspace_rows(S));
        j["search"] = {{"k_min", m.k_min},
                       {"nodes", m.nodes},
                       {"witness", parts},
                       {"valid", pc.valid},
                       {"bound_ok", pc.bound_ok},
                       {"equality_case", n % 2 == 0 ? nlohmann::ordered_json(pc.equality_case) : nlohmann::ordered_json()},
                       {"equality_parts_order_p_l",
                        n % 2 == 0 ? nlohmann::ordered_json(pc.equality_parts_order_pl) : nlohmann::ordered_json()},
                       {"dual_cover", {{"hypotheses_ok", dc.hypotheses_ok}, {"k", dc.k}, {"bound_ok", dc.bound_ok}}}};
        text << "k_min = " << m.k_min << " (" << m.nodes << " search nodes), bound "
             << (pc.bound_ok ? "satisfied" : "VIOLATED") << "\n";
        if (n % 2 == 0 && pc.equality_case)
            text << "equality case: every part has order " << p << "^" << n / 2
                 << (pc.equality_parts_order_pl ? "" : " FAILS") << "\n";
        text << "witness:\n";
        for (const auto& S : m.witness.parts) text << "  " << S.to_string() << "\n";
        text << "annihilators form a dual cover with k = " << dc.k << ": "
             << (dc.hypotheses_ok ? "yes" : "no (" + dc.reason + ")") << "\n";
    }
    if (json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text.str();
    return ok ? kOk : kCheckFailed;
}

int cmd_verify_paper(const std::string& data, unsigned threads, std::uint64_t seed, bool json, bool timings) {
    const AcceptanceRun run = run_acceptance({.data_dir = data, .threads = threads, .seed = seed});
    if (json) {
        std::cout << to_json(run, timings).dump(2) << "\n";
    } else {
        for (const auto& c : run.criteria) std::cout << c.id << " " << (c.pass ? "PASS" : "FAIL") << "  " << c.detail << "\n";
    }
    if (const auto* f = run.first_failure()) {
        std::cerr << "first failing criterion: " << f->id << "\n";
        return kCheckFailed;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Computations with finite p-groups given by power-conjugate presentations"};
    app.require_subcommand(1);

    auto* analyze = app.add_subcommand("analyze", "Analyze a presentation file");
    std::string file;
    bool json = false, no_timings = false;
    std::string checks = "all";
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::size_t budget = 1u << 14;
    analyze->add_option("FILE", file, "presentation file")->required();
    analyze->add_flag("--json", json, "print the JSON report");
    analyze->add_option("--checks", checks, "fast or all")->check(CLI::IsMember({"fast", "all"}));
    analyze->add_option("--seed", seed, "seed for sampled checks");
    analyze->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 256u));
    analyze->add_option("--budget", budget, "per-coset conjugation budget for --checks fast");
    analyze->add_flag("--no-timings", no_timings, "omit timings from the JSON report");

    auto* gen = app.add_subcommand("gen", "Write a generated presentation");
    std::string kind, out;
    std::vector<long long> params;
    gen->add_option("KIND", kind, "heisenberg or extraspecial")->required();
    gen->add_option("PARAMS", params, "P N for heisenberg, P for extraspecial")->required();
    gen->add_option("-o,--output", out, "output file")->required();

    auto* parts = app.add_subcommand("partitions", "Partition bounds for GF(p)^n");
    std::uint32_t pp = 0;
    std::size_t nn = 0, pbudget = 10'000'000;
    bool exhaustive = false, pjson = false;
    parts->add_option("--p", pp, "prime")->required();
    parts->add_option("--n", nn, "dimension")->required();
    parts->add_flag("--exhaustive", exhaustive, "run the exact minimum search");
    parts->add_option("--budget", pbudget, "search node budget");
    parts->add_flag("--json", pjson, "print JSON");

    auto* verify = app.add_subcommand("verify-paper", "Run the full reproduction suite");
    std::string data = "data";
    unsigned vthreads = 1;
    std::uint64_t vseed = 0;
    bool vjson = false, vno_timings = false;
    verify->add_option("--data", data, "directory holding group1.pc and group2.pc");
    verify->add_option("--threads", vthreads, "worker threads")->check(CLI::Range(1u, 256u));
    verify->add_option("--seed", vseed, "seed for sampled checks");
    verify->add_flag("--json", vjson, "print the JSON summary");
    verify->add_flag("--no-timings", vno_timings, "omit timings from the JSON summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*analyze) return cmd_analyze(file, json, checks, seed, threads, budget, !no_timings);
        if (*gen) return cmd_gen(kind, params, out);
        if (*parts) return cmd_partitions(pp, nn, exhaustive, pbudget, pjson);
        if (*verify) return cmd_verify_paper(data, vthreads, vseed, vjson, !vno_timings);
    } catch (const ResourceError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const ContradictionError& e) {
        std::cerr << "contradiction: " << e.what() << "\n";
        return kCheckFailed;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kCheckFailed;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
