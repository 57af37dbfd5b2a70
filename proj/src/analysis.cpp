#include "pgrp/analysis.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pgrp/error.hpp"

namespace pgrp {

namespace {

class PhaseClock {
public:
    explicit PhaseClock(std::vector<PhaseTiming>& sink) : sink_(sink), start_(std::chrono::steady_clock::now()) {}
    void lap(const std::string& phase) {
        const auto now = std::chrono::steady_clock::now();
        sink_.push_back({phase, std::chrono::duration<double, std::milli>(now - start_).count()});
        start_ = now;
    }

private:
    std::vector<PhaseTiming>& sink_;
    std::chrono::steady_clock::time_point start_;
};

CaminaSummary summarize(const PcGroup& G, const CaminaVerdict& v) {
    CaminaSummary s;
    s.camina = v.camina;
    s.degenerate = v.degenerate;
    s.complete = v.complete;
    s.method = v.method;
    s.cosets = v.cosets;
    if (v.witness) s.witness = G.format(*v.witness);
    return s;
}

}  // namespace

std::size_t AnalysisReport::count(CheckStatus s) const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.status == s;
    return n;
}

std::string fnv1a64_hex(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

AnalysisReport analyze_core(const std::string& text, const std::string& path, const AnalysisOptions& opts) {
    AnalysisReport r;
    r.path = path;
    r.content_hash = fnv1a64_hex(text);
    PhaseClock clock(r.timings);

    PcPresentation pres = parse_presentation(text);
    r.p = pres.prime();
    r.ngens = pres.ngens();
    r.order_exponent = pres.ngens();
    clock.lap("parse");

    const PcGroup G(std::move(pres));
    const auto cons = check_consistency(G);
    r.consistent = cons.consistent;
    clock.lap("consistency");
    if (!cons.consistent) {
        const auto& w = *cons.witness;
        std::ostringstream os;
        os << w.test << " test at generators (" << w.k + 1 << ", " << w.j + 1 << ", " << w.i + 1
           << "): " << G.format(w.lhs) << " != " << G.format(w.rhs);
        r.consistency_failure = os.str();
        return r;
    }

    const auto lcs = lower_central_series(G);
    r.nilpotency_class = lcs.nilpotency_class;
    for (const auto& t : lcs.terms) r.lcs_order_exponents.push_back(t.order_exponent());
    clock.lap("series");

    const CaminaVerdict cv = is_camina(G, {.mode = opts.checks, .budget = opts.budget, .threads = opts.threads});
    r.camina = summarize(G, cv);
    const std::size_t cls = lcs.nilpotency_class;
    if ((cls == 2 || cls == 3) && opts.checks == CheckMode::all && !cv.degenerate) {
        // Cross-check the exhaustive verdict against the linear criterion.
        const auto lin = is_camina(G, {.mode = CheckMode::fast, .budget = opts.budget, .threads = opts.threads});
        r.camina.linear_route = lin.camina;
    }
    clock.lap("camina");

    r.special_class = to_string(special_class(G));
    clock.lap("special_class");

    const TheoremOptions topts{.threads = opts.threads, .seed = opts.seed};
    const bool camina_ok = cv.camina && (!r.camina.linear_route || *r.camina.linear_route);

    if (cls == 3) {
        const Subgroup g3 = lcs.terms[2];
        const CentralQuotient Q(G, g3);
        const PcGroup H(Q.presentation());
        r.quotient_special_class = to_string(special_class(H));
        if (!camina_ok) {
            try {
                const Stratification S = stratify(G, {.allow_class_two = false, .assert_camina = false});
                r.strata = std::array<std::size_t, 3>{S.dim_v(), S.dim_w(), S.dim_t()};
                const CommutatorForms F(S);
                const Families fam = compute_families(S, F, opts.threads);
                r.families = FamilySummary{fam.projective_points, fam.members.size(), fam.star.size(),
                                           fam.c_family.size(), std::nullopt, std::nullopt};
            } catch (const ShapeError&) {
                // No linear structure to report.
            }
            clock.lap("families");
            r.checks = not_applicable_checks(class_three_check_names(), "requires a Camina group of class 3");
            return r;
        }
        std::optional<ClassThreeData> D;
        try {
            D.emplace(prepare_class_three(G, opts.threads));
        } catch (const ShapeError& e) {
            r.checks = not_applicable_checks(class_three_check_names(), "shape check failed");
            r.checks.insert(r.checks.begin(), CheckVerdict{"camina_shape", CheckStatus::fail, e.what()});
            return r;
        }
        r.strata = std::array<std::size_t, 3>{D->S.dim_v(), D->S.dim_w(), D->S.dim_t()};
        FamilySummary fs;
        fs.projective_points = D->families.projective_points;
        fs.a = D->families.members.size();
        fs.a_star = D->families.star.size();
        fs.c = D->families.c_family.size();
        fs.cgg_equals_derived = D->cgg == D->S.derived;
        fs.cgg_index_exponent = D->cgg.order_exponent() - D->S.derived.order_exponent();
        r.families = fs;
        clock.lap("families");
        try {
            r.checks = verify_theorems(*D, topts);
        } catch (const ContradictionError& e) {
            r.checks = {CheckVerdict{"family_construction", CheckStatus::fail, e.what()}};
        }
        clock.lap("checks");
        return r;
    }

    if (cls == 2) {
        try {
            const Stratification S = stratify(G, {.allow_class_two = true, .assert_camina = false});
            const CommutatorForms F(S);
            const Families fam = compute_families(S, F, opts.threads);
            r.strata = std::array<std::size_t, 3>{S.dim_v(), S.dim_w(), 0};
            r.families = FamilySummary{fam.projective_points, fam.members.size(), fam.star.size(), std::nullopt,
                                       std::nullopt, std::nullopt};
        } catch (const ShapeError&) {
        }
        clock.lap("families");
        if (camina_ok)
            r.checks = verify_class_two(G, topts);
        else
            r.checks = not_applicable_checks(class_two_check_names(), "requires a Camina group of class 2");
        clock.lap("checks");
    }
    return r;
}

}  // namespace

AnalysisReport analyze_text(const std::string& text, const std::string& path, const AnalysisOptions& opts) {
    AnalysisReport r = analyze_core(text, path, opts);
    const auto& c = r.camina;
    if (c.linear_route && *c.linear_route != c.camina)
        r.checks.insert(r.checks.begin(),
                        CheckVerdict{"camina_routes_agree", CheckStatus::fail,
                                     std::string("enumeration says ") + (c.camina ? "yes" : "no") +
                                         ", the linear criterion says " + (*c.linear_route ? "yes" : "no")});
    return r;
}

AnalysisReport analyze_file(const std::string& path, const AnalysisOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return analyze_text(buf.str(), path, opts);
}

nlohmann::ordered_json to_json(const AnalysisReport& r, bool with_timings) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["input"] = {{"path", r.path}, {"fnv1a64", r.content_hash}};
    j["p"] = r.p;
    j["ngens"] = r.ngens;
    j["order_exponent"] = r.order_exponent;
    j["consistency"] = {{"consistent", r.consistent},
                        {"failure", r.consistency_failure ? ordered_json(*r.consistency_failure) : ordered_json()}};
    if (!r.consistent) {
        if (with_timings) {
            ordered_json t = ordered_json::object();
            for (const auto& ph : r.timings) t[ph.phase] = ph.ms;
            j["timings_ms"] = t;
        }
        return j;
    }
    j["nilpotency_class"] = r.nilpotency_class;
    j["lower_central_series"] = r.lcs_order_exponents;
    if (r.strata)
        j["strata"] = {{"dim_v", (*r.strata)[0]}, {"dim_w", (*r.strata)[1]}, {"dim_t", (*r.strata)[2]}};
    else
        j["strata"] = nullptr;

    const auto& c = r.camina;
    j["camina"] = {{"camina", c.camina},
                   {"degenerate", c.degenerate ? ordered_json(*c.degenerate) : ordered_json()},
                   {"complete", c.complete},
                   {"method", c.method},
                   {"cosets", c.cosets},
                   {"witness", c.witness ? ordered_json(*c.witness) : ordered_json()},
                   {"linear_route", c.linear_route ? ordered_json(*c.linear_route) : ordered_json()}};
    j["special_class"] = {
        {"group", r.special_class},
        {"quotient_by_g3", r.quotient_special_class ? ordered_json(*r.quotient_special_class) : ordered_json()}};
    if (r.families) {
        const auto& f = *r.families;
        ordered_json fj;
        fj["projective_points"] = f.projective_points;
        fj["A"] = f.a;
        fj["A_star"] = f.a_star;
        fj["C"] = f.c ? ordered_json(*f.c) : ordered_json();
        if (f.cgg_equals_derived)
            fj["derived_centralizer"] = {{"equals_derived", *f.cgg_equals_derived},
                                         {"index_exponent", *f.cgg_index_exponent}};
        else
            fj["derived_centralizer"] = nullptr;
        j["families"] = fj;
    } else {
        j["families"] = nullptr;
    }
    ordered_json checks = ordered_json::array();
    for (const auto& v : r.checks)
        checks.push_back({{"name", v.name}, {"status", to_string(v.status)}, {"detail", v.detail}});
    j["checks"] = checks;
    j["summary"] = {{"pass", r.count(CheckStatus::pass)},
                    {"fail", r.count(CheckStatus::fail)},
                    {"not_applicable", r.count(CheckStatus::not_applicable)}};
    if (with_timings) {
        ordered_json t = ordered_json::object();
        for (const auto& ph : r.timings) t[ph.phase] = ph.ms;
        j["timings_ms"] = t;
    }
    return j;
}

std::string to_text(const AnalysisReport& r) {
    std::ostringstream os;
    os << r.path << " (fnv1a64 " << r.content_hash << ")\n";
    os << "  p = " << r.p << ", generators = " << r.ngens << ", order = " << r.p << "^" << r.order_exponent << "\n";
    if (!r.consistent) {
        os << "  INCONSISTENT: " << *r.consistency_failure << "\n";
        return os.str();
    }
    os << "  consistent, nilpotency class " << r.nilpotency_class << ", lower central series orders p^[";
    for (std::size_t i = 0; i < r.lcs_order_exponents.size(); ++i)
        os << (i ? ", " : "") << r.lcs_order_exponents[i];
    os << "]\n";
    if (r.strata)
        os << "  strata dims G/G' = " << (*r.strata)[0] << ", G'/G_3 = " << (*r.strata)[1]
           << ", G_3 = " << (*r.strata)[2] << "\n";
    const auto& c = r.camina;
    os << "  camina: ";
    if (c.degenerate)
        os << "degenerate (" << *c.degenerate << ")";
    else if (!c.complete)
        os << "bounded-incomplete";
    else
        os << (c.camina ? "yes" : "no");
    if (!c.degenerate) os << " [" << c.method << ", " << c.cosets << " cosets]";
    if (c.witness) os << ", short class at " << *c.witness;
    if (c.linear_route) os << ", linear criterion " << (*c.linear_route ? "agrees" : "DISAGREES");
    os << "\n";
    os << "  special class: " << r.special_class;
    if (r.quotient_special_class) os << "; G/G_3: " << *r.quotient_special_class;
    os << "\n";
    if (r.families) {
        const auto& f = *r.families;
        os << "  families: |A| = " << f.a << ", |A*| = " << f.a_star;
        if (f.c) os << ", |C| = " << *f.c;
        os << " (" << f.projective_points << " projective points)\n";
        if (f.cgg_equals_derived) {
            if (*f.cgg_equals_derived)
                os << "  C_G(G') = G'\n";
            else
                os << "  C_G(G') > G' with index p^" << *f.cgg_index_exponent << "\n";
        }
    }
    if (!r.checks.empty()) {
        os << "  checks: " << r.count(CheckStatus::pass) << " pass, " << r.count(CheckStatus::fail) << " fail, "
           << r.count(CheckStatus::not_applicable) << " not applicable\n";
        for (const auto& v : r.checks) {
            const char* tag = v.status == CheckStatus::pass ? "pass" : v.status == CheckStatus::fail ? "FAIL" : "n/a ";
            os << "    " << tag << "  " << v.name << ": " << v.detail << "\n";
        }
    }
    os << "  timings (ms):";
    for (const auto& t : r.timings) {
        char buf[64];
        std::snprintf(buf, sizeof buf, " %s %.1f", t.phase.c_str(), t.ms);
        os << buf;
    }
    os << "\n";
    return os.str();
}

}  // namespace pgrp
