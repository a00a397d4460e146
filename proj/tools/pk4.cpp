#include <pk4/verify.hpp>

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>

#ifndef PK4_DATA_DIR
#define PK4_DATA_DIR "data"
#endif

namespace {

using namespace pk4;
using nlohmann::json;

struct Options {
    std::string data = PK4_DATA_DIR;
    std::uint64_t seed = 1;
    int trials = 32;
    std::string format = "text";
    std::vector<std::string> sets;
    std::string entry;
};

SampleConfig config(const Options& o) {
    SampleConfig c;
    c.seed = o.seed;
    c.trials = o.trials;
    return c;
}

// --set x=0 --set y=1/2 pins parameters; constraints the point violates are dropped and reported
std::vector<std::string> apply_sets(ParamDomain& dom, const std::vector<std::string>& sets) {
    std::map<int, Scalar> at;
    for (const auto& s : sets)
        for (const auto& [v, e] : parse_assignments(s)) {
            if (!e.is_constant()) throw ParseError("--set needs a rational value: '" + s + "'");
            at[v] = e;
        }
    if (at.empty()) return {};
    std::vector<std::string> dropped;
    ParamDomain r;
    for (const auto& [v, e] : at) r.add({Scalar::param(v) - e, Rel::Eq});
    for (const auto& [v, e] : dom.substitutions()) {
        ParamDomain t = r;
        t.add({Scalar::param(v).subs(at) - e.subs(at), Rel::Eq});
        if (t.trivially_empty())
            dropped.push_back(var_name(v) + "=" + e.str());
        else
            r = t;
    }
    for (const auto& c : dom.constraints()) {
        ParamDomain t = r;
        t.add({c.expr.subs(at), c.rel});
        if (t.trivially_empty())
            dropped.push_back(c.expr.str() + " " + rel_str(c.rel) + " 0");
        else
            r = t;
    }
    dom = r;
    return dropped;
}

void print_table(const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) return;
    std::vector<size_t> w(rows[0].size(), 0);
    for (const auto& r : rows)
        for (size_t k = 0; k < r.size() && k < w.size(); ++k) w[k] = std::max(w[k], r[k].size());
    for (const auto& r : rows) {
        for (size_t k = 0; k < r.size(); ++k) {
            std::cout << r[k];
            if (k + 1 < r.size()) std::cout << std::string(w[k] - r[k].size() + 2, ' ');
        }
        std::cout << '\n';
    }
}

void print_entry(const EntryReport& e) {
    std::cout << status_str(e.status()) << "  " << e.id << '\n';
    if (e.status() == Status::Pass) return;
    for (const auto& n : e.notes) std::cout << "      note: " << n << '\n';
    for (const auto& c : e.checks) {
        if (c.status == Status::Pass) continue;
        std::cout << "      " << status_str(c.status) << ' ' << c.name;
        if (!c.detail.empty()) std::cout << ": " << c.detail;
        if (!c.witness.empty()) std::cout << " [" << c.witness << ']';
        std::cout << '\n';
    }
}

int cmd_verify(const Options& o, const std::string& scope) {
    Catalog cat;
    try {
        cat = load_catalog(o.data);
    } catch (const LoadAssertionFailed& e) {
        if (o.format == "json")
            std::cout << json{{"status", "FAIL"}, {"entry", e.entry}, {"load_assertion", e.check}}.dump(2) << '\n';
        else
            std::cout << "FAIL  " << e.entry << ": load assertion: " << e.check << '\n';
        return 1;
    }
    Verifier v(cat, config(o));
    std::vector<std::string> scopes = scope == "all" ? suite_names() : std::vector<std::string>{scope};
    json out = json::array();
    Status total = Status::Pass;
    for (const auto& sc : scopes) {
        SuiteReport s = v.run(sc);
        if (!o.entry.empty())
            std::erase_if(s.entries, [&](const EntryReport& e) { return e.id.find(o.entry) == std::string::npos; });
        total = worst(total, s.status());
        if (o.format == "json") {
            out.push_back(to_json(s));
            continue;
        }
        if (sc == "sec3" && o.entry.empty()) {
            print_table(s.table);
            std::cout << '\n';
        }
        for (const auto& e : s.entries)
            if (sc != "sec3" || e.status() != Status::Pass || !o.entry.empty()) print_entry(e);
        std::cout << sc << ": " << status_str(s.status()) << " (" << s.count(Status::Pass) << " pass, "
                  << s.count(Status::Warn) << " warn, " << s.count(Status::Fail) << " fail)\n\n";
    }
    if (o.format == "json") std::cout << (scopes.size() == 1 ? out[0] : out).dump(2) << '\n';
    return total == Status::Fail ? 1 : 0;
}

struct GeometryInput {
    std::string label;
    LieAlgebra4 L;
    Mat4 h;
    ParamDomain dom;
};

GeometryInput resolve_geometry(const Catalog& cat, const Verifier& v, const std::string& target) {
    std::string id = target;
    int variant = 0;
    if (auto hash = id.rfind('#'); hash != std::string::npos && id.rfind("thm1/", 0) != 0) {
        variant = std::stoi(id.substr(hash + 1));
        id = id.substr(0, hash);
    }
    if (id.rfind("thm1/", 0) == 0) {
        const Structure& st = cat.structure(id.substr(5));
        return {target, st.L, metric_unchecked(st.omega, st.K), st.dom};
    }
    if (!id.starts_with("sec3/")) id = "sec3/" + id;
    for (const auto& e : cat.sec3)
        if (e.id == id) {
            auto vs = v.sec3_variants(e);
            if (variant == 0) variant = vs.front();
            if (std::find(vs.begin(), vs.end(), variant) == vs.end())
                throw ParseError(id + " has no variant " + std::to_string(variant));
            // flagged rows are computed with their recorded correction
            auto row = v.sec3_row(e, variant, true);
            if (row.metric != v.sec3_row(e, variant, false).metric)
                std::cerr << "note: " << id << " uses the corrected metric " << row.metric << '\n';
            return {target, row.L, row.h, row.dom};
        }
    throw BrokenReference("no sec3 row or thm1 structure '" + target + "'");
}

json geometry_json(const GeometryInput& g, const RowRecord& r) {
    json j{{"entry", g.label}, {"domain", g.dom.str()}, {"metric", g.h.str()}};
    for (int i = 0; i < 4; ++i) j["nabla"]["e" + std::to_string(i + 1)] = r.nabla.nabla[static_cast<size_t>(i)].str();
    for (auto [i, k] : kPairs)
        j["R"]["e" + std::to_string(i + 1) + ",e" + std::to_string(k + 1)] = r.R.at(i, k).str();
    j["ric"] = r.ric.str();
    j["Ric"] = r.Ric.str();
    j["s"] = r.s.str();
    j["flat"] = r.flat;
    j["ricci_flat"] = r.ricci_flat;
    auto set_json = [](const SolitonSolutionSet& s) {
        return s.exists ? json{{"lambda", s.lambda.str()}, {"X", vec_str(s.X)}, {"free", s.free_count()}} : json("none");
    };
    j["soliton"] = set_json(r.soliton);
    j["soliton_assumptions"] = r.soliton_assumptions;
    for (const auto& b : r.soliton_special)
        j["soliton_special"].push_back({{"condition", b.condition}, {"resolved", b.resolved}, {"set", set_json(b.set)}});
    j["type"] = soliton_type_str(r.type);
    return j;
}

void geometry_text(const GeometryInput& g, const RowRecord& r) {
    std::cout << "entry: " << g.label << '\n';
    std::cout << "brackets: " << brackets_text(g.L.reduced(g.dom)) << '\n';
    std::cout << "domain: " << (g.dom.str().empty() ? "all" : g.dom.str()) << '\n';
    std::cout << "h: " << g.h.reduced(g.dom).str() << '\n';
    for (int i = 0; i < 4; ++i) std::cout << "nabla_e" << i + 1 << ": " << r.nabla.nabla[static_cast<size_t>(i)].str() << '\n';
    for (auto [i, k] : kPairs) std::cout << "R(e" << i + 1 << ",e" << k + 1 << "): " << r.R.at(i, k).str() << '\n';
    std::cout << "ric: " << r.ric.str() << '\n';
    std::cout << "Ric: " << r.Ric.str() << '\n';
    std::cout << "s: " << r.s.str() << '\n';
    std::cout << "flat: " << (r.flat ? "yes" : "no") << ", ricci-flat: " << (r.ricci_flat ? "yes" : "no") << '\n';
    auto set_text = [](const SolitonSolutionSet& s) {
        return s.exists ? "lambda=" + s.lambda.str() + ", X=" + vec_str(s.X) : std::string("none");
    };
    std::cout << "soliton: " << set_text(r.soliton);
    for (size_t k = 0; k < r.soliton_assumptions.size(); ++k)
        std::cout << (k ? ", " : " for ") << r.soliton_assumptions[k];
    std::cout << '\n';
    for (const auto& b : r.soliton_special)
        std::cout << "  on " << b.condition << ": " << (b.resolved ? set_text(b.set) : "not resolved") << '\n';
    std::cout << "type: " << soliton_type_str(r.type) << '\n';
}

int cmd_geometry(const Options& o, const std::string& target, const std::string& brackets, const std::string& metric,
                 const std::string& domain) {
    Catalog cat = load_catalog(o.data);
    Verifier v(cat, config(o));
    GeometryInput g;
    if (!target.empty()) {
        g = resolve_geometry(cat, v, target);
    } else {
        if (metric.empty()) throw ParseError("geometry needs an entry id or --metric");
        g.label = "inline";
        g.L = parse_brackets(brackets);
        g.h = parse_form(metric, true);
        if (!domain.empty()) g.dom.add_text(domain);
    }
    for (const auto& d : apply_sets(g.dom, o.sets)) std::cerr << "note: --set leaves the entry's domain, dropped " << d << '\n';
    if (g.dom.trivially_empty()) throw ParseError("empty domain: " + g.dom.why_empty());
    auto [nd, why] = nonvanishing_check(g.h.det(), g.dom, config(o));
    if (!nd) {
        std::cerr << "degenerate metric: det h = " << g.dom.reduce(g.h.det()).str() << " (" << why << ")\n";
        return 1;
    }
    RowRecord r = classify_row(g.L, g.h, g.dom);
    if (o.format == "json")
        std::cout << geometry_json(g, r).dump(2) << '\n';
    else
        geometry_text(g, r);
    return 0;
}

int cmd_phase(const Options& o, const std::string& name, const std::string& ustar) {
    Catalog cat = load_catalog(o.data);
    const LSAEntry& l = cat.lsa(name);
    ParamDomain dom = l.dom;
    for (const auto& d : apply_sets(dom, o.sets)) std::cerr << "note: --set leaves the entry's domain, dropped " << d << '\n';
    const std::string& products = l.flag.empty() || l.erratum_products.empty() ? l.products : l.erratum_products;
    LSAPair p{parse_lsa(products, 0, name), parse_lsa(ustar.empty() ? "0" : ustar, 2, "U*")};
    LieAlgebra4 L = phase_algebra(p, name).reduced(dom);
    EntryReport r;
    r.id = "phase " + name + " \"" + ustar + "\"";
    add_zero_check(r, "U* left-symmetric", left_symmetry_defect(p.on_Ustar), dom, config(o));
    auto ext = is_lie_extendible(p, dom);
    std::string why;
    for (const auto& [k, s] : ext.residuals) why += (why.empty() ? "" : ", ") + k + " = " + s.str();
    r.add("Lie-extendible", ext.extendible, why);
    if (ext.extendible) r.append(validate_para_kahler(L, normal_omega(), normal_K(), dom, config(o)), "normal form: ");
    if (o.format == "json") {
        json j = to_json(r);
        j["brackets"] = brackets_text(L);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "brackets: " << brackets_text(L) << '\n';
        for (const auto& c : r.checks) {
            std::cout << status_str(c.status) << ' ' << c.name;
            if (!c.detail.empty()) std::cout << ": " << c.detail;
            std::cout << '\n';
        }
        std::cout << status_str(r.status()) << '\n';
    }
    return r.status() == Status::Fail ? 1 : 0;
}

int cmd_dump(const Options& o, const std::string& id) {
    Catalog cat = load_catalog(o.data);
    std::cout << cat.raw(id).raw;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"para-Kahler Lie algebra catalog verifier"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--data", o.data, "catalog directory")->check(CLI::ExistingDirectory);
    app.add_option("--seed", o.seed, "sampling seed");
    app.add_option("--trials", o.trials, "sample points per sampled check")->check(CLI::PositiveNumber);
    app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--set", o.sets, "param=rational, repeatable");
    app.add_option("--entry", o.entry, "entry id");

    std::string scope, target, brackets, metric, domain, lsa, ustar;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::vector<std::string> scopes = suite_names();
    scopes.push_back("all");
    verify->add_option("scope", scope)->required()->check(CLI::IsMember(scopes));

    auto* geometry = app.add_subcommand("geometry", "curvature and solitons of a metric");
    geometry->add_option("entry", target, "sec3 row (optionally #variant) or thm1/<structure>");
    geometry->add_option("--brackets", brackets, "inline algebra");
    geometry->add_option("--metric", metric, "inline metric");
    geometry->add_option("--domain", domain, "inline parameter domain");

    auto* phase = app.add_subcommand("phase", "assemble a phase space from an LSA and U* products");
    phase->add_option("lsa", lsa)->required();
    phase->add_option("ustar", ustar, "products such as \"e3.e4=e4\"");

    auto* dump = app.add_subcommand("dump", "print a catalog entry verbatim");
    dump->add_option("id", target, "entry id");

    // options are accepted on either side of the subcommand
    for (auto* sub : {verify, geometry, phase, dump}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    try {
        if (*verify) return cmd_verify(o, scope);
        if (*geometry) return cmd_geometry(o, target.empty() ? o.entry : target, brackets, metric, domain);
        if (*phase) return cmd_phase(o, lsa, ustar);
        if (*dump) {
            std::string id = target.empty() ? o.entry : target;
            if (id.empty()) throw ParseError("dump needs an entry id");
            return cmd_dump(o, id);
        }
    } catch (const LoadAssertionFailed& e) {
        std::cerr << "load assertion failed: " << e.what() << '\n';
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const BrokenReference& e) {
        std::cerr << "unknown reference: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
