#pragma once

#include "morphisms.hpp"
#include "phase_space.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace pk4 {

struct BrokenReference : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LoadAssertionFailed : std::runtime_error {
    LoadAssertionFailed(const std::string& entry, const std::string& check)
        : std::runtime_error(entry + ": " + check), entry(entry), check(check) {}
    std::string entry, check;
};

// One `entry ... end` block; `raw` holds its lines verbatim.
struct RawEntry {
    std::string section;
    std::string id;
    std::vector<std::pair<std::string, std::string>> fields;
    std::string raw;
    std::string origin;  // file:line

    std::optional<std::string> get(std::string_view key) const {
        for (const auto& [k, v] : fields)
            if (k == key) return v;
        return std::nullopt;
    }
    std::string at(std::string_view key) const {
        auto v = get(key);
        if (!v) throw ParseError(origin + ": entry '" + id + "' lacks '" + std::string(key) + "'");
        return *v;
    }
    std::string get_or(std::string_view key, std::string def = {}) const { return get(key).value_or(std::move(def)); }
    std::vector<std::string> all(std::string_view key) const {
        std::vector<std::string> out;
        for (const auto& [k, v] : fields)
            if (k == key) out.push_back(v);
        return out;
    }
    bool has(std::string_view key) const { return get(key).has_value(); }
};

struct RawFile {
    std::string section;
    std::vector<RawEntry> entries;
};

inline std::string trimmed(std::string_view s) {
    size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
    return a == std::string_view::npos ? std::string() : std::string(s.substr(a, b - a + 1));
}

inline RawFile parse_entries(std::istream& in, const std::string& name) {
    RawFile f;
    std::optional<RawEntry> cur;
    std::string line;
    std::set<std::string> ids;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        std::string where = name + ":" + std::to_string(n);
        std::string t = trimmed(line);
        if (cur) cur->raw += line + "\n";
        if (t.empty() || t[0] == '#') continue;
        if (t.rfind("section ", 0) == 0) {
            if (cur) throw ParseError(where + ": section inside entry");
            if (!f.section.empty()) throw ParseError(where + ": second section header");
            f.section = trimmed(t.substr(8));
        } else if (t.rfind("entry ", 0) == 0) {
            if (cur) throw ParseError(where + ": entry inside entry");
            if (f.section.empty()) throw ParseError(where + ": entry before section header");
            cur = RawEntry{f.section, trimmed(t.substr(6)), {}, line + "\n", where};
            if (!ids.insert(cur->id).second) throw ParseError(where + ": duplicate entry id '" + cur->id + "'");
        } else if (t == "end") {
            if (!cur) throw ParseError(where + ": 'end' outside entry");
            f.entries.push_back(std::move(*cur));
            cur.reset();
        } else {
            auto c = t.find(':');
            if (!cur || c == std::string::npos) throw ParseError(where + ": unexpected line '" + t + "'");
            cur->fields.push_back({trimmed(t.substr(0, c)), trimmed(t.substr(c + 1))});
        }
    }
    if (cur) throw ParseError(name + ": entry '" + cur->id + "' is not terminated");
    if (f.section.empty()) throw ParseError(name + ": no section header");
    if (f.entries.empty()) throw ParseError(name + ": no entries");
    return f;
}

inline RawFile parse_entries_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw ParseError("cannot open " + p.string());
    return parse_entries(in, p.filename().string());
}

// "beta=-alpha, x=0" as a simultaneous substitution.
inline std::map<int, Scalar> parse_assignments(std::string_view text) {
    std::map<int, Scalar> m;
    for (const auto& item : ParamDomain::split_top(text)) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("bad assignment '" + item + "'");
        m[var_id(trimmed(item.substr(0, eq)))] = parse_scalar(item.substr(eq + 1));
    }
    return m;
}

inline Mat4 subs(const Mat4& m, const std::map<int, Scalar>& s) {
    Mat4 r = m;
    for (auto& row : r.a)
        for (auto& x : row) x = x.subs(s);
    return r;
}

inline ParamDomain subs(const ParamDomain& d, const std::map<int, Scalar>& s) {
    ParamDomain r;
    for (const auto& [v, e] : d.substitutions()) r.add({Scalar::param(v).subs(s) - e.subs(s), Rel::Eq});
    for (const auto& c : d.constraints()) r.add({c.expr.subs(s), c.rel});
    return r;
}

struct Table1Entry {
    std::string id, name;
    LieAlgebra4 L;
    std::vector<std::string> omegas;  // literal, possibly with -+ variants
};

struct ThmEntry {
    std::string id, algebra, at, domain, omega, K;
    std::string flag, erratum_K;
    int erratum_variant = 0;
};

// One concrete (w,K) after sign expansion.
struct Structure {
    std::string id;  // base id, plus "#v" when the entry has sign variants
    std::string base;
    int variant = 0;
    ThmEntry entry;
    LieAlgebra4 L;
    ParamDomain dom;
    std::string omega_text, K_text;
    Mat4 omega, K;
    bool flagged = false;
    std::optional<Mat4> erratum_K;
    std::vector<std::string> notes;
};

struct Table45Entry {
    std::string id, name;
    int table = 4;
    LieAlgebra4 L;
    std::string lsa, lsa_at, ustar;
};

struct Table67Entry {
    std::string id, source, target, condition, map, target_at, flag, erratum_map;
    std::string table() const { return id.substr(0, 2); }
};

struct LSAEntry {
    std::string id;
    std::string products, flag, erratum_products;
    ParamDomain dom;
};

struct Sec3Entry {
    std::string id, algebra, at, domain;
    std::string metric, flat, ricci_flat, lambda, X, soliton, link;
    std::string flag, erratum_metric, erratum_flat, erratum_ricci_flat, erratum_lambda, erratum_X, erratum_soliton,
        erratum_link;
};

struct Catalog {
    std::vector<RawFile> files;
    std::vector<Table1Entry> table1;
    std::vector<ThmEntry> thm1;
    std::vector<Structure> structures;
    std::vector<Table45Entry> tables45;
    std::vector<Table67Entry> tables67;
    std::vector<LSAEntry> lsa2;
    std::vector<Sec3Entry> sec3;
    std::vector<RawEntry> rr30;

    template <class T>
    static const T* find_in(const std::vector<T>& v, std::string_view id) {
        for (const auto& e : v)
            if (e.id == id) return &e;
        return nullptr;
    }
    const Table1Entry& algebra(std::string_view id) const {
        if (auto* e = find_in(table1, id)) return *e;
        throw BrokenReference("no symplectic algebra '" + std::string(id) + "'");
    }
    const Table45Entry& phase_row(std::string_view id) const {
        if (auto* e = find_in(tables45, id)) return *e;
        throw BrokenReference("no phase-space row '" + std::string(id) + "'");
    }
    const LSAEntry& lsa(std::string_view id) const {
        if (auto* e = find_in(lsa2, id)) return *e;
        throw BrokenReference("no left-symmetric algebra '" + std::string(id) + "'");
    }
    const Structure& structure(std::string_view id) const {
        // an unsigned structure is its own first variant
        for (const auto& s : structures)
            if (s.id == id || (s.variant == 0 && (s.base == id || s.base + "#1" == id))) return s;
        throw BrokenReference("no structure '" + std::string(id) + "'");
    }
    // "section/id" or a bare id unique across files.
    const RawEntry& raw(std::string_view id) const {
        const RawEntry* hit = nullptr;
        for (const auto& f : files)
            for (const auto& e : f.entries) {
                if (f.section + "/" + e.id == id) return e;
                if (e.id == id) {
                    if (hit) throw BrokenReference("ambiguous id '" + std::string(id) + "'; qualify with the section");
                    hit = &e;
                }
            }
        if (!hit) throw BrokenReference("no entry '" + std::string(id) + "'");
        return *hit;
    }
    int count_table(int t) const {
        return static_cast<int>(std::count_if(tables45.begin(), tables45.end(), [t](const auto& e) { return e.table == t; }));
    }
};

inline std::vector<int> variants_of(std::initializer_list<std::string_view> texts) {
    for (auto t : texts)
        if (has_variants(t)) return {1, 2};
    return {0};
}

inline std::string variant_text(std::string_view s, int v) { return v == 0 ? std::string(s) : apply_variant(s, v); }

// Each -+/+- choice becomes a structure; signs in one entry co-vary.
inline std::vector<Structure> expand_variants(const ThmEntry& e, const Table1Entry& a) {
    std::vector<Structure> out;
    for (int v : variants_of({e.omega, e.K})) {
        Structure s;
        s.base = e.id;
        s.variant = v;
        s.id = v ? e.id + "#" + std::to_string(v) : e.id;
        s.entry = e;
        s.L = a.L;
        s.L.name = a.id;
        s.dom = a.L.domain;
        if (!e.domain.empty()) s.dom.add_text(e.domain);
        if (!e.at.empty()) s.dom.add_text(e.at);
        s.omega_text = variant_text(e.omega, v);
        s.K_text = variant_text(e.K, v);
        s.omega = parse_form(s.omega_text, false);
        s.K = parse_endo(s.K_text);
        if (v) s.notes.push_back(std::string(v == 1 ? "upper" : "lower") + " sign of a co-varying -+/+- expansion");
        s.flagged = !e.flag.empty() && (e.erratum_variant == 0 || e.erratum_variant == v);
        if (s.flagged && !e.erratum_K.empty()) s.erratum_K = parse_endo(variant_text(e.erratum_K, v));
        out.push_back(std::move(s));
    }
    return out;
}

inline void check_load(bool ok, const std::string& entry, const std::string& what) {
    if (!ok) throw LoadAssertionFailed(entry, what);
}

inline void assert_jacobi(const LieAlgebra4& L, const ParamDomain& dom, const std::string& id) {
    for (const auto& v : jacobi_defect(L))
        for (const auto& s : v) check_load(dom.reduce(s).is_zero(), id, "jacobi");
}

inline void assert_satisfiable(const ParamDomain& dom, const std::string& id) {
    check_load(!dom.trivially_empty(), id, "domain unsatisfiable: " + dom.why_empty());
    std::mt19937_64 rng(7);
    try {
        (void)dom.sample(rng, {}, SampleConfig{});
    } catch (const DomainUnsatisfiable& e) {
        throw LoadAssertionFailed(id, std::string("domain unsatisfiable: ") + e.what());
    }
}

inline Catalog load_catalog_files(const std::vector<RawFile>& files) {
    Catalog c;
    c.files = files;
    auto section = [&](const std::string& name) -> const RawFile* {
        for (const auto& f : c.files)
            if (f.section == name) return &f;
        return nullptr;
    };
    auto require = [&](const std::string& name) {
        auto* f = section(name);
        if (!f) throw ParseError("missing section '" + name + "'");
        return f;
    };

    for (const auto& e : require("table1")->entries) {
        Table1Entry t{e.id, e.get_or("name", e.id), parse_brackets(e.get_or("brackets"), e.id), e.all("omega")};
        if (e.has("domain")) t.L.domain = ParamDomain::parse(e.at("domain"));
        if (t.omegas.empty()) throw ParseError(e.origin + ": table1 entry without omega");
        assert_satisfiable(t.L.domain, "table1/" + e.id);
        assert_jacobi(t.L, t.L.domain, "table1/" + e.id);
        for (const auto& w : t.omegas)
            for (int v : variants_of({w})) check_load(is_antisymmetric(parse_form(variant_text(w, v), false)), "table1/" + e.id, "omega antisymmetric");
        c.table1.push_back(std::move(t));
    }

    for (const auto& e : require("thm1")->entries) {
        ThmEntry t{e.id, e.at("algebra"), e.get_or("at"), e.get_or("domain"), e.at("omega"), e.at("K"),
                   e.get_or("flag"), e.get_or("erratum_K"), 0};
        if (e.has("erratum_variant")) t.erratum_variant = std::stoi(e.at("erratum_variant"));
        if (!t.erratum_K.empty() && t.flag.empty()) throw ParseError(e.origin + ": erratum without flag");
        c.thm1.push_back(std::move(t));
    }
    for (const auto& t : c.thm1) {
        const auto& a = c.algebra(t.algebra);
        for (auto& s : expand_variants(t, a)) {
            assert_satisfiable(s.dom, "thm1/" + s.id);
            check_load(is_antisymmetric(s.omega), "thm1/" + s.id, "omega antisymmetric");
            c.structures.push_back(std::move(s));
        }
    }

    if (auto* f = section("lsa2"))
        for (const auto& e : f->entries) {
            LSAEntry l{e.id, e.at("products"), e.get_or("flag"), e.get_or("erratum_products"), {}};
            if (e.has("domain")) l.dom = ParamDomain::parse(e.at("domain"));
            (void)parse_lsa(l.products, 0, l.id);
            if (!l.erratum_products.empty()) (void)parse_lsa(l.erratum_products, 0, l.id);
            c.lsa2.push_back(std::move(l));
        }

    for (const auto& e : require("tables45")->entries) {
        Table45Entry t{e.id, e.get_or("name", e.id), std::stoi(e.at("table")), parse_brackets(e.at("brackets"), e.id),
                       e.get_or("lsa"), e.get_or("lsa_at"), e.get_or("ustar")};
        if (e.has("domain")) t.L.domain = ParamDomain::parse(e.at("domain"));
        assert_satisfiable(t.L.domain, "tables45/" + e.id);
        assert_jacobi(t.L, t.L.domain, "tables45/" + e.id);
        if (!t.lsa.empty()) (void)c.lsa(t.lsa);
        c.tables45.push_back(std::move(t));
    }

    for (const auto& e : require("tables67")->entries) {
        Table67Entry t{e.id, e.at("source"), e.at("target"), e.get_or("condition"), e.at("map"),
                       e.get_or("target_at"), e.get_or("flag"), e.get_or("erratum_map")};
        (void)c.phase_row(t.source);
        (void)c.algebra(t.target);
        (void)parse_map(t.map);
        if (!t.target_at.empty()) (void)parse_assignments(t.target_at);
        c.tables67.push_back(std::move(t));
    }

    if (auto* f = section("sec3"))
        for (const auto& e : f->entries) {
            Sec3Entry s{e.id, e.at("algebra"), e.get_or("at"), e.get_or("domain"), e.at("metric"), e.at("flat"),
                        e.at("ricci_flat"), e.get_or("lambda"), e.get_or("X"), e.get_or("soliton"), e.get_or("link"),
                        e.get_or("flag"), e.get_or("erratum_metric"), e.get_or("erratum_flat"),
                        e.get_or("erratum_ricci_flat"), e.get_or("erratum_lambda"), e.get_or("erratum_X"),
                        e.get_or("erratum_soliton"), e.get_or("erratum_link")};
            (void)c.algebra(s.algebra);
            c.sec3.push_back(std::move(s));
        }

    if (auto* f = section("rr30"))
        for (const auto& e : f->entries) {
            if (e.has("source")) (void)c.phase_row(e.at("source"));
            c.rr30.push_back(e);
        }
    return c;
}

inline Catalog load_catalog(const std::filesystem::path& dir) {
    std::vector<RawFile> files;
    std::vector<std::filesystem::path> paths;
    for (const auto& p : std::filesystem::directory_iterator(dir))
        if (p.path().extension() == ".txt") paths.push_back(p.path());
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) throw ParseError("no catalog files in " + dir.string());
    for (const auto& p : paths) files.push_back(parse_entries_file(p));
    return load_catalog_files(files);
}

}  // namespace pk4
