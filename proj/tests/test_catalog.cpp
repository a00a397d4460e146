#include <pk4/catalog.hpp>
#include <gtest/gtest.h>

#include <sstream>

using namespace pk4;

namespace {

std::vector<RawFile> data_files() {
    std::vector<RawFile> fs;
    for (const auto& p : std::filesystem::directory_iterator(PK4_DATA_DIR))
        if (p.path().extension() == ".txt") fs.push_back(parse_entries_file(p.path()));
    return fs;
}

RawFile parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_entries(in, "inline");
}

// data files with one extra entry parsed from `text` appended to `section`
std::vector<RawFile> with_extra(const std::string& section, const std::string& text) {
    auto fs = data_files();
    auto extra = parse_text("section " + section + "\n" + text);
    for (auto& f : fs)
        if (f.section == section) f.entries.push_back(extra.entries.front());
    return fs;
}

const Catalog& cat() {
    static Catalog c = load_catalog(PK4_DATA_DIR);
    return c;
}

}  // namespace

TEST(load_catalog, entry_counts) {
    EXPECT_EQ(cat().table1.size(), 17u);
    EXPECT_EQ(cat().structures.size(), 98u);
    EXPECT_EQ(cat().count_table(4), 23);
    EXPECT_EQ(cat().count_table(5), 22);
    EXPECT_EQ(cat().tables67.size(), 88u);
    EXPECT_EQ(cat().sec3.size(), 78u);
}

TEST(load_catalog, cross_references_resolve) {
    for (const auto& s : cat().structures) EXPECT_NO_THROW((void)cat().algebra(s.L.name)) << s.id;
    for (const auto& t : cat().tables67) {
        EXPECT_NO_THROW((void)cat().phase_row(t.source)) << t.id;
        EXPECT_NO_THROW((void)cat().algebra(t.target)) << t.id;
    }
    for (const auto& r : cat().tables45)
        if (!r.lsa.empty()) EXPECT_NO_THROW((void)cat().lsa(r.lsa)) << r.id;
    for (const auto& s : cat().sec3) EXPECT_NO_THROW((void)cat().algebra(s.algebra)) << s.id;
    EXPECT_THROW((void)cat().algebra("nope"), BrokenReference);
}

TEST(load_catalog, flagged_entries_carry_a_flag_text) {
    for (const auto& s : cat().structures)
        if (s.flagged) EXPECT_FALSE(s.entry.flag.empty()) << s.id;
    for (const auto& l : cat().lsa2)
        if (!l.erratum_products.empty()) EXPECT_FALSE(l.flag.empty()) << l.id;
}

TEST(parse_entries, empty_and_malformed_input) {
    EXPECT_THROW(parse_text(""), ParseError);
    EXPECT_THROW(parse_text("section s\n"), ParseError);
    EXPECT_THROW(parse_text("entry a\nend\n"), ParseError);
    EXPECT_THROW(parse_text("section s\nentry a\nk: v\n"), ParseError);
    EXPECT_THROW(parse_text("section s\nentry a\nend\nentry a\nend\n"), ParseError);
    EXPECT_THROW(parse_text("section s\nentry a\nno colon\nend\n"), ParseError);
}

TEST(parse_entries, fields_and_comments) {
    auto f = parse_text("# note\nsection s\n\nentry a/b\nk: v: w\nk: second\n  # inside\nend\n");
    ASSERT_EQ(f.entries.size(), 1u);
    const auto& e = f.entries.front();
    EXPECT_EQ(f.section, "s");
    EXPECT_EQ(e.id, "a/b");
    EXPECT_EQ(e.at("k"), "v: w");
    EXPECT_EQ(e.all("k").size(), 2u);
    EXPECT_EQ(e.origin, "inline:4");
    EXPECT_THROW((void)e.at("missing"), ParseError);
}

TEST(raw_entry, dump_round_trip) {
    for (const auto& f : cat().files)
        for (const auto& e : f.entries) {
            auto again = parse_text("section " + f.section + "\n" + e.raw);
            ASSERT_EQ(again.entries.size(), 1u) << e.id;
            EXPECT_EQ(again.entries.front().fields, e.fields) << e.id;
        }
    EXPECT_EQ(cat().raw("thm1/rh3/K1").at("algebra"), "rh3");
}

TEST(load_catalog, d4_lambda_at_one_is_rejected) {
    auto fs = with_extra("thm1", "entry d4_lambda/bad\nalgebra: d4_lambda\nat: lambda=1\nomega: e12-e34\nK: E11-E22-E33+E44\nend\n");
    EXPECT_THROW(load_catalog_files(fs), LoadAssertionFailed);
}

TEST(load_catalog, non_jacobi_algebra_is_rejected) {
    auto fs = with_extra("table1", "entry bad\nbrackets: [e1,e2]=e3, [e1,e3]=e1\nomega: e12+e34\nend\n");
    EXPECT_THROW(load_catalog_files(fs), LoadAssertionFailed);
}

TEST(load_catalog, dangling_target_is_a_broken_reference) {
    auto fs = with_extra("tables67", "entry t7/bad\nsource: C1_6\nmap: f1=e1, f2=e2, f3=e3, f4=e4\ntarget: nope\nend\n");
    EXPECT_THROW(load_catalog_files(fs), BrokenReference);
}

TEST(expand_variants, rh3_K2_has_two_signs) {
    const auto& e = *Catalog::find_in(cat().thm1, "rh3/K2");
    auto v = expand_variants(e, cat().algebra("rh3"));
    ASSERT_EQ(v.size(), 2u);
    EXPECT_EQ(v[0].id, "rh3/K2#1");
    EXPECT_EQ(v[0].K, parse_endo("-E11+E22-E33+E44"));
    EXPECT_EQ(v[1].K, parse_endo("E11-E22+E33-E44"));
}

TEST(expand_variants, unsigned_entry_is_itself) {
    const auto& e = *Catalog::find_in(cat().thm1, "rh3/K1");
    auto v = expand_variants(e, cat().algebra("rh3"));
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].id, "rh3/K1");
    EXPECT_EQ(v[0].variant, 0);
    EXPECT_EQ(&cat().structure("rh3/K1#1"), &cat().structure("rh3/K1"));
}

TEST(expand_variants, signs_co_vary_within_an_entry) {
    const auto& e = *Catalog::find_in(cat().thm1, "rr3_m1/K1");
    auto v = expand_variants(e, cat().algebra("rr3_m1"));
    ASSERT_EQ(v.size(), 2u);
    EXPECT_EQ(v[0].K, parse_endo("-E11-E22-E23+E33+E44"));
    EXPECT_EQ(v[1].K, parse_endo("E11+E22-E23-E33-E44"));
}
