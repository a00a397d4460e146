#include <pk4/parakahler.hpp>
#include <gtest/gtest.h>

using namespace pk4;

namespace {

const char* kD4Half = "[e1,e2]=e3, [e4,e3]=e3, [e4,e1]=1/2*e1, [e4,e2]=1/2*e2";

Mat4 W() { return parse_form("e12-e34", false); }
Mat4 K1() { return parse_endo("E11-E22-E33+x*E43+E44"); }
Mat4 K2() { return parse_endo("E11-E22+E33-E44"); }

bool passes(const EntryReport& r) { return r.status() == Status::Pass; }

const Check* find(const EntryReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

}  // namespace

TEST(metric_from, d4_half_h1) {
    EXPECT_EQ(metric_from(W(), K1()), parse_matrix("0,1,0,0; 1,0,0,0; 0,0,x,1; 0,0,1,0"));
}

TEST(metric_from, d4_half_h2) {
    EXPECT_EQ(metric_from(W(), K2()), parse_matrix("0,1,0,0; 1,0,0,0; 0,0,0,-1; 0,0,-1,0"));
}

TEST(metric_from, identity_K_is_not_symmetric) {
    EXPECT_THROW(metric_from(parse_form("e12+e34", false), Mat4::identity()), NotSymmetric);
}

TEST(levi_civita, d4_half_h1) {
    auto c = levi_civita(parse_brackets(kD4Half), metric_from(W(), K1()));
    EXPECT_EQ(c.nabla[3], parse_matrix("-1/2,0,0,0; 0,1/2,0,0; 0,0,1,0; 0,0,-x,-1"));
    EXPECT_EQ(c.nabla[0], parse_matrix("0,0,-x/2,-1; 0,0,0,0; 0,1,0,0; 0,-x/2,0,0"));
}

TEST(levi_civita, abelian_is_zero) {
    auto c = levi_civita(LieAlgebra4{}, parse_form("e13+e24", true));
    for (const auto& m : c.nabla) EXPECT_TRUE(m.is_zero());
}

TEST(levi_civita, degenerate_metric_throws) {
    EXPECT_THROW(levi_civita(parse_brackets(kD4Half), parse_form("e12", true)), Degenerate);
}

TEST(levi_civita, torsion_free_and_compatible) {
    auto L = parse_brackets(kD4Half);
    Mat4 h = metric_from(W(), K1());
    auto c = levi_civita(L, h);
    for (const auto& [k, s] : torsion_components(L, c)) EXPECT_TRUE(s.is_zero()) << k;
    for (const auto& [k, s] : parallel_components(c, h)) EXPECT_TRUE(s.is_zero()) << k;
    for (const auto& [k, s] : parallel_components(c, W())) EXPECT_TRUE(s.is_zero()) << k;
}

TEST(nabla_K, abelian_is_zero) {
    Connection4 c = levi_civita(LieAlgebra4{}, parse_form("e13+e24", true));
    for (const auto& m : nabla_K(c, K1())) EXPECT_TRUE(m.is_zero());
}

TEST(nabla_K, d4_half_K1_is_parallel) {
    auto c = levi_civita(parse_brackets(kD4Half), metric_from(W(), K1()));
    for (const auto& m : nabla_K(c, K1())) EXPECT_TRUE(m.is_zero());
}

TEST(nabla_K, mismatched_pair_hand_expansion) {
    // with K = diag(k), ([A,K])_ij = A_ij (k_j - k_i); k = (1,-1,1,-1) and A = nabla_e1 from h1
    auto c = levi_civita(parse_brackets(kD4Half), metric_from(W(), K1()));
    auto d = nabla_K(c, K2());
    EXPECT_EQ(d[0], parse_matrix("0,0,0,2; 0,0,0,0; 0,-2,0,0; 0,0,0,0"));
    EXPECT_FALSE(d[3].is_zero() && d[1].is_zero() && d[2].is_zero() && d[0].is_zero());
}

TEST(validate_para_kahler, d4_half_structures) {
    auto L = parse_brackets(kD4Half);
    EXPECT_TRUE(passes(validate_para_kahler(L, W(), K1(), {}, {})));
    EXPECT_TRUE(passes(validate_para_kahler(L, W(), K2(), {}, {})));
}

TEST(validate_para_kahler, normal_form_on_b2) {
    auto L = parse_brackets("[e1,e2]=-e1, [e2,e3]=x*e1-e3-e4, [e2,e4]=-e4");
    auto r = validate_para_kahler(L, parse_form("e13+e24", false), parse_endo("E11+E22-E33-E44"), {}, {});
    EXPECT_TRUE(passes(r));
    EXPECT_EQ(r.checks.size(), 9u);
}

TEST(validate_para_kahler, rh3_identity_fails_eigenrank) {
    auto r = validate_para_kahler(parse_brackets("[e1,e2]=e3"), parse_form("e14+e23", false), Mat4::identity(), {}, {});
    const Check* c = find(r, "eigenranks (2,2)");
    ASSERT_NE(c, nullptr);
    EXPECT_EQ(c->status, Status::Fail);
    EXPECT_EQ(c->detail, "(4,0)");
    EXPECT_EQ(find(r, "jacobi")->status, Status::Pass);
    EXPECT_EQ(find(r, "closed")->status, Status::Pass);
}

TEST(neutral_signature, definite_and_split_forms) {
    // definite forms are rejected, split forms accepted
    auto [ok, why] = neutral_signature(parse_form("e11+e22+e33+e44", true), {}, {});
    EXPECT_FALSE(ok);
    EXPECT_TRUE(neutral_signature(parse_form("e13+e24", true), {}, {}).first);
}

TEST(validate_para_kahler, domain_sensitivity) {
    // K with a 1/x entry needs x != 0
    auto L = parse_brackets(kD4Half);
    Mat4 K = parse_endo("E11-E22-E33+1/x*E43+E44");
    EXPECT_TRUE(passes(validate_para_kahler(L, W(), K, ParamDomain::parse("x!=0"), {})));
}
