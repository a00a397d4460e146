#include <pk4/catalog.hpp>
#include <pk4/morphisms.hpp>
#include <gtest/gtest.h>

#include <random>

using namespace pk4;

namespace {

Catalog& cat() {
    static Catalog c = load_catalog(PK4_DATA_DIR);
    return c;
}

bool passes(const EntryReport& r) { return r.status() == Status::Pass; }

Mat4 random_invertible(std::mt19937_64& rng) {
    for (;;) {
        Mat4 m;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = Scalar(static_cast<long>(rng() % 7) - 3);
        if (!m.det().is_zero()) return m;
    }
}

}  // namespace

TEST(parse_map, columns_and_errors) {
    Mat4 P = parse_map("f1=e1, f2=-e4, f3=-x/2*e1+e3, f4=e2");
    EXPECT_EQ(P.col(1), -basis(3));
    EXPECT_EQ(P(0, 2), parse_scalar("-x/2"));
    EXPECT_EQ(parse_map(map_text(P)), P);
    EXPECT_THROW(parse_map("f1=e1, f2=e2, f3=e3"), ParseError);
    EXPECT_THROW(parse_map("f1=e1, f1=e2, f3=e3, f4=e4"), ParseError);
    EXPECT_THROW(parse_map("g1=e1, f2=e2, f3=e3, f4=e4"), ParseError);
}

TEST(check_lie_isomorphism, identity_on_rh3) {
    auto L = parse_brackets("[e1,e2]=e3");
    EXPECT_TRUE(passes(check_lie_isomorphism({Mat4::identity(), &L, &L, {}}, {})));
}

TEST(check_lie_isomorphism, b2_onto_r4_m1) {
    // [f4,f3] = [e2,-x/2 e1+e3] = x/2 e1 - e3 - e4 = f2 - f3
    const auto& src = cat().phase_row("B2").L;
    const auto& tgt = cat().algebra("r4_m1").L;
    Mat4 P = parse_map("f1=e1, f2=-e4, f3=-x/2*e1+e3, f4=e2");
    EXPECT_EQ(bracket(src, P.col(3), P.col(2)), P.col(1) - P.col(2));
    EXPECT_TRUE(passes(check_lie_isomorphism({P, &tgt, &src, {}}, {})));
}

TEST(check_lie_isomorphism, c1_5_plus_onto_d4_2) {
    const auto& src = cat().phase_row("C1_5_plus").L;
    const auto& tgt = cat().algebra("d4_2").L;
    EXPECT_TRUE(passes(check_lie_isomorphism({parse_map("f1=e2, f2=e3, f3=e1, f4=e4"), &tgt, &src, {}}, {})));
    // swapping two images breaks the bracket identity
    auto r = check_lie_isomorphism({parse_map("f1=e3, f2=e2, f3=e1, f4=e4"), &tgt, &src, {}}, {});
    EXPECT_EQ(r.status(), Status::Fail);
}

TEST(check_lie_isomorphism, singular_map_fails) {
    auto L = parse_brackets("[e1,e2]=e2");
    auto r = check_lie_isomorphism({parse_map("f1=e1, f2=e1, f3=e3, f4=e4"), &L, &L, {}}, {});
    EXPECT_EQ(r.status(), Status::Fail);
}

TEST(transport, c1_6_normal_form_onto_rr3_0) {
    // w0(f1,f2) = w0(-e4,e2) = 1, w0(f3,f4) = w0(e3,e1) = -1; K0 negates f1 = -e4 and f3 = e3
    auto [w, K] = transport(parse_map("f1=-e4, f2=e2, f3=e3, f4=e1"), normal_omega(), normal_K());
    EXPECT_EQ(w, parse_form("e12-e34", false));
    EXPECT_EQ(K, parse_endo("-E11+E22-E33+E44"));
}

TEST(transport, identity_and_composition) {
    Mat4 w = parse_form("e12+x*e13+e34", false), K = parse_endo("E11+x*E12-E22+E33-E44");
    auto [w1, K1] = transport(Mat4::identity(), w, K);
    EXPECT_EQ(w1, w);
    EXPECT_EQ(K1, K);
    std::mt19937_64 rng(21);
    for (int k = 0; k < 5; ++k) {
        Mat4 P = random_invertible(rng), Q = random_invertible(rng);
        auto [wp, Kp] = transport(P, w, K);
        auto [wpq, Kpq] = transport(Q, wp, Kp);
        auto [wd, Kd] = transport(P * Q, w, K);
        EXPECT_TRUE((wpq - wd).is_zero());
        EXPECT_TRUE((Kpq - Kd).is_zero());
        // K^2 = Id survives conjugation
        EXPECT_TRUE((Kp * Kp - Mat4::identity()).is_zero());
    }
}

TEST(transport, c2_1_at_x0_gives_the_2y_entry) {
    // K0 f2 = -y e2 - e4 with e2 = -f1, e4 = f2 - y f1, so K0 f2 = 2y f1 - f2
    ParamDomain x0 = ParamDomain::parse("x=0");
    auto [w, K] = transport(parse_map("f1=-e2, f2=-y*e2+e4, f3=e1, f4=e3"), normal_omega(), normal_K());
    EXPECT_EQ(w.reduced(x0), parse_form("-e12+e34", false));
    EXPECT_EQ(K.reduced(x0), parse_endo("E11+2*y*E12-E22+E33-E44"));
}

TEST(check_equivalence, identity_and_normalizing_automorphism) {
    const auto& L = cat().algebra("rr3_0").L;
    std::pair s{parse_form("e12+e34", false), parse_endo("-E11+E22-E33+E44")};
    EXPECT_TRUE(passes(check_equivalence(Mat4::identity(), L, s, s, {}, {})));
    // T = diag(1,1,-1,1) fixes the brackets and flips the sign of e34
    Mat4 T = parse_matrix("1,0,0,0; 0,1,0,0; 0,0,-1,0; 0,0,0,1");
    std::pair s2{parse_form("e12-e34", false), s.second};
    EXPECT_TRUE(passes(check_equivalence(T, L, s, s2, {}, {})));
    EXPECT_EQ(check_equivalence(Mat4::identity(), L, s, s2, {}, {}).status(), Status::Fail);
}

TEST(check_equivalence, non_automorphism_throws) {
    const auto& L = cat().algebra("rr3_0").L;
    std::pair s{parse_form("e12+e34", false), parse_endo("-E11+E22-E33+E44")};
    Mat4 swap = parse_map("f1=e2, f2=e1, f3=e3, f4=e4");
    EXPECT_THROW(check_equivalence(swap, L, s, s, {}, {}), NotAutomorphism);
}

TEST(check_lie_isomorphism, rr3_0_automorphism_family) {
    // the normalizing family is an automorphism for every a21, a34, a43 and a44 != 0
    const auto& L = cat().algebra("rr3_0").L;
    Mat4 T = parse_matrix("1, 0, 0, 0; a21, 1, 0, 0; 0, 0, (a34*a43-1)/a44, a34; 0, 0, a43, a44");
    EXPECT_TRUE(passes(check_lie_isomorphism({T, &L, &L, ParamDomain::parse("a44!=0")}, {})));
    EXPECT_EQ(T.transpose() * parse_form("e12-e34", false) * T, parse_form("e12+e34", false));
}
