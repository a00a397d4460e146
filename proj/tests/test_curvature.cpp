#include <pk4/curvature.hpp>
#include <gtest/gtest.h>

#include <random>

using namespace pk4;

namespace {

const char* kD4Half = "[e1,e2]=e3, [e4,e3]=e3, [e4,e1]=1/2*e1, [e4,e2]=1/2*e2";

struct D4Half : ::testing::Test {
    LieAlgebra4 L = parse_brackets(kD4Half);
    Mat4 h1 = metric_from(parse_form("e12-e34", false), parse_endo("E11-E22-E33+x*E43+E44"));
    Mat4 h2 = metric_from(parse_form("e12-e34", false), parse_endo("E11-E22+E33-E44"));
    ParamDomain xnz = ParamDomain::parse("x!=0");
    RowRecord r1 = classify_row(L, h1, xnz);
};

Vec4 x4e4() { return {Scalar(), Scalar(), Scalar(), Scalar::param("x4")}; }

Mat4 ric_of(const LieAlgebra4& L, const Mat4& h) { return ricci(curvature(L, levi_civita(L, h))); }

}  // namespace

TEST_F(D4Half, curvature_displays) {
    EXPECT_TRUE(r1.R.at(0, 3).is_zero());
    EXPECT_EQ(r1.R.at(0, 1), parse_matrix("-x,0,0,0; 0,x,0,0; 0,0,x/2,0; 0,0,-x^2/2,-x/2"));
    EXPECT_EQ(r1.R.at(1, 0), -r1.R.at(0, 1));
    EXPECT_TRUE(r1.R.at(2, 2).is_zero());
}

TEST_F(D4Half, ricci_tensor_and_operator) {
    EXPECT_EQ(r1.ric, parse_matrix("0,3*x/2,0,0; 3*x/2,0,0,0; 0,0,3*x^2/2,3*x/2; 0,0,3*x/2,0"));
    EXPECT_EQ(r1.Ric, parse_scalar("3*x/2") * Mat4::identity());
    // trace of 3x/2 Id
    EXPECT_EQ(r1.s, Scalar(4) * parse_scalar("3*x/2"));
}

TEST_F(D4Half, lie_derivative) {
    Mat4 lx = lie_derivative_metric(L, h1, soliton_field());
    // (3,2) printed as x1*x; symmetry of L_X h forces -x*x1
    EXPECT_EQ(lx, parse_matrix("0,-x4,x2*x,3*x2/2; -x4,0,-x1*x,-x1/2; x2*x,-x1*x,-2*x4*x,x*x3-x4; 3*x2/2,-x1/2,x*x3-x4,2*x3"));
    EXPECT_TRUE(lie_derivative_metric(L, h1, Vec4{}).is_zero());
    ParamDomain x0 = ParamDomain::parse("x=0");
    EXPECT_EQ(lie_derivative_metric(L, h1.reduced(x0), soliton_field()),
              parse_matrix("0,-x4,0,3*x2/2; -x4,0,0,-x1/2; 0,0,0,-x4; 3*x2/2,-x1/2,-x4,2*x3"));
}

TEST_F(D4Half, einstein_for_nonzero_x) {
    ASSERT_TRUE(r1.soliton.exists);
    EXPECT_EQ(r1.soliton.lambda, parse_scalar("3*x/2"));
    EXPECT_TRUE(is_zero(r1.soliton.X));
    EXPECT_EQ(r1.soliton.free_count(), 0);
}

TEST_F(D4Half, flat_cases_give_x4_e4) {
    ParamDomain x0 = ParamDomain::parse("x=0");
    for (const auto& [h, dom] : {std::pair{h1, x0}, std::pair{h2, ParamDomain()}}) {
        RowRecord r = classify_row(L, h, dom);
        EXPECT_TRUE(r.flat);
        ASSERT_TRUE(r.soliton.exists);
        EXPECT_EQ(r.soliton.lambda, parse_scalar("-x4"));
        EXPECT_EQ(r.soliton.X, x4e4());
        EXPECT_EQ(r.soliton.free_count(), 1);
    }
}

TEST_F(D4Half, case_split_over_x) {
    RowRecord r = classify_row(L, h1, ParamDomain());
    EXPECT_EQ(r.soliton_assumptions, std::vector<std::string>{"x!=0"});
    EXPECT_EQ(r.soliton.lambda, parse_scalar("3*x/2"));
    ASSERT_EQ(r.soliton_special.size(), 1u);
    EXPECT_EQ(r.soliton_special[0].condition, "x=0");
    EXPECT_EQ(r.soliton_special[0].set.X, x4e4());
}

TEST(curvature, abelian_is_flat) {
    LieAlgebra4 L;
    Mat4 h = parse_form("e13+e24", true);
    RowRecord r = classify_row(L, h, {});
    EXPECT_TRUE(r.R.is_zero());
    EXPECT_TRUE(r.ric.is_zero());
    EXPECT_TRUE(r.Ric.is_zero());
    EXPECT_TRUE(r.s.is_zero());
    EXPECT_EQ(r.soliton.lambda, Scalar());
    EXPECT_EQ(r.soliton.free_count(), 4);
}

TEST(ricci, rh3_metrics_are_ricci_flat) {
    auto L = parse_brackets("[e1,e2]=e3");
    EXPECT_TRUE(ric_of(L, parse_form("e14-e23", true)).is_zero());
    EXPECT_TRUE(ric_of(L, parse_form("-e14+e23", true)).is_zero());
}

TEST(ricci_operator, degenerate_metric_throws) {
    EXPECT_THROW(ricci_operator(parse_form("e12", true), Mat4{}), Degenerate);
}

TEST(classify_row, rr3_m1_flat_row) {
    auto r = classify_row(parse_brackets("[e1,e2]=e2, [e1,e3]=-e3"), parse_form("e14+e23+x*e44", true), {});
    EXPECT_TRUE(r.flat);
    EXPECT_TRUE(r.ricci_flat);
    EXPECT_EQ(r.soliton.lambda, Scalar());
    EXPECT_EQ(r.soliton.X, (Vec4{Scalar::param("x1"), Scalar(), Scalar(), Scalar::param("x4")}));
    EXPECT_EQ(r.type, SolitonType::Steady);
}

TEST(classify_row, h4_ricci_flat_not_flat) {
    auto L = parse_brackets("[e1,e2]=e3, [e4,e3]=e3, [e4,e1]=1/2*e1, [e4,e2]=e1+1/2*e2");
    for (const char* m : {"e12-e34", "-e12+e34"}) {
        auto r = classify_row(L, parse_form(m, true), {});
        EXPECT_FALSE(r.flat) << m;
        EXPECT_TRUE(r.ricci_flat) << m;
        EXPECT_EQ(r.soliton.lambda, Scalar()) << m;
        EXPECT_TRUE(is_zero(r.soliton.X)) << m;
        EXPECT_EQ(r.soliton.free_count(), 0) << m;
    }
}

TEST(classify_row, r2r2_without_soliton) {
    auto r = classify_row(parse_brackets("[e1,e2]=e2, [e3,e4]=e4"), parse_form("e12+x*e22+e34+y*e44", true),
                          ParamDomain::parse("x!=0, y!=0, x!=y"));
    EXPECT_FALSE(r.flat);
    EXPECT_FALSE(r.ricci_flat);
    EXPECT_FALSE(r.soliton.exists);
    EXPECT_EQ(r.type, SolitonType::None);
}

// every member of a computed family solves the soliton equation
TEST(solve_soliton, family_members_satisfy_the_equation) {
    std::mt19937_64 rng(9);
    struct Case {
        const char* brackets;
        const char* metric;
    };
    for (const Case& c : {Case{kD4Half, "e12-e34"}, Case{"[e1,e2]=e3", "e14-e23"}, Case{"[e1,e2]=e2, [e1,e3]=-e3", "e14+e23+x*e44"},
                          Case{"[e1,e2]=e2", "e12+e34"}}) {
        auto L = parse_brackets(c.brackets);
        Mat4 h = parse_form(c.metric, true);
        Mat4 ric = ric_of(L, h);
        auto s = solve_soliton(L, h, ric, {});
        ASSERT_TRUE(s.exists) << c.brackets;
        for (int k = 0; k < 5; ++k) {
            std::map<int, Scalar> t;
            for (int v : s.free) t[v] = Scalar(static_cast<long>(rng() % 11) - 5);
            Vec4 X = s.X;
            for (auto& x : X) x = x.subs(t);
            for (const auto& [name, r] : soliton_residual(L, h, ric, s.lambda.subs(t), X)) EXPECT_TRUE(r.is_zero()) << name;
        }
    }
}
