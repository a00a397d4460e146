#include <pk4/text.hpp>
#include <gtest/gtest.h>

#include <random>

using namespace pk4;

namespace {

Assignment at(std::initializer_list<std::pair<const char*, mpq_class>> xs) {
    Assignment a;
    for (const auto& [n, q] : xs) {
        a[var_id(n)] = q;
        a[var_id(n)].canonicalize();
    }
    return a;
}

// random polynomial in x, y with small integer coefficients
Scalar random_poly(std::mt19937_64& rng) {
    Scalar s;
    Scalar x = Scalar::param("x"), y = Scalar::param("y");
    for (unsigned i = 0; i < 3; ++i)
        for (unsigned j = 0; i + j < 3; ++j) {
            long c = static_cast<long>(rng() % 7) - 3;
            if (c) s += Scalar(c) * x.pow(i) * y.pow(j);
        }
    return s;
}

Scalar random_scalar(std::mt19937_64& rng) {
    Scalar d;
    while (d.is_zero()) d = random_poly(rng);
    return random_poly(rng) / d;
}

Mat4 random_mat(std::mt19937_64& rng) {
    Mat4 m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            m(i, j) = rng() % 4 == 0 ? Scalar::param("x") + Scalar(static_cast<long>(rng() % 5) - 2)
                                     : Scalar(static_cast<long>(rng() % 5) - 2);
    return m;
}

}  // namespace

TEST(scalar_eval, substitutes) { EXPECT_EQ(parse_scalar("3*x/2").eval(at({{"x", 1}})), mpq_class(3, 2)); }

TEST(scalar_eval, pole_is_an_error) {
    EXPECT_THROW(parse_scalar("1/x").eval(at({{"x", 0}})), DenominatorVanishes);
}

TEST(scalar_eval, removable_singularity_reduced_at_construction) {
    Scalar s = parse_scalar("(x^2-1)/(x-1)");
    EXPECT_EQ(s, parse_scalar("x+1"));
    EXPECT_EQ(s.eval(at({{"x", 1}})), 2);
    // unreduced quotient at two nearby points brackets the limit
    auto raw = [](mpq_class x) -> mpq_class { return (x * x - 1) / (x - 1); };
    mpq_class lo = raw(mpq_class(999, 1000)), hi = raw(mpq_class(1001, 1000));
    EXPECT_LT(lo, 2);
    EXPECT_GT(hi, 2);
}

TEST(scalar, canonical_form_is_structural) {
    EXPECT_EQ(parse_scalar("x-x"), Scalar());
    EXPECT_EQ(parse_scalar("(2*x)/(4*x*y)"), parse_scalar("1/(2*y)"));
    EXPECT_EQ(parse_scalar("-1/(-x)"), parse_scalar("1/x"));
    EXPECT_TRUE(parse_scalar("(x-y)/(y-x)") == Scalar(-1));
}

TEST(scalar, text_round_trip) {
    for (const char* t : {"3/2*x", "x^2+4*y*z", "1/(2*alpha+2)", "-x/z", "(x*y-x*z)/(y^2-z^2)", "0", "-7/3"}) {
        Scalar s = parse_scalar(t);
        EXPECT_EQ(parse_scalar(s.str()), s) << t;
        EXPECT_EQ(parse_scalar(s.str()).str(), s.str()) << t;
    }
}

TEST(scalar, division_by_zero_scalar_throws) {
    EXPECT_THROW(Scalar::param("x") / parse_scalar("y-y"), DivisionByZero);
    EXPECT_NO_THROW(Scalar(1) / Scalar::param("x"));
}

TEST(scalar, parse_errors) {
    EXPECT_THROW(parse_scalar("x+"), ParseError);
    EXPECT_THROW(parse_scalar("(x"), ParseError);
    EXPECT_THROW(parse_scalar(""), ParseError);
}

TEST(scalar, field_axioms_on_random_elements) {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 20; ++k) {
        Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
        EXPECT_EQ(identity_test((a + b) + c - (a + (b + c)), {}).verdict, ZeroVerdict::ZeroExact);
        EXPECT_EQ(identity_test(a * (b + c) - (a * b + a * c), {}).verdict, ZeroVerdict::ZeroExact);
        if (!a.is_zero()) EXPECT_EQ(identity_test(a * a.inv() - Scalar(1), {}).verdict, ZeroVerdict::ZeroExact);
    }
}

TEST(scalar_eval, ring_homomorphism) {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 20; ++k) {
        Scalar a = random_poly(rng), b = random_poly(rng);
        Assignment p = at({{"x", mpq_class(static_cast<long>(rng() % 19) - 9, 7)}, {"y", mpq_class(static_cast<long>(rng() % 13) - 6, 5)}});
        EXPECT_EQ((a + b).eval(p), a.eval(p) + b.eval(p));
        EXPECT_EQ((a * b).eval(p), a.eval(p) * b.eval(p));
    }
}

TEST(poly_gcd, matches_constructed_common_factor) {
    Poly x = Poly::var(var_id("x")), y = Poly::var(var_id("y"));
    Poly g = x * y + Poly(1);
    Poly a = g * (x - y) * (x - y), b = g * (x + Poly(2) * y);
    EXPECT_EQ(monic(poly_gcd(a, b)), monic(g));
    EXPECT_EQ(monic(poly_gcd(x * x - y * y, x + y)), monic(x + y));
    EXPECT_TRUE(poly_gcd(x, y).is_constant());
}

TEST(identity_test, zero_exact) {
    EXPECT_EQ(identity_test(Scalar(), {}).verdict, ZeroVerdict::ZeroExact);
    EXPECT_EQ(identity_test(parse_scalar("x-x"), {}).verdict, ZeroVerdict::ZeroExact);
}

TEST(identity_test, positive_parameter_gives_positive_witness) {
    for (std::uint64_t seed : {1u, 2u, 99u}) {
        SampleConfig cfg;
        cfg.seed = seed;
        auto r = identity_test(Scalar::param("mu"), ParamDomain::parse("mu>0"), cfg);
        ASSERT_EQ(r.verdict, ZeroVerdict::NonZero);
        EXPECT_GT(r.witness.at(var_id("mu")), 0);
        EXPECT_EQ(r.value, r.witness.at(var_id("mu")));
    }
}

TEST(identity_test, unsatisfiable_domain) {
    SampleConfig cfg;
    cfg.attempts = 50;
    EXPECT_THROW(identity_test(Scalar::param("x"), ParamDomain::parse("x>1, x<0"), cfg), DomainUnsatisfiable);
}

TEST(domain, equality_eliminates_a_variable) {
    ParamDomain d = ParamDomain::parse("x=-z, z!=0");
    EXPECT_EQ(d.reduce(parse_scalar("x+z")), Scalar());
    EXPECT_TRUE(d.nonvanishing(parse_scalar("x")));
}

TEST(domain, sampling_respects_constraints_and_seed) {
    ParamDomain d = ParamDomain::parse("1/alpha<1/2, x!=0");
    std::mt19937_64 r1(5), r2(5);
    for (int k = 0; k < 20; ++k) {
        Assignment a = d.sample(r1, {}, {});
        EXPECT_TRUE(d.contains(a));
        EXPECT_EQ(a, d.sample(r2, {}, {}));
    }
}

TEST(domain, root_outside_domain_is_nonvanishing) {
    ParamDomain d = ParamDomain::parse("lambda>1/2");
    EXPECT_TRUE(d.nonvanishing(parse_scalar("lambda+1")));
    EXPECT_TRUE(d.nonvanishing(parse_scalar("2*lambda")));
    EXPECT_FALSE(d.nonvanishing(parse_scalar("lambda-1")));
}

TEST(mat4, ring_properties_on_random_matrices) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 6; ++k) {
        Mat4 A = random_mat(rng), B = random_mat(rng), C = random_mat(rng);
        EXPECT_TRUE(((A * B) * C - A * (B * C)).is_zero());
        EXPECT_EQ((A * B).det(), A.det() * B.det());
        if (!A.det().is_zero()) EXPECT_TRUE((A * A.inverse() - Mat4::identity()).is_zero());
    }
}

TEST(mat4, inverse_of_singular_throws) {
    Mat4 m = parse_matrix("1,x,0,0; 2,2*x,0,0; 0,0,1,0; 0,0,0,1");
    EXPECT_TRUE(m.det().is_zero());
    EXPECT_THROW(m.inverse(), Singular);
}

TEST(mat4, trace_transpose) {
    Mat4 m = parse_matrix("1,2,3,4; 5,6,7,8; 9,10,11,12; 13,14,15,x");
    EXPECT_EQ(m.trace(), parse_scalar("18+x"));
    EXPECT_EQ(m.transpose()(0, 3), Scalar(13));
    EXPECT_EQ(m.transpose().transpose(), m);
}

TEST(rank_on, parametric_rank) {
    Mat4 m = parse_matrix("x,0,0,0; 0,1,0,0; 0,0,0,0; 0,0,0,0");
    EXPECT_EQ(rank_on(m, ParamDomain::parse("x!=0")), 2);
    EXPECT_EQ(rank_on(m, ParamDomain::parse("x=0")), 1);
    // generic pivot accepted only when sampled ranks agree
    EXPECT_EQ(rank_on(m, ParamDomain()), 2);
    EXPECT_THROW(rank_on(m, ParamDomain::parse("x>=0, x<=0")), RankAmbiguous);
}

TEST(rank_on, no_single_nonvanishing_entry) {
    // x^2+y^2+1 never vanishes but neither x nor y is a safe pivot
    Mat4 m = parse_matrix("x,-y,0,0; y,x,0,0; 0,0,1,0; 0,0,0,0");
    EXPECT_EQ(rank_on(m, ParamDomain()), 3);
}
