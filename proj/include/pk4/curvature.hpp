#pragma once

#include "parakahler.hpp"

namespace pk4 {

// R[p] is the matrix of R(e_i,e_j) for the p-th pair i<j.
struct CurvatureTensor {
    std::array<Mat4, 6> R;
    Mat4 at(int i, int j) const {
        if (i == j) return Mat4{};
        const Mat4& m = R[static_cast<size_t>(pair_index(i, j))];
        return i < j ? m : -m;
    }
    bool is_zero() const {
        for (const auto& m : R)
            if (!m.is_zero()) return false;
        return true;
    }
};

// R(X,Y) = nabla_{[X,Y]} - [nabla_X, nabla_Y]
inline CurvatureTensor curvature(const LieAlgebra4& L, const Connection4& c) {
    CurvatureTensor t;
    for (size_t p = 0; p < 6; ++p) {
        auto [i, j] = kPairs[p];
        const Mat4& A = c.nabla[static_cast<size_t>(i)];
        const Mat4& B = c.nabla[static_cast<size_t>(j)];
        t.R[p] = c.along(L.br(i, j)) - (A * B - B * A);
    }
    return t;
}

// ric(e_a,e_b) = sum_c (R(e_a,e_c) e_b)_c
inline Mat4 ricci(const CurvatureTensor& R) {
    Mat4 r;
    r.role = Role::BilinearForm;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Scalar s;
            for (int c = 0; c < 4; ++c)
                if (c != a) s += R.at(a, c)(c, b);
            r(a, b) = s;
        }
    if (!is_symmetric(r)) throw NotSymmetric("Ricci tensor is not symmetric");
    return r;
}

inline Mat4 ricci_operator(const Mat4& h, const Mat4& ric) {
    if (h.det().is_zero()) throw Degenerate("metric is degenerate");
    Mat4 m = h.inverse() * ric;
    m.role = Role::Endomorphism;
    return m;
}

inline Scalar scalar_curvature(const Mat4& Ric) { return Ric.trace(); }

// (L_X h)(u,v) = -h([X,u],v) - h(u,[X,v])
inline Mat4 lie_derivative_metric(const LieAlgebra4& L, const Mat4& h, const Vec4& X) {
    Mat4 A = L.ad(X);
    Mat4 r = -(A.transpose() * h + h * A);
    r.role = Role::BilinearForm;
    return r;
}

inline Vec4 soliton_field() {
    return {Scalar::param("x1"), Scalar::param("x2"), Scalar::param("x3"), Scalar::param("x4")};
}

// Affine family: lambda and X expressed in the free unknowns (named x1..x4, lam).
struct SolitonSolutionSet {
    bool exists = false;
    Scalar lambda;
    Vec4 X;
    std::vector<int> free;  // variable ids of the free unknowns
    int free_count() const { return static_cast<int>(free.size()); }
};

inline std::vector<std::pair<std::string, Scalar>> soliton_residual(const LieAlgebra4& L, const Mat4& h, const Mat4& ric,
                                                                   const Scalar& lambda, const Vec4& X) {
    Mat4 res = lie_derivative_metric(L, h, X) + ric - lambda * h;
    std::vector<std::pair<std::string, Scalar>> out;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j)
            out.push_back({"res(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")", res(i, j)});
    return out;
}

// L_X h + ric = lam h: 10 equations linear in (lam, x1..x4).
inline SolitonSolutionSet solve_soliton(const LieAlgebra4& L, const Mat4& h, const Mat4& ric, const ParamDomain& dom) {
    std::array<Mat4, 4> Lk;
    for (int k = 0; k < 4; ++k) Lk[static_cast<size_t>(k)] = lie_derivative_metric(L, h, basis(k));
    // unknown order: lam, x1, x2, x3, x4 so that lam is pivoted first
    std::vector<std::vector<Scalar>> rows;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            std::vector<Scalar> row{-h(i, j)};
            for (int k = 0; k < 4; ++k) row.push_back(Lk[static_cast<size_t>(k)](i, j));
            row.push_back(-ric(i, j));
            rows.push_back(std::move(row));
        }
    Echelon e = rref(rows, 5, dom);
    SolitonSolutionSet s;
    for (size_t r = static_cast<size_t>(e.rank()); r < e.rows.size(); ++r) {
        Scalar b = dom.reduce(e.rows[r][5]);
        if (b.is_zero()) continue;
        if (dom.nonvanishing(b)) return s;
        throw RankAmbiguous(b);
    }
    const std::array<int, 5> ids{var_id("lam"), var_id("x1"), var_id("x2"), var_id("x3"), var_id("x4")};
    std::array<Scalar, 5> val;
    for (int c = 0; c < 5; ++c)
        if (std::find(e.pivot_cols.begin(), e.pivot_cols.end(), c) == e.pivot_cols.end()) {
            val[static_cast<size_t>(c)] = Scalar::param(ids[static_cast<size_t>(c)]);
            s.free.push_back(ids[static_cast<size_t>(c)]);
        }
    for (size_t k = 0; k < e.pivot_cols.size(); ++k) {
        int c = e.pivot_cols[k];
        Scalar v = e.rows[k][5];
        for (int f = 0; f < 5; ++f)
            if (f != c && !e.rows[k][static_cast<size_t>(f)].is_zero() &&
                std::find(e.pivot_cols.begin(), e.pivot_cols.end(), f) == e.pivot_cols.end())
                v -= e.rows[k][static_cast<size_t>(f)] * val[static_cast<size_t>(f)];
        val[static_cast<size_t>(c)] = dom.reduce(v);
    }
    s.exists = true;
    s.lambda = val[0];
    for (size_t k = 0; k < 4; ++k) s.X[k] = val[k + 1];
    return s;
}

// Soliton set split along the parameter loci where the elimination changes rank.
struct SolitonBranch {
    std::string condition;
    bool resolved = true;  // false when the locus could not be parametrized
    SolitonSolutionSet set;
};

struct SolitonCases {
    SolitonSolutionSet generic;
    std::vector<std::string> assumptions;  // nonvanishing conditions of the generic branch
    std::vector<SolitonBranch> special;
};

inline SolitonCases solve_soliton_cases(const LieAlgebra4& L, const Mat4& h, const Mat4& ric, const ParamDomain& dom,
                                        int depth = 0) {
    try {
        return {solve_soliton(L, h, ric, dom), {}, {}};
    } catch (const RankAmbiguous& e) {
        if (depth >= 6) throw;
        Poly p = monic(dom.reduce(e.pivot).num());
        // factors already known to be nonzero do not define a new locus
        for (bool progress = true; progress && !p.is_constant();) {
            progress = false;
            for (const auto& f : dom.nonzero_factors())
                if (!f.is_constant())
                    if (auto q = try_divide(p, f)) {
                        p = monic(*q);
                        progress = true;
                    }
        }
        // a pure power x^k vanishes exactly where x does
        if (p.size() == 1 && p.vars().size() == 1) p = Poly::var(*p.vars().begin());
        ParamDomain gen = dom;
        gen.add({Scalar(p), Rel::Ne});
        SolitonCases out = solve_soliton_cases(L, h, ric, gen, depth + 1);
        out.assumptions.insert(out.assumptions.begin(), p.str() + "!=0");
        ParamDomain zero = dom;
        try {
            zero.add({Scalar(p), Rel::Eq});
        } catch (const ParseError&) {
            out.special.push_back({p.str() + "=0", false, {}});
            return out;
        }
        if (zero.trivially_empty()) return out;
        SolitonCases z = solve_soliton_cases(L, h, ric, zero, depth + 1);
        std::string cond = p.str() + "=0";
        for (const auto& a : z.assumptions) cond += ", " + a;
        out.special.push_back({cond, true, z.generic});
        for (auto& b : z.special) out.special.push_back({p.str() + "=0, " + b.condition, b.resolved, b.set});
        return out;
    }
}

// Dimension of an affine family given by expressions in the named free unknowns.
inline int family_dimension(const Scalar& lambda, const Vec4& X, const ParamDomain& dom) {
    const std::array<int, 5> ids{var_id("lam"), var_id("x1"), var_id("x2"), var_id("x3"), var_id("x4")};
    std::vector<const Scalar*> comps{&lambda, &X[0], &X[1], &X[2], &X[3]};
    std::vector<std::vector<Scalar>> jac;
    for (const Scalar* s : comps) {
        std::vector<Scalar> row;
        for (int v : ids) {
            // affine: derivative is the coefficient of v in the numerator over the denominator
            if (s->den().has_var(v) || s->num().degree(v) > 1) throw ParseError("soliton family is not affine in " + var_name(v));
            auto cs = s->num().coeffs(v);
            row.push_back(cs.size() > 1 ? Scalar(cs[1], s->den()) : Scalar());
        }
        jac.push_back(std::move(row));
    }
    return rref(jac, 5, dom).rank();
}

enum class SolitonType { None, Shrinking, Steady, Expanding, Depends };

inline const char* soliton_type_str(SolitonType t) {
    switch (t) {
        case SolitonType::None: return "none";
        case SolitonType::Shrinking: return "shrinking";
        case SolitonType::Steady: return "steady";
        case SolitonType::Expanding: return "expanding";
        case SolitonType::Depends: return "sign depends on parameters";
    }
    return "?";
}

struct RowRecord {
    bool flat = false;
    bool ricci_flat = false;
    SolitonSolutionSet soliton;  // generic branch
    std::vector<std::string> soliton_assumptions;
    std::vector<SolitonBranch> soliton_special;
    SolitonType type = SolitonType::None;
    Connection4 nabla;
    CurvatureTensor R;
    Mat4 ric, Ric;
    Scalar s;
};

inline RowRecord classify_row(const LieAlgebra4& L0, const Mat4& h0, const ParamDomain& dom) {
    RowRecord r;
    LieAlgebra4 L = L0.reduced(dom);
    Mat4 h = h0.reduced(dom);
    r.nabla = levi_civita(L, h);
    r.R = curvature(L, r.nabla);
    for (auto& m : r.R.R) m = m.reduced(dom);
    r.ric = ricci(r.R).reduced(dom);
    r.Ric = ricci_operator(h, r.ric).reduced(dom);
    r.s = dom.reduce(scalar_curvature(r.Ric));
    r.flat = r.R.is_zero();
    r.ricci_flat = r.ric.is_zero();
    auto cases = solve_soliton_cases(L, h, r.ric, dom);
    r.soliton = std::move(cases.generic);
    r.soliton_assumptions = std::move(cases.assumptions);
    r.soliton_special = std::move(cases.special);
    if (r.soliton.exists) {
        const Scalar& l = r.soliton.lambda;
        if (l.is_zero())
            r.type = SolitonType::Steady;
        else if (l.is_constant())
            r.type = l.constant() > 0 ? SolitonType::Shrinking : SolitonType::Expanding;
        else
            r.type = SolitonType::Depends;
    }
    return r;
}

}  // namespace pk4
