#pragma once

#include "parakahler.hpp"

namespace pk4 {

// Products on a 2-dimensional space with basis {b0,b1}; prod[a][b] holds
// the coordinates of b_a.b_b. `offset` is 0 for U (e1,e2) and 2 for U* (e3,e4).
struct LSA2 {
    std::string name;
    int offset = 0;
    std::array<std::array<std::array<Scalar, 2>, 2>, 2> prod{};

    std::array<Scalar, 2> mul(const std::array<Scalar, 2>& u, const std::array<Scalar, 2>& v) const {
        std::array<Scalar, 2> r{};
        for (size_t a = 0; a < 2; ++a)
            for (size_t b = 0; b < 2; ++b) {
                if (u[a].is_zero() || v[b].is_zero()) continue;
                for (size_t k = 0; k < 2; ++k) r[k] += u[a] * v[b] * prod[a][b][k];
            }
        return r;
    }
    LSA2 subs(const std::map<int, Scalar>& m) const {
        LSA2 r = *this;
        for (auto& x : r.prod)
            for (auto& y : x)
                for (auto& s : y) s = s.subs(m);
        return r;
    }
    LSA2 reduced(const ParamDomain& d) const {
        LSA2 r = *this;
        for (auto& x : r.prod)
            for (auto& y : x)
                for (auto& s : y) s = d.reduce(s);
        return r;
    }
};

// "e2.e1=e1, e2.e2=alpha*e2" with basis e1,e2 (offset 0) or e3,e4 (offset 2).
inline LSA2 parse_lsa(std::string_view text, int offset, std::string name = {}) {
    LSA2 A;
    A.name = std::move(name);
    A.offset = offset;
    std::string t(text);
    if (t.find_first_not_of(" \t") == std::string::npos || t == "0") return A;
    for (const auto& item : ParamDomain::split_top(text)) {
        auto eq = item.find('=');
        auto dot = item.find('.');
        if (eq == std::string::npos || dot == std::string::npos || dot > eq) throw ParseError("bad product '" + item + "'");
        auto idx = [&](std::string s) {
            s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
            if (s.size() != 2 || s[0] != 'e') throw ParseError("bad basis name '" + s + "'");
            int k = s[1] - '1' - offset;
            if (k < 0 || k > 1) throw ParseError("basis element '" + s + "' outside this space");
            return static_cast<size_t>(k);
        };
        size_t a = idx(item.substr(0, dot)), b = idx(item.substr(dot + 1, eq - dot - 1));
        Vec4 v = parse_vec(item.substr(eq + 1));
        for (int k = 0; k < 4; ++k)
            if (!v[static_cast<size_t>(k)].is_zero() && (k < offset || k > offset + 1))
                throw ParseError("product leaves the space: '" + item + "'");
        A.prod[a][b] = {v[static_cast<size_t>(offset)], v[static_cast<size_t>(offset + 1)]};
    }
    return A;
}

inline std::string lsa_text(const LSA2& A) {
    std::string s;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Vec4 v{};
            v[static_cast<size_t>(A.offset)] = A.prod[static_cast<size_t>(a)][static_cast<size_t>(b)][0];
            v[static_cast<size_t>(A.offset + 1)] = A.prod[static_cast<size_t>(a)][static_cast<size_t>(b)][1];
            if (is_zero(v)) continue;
            if (!s.empty()) s += ", ";
            s += "e" + std::to_string(a + 1 + A.offset) + ".e" + std::to_string(b + 1 + A.offset) + "=" + vec_text(v);
        }
    return s.empty() ? "0" : s;
}

// ass(u,v,w) - ass(v,u,w) on basis triples, ass(u,v,w) = (u.v).w - u.(v.w).
inline std::vector<std::pair<std::string, Scalar>> left_symmetry_defect(const LSA2& A) {
    std::vector<std::pair<std::string, Scalar>> out;
    auto e = [](size_t i) {
        std::array<Scalar, 2> v{};
        v[i] = Scalar(1);
        return v;
    };
    auto ass = [&](size_t u, size_t v, size_t w) {
        auto l = A.mul(A.mul(e(u), e(v)), e(w));
        auto r = A.mul(e(u), A.mul(e(v), e(w)));
        return std::array<Scalar, 2>{l[0] - r[0], l[1] - r[1]};
    };
    for (size_t u = 0; u < 2; ++u)
        for (size_t v = u + 1; v < 2; ++v)
            for (size_t w = 0; w < 2; ++w) {
                auto x = ass(u, v, w), y = ass(v, u, w);
                for (size_t k = 0; k < 2; ++k)
                    out.push_back({"ass(" + std::to_string(u + 1) + "," + std::to_string(v + 1) + "," + std::to_string(w + 1) +
                                       ")_" + std::to_string(k + 1),
                                   x[k] - y[k]});
            }
    return out;
}

struct LSAPair {
    LSA2 on_U;      // offset 0
    LSA2 on_Ustar;  // offset 2
};

// Products on U + U*: X.Y and a.b from the two LSAs,
// (X.b) on e_{k+2} is -b(X.e_k), (a.Y) on e_k is -(a.e_{k+2})(Y).
inline std::array<std::array<Vec4, 4>, 4> phase_table(const LSAPair& p) {
    std::array<std::array<Vec4, 4>, 4> T{};
    const auto& U = p.on_U.prod;
    const auto& S = p.on_Ustar.prod;
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) {
            Vec4 v{};
            if (i < 2 && j < 2) {
                v[0] = U[i][j][0];
                v[1] = U[i][j][1];
            } else if (i >= 2 && j >= 2) {
                v[2] = S[i - 2][j - 2][0];
                v[3] = S[i - 2][j - 2][1];
            } else if (i < 2) {
                for (size_t k = 0; k < 2; ++k) v[k + 2] = -U[i][k][j - 2];
            } else {
                for (size_t k = 0; k < 2; ++k) v[k] = -S[i - 2][k][j];
            }
            T[i][j] = v;
        }
    return T;
}

inline Vec4 phase_product(const LSAPair& p, const Vec4& u, const Vec4& v) {
    auto T = phase_table(p);
    Vec4 r{};
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j)
            if (!u[i].is_zero() && !v[j].is_zero()) r = r + (u[i] * v[j]) * T[i][j];
    return r;
}

inline LieAlgebra4 phase_algebra(const LSAPair& p, std::string name = {}) {
    auto T = phase_table(p);
    LieAlgebra4 L;
    L.name = std::move(name);
    for (auto [i, j] : kPairs)
        L.set(i, j, T[static_cast<size_t>(i)][static_cast<size_t>(j)] - T[static_cast<size_t>(j)][static_cast<size_t>(i)]);
    return L;
}

struct Extendibility {
    bool extendible = true;
    std::vector<std::pair<std::string, Scalar>> residuals;  // nonzero Jacobi components
};

inline std::vector<std::pair<std::string, Scalar>> jacobi_components(const LieAlgebra4& L) {
    std::vector<std::pair<std::string, Scalar>> out;
    auto jd = jacobi_defect(L);
    for (size_t t = 0; t < 4; ++t) {
        auto [i, j, k] = ThreeForm4::triples[t];
        auto e = vec_entries(jd[t], "J" + std::to_string(i + 1) + std::to_string(j + 1) + std::to_string(k + 1));
        out.insert(out.end(), e.begin(), e.end());
    }
    return out;
}

inline Extendibility is_lie_extendible(const LSAPair& p, const ParamDomain& dom = {}) {
    Extendibility r;
    for (auto& [k, s] : jacobi_components(phase_algebra(p))) {
        Scalar v = dom.reduce(s);
        if (!v.is_zero()) {
            r.extendible = false;
            r.residuals.push_back({k, v});
        }
    }
    return r;
}

// Generic U* product e_i.e_j = a_ij e3 + b_ij e4 (i,j in {3,4}).
inline LSA2 generic_ustar() {
    LSA2 S;
    S.offset = 2;
    for (size_t a = 0; a < 2; ++a)
        for (size_t b = 0; b < 2; ++b) {
            std::string ij = std::to_string(a + 3) + std::to_string(b + 3);
            S.prod[a][b] = {Scalar::param("a" + ij), Scalar::param("b" + ij)};
        }
    return S;
}

// Jacobi components of the assembled bracket, as polynomials in a_ij, b_ij.
inline std::vector<std::pair<std::string, Poly>> extendibility_constraints(const LSA2& on_U) {
    std::vector<std::pair<std::string, Poly>> out;
    for (auto& [k, s] : jacobi_components(phase_algebra({on_U, generic_ustar()}))) {
        if (s.is_zero()) continue;
        out.push_back({k, s.num().scaled(1 / s.den().constant())});
    }
    return out;
}

// Rank of the Q-span of a family of polynomials.
inline int span_rank(const std::vector<Poly>& ps) {
    std::vector<Monomial> monos;
    for (const auto& p : ps)
        for (const auto& [m, c] : p.terms())
            if (std::find(monos.begin(), monos.end(), m) == monos.end()) monos.push_back(m);
    std::vector<std::vector<mpq_class>> M;
    for (const auto& p : ps) {
        std::vector<mpq_class> row(monos.size());
        for (const auto& [m, c] : p.terms())
            row[static_cast<size_t>(std::find(monos.begin(), monos.end(), m) - monos.begin())] = c;
        M.push_back(std::move(row));
    }
    int rank = 0;
    for (size_t c = 0; c < monos.size() && static_cast<size_t>(rank) < M.size(); ++c) {
        size_t p = static_cast<size_t>(rank);
        while (p < M.size() && M[p][c] == 0) ++p;
        if (p == M.size()) continue;
        std::swap(M[p], M[static_cast<size_t>(rank)]);
        for (size_t r = 0; r < M.size(); ++r) {
            if (r == static_cast<size_t>(rank) || M[r][c] == 0) continue;
            mpq_class f = M[r][c] / M[static_cast<size_t>(rank)][c];
            for (size_t k = c; k < monos.size(); ++k) M[r][k] -= f * M[static_cast<size_t>(rank)][k];
        }
        ++rank;
    }
    return rank;
}

inline bool same_span(const std::vector<Poly>& a, const std::vector<Poly>& b) {
    std::vector<Poly> both = a;
    both.insert(both.end(), b.begin(), b.end());
    int r = span_rank(both);
    return span_rank(a) == r && span_rank(b) == r;
}

// Normal form of the phase-space structure: w = e13+e24, K = E11+E22-E33-E44.
inline Mat4 normal_omega() { return parse_form("e13+e24", false); }
inline Mat4 normal_K() { return parse_endo("E11+E22-E33-E44"); }

// span{e1,e2} and span{e3,e4}: subalgebras, eigenspaces of K, w-Lagrangian.
inline EntryReport lagrangian_splitting(const LieAlgebra4& L, const Mat4& w, const Mat4& K, const ParamDomain& dom,
                                        const SampleConfig& cfg) {
    EntryReport r;
    std::vector<std::pair<std::string, Scalar>> items;
    Vec4 b12 = reduce(L.br(0, 1), dom), b34 = reduce(L.br(2, 3), dom);
    items.push_back({"[e1,e2]_3", b12[2]});
    items.push_back({"[e1,e2]_4", b12[3]});
    items.push_back({"[e3,e4]_1", b34[0]});
    items.push_back({"[e3,e4]_2", b34[1]});
    add_zero_check(r, "eigenplanes are subalgebras", items, dom, cfg);
    std::vector<std::pair<std::string, Scalar>> eig;
    for (int i = 0; i < 4; ++i) {
        Vec4 d = K * basis(i) - Scalar(i < 2 ? 1 : -1) * basis(i);
        auto e = vec_entries(d, "Ke" + std::to_string(i + 1));
        eig.insert(eig.end(), e.begin(), e.end());
    }
    add_zero_check(r, "eigenplanes of K", eig, dom, cfg);
    add_zero_check(r, "eigenplanes Lagrangian", {{"w(e1,e2)", w(0, 1)}, {"w(e3,e4)", w(2, 3)}}, dom, cfg);
    return r;
}

}  // namespace pk4
