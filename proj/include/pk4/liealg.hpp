#pragma once

#include "text.hpp"

namespace pk4 {

// Structure constants on a fixed basis; only [e_i,e_j] with i<j is stored.
struct LieAlgebra4 {
    std::string name;
    std::array<Vec4, 6> c{};
    ParamDomain domain;

    Vec4 br(int i, int j) const {
        if (i == j) return Vec4{};
        return i < j ? c[static_cast<size_t>(pair_index(i, j))] : -c[static_cast<size_t>(pair_index(i, j))];
    }
    void set(int i, int j, const Vec4& v) {
        if (i == j) throw ParseError("bracket [e_i,e_i] cannot be set");
        c[static_cast<size_t>(pair_index(i, j))] = i < j ? v : -v;
    }
    // ad_u as a matrix: column j is [u, e_j].
    Mat4 ad(const Vec4& u) const;

    LieAlgebra4 reduced(const ParamDomain& d) const {
        LieAlgebra4 r = *this;
        for (auto& v : r.c) v = pk4::reduce(v, d);
        return r;
    }
    LieAlgebra4 partial(const Assignment& a) const {
        LieAlgebra4 r = *this;
        for (auto& v : r.c)
            for (auto& s : v) s = s.partial(a);
        return r;
    }
    LieAlgebra4 subs(const std::map<int, Scalar>& m) const {
        LieAlgebra4 r = *this;
        for (auto& v : r.c)
            for (auto& s : v) s = s.subs(m);
        return r;
    }
    bool is_abelian() const {
        for (const auto& v : c)
            if (!pk4::is_zero(v)) return false;
        return true;
    }
};

inline Vec4 bracket(const LieAlgebra4& L, const Vec4& u, const Vec4& v) {
    Vec4 r{};
    for (int i = 0; i < 4; ++i) {
        if (u[static_cast<size_t>(i)].is_zero()) continue;
        for (int j = 0; j < 4; ++j) {
            if (i == j || v[static_cast<size_t>(j)].is_zero()) continue;
            Vec4 b = L.br(i, j);
            if (pk4::is_zero(b)) continue;
            r = r + (u[static_cast<size_t>(i)] * v[static_cast<size_t>(j)]) * b;
        }
    }
    return r;
}

inline Mat4 LieAlgebra4::ad(const Vec4& u) const {
    std::array<Vec4, 4> cols;
    for (int j = 0; j < 4; ++j) cols[static_cast<size_t>(j)] = bracket(*this, u, basis(j));
    return Mat4::from_columns(cols, Role::Endomorphism);
}

// "[e1,e2]=e3, [e4,e1]=lambda*e1"; chains "[e1,e3]=[e2,e4]=-e4" set both.
inline LieAlgebra4 parse_brackets(std::string_view text, std::string name = {}) {
    LieAlgebra4 L;
    L.name = std::move(name);
    std::string t(text);
    if (t.find_first_not_of(" \t") == std::string::npos || t == "0") return L;
    auto idx = [](std::string s) {
        s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
        if (s.size() != 2 || s[0] != 'e' || s[1] < '1' || s[1] > '4') throw ParseError("bad basis name '" + s + "'");
        return s[1] - '1';
    };
    for (const auto& item : ParamDomain::split_top(text)) {
        auto eq = item.rfind('=');
        if (item.size() < 8 || item[0] != '[' || eq == std::string::npos) throw ParseError("bad bracket '" + item + "'");
        Vec4 v = parse_vec(item.substr(eq + 1));
        for (size_t pos = 0; pos < eq;) {
            auto close = item.find(']', pos);
            auto comma = item.find(',', pos);
            if (item[pos] != '[' || close == std::string::npos || comma > close) throw ParseError("bad bracket '" + item + "'");
            int i = idx(item.substr(pos + 1, comma - pos - 1)), j = idx(item.substr(comma + 1, close - comma - 1));
            if (!pk4::is_zero(L.br(i, j))) throw ParseError("bracket given twice: '" + item + "'");
            L.set(i, j, v);
            pos = item.find_first_not_of(" ", close + 1);
            if (pos == std::string::npos || item[pos] != '=') throw ParseError("bad bracket '" + item + "'");
            pos = item.find_first_not_of(" ", pos + 1);
        }
    }
    return L;
}

inline std::string brackets_text(const LieAlgebra4& L) {
    std::string s;
    for (int p = 0; p < 6; ++p) {
        const Vec4& v = L.c[static_cast<size_t>(p)];
        if (pk4::is_zero(v)) continue;
        if (!s.empty()) s += ", ";
        s += "[e" + std::to_string(kPairs[static_cast<size_t>(p)][0] + 1) + ",e" +
             std::to_string(kPairs[static_cast<size_t>(p)][1] + 1) + "]=" + vec_text(v);
    }
    return s.empty() ? "0" : s;
}

// Cyclic sum [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] per triple.
inline std::array<Vec4, 4> jacobi_defect(const LieAlgebra4& L) {
    std::array<Vec4, 4> out;
    for (size_t t = 0; t < 4; ++t) {
        auto [i, j, k] = ThreeForm4::triples[t];
        out[t] = bracket(L, L.br(i, j), basis(k)) + bracket(L, L.br(j, k), basis(i)) + bracket(L, L.br(k, i), basis(j));
    }
    return out;
}

inline Scalar form_eval(const Mat4& w, const Vec4& u, const Vec4& v) {
    Scalar s;
    for (int i = 0; i < 4; ++i) {
        if (u[static_cast<size_t>(i)].is_zero()) continue;
        for (int j = 0; j < 4; ++j)
            if (!w(i, j).is_zero() && !v[static_cast<size_t>(j)].is_zero())
                s += u[static_cast<size_t>(i)] * w(i, j) * v[static_cast<size_t>(j)];
    }
    return s;
}

// d w(X,Y,Z) = -w([X,Y],Z) + w([X,Z],Y) - w([Y,Z],X)
inline ThreeForm4 ce_d(const LieAlgebra4& L, const Mat4& w) {
    ThreeForm4 r;
    for (size_t t = 0; t < 4; ++t) {
        auto [i, j, k] = ThreeForm4::triples[t];
        r.c[t] = -form_eval(w, L.br(i, j), basis(k)) + form_eval(w, L.br(i, k), basis(j)) -
                 form_eval(w, L.br(j, k), basis(i));
    }
    return r;
}

inline Scalar pfaffian(const Mat4& w) { return w(0, 1) * w(2, 3) - w(0, 2) * w(1, 3) + w(0, 3) * w(1, 2); }

// N(X,Y) = [X,Y] + [KX,KY] - K[KX,Y] - K[X,KY] on pairs i<j.
inline std::array<Vec4, 6> nijenhuis(const LieAlgebra4& L, const Mat4& K) {
    std::array<Vec4, 6> out;
    for (size_t p = 0; p < 6; ++p) {
        auto [i, j] = kPairs[p];
        Vec4 X = basis(i), Y = basis(j), KX = K.col(i), KY = K.col(j);
        out[p] = bracket(L, X, Y) + bracket(L, KX, KY) - K * bracket(L, KX, Y) - K * bracket(L, X, KY);
    }
    return out;
}

struct ParacomplexReport {
    bool squares_to_id = false;
    int eigenrank_plus = 0;
    int eigenrank_minus = 0;
    bool nijenhuis_zero = false;
    bool ok() const { return squares_to_id && eigenrank_plus == 2 && eigenrank_minus == 2 && nijenhuis_zero; }
};

inline bool all_zero(const std::array<Vec4, 6>& a) {
    for (const auto& v : a)
        if (!is_zero(v)) return false;
    return true;
}

inline ParacomplexReport paracomplex_check(const LieAlgebra4& L, const Mat4& K, const ParamDomain& dom) {
    ParacomplexReport r;
    Mat4 I = Mat4::identity();
    r.squares_to_id = (K * K - I).reduced(dom).is_zero();
    r.eigenrank_plus = 4 - rank_on(K - I, dom);
    r.eigenrank_minus = 4 - rank_on(K + I, dom);
    auto n = nijenhuis(L, K);
    for (auto& v : n) v = reduce(v, dom);
    r.nijenhuis_zero = all_zero(n);
    return r;
}

// Eigendistribution ker(K - s Id) is closed under the bracket.
inline bool eigenspace_involutive(const LieAlgebra4& L, const Mat4& K, int s, const ParamDomain& dom) {
    Mat4 A = K - Scalar(s) * Mat4::identity();
    auto B = kernel(A, dom);
    for (size_t a = 0; a < B.size(); ++a)
        for (size_t b = a + 1; b < B.size(); ++b)
            if (!is_zero(reduce(A * bracket(L, B[a], B[b]), dom))) return false;
    return true;
}

}  // namespace pk4
