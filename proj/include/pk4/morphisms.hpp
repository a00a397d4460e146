#pragma once

#include "parakahler.hpp"

namespace pk4 {

struct NotAutomorphism : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// P has columns f_i written in the basis of `to`. The identity checked is
// P[u,v]_from = [Pu,Pv]_to, i.e. `from` is the algebra read in the f-basis.
struct LinMap {
    Mat4 P;
    const LieAlgebra4* from = nullptr;
    const LieAlgebra4* to = nullptr;
    ParamDomain domain;
};

// "f1=e1, f2=-x/2*e1+e3, f3=e4, f4=e2"
inline Mat4 parse_map(std::string_view text) {
    std::array<Vec4, 4> cols;
    std::array<bool, 4> seen{};
    for (const auto& item : ParamDomain::split_top(text)) {
        auto eq = item.find('=');
        if (eq == std::string::npos || item.size() < 3 || item[0] != 'f' || item[1] < '1' || item[1] > '4')
            throw ParseError("bad map image '" + item + "'");
        size_t i = static_cast<size_t>(item[1] - '1');
        if (seen[i]) throw ParseError("image of f" + std::to_string(i + 1) + " given twice");
        seen[i] = true;
        cols[i] = parse_vec(item.substr(eq + 1));
    }
    for (size_t i = 0; i < 4; ++i)
        if (!seen[i]) throw ParseError("map misses f" + std::to_string(i + 1));
    return Mat4::from_columns(cols, Role::Generic);
}

inline std::string map_text(const Mat4& P) {
    std::string s;
    for (int i = 0; i < 4; ++i) s += (i ? ", f" : "f") + std::to_string(i + 1) + "=" + vec_text(P.col(i));
    return s;
}

inline std::vector<std::pair<std::string, Scalar>> isomorphism_residuals(const Mat4& P, const LieAlgebra4& from,
                                                                         const LieAlgebra4& to) {
    std::vector<std::pair<std::string, Scalar>> out;
    for (auto [i, j] : kPairs) {
        Vec4 d = P * from.br(i, j) - bracket(to, P.col(i), P.col(j));
        auto e = vec_entries(d, "[f" + std::to_string(i + 1) + ",f" + std::to_string(j + 1) + "]");
        out.insert(out.end(), e.begin(), e.end());
    }
    return out;
}

inline EntryReport check_lie_isomorphism(const LinMap& m, const SampleConfig& cfg) {
    EntryReport r;
    auto [inv, why] = nonvanishing_check(m.P.det(), m.domain, cfg);
    r.add("invertible", inv, inv ? std::string() : "det = " + m.domain.reduce(m.P.det()).str() + ": " + why);
    add_zero_check(r, "bracket identity", isomorphism_residuals(m.P, *m.from, *m.to), m.domain, cfg);
    return r;
}

// Structure of `to` read in the f-basis: (P^t w P, P^-1 K P).
inline std::pair<Mat4, Mat4> transport(const Mat4& P, const Mat4& w, const Mat4& K) {
    Mat4 w1 = P.transpose() * w * P;
    w1.role = Role::BilinearForm;
    Mat4 K1 = P.inverse() * K * P;
    K1.role = Role::Endomorphism;
    return {w1, K1};
}

// T pulls (w2,K2) back to (w1,K1): T^t w2 T = w1 and T^-1 K2 T = K1.
inline EntryReport check_equivalence(const Mat4& T, const LieAlgebra4& L, const std::pair<Mat4, Mat4>& s1,
                                     const std::pair<Mat4, Mat4>& s2, const ParamDomain& dom, const SampleConfig& cfg) {
    EntryReport r;
    LinMap m{T, &L, &L, dom};
    auto iso = check_lie_isomorphism(m, cfg);
    if (iso.status() != Status::Pass) {
        auto* f = iso.first_failure();
        throw NotAutomorphism(f->name + ": " + f->detail);
    }
    r.append(iso, "automorphism: ");
    auto [w, K] = transport(T, s2.first, s2.second);
    add_zero_check(r, "T^t w2 T = w1", entries(w - s1.first, "w"), dom, cfg);
    add_zero_check(r, "T^-1 K2 T = K1", entries(K - s1.second, "K"), dom, cfg);
    return r;
}

}  // namespace pk4
