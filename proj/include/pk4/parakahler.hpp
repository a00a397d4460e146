#pragma once

#include "liealg.hpp"
#include "report.hpp"

namespace pk4 {

struct NotSymmetric : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Degenerate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// nabla[i] is the matrix of u -> nabla_{e_i} u.
struct Connection4 {
    std::array<Mat4, 4> nabla;
    Mat4 along(const Vec4& v) const {
        Mat4 r;
        for (int k = 0; k < 4; ++k)
            if (!v[static_cast<size_t>(k)].is_zero()) r = r + v[static_cast<size_t>(k)] * nabla[static_cast<size_t>(k)];
        return r;
    }
    Vec4 apply(int i, const Vec4& u) const { return nabla[static_cast<size_t>(i)] * u; }
};

inline bool is_symmetric(const Mat4& m) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (m(i, j) != m(j, i)) return false;
    return true;
}
inline bool is_antisymmetric(const Mat4& m) {
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j)
            if (m(i, j) != -m(j, i)) return false;
    return true;
}

// h(u,v) = w(Ku, v), i.e. H = K^t W.
inline Mat4 metric_unchecked(const Mat4& w, const Mat4& K) {
    Mat4 h = K.transpose() * w;
    h.role = Role::BilinearForm;
    return h;
}

inline Mat4 metric_from(const Mat4& w, const Mat4& K, const ParamDomain& dom = {}) {
    Mat4 h = metric_unchecked(w, K).reduced(dom);
    if (!is_symmetric(h)) throw NotSymmetric("w(K.,.) is not symmetric: K is not w-skew");
    return h;
}

// Koszul: 2h(nabla_u v, w) = h([u,v],w) + h([w,u],v) + h([w,v],u).
inline Connection4 levi_civita(const LieAlgebra4& L, const Mat4& h) {
    if (h.det().is_zero()) throw Degenerate("metric is degenerate");
    Mat4 hinv = h.inverse();
    Connection4 c;
    const Scalar half = Scalar(mpq_class(1, 2));
    for (int i = 0; i < 4; ++i) {
        std::array<Vec4, 4> cols;
        for (int j = 0; j < 4; ++j) {
            Vec4 rhs;
            for (int k = 0; k < 4; ++k)
                rhs[static_cast<size_t>(k)] =
                    half * (form_eval(h, L.br(i, j), basis(k)) + form_eval(h, L.br(k, i), basis(j)) +
                            form_eval(h, L.br(k, j), basis(i)));
            cols[static_cast<size_t>(j)] = hinv * rhs;
        }
        c.nabla[static_cast<size_t>(i)] = Mat4::from_columns(cols, Role::Endomorphism);
    }
    return c;
}

// (nabla_{e_i} K) = [nabla_{e_i}, K] as matrices.
inline std::array<Mat4, 4> nabla_K(const Connection4& c, const Mat4& K) {
    std::array<Mat4, 4> out;
    for (size_t i = 0; i < 4; ++i) out[i] = c.nabla[i] * K - K * c.nabla[i];
    return out;
}

// nabla_{e_i}e_j - nabla_{e_j}e_i - [e_i,e_j]
inline std::vector<std::pair<std::string, Scalar>> torsion_components(const LieAlgebra4& L, const Connection4& c) {
    std::vector<std::pair<std::string, Scalar>> out;
    for (auto [i, j] : kPairs) {
        Vec4 t = c.nabla[static_cast<size_t>(i)].col(j) - c.nabla[static_cast<size_t>(j)].col(i) - L.br(i, j);
        for (int k = 0; k < 4; ++k)
            out.push_back({"T(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ")_" + std::to_string(k + 1),
                           t[static_cast<size_t>(k)]});
    }
    return out;
}

// b(nabla_{e_i}e_j, e_k) + b(e_j, nabla_{e_i}e_k) for a bilinear form b.
inline std::vector<std::pair<std::string, Scalar>> parallel_components(const Connection4& c, const Mat4& b) {
    std::vector<std::pair<std::string, Scalar>> out;
    for (size_t i = 0; i < 4; ++i) {
        Mat4 m = c.nabla[i].transpose() * b + b * c.nabla[i];
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) out.push_back({"(" + std::to_string(i + 1) + ";" + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")", m(j, k)});
    }
    return out;
}

template <class M>
std::vector<std::pair<std::string, Scalar>> entries(const M& m, const std::string& tag) {
    std::vector<std::pair<std::string, Scalar>> out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out.push_back({tag + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")", m(i, j)});
    return out;
}

inline std::vector<std::pair<std::string, Scalar>> vec_entries(const Vec4& v, const std::string& tag) {
    std::vector<std::pair<std::string, Scalar>> out;
    for (int k = 0; k < 4; ++k) out.push_back({tag + "_" + std::to_string(k + 1), v[static_cast<size_t>(k)]});
    return out;
}

inline void add_zero_check(EntryReport& r, const std::string& name,
                           const std::vector<std::pair<std::string, Scalar>>& items, const ParamDomain& dom,
                           const SampleConfig& cfg) {
    auto z = all_zero_on(items, dom, cfg);
    if (z.zero)
        r.add(name, true);
    else
        r.add(name, false, z.where + " = " + z.value, z.witness);
}

// Nonvanishing of s on the domain: exact when the numerator factors through
// known nonzero factors, otherwise checked at sample points.
inline std::pair<bool, std::string> nonvanishing_check(const Scalar& s, const ParamDomain& dom, const SampleConfig& cfg) {
    Scalar r = dom.reduce(s);
    if (r.is_zero()) return {false, "identically zero"};
    if (dom.nonvanishing(r)) return {true, {}};
    std::mt19937_64 rng(cfg.seed);
    for (int k = 0; k < cfg.trials; ++k) {
        Assignment a = dom.sample(rng, r.vars(), cfg);
        try {
            if (r.eval(a) == 0) return {false, "vanishes at " + assignment_str(a)};
        } catch (const DenominatorVanishes&) {
            return {false, "pole at " + assignment_str(a)};
        }
    }
    return {true, "sampled"};
}

// Neutral signature of h at sampled domain points.
inline std::pair<bool, std::string> neutral_signature(const Mat4& h, const ParamDomain& dom, const SampleConfig& cfg) {
    std::set<int> vs;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            auto t = h(i, j).vars();
            vs.insert(t.begin(), t.end());
        }
    std::mt19937_64 rng(cfg.seed ^ 0x5157ULL);
    for (int k = 0; k < cfg.trials; ++k) {
        Assignment a = dom.sample(rng, vs, cfg);
        QMat4 q;
        try {
            q = eval(h, a);
        } catch (const DenominatorVanishes&) {
            return {false, "pole at " + assignment_str(a)};
        }
        auto [p, n] = signature(q);
        if (p != 2 || n != 2)
            return {false, "signature (" + std::to_string(p) + "," + std::to_string(n) + ") at " + assignment_str(a)};
    }
    return {true, {}};
}

// Nine checks: Jacobi, dw=0, w nondegenerate, K^2=Id, eigenranks (2,2),
// N_K=0, h symmetric, h neutral, nabla K = 0.
inline EntryReport validate_para_kahler(const LieAlgebra4& L0, const Mat4& w0, const Mat4& K0, const ParamDomain& dom,
                                        const SampleConfig& cfg) {
    EntryReport r;
    if (dom.trivially_empty()) {
        r.add("domain", false, dom.why_empty());
        return r;
    }
    LieAlgebra4 L = L0.reduced(dom);
    Mat4 w = w0.reduced(dom), K = K0.reduced(dom);

    std::vector<std::pair<std::string, Scalar>> jac;
    auto jd = jacobi_defect(L);
    for (size_t t = 0; t < 4; ++t) {
        auto [i, j, k] = ThreeForm4::triples[t];
        auto e = vec_entries(jd[t], "J" + std::to_string(i + 1) + std::to_string(j + 1) + std::to_string(k + 1));
        jac.insert(jac.end(), e.begin(), e.end());
    }
    add_zero_check(r, "jacobi", jac, dom, cfg);

    if (!is_antisymmetric(w)) r.add("omega antisymmetric", false, form_text(w, true));
    auto dw = ce_d(L, w);
    std::vector<std::pair<std::string, Scalar>> dws;
    for (size_t t = 0; t < 4; ++t) dws.push_back({"dw" + std::to_string(t), dw.c[t]});
    add_zero_check(r, "closed", dws, dom, cfg);

    auto [nd, ndd] = nonvanishing_check(pfaffian(w), dom, cfg);
    r.add("nondegenerate", nd, ndd.empty() ? std::string() : "pf = " + pfaffian(w).str() + ": " + ndd);

    add_zero_check(r, "K^2=Id", entries(K * K - Mat4::identity(), "K^2-I"), dom, cfg);

    try {
        int p = 4 - rank_on(K - Mat4::identity(), dom, cfg), m = 4 - rank_on(K + Mat4::identity(), dom, cfg);
        r.add("eigenranks (2,2)", p == 2 && m == 2, "(" + std::to_string(p) + "," + std::to_string(m) + ")");
    } catch (const RankAmbiguous& e) {
        r.add("eigenranks (2,2)", false, e.what());
    }

    std::vector<std::pair<std::string, Scalar>> ns;
    auto n = nijenhuis(L, K);
    for (size_t q = 0; q < 6; ++q) {
        auto e = vec_entries(n[q], "N(e" + std::to_string(kPairs[q][0] + 1) + ",e" + std::to_string(kPairs[q][1] + 1) + ")");
        ns.insert(ns.end(), e.begin(), e.end());
    }
    add_zero_check(r, "nijenhuis", ns, dom, cfg);

    Mat4 h = metric_unchecked(w, K);
    std::vector<std::pair<std::string, Scalar>> asym;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            asym.push_back({"h" + std::to_string(i + 1) + std::to_string(j + 1) + "-h" + std::to_string(j + 1) + std::to_string(i + 1),
                            h(i, j) - h(j, i)});
    add_zero_check(r, "h symmetric", asym, dom, cfg);
    bool sym = r.checks.back().status == Status::Pass;

    if (sym && nd) {
        try {
            auto [ok, why] = neutral_signature(h, dom, cfg);
            r.add("neutral signature", ok, why);
        } catch (const DomainUnsatisfiable& e) {
            r.add("neutral signature", false, e.what());
        }
        Connection4 c = levi_civita(L, h);
        std::vector<std::pair<std::string, Scalar>> nk;
        auto d = nabla_K(c, K);
        for (size_t i = 0; i < 4; ++i) {
            auto e = entries(d[i], "(nabla_" + std::to_string(i + 1) + "K)");
            nk.insert(nk.end(), e.begin(), e.end());
        }
        add_zero_check(r, "nabla K = 0", nk, dom, cfg);
    } else {
        r.add("neutral signature", false, "skipped: metric unavailable");
        r.add("nabla K = 0", false, "skipped: metric unavailable");
    }
    return r;
}

}  // namespace pk4
