#pragma once

#include "domain.hpp"

#include <array>

namespace pk4 {

using Vec4 = std::array<Scalar, 4>;

enum class Role { Generic, Endomorphism, BilinearForm };

struct Singular : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A pivot whose vanishing depends on the parameters.
struct RankAmbiguous : std::runtime_error {
    Scalar pivot;
    explicit RankAmbiguous(Scalar p)
        : std::runtime_error("rank depends on whether " + p.str() + " vanishes"), pivot(std::move(p)) {}
};

inline Vec4 basis(int i) {
    Vec4 v{};
    v[static_cast<size_t>(i)] = Scalar(1);
    return v;
}
inline Vec4 operator+(const Vec4& a, const Vec4& b) {
    Vec4 r;
    for (size_t i = 0; i < 4; ++i) r[i] = a[i] + b[i];
    return r;
}
inline Vec4 operator-(const Vec4& a, const Vec4& b) {
    Vec4 r;
    for (size_t i = 0; i < 4; ++i) r[i] = a[i] - b[i];
    return r;
}
inline Vec4 operator-(const Vec4& a) {
    Vec4 r;
    for (size_t i = 0; i < 4; ++i) r[i] = -a[i];
    return r;
}
inline Vec4 operator*(const Scalar& s, const Vec4& a) {
    Vec4 r;
    for (size_t i = 0; i < 4; ++i) r[i] = s * a[i];
    return r;
}
inline bool is_zero(const Vec4& v) {
    for (const auto& s : v)
        if (!s.is_zero()) return false;
    return true;
}
inline std::string vec_str(const Vec4& v) {
    std::string s = "(";
    for (size_t i = 0; i < 4; ++i) s += (i ? ", " : "") + v[i].str();
    return s + ")";
}
inline Vec4 reduce(const Vec4& v, const ParamDomain& d) {
    Vec4 r;
    for (size_t i = 0; i < 4; ++i) r[i] = d.reduce(v[i]);
    return r;
}

struct Mat4 {
    std::array<std::array<Scalar, 4>, 4> a{};
    Role role = Role::Generic;

    Scalar& operator()(int i, int j) { return a[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    const Scalar& operator()(int i, int j) const { return a[static_cast<size_t>(i)][static_cast<size_t>(j)]; }

    static Mat4 identity(Role r = Role::Endomorphism) {
        Mat4 m;
        m.role = r;
        for (int i = 0; i < 4; ++i) m(i, i) = Scalar(1);
        return m;
    }
    // 1 at row i, column j: sends e_j to e_i.
    static Mat4 unit(int i, int j) {
        Mat4 m;
        m.role = Role::Endomorphism;
        m(i, j) = Scalar(1);
        return m;
    }
    static Mat4 from_columns(const std::array<Vec4, 4>& cols, Role r = Role::Generic) {
        Mat4 m;
        m.role = r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
        return m;
    }

    Vec4 col(int j) const {
        Vec4 v;
        for (int i = 0; i < 4; ++i) v[static_cast<size_t>(i)] = (*this)(i, j);
        return v;
    }
    Vec4 operator*(const Vec4& v) const {
        Vec4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (!(*this)(i, j).is_zero() && !v[static_cast<size_t>(j)].is_zero())
                    r[static_cast<size_t>(i)] += (*this)(i, j) * v[static_cast<size_t>(j)];
        return r;
    }
    friend Mat4 operator*(const Mat4& x, const Mat4& y) {
        Mat4 r;
        r.role = x.role;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    if (!x(i, k).is_zero() && !y(k, j).is_zero()) r(i, j) += x(i, k) * y(k, j);
        return r;
    }
    friend Mat4 operator+(const Mat4& x, const Mat4& y) {
        Mat4 r;
        r.role = x.role;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r(i, j) = x(i, j) + y(i, j);
        return r;
    }
    friend Mat4 operator-(const Mat4& x, const Mat4& y) {
        Mat4 r;
        r.role = x.role;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r(i, j) = x(i, j) - y(i, j);
        return r;
    }
    friend Mat4 operator*(const Scalar& s, const Mat4& x) {
        Mat4 r;
        r.role = x.role;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r(i, j) = s * x(i, j);
        return r;
    }
    Mat4 operator-() const { return Scalar(-1) * *this; }
    friend bool operator==(const Mat4& x, const Mat4& y) { return x.a == y.a; }

    Mat4 transpose() const {
        Mat4 r;
        r.role = role;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r(i, j) = (*this)(j, i);
        return r;
    }
    Scalar trace() const { return (*this)(0, 0) + (*this)(1, 1) + (*this)(2, 2) + (*this)(3, 3); }
    bool is_zero() const {
        for (const auto& row : a)
            for (const auto& s : row)
                if (!s.is_zero()) return false;
        return true;
    }

    Scalar det() const {
        // Gaussian elimination over the field of rational functions.
        auto m = a;
        Scalar d(1);
        for (size_t c = 0; c < 4; ++c) {
            size_t p = pick_pivot(m, c);
            if (p == 4) return Scalar(0);
            if (p != c) {
                std::swap(m[p], m[c]);
                d = -d;
            }
            d *= m[c][c];
            for (size_t r = c + 1; r < 4; ++r) {
                if (m[r][c].is_zero()) continue;
                Scalar f = m[r][c] / m[c][c];
                for (size_t k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
            }
        }
        return d;
    }

    Mat4 inverse() const {
        auto m = a;
        Mat4 inv = identity(role);
        for (size_t c = 0; c < 4; ++c) {
            size_t p = pick_pivot(m, c);
            if (p == 4) throw Singular("matrix is singular");
            std::swap(m[p], m[c]);
            std::swap(inv.a[p], inv.a[c]);
            Scalar piv = m[c][c].inv();
            for (size_t k = 0; k < 4; ++k) {
                m[c][k] *= piv;
                inv.a[c][k] *= piv;
            }
            for (size_t r = 0; r < 4; ++r) {
                if (r == c || m[r][c].is_zero()) continue;
                Scalar f = m[r][c];
                for (size_t k = 0; k < 4; ++k) {
                    m[r][k] -= f * m[c][k];
                    inv.a[r][k] -= f * inv.a[c][k];
                }
            }
        }
        return inv;
    }

    Mat4 reduced(const ParamDomain& d) const {
        Mat4 r;
        r.role = role;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r(i, j) = d.reduce((*this)(i, j));
        return r;
    }
    Mat4 subs(const std::map<int, Scalar>& s) const {
        Mat4 r;
        r.role = role;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r(i, j) = (*this)(i, j).subs(s);
        return r;
    }

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i < 4; ++i) {
            s += (i ? "; " : "");
            for (int j = 0; j < 4; ++j) s += (j ? ", " : "") + (*this)(i, j).str();
        }
        return s + "]";
    }

private:
    static size_t pick_pivot(const std::array<std::array<Scalar, 4>, 4>& m, size_t c) {
        size_t best = 4;
        for (size_t r = c; r < 4; ++r) {
            if (m[r][c].is_zero()) continue;
            if (m[r][c].is_constant()) return r;
            if (best == 4) best = r;
        }
        return best;
    }
};

// Values on the triples (123), (124), (134), (234).
struct ThreeForm4 {
    std::array<Scalar, 4> c{};
    static constexpr std::array<std::array<int, 3>, 4> triples{{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
    bool is_zero() const {
        for (const auto& s : c)
            if (!s.is_zero()) return false;
        return true;
    }
};

// Pair index for i<j over {0..3}: (01)(02)(03)(12)(13)(23).
inline int pair_index(int i, int j) {
    static constexpr int idx[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return idx[i][j];
}
constexpr std::array<std::array<int, 2>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// Row-echelon elimination on a general matrix with an augmented column count.
// Pivots must be nonvanishing on the domain; otherwise RankAmbiguous.
struct Echelon {
    std::vector<std::vector<Scalar>> rows;  // reduced rows
    std::vector<int> pivot_cols;
    int rank() const { return static_cast<int>(pivot_cols.size()); }
};

inline Echelon rref(std::vector<std::vector<Scalar>> m, int ncols, const ParamDomain& dom) {
    Echelon e;
    size_t r0 = 0;
    const size_t nr = m.size();
    for (auto& row : m)
        for (auto& s : row) s = dom.reduce(s);
    for (int c = 0; c < ncols && r0 < nr; ++c) {
        size_t pick = nr;
        bool pick_const = false;
        std::optional<Scalar> ambiguous;
        for (size_t r = r0; r < nr; ++r) {
            const Scalar& s = m[r][static_cast<size_t>(c)];
            if (s.is_zero()) continue;
            if (s.is_constant()) {
                if (!pick_const) {
                    pick = r;
                    pick_const = true;
                }
                continue;
            }
            if (dom.nonvanishing(s)) {
                if (pick == nr) pick = r;
            } else if (!ambiguous) {
                ambiguous = s;
            }
        }
        if (pick == nr) {
            if (ambiguous) throw RankAmbiguous(*ambiguous);
            continue;
        }
        std::swap(m[pick], m[r0]);
        Scalar inv = m[r0][static_cast<size_t>(c)].inv();
        for (auto& s : m[r0]) s *= inv;
        for (size_t r = 0; r < nr; ++r) {
            if (r == r0 || m[r][static_cast<size_t>(c)].is_zero()) continue;
            Scalar f = m[r][static_cast<size_t>(c)];
            for (size_t k = 0; k < m[r].size(); ++k)
                if (!m[r0][k].is_zero()) m[r][k] = dom.reduce(m[r][k] - f * m[r0][k]);
        }
        e.pivot_cols.push_back(c);
        ++r0;
    }
    e.rows = std::move(m);
    return e;
}

// Kernel basis of a 4x4 matrix over the domain's generic point.
inline std::vector<Vec4> kernel(const Mat4& m, const ParamDomain& dom) {
    std::vector<std::vector<Scalar>> rows(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rows[static_cast<size_t>(i)].push_back(m(i, j));
    Echelon e = rref(rows, 4, dom);
    std::vector<Vec4> out;
    for (int f = 0; f < 4; ++f) {
        if (std::find(e.pivot_cols.begin(), e.pivot_cols.end(), f) != e.pivot_cols.end()) continue;
        Vec4 v{};
        v[static_cast<size_t>(f)] = Scalar(1);
        for (size_t k = 0; k < e.pivot_cols.size(); ++k)
            v[static_cast<size_t>(e.pivot_cols[k])] = -e.rows[k][static_cast<size_t>(f)];
        out.push_back(v);
    }
    return out;
}

using QMat4 = std::array<std::array<mpq_class, 4>, 4>;

inline QMat4 eval(const Mat4& m, const Assignment& a) {
    QMat4 q;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) q[static_cast<size_t>(i)][static_cast<size_t>(j)] = m(i, j).eval(a);
    return q;
}

// Characteristic polynomial coefficients c0..c4 of det(tI - A), Faddeev-LeVerrier.
inline std::array<mpq_class, 5> charpoly(const QMat4& A) {
    std::array<mpq_class, 5> c;
    c[4] = 1;
    QMat4 M{};
    for (int k = 1; k <= 4; ++k) {
        // M_k = A M_{k-1} + c_{n-k+1} I
        QMat4 AM{};
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 4; ++j) {
                mpq_class s = 0;
                for (size_t l = 0; l < 4; ++l) s += A[i][l] * M[l][j];
                AM[i][j] = s;
            }
        for (size_t i = 0; i < 4; ++i) AM[i][i] += c[static_cast<size_t>(5 - k)];
        M = AM;
        mpq_class tr = 0;
        for (size_t i = 0; i < 4; ++i)
            for (size_t l = 0; l < 4; ++l) tr += A[i][l] * M[l][i];
        c[static_cast<size_t>(4 - k)] = -tr / k;
    }
    return c;
}

// (positive, negative) eigenvalue counts of a real symmetric matrix.
// Roots are real, so Descartes' sign rule is exact.
inline std::pair<int, int> signature(const QMat4& S) {
    auto c = charpoly(S);
    auto changes = [](const std::array<mpq_class, 5>& p) {
        int n = 0, last = 0;
        for (const auto& x : p) {
            int s = sgn(x);
            if (s == 0) continue;
            if (last != 0 && s != last) ++n;
            last = s;
        }
        return n;
    };
    std::array<mpq_class, 5> neg = c;
    for (size_t k = 1; k < 5; k += 2) neg[k] = -neg[k];
    return {changes(c), changes(neg)};
}

inline int qrank(QMat4 m) {
    int rank = 0;
    for (size_t c = 0; c < 4 && rank < 4; ++c) {
        size_t p = static_cast<size_t>(rank);
        while (p < 4 && m[p][c] == 0) ++p;
        if (p == 4) continue;
        std::swap(m[p], m[static_cast<size_t>(rank)]);
        for (size_t r = static_cast<size_t>(rank) + 1; r < 4; ++r) {
            if (m[r][c] == 0) continue;
            mpq_class f = m[r][c] / m[static_cast<size_t>(rank)][c];
            for (size_t k = c; k < 4; ++k) m[r][k] -= f * m[static_cast<size_t>(rank)][k];
        }
        ++rank;
    }
    return rank;
}

// Full pivoting on entries nonvanishing on the domain. When only entries that
// may vanish remain, the generic rank is used and must agree with the exact
// rank at sampled domain points.
inline int rank_on(const Mat4& m0, const ParamDomain& dom, const SampleConfig& cfg = {}) {
    Mat4 m = m0.reduced(dom);
    const Mat4 start = m;
    std::array<bool, 4> row_used{}, col_used{};
    int rank = 0;
    std::optional<Scalar> generic;
    for (;;) {
        int pr = -1, pc = -1, rank_class = 0;  // 3 constant, 2 nonvanishing, 1 generic
        for (int r = 0; r < 4; ++r) {
            if (row_used[static_cast<size_t>(r)]) continue;
            for (int c = 0; c < 4; ++c) {
                if (col_used[static_cast<size_t>(c)]) continue;
                const Scalar& s = m(r, c);
                if (s.is_zero()) continue;
                int k = s.is_constant() ? 3 : dom.nonvanishing(s) ? 2 : 1;
                if (k > rank_class) {
                    pr = r;
                    pc = c;
                    rank_class = k;
                }
            }
        }
        if (pr < 0) break;
        if (rank_class == 1 && !generic) generic = m(pr, pc);
        row_used[static_cast<size_t>(pr)] = col_used[static_cast<size_t>(pc)] = true;
        ++rank;
        Scalar inv = m(pr, pc).inv();
        for (int r = 0; r < 4; ++r) {
            if (row_used[static_cast<size_t>(r)] || m(r, pc).is_zero()) continue;
            Scalar f = m(r, pc) * inv;
            for (int c = 0; c < 4; ++c)
                if (!m(pr, c).is_zero()) m(r, c) = dom.reduce(m(r, c) - f * m(pr, c));
        }
    }
    if (generic) {
        std::set<int> vs;
        for (const auto& row : start.a)
            for (const auto& x : row) {
                auto t = x.vars();
                vs.insert(t.begin(), t.end());
            }
        std::mt19937_64 rng(cfg.seed ^ 0x52414e4bULL);
        for (int k = 0; k < cfg.trials; ++k) {
            Assignment a = dom.sample(rng, vs, cfg);
            QMat4 q;
            try {
                q = eval(start, a);
            } catch (const DenominatorVanishes&) {
                continue;
            }
            if (qrank(q) != rank) throw RankAmbiguous(*generic);
        }
    }
    return rank;
}


}  // namespace pk4
