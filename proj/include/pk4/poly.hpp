#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pk4 {

// Global variable registry. Registration order fixes the lex monomial order.
class Registry {
public:
    static Registry& get() {
        static Registry r;
        return r;
    }

    int id(std::string_view name) {
        std::lock_guard lk(mu_);
        auto it = ids_.find(std::string(name));
        if (it != ids_.end()) return it->second;
        int k = static_cast<int>(names_.size());
        names_.emplace_back(name);
        ids_.emplace(std::string(name), k);
        return k;
    }

    std::optional<int> find(std::string_view name) const {
        std::lock_guard lk(mu_);
        auto it = ids_.find(std::string(name));
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }

    std::string name(int k) const {
        std::lock_guard lk(mu_);
        return names_.at(static_cast<size_t>(k));
    }

private:
    Registry() {
        for (const char* n : {"alpha", "beta", "lambda", "mu", "delta", "x", "y", "z", "w",
                              "x1", "x2", "x3", "x4", "lam", "t1", "t2", "t3", "t4", "t5"})
            reg(n);
        for (const char* p : {"a", "b", "d"})
            for (int i = 1; i <= 4; ++i)
                for (int j = 1; j <= 4; ++j) reg(std::string(p) + std::to_string(i) + std::to_string(j));
        // basis tags, only ever used transiently by the text parsers
        for (int i = 1; i <= 4; ++i) reg("e" + std::to_string(i));
        for (const char* p : {"e", "E"})
            for (int i = 1; i <= 4; ++i)
                for (int j = 1; j <= 4; ++j) reg(std::string(p) + std::to_string(i) + std::to_string(j));
    }
    void reg(const std::string& n) {
        ids_.emplace(n, static_cast<int>(names_.size()));
        names_.push_back(n);
    }

    mutable std::mutex mu_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> ids_;
};

inline int var_id(std::string_view name) { return Registry::get().id(name); }
inline std::string var_name(int k) { return Registry::get().name(k); }

// Exponent vector indexed by variable id, trailing zeros trimmed.
// std::vector's lexicographic operator< is then exactly lex order.
using Monomial = std::vector<unsigned>;

inline void trim(Monomial& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

inline bool mono_divides(const Monomial& d, const Monomial& m) {
    if (d.size() > m.size()) return false;
    for (size_t i = 0; i < d.size(); ++i)
        if (d[i] > m[i]) return false;
    return true;
}

inline Monomial mono_div(const Monomial& m, const Monomial& d) {
    Monomial r = m;
    for (size_t i = 0; i < d.size(); ++i) r[i] -= d[i];
    trim(r);
    return r;
}

inline unsigned mono_deg(const Monomial& m, int v) {
    return static_cast<size_t>(v) < m.size() ? m[static_cast<size_t>(v)] : 0;
}

using Assignment = std::map<int, mpq_class>;

struct MissingParam : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotDivisible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string rat_str(const mpq_class& q) { return q.get_str(); }

// Sparse multivariate polynomial over Q; terms kept in decreasing lex order.
class Poly {
public:
    using Terms = std::map<Monomial, mpq_class, std::greater<>>;

    Poly() = default;
    Poly(long c) { if (c != 0) t_.emplace(Monomial{}, mpq_class(c)); }
    Poly(const mpq_class& c) { if (c != 0) t_.emplace(Monomial{}, c); }

    static Poly var(int v, unsigned e = 1) {
        Poly p;
        Monomial m(static_cast<size_t>(v) + 1, 0);
        m[static_cast<size_t>(v)] = e;
        trim(m);
        p.t_.emplace(std::move(m), mpq_class(1));
        return p;
    }
    static Poly term(Monomial m, mpq_class c) {
        Poly p;
        trim(m);
        if (c != 0) p.t_.emplace(std::move(m), std::move(c));
        return p;
    }

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }
    mpq_class constant() const {
        if (t_.empty()) return 0;
        if (!is_constant()) throw std::logic_error("Poly::constant on non-constant");
        return t_.begin()->second;
    }
    const Monomial& lead_mono() const { return t_.begin()->first; }
    const mpq_class& lead_coeff() const { return t_.begin()->second; }
    size_t size() const { return t_.size(); }

    friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly operator-() const {
        Poly r = *this;
        for (auto& [m, c] : r.t_) c = -c;
        return r;
    }
    Poly& operator+=(const Poly& o) {
        for (const auto& [m, c] : o.t_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [m, c] : o.t_) add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) r.add_term(mono_mul(ma, mb), ca * cb);
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly scaled(const mpq_class& c) const {
        if (c == 0) return {};
        Poly r = *this;
        for (auto& [m, k] : r.t_) k *= c;
        return r;
    }
    Poly times_mono(const Monomial& m) const {
        Poly r;
        for (const auto& [mm, c] : t_) r.t_.emplace(mono_mul(mm, m), c);
        return r;
    }

    void add_term(const Monomial& m, const mpq_class& c) {
        if (c == 0) return;
        auto [it, fresh] = t_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) t_.erase(it);
        }
    }

    unsigned degree(int v) const {
        unsigned d = 0;
        for (const auto& [m, c] : t_) d = std::max(d, mono_deg(m, v));
        return d;
    }
    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [m, c] : t_) {
            unsigned s = 0;
            for (unsigned e : m) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    std::set<int> vars() const {
        std::set<int> s;
        for (const auto& [m, c] : t_)
            for (size_t i = 0; i < m.size(); ++i)
                if (m[i]) s.insert(static_cast<int>(i));
        return s;
    }
    bool has_var(int v) const { return degree(v) > 0; }

    // Coefficients of v^0..v^deg, each free of v.
    std::vector<Poly> coeffs(int v) const {
        std::vector<Poly> out(degree(v) + 1);
        for (const auto& [m, c] : t_) {
            unsigned e = mono_deg(m, v);
            Monomial r = m;
            if (e) {
                r[static_cast<size_t>(v)] = 0;
                trim(r);
            }
            out[e].t_.emplace(std::move(r), c);
        }
        return out;
    }
    static Poly from_coeffs(const std::vector<Poly>& cs, int v) {
        Poly r;
        for (size_t e = 0; e < cs.size(); ++e) {
            if (e == 0) {
                r += cs[0];
                continue;
            }
            Monomial m(static_cast<size_t>(v) + 1, 0);
            m[static_cast<size_t>(v)] = static_cast<unsigned>(e);
            r += cs[e].times_mono(m);
        }
        return r;
    }

    template <class F>
    mpq_class eval_with(F&& value_of) const {
        mpq_class s = 0;
        for (const auto& [m, c] : t_) {
            mpq_class p = c;
            for (size_t i = 0; i < m.size(); ++i)
                for (unsigned e = 0; e < m[i]; ++e) p *= value_of(static_cast<int>(i));
            s += p;
        }
        return s;
    }
    mpq_class eval(const Assignment& a) const {
        return eval_with([&](int v) -> const mpq_class& {
            auto it = a.find(v);
            if (it == a.end()) throw MissingParam("missing value for parameter " + var_name(v));
            return it->second;
        });
    }

    // Partial evaluation: substitute the assigned variables, keep the rest.
    Poly partial(const Assignment& a) const {
        Poly r;
        for (const auto& [m, c] : t_) {
            mpq_class k = c;
            Monomial rest = m;
            for (size_t i = 0; i < m.size(); ++i) {
                auto it = a.find(static_cast<int>(i));
                if (it == a.end() || m[i] == 0) continue;
                for (unsigned e = 0; e < m[i]; ++e) k *= it->second;
                rest[i] = 0;
            }
            trim(rest);
            r.add_term(rest, k);
        }
        return r;
    }

    std::string str() const;

private:
    Terms t_;
};

inline std::string mono_str(const Monomial& m) {
    std::string s;
    for (size_t i = 0; i < m.size(); ++i) {
        if (!m[i]) continue;
        if (!s.empty()) s += '*';
        s += var_name(static_cast<int>(i));
        if (m[i] > 1) s += '^' + std::to_string(m[i]);
    }
    return s;
}

inline std::string Poly::str() const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : t_) {
        std::string term;
        if (m.empty()) {
            term = rat_str(c);
        } else if (c == 1) {
            term = mono_str(m);
        } else if (c == -1) {
            term = "-" + mono_str(m);
        } else {
            term = rat_str(c) + "*" + mono_str(m);
        }
        if (!first && term[0] != '-') s += '+';
        s += term;
        first = false;
    }
    return s;
}

// Exact division; nullopt when b does not divide a.
inline std::optional<Poly> try_divide(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (b.is_constant()) return a.scaled(1 / b.constant());
    Poly r = a, q;
    const Monomial& lb = b.lead_mono();
    const mpq_class& cb = b.lead_coeff();
    while (!r.is_zero()) {
        const Monomial& lr = r.lead_mono();
        if (!mono_divides(lb, lr)) return std::nullopt;
        Monomial m = mono_div(lr, lb);
        mpq_class c = r.lead_coeff() / cb;
        q.add_term(m, c);
        r -= b.times_mono(m).scaled(c);
    }
    return q;
}

inline Poly divide_exact(const Poly& a, const Poly& b) {
    auto q = try_divide(a, b);
    if (!q) throw NotDivisible("inexact polynomial division");
    return *q;
}

inline Poly monic(const Poly& p) {
    if (p.is_zero()) return p;
    return p.scaled(1 / p.lead_coeff());
}

inline Poly poly_gcd(const Poly& a, const Poly& b);

namespace detail {

inline int main_var(const Poly& a, const Poly& b) {
    int v = -1;
    for (const Poly* p : {&a, &b})
        for (const auto& [m, c] : p->terms())
            for (size_t i = 0; i < m.size(); ++i)
                if (m[i] && (v < 0 || static_cast<int>(i) < v)) v = static_cast<int>(i);
    return v;
}

inline Poly content(const std::vector<Poly>& cs) {
    Poly g;
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? monic(c) : poly_gcd(g, c);
        if (g.is_constant()) return Poly(1);
    }
    return g;
}

inline void trim_coeffs(std::vector<Poly>& cs) {
    while (!cs.empty() && cs.back().is_zero()) cs.pop_back();
}

// Divides out the polynomial content, then scales to integer coefficients
// with gcd 1; without the second step the PRS coefficients grow exponentially.
inline std::vector<Poly> primitive(std::vector<Poly> cs) {
    Poly c = content(cs);
    if (!c.is_constant())
        for (auto& x : cs) x = divide_exact(x, c);
    mpz_class num = 0, den = 1;
    for (const auto& x : cs)
        for (const auto& [m, q] : x.terms()) {
            mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), q.get_num_mpz_t());
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
        }
    if (num != 0) {
        mpq_class f(den, num);
        f.canonicalize();
        for (auto& x : cs) x = x.scaled(f);
    }
    return cs;
}

// Pseudo-remainder of a by b as polynomials in one variable.
inline std::vector<Poly> prem(std::vector<Poly> a, const std::vector<Poly>& b) {
    trim_coeffs(a);
    const size_t nb = b.size();
    const Poly& lb = b.back();
    while (a.size() >= nb && !a.empty()) {
        Poly la = a.back();
        size_t shift = a.size() - nb;
        for (auto& c : a) c = c * lb;
        for (size_t i = 0; i < nb; ++i) a[i + shift] -= la * b[i];
        trim_coeffs(a);
    }
    return a;
}

inline Poly mono_gcd_with(const Monomial& m, const Poly& p) {
    Monomial g = m;
    for (const auto& [mm, c] : p.terms()) {
        g.resize(std::min(g.size(), mm.size()));
        for (size_t i = 0; i < g.size(); ++i) g[i] = std::min(g[i], mm[i]);
    }
    trim(g);
    return Poly::term(g, 1);
}

}  // namespace detail

// Monic gcd; gcd(0,0) = 0.
inline Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    if (a.is_constant() || b.is_constant()) return Poly(1);
    if (a == b) return monic(a);
    if (a.size() == 1) return detail::mono_gcd_with(a.lead_mono(), b);
    if (b.size() == 1) return detail::mono_gcd_with(b.lead_mono(), a);
    if (auto q = try_divide(a, b)) return monic(b);
    if (auto q = try_divide(b, a)) return monic(a);

    int v = detail::main_var(a, b);
    if (!a.has_var(v)) return poly_gcd(a, detail::content(b.coeffs(v)));
    if (!b.has_var(v)) return poly_gcd(b, detail::content(a.coeffs(v)));

    auto ca = a.coeffs(v), cb = b.coeffs(v);
    Poly g = poly_gcd(detail::content(ca), detail::content(cb));
    auto pa = detail::primitive(std::move(ca));
    auto pb = detail::primitive(std::move(cb));
    if (pa.size() < pb.size()) std::swap(pa, pb);
    while (true) {
        auto r = detail::prem(pa, pb);
        if (r.empty()) break;
        if (r.size() == 1) return monic(g);
        pa = std::move(pb);
        pb = detail::primitive(std::move(r));
    }
    return monic(g * Poly::from_coeffs(pb, v));
}

}  // namespace pk4
