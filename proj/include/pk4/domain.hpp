#pragma once

#include "scalar.hpp"

#include <random>
#include <sstream>

namespace pk4 {

enum class Rel { Ne, Gt, Lt, Ge, Le, Eq };

inline const char* rel_str(Rel r) {
    switch (r) {
        case Rel::Ne: return "!=";
        case Rel::Gt: return ">";
        case Rel::Lt: return "<";
        case Rel::Ge: return ">=";
        case Rel::Le: return "<=";
        case Rel::Eq: return "=";
    }
    return "?";
}

inline bool rel_holds(int sign, Rel r) {
    switch (r) {
        case Rel::Ne: return sign != 0;
        case Rel::Gt: return sign > 0;
        case Rel::Lt: return sign < 0;
        case Rel::Ge: return sign >= 0;
        case Rel::Le: return sign <= 0;
        case Rel::Eq: return sign == 0;
    }
    return false;
}

// expr rel 0
struct Constraint {
    Scalar expr;
    Rel rel;
};

struct DomainUnsatisfiable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SampleConfig {
    std::uint64_t seed = 1;
    int trials = 32;
    long height = 100;
    int attempts = 20000;
};

inline std::string assignment_str(const Assignment& a) {
    std::string s;
    for (const auto& [v, q] : a) {
        if (!s.empty()) s += ", ";
        s += var_name(v) + "=" + q.get_str();
    }
    return s;
}

// Conjunction of constraints. Equalities are eliminated by substituting a
// variable that occurs linearly; the substitution map is applied by reduce().
class ParamDomain {
public:
    ParamDomain() = default;

    static ParamDomain parse(std::string_view text) {
        ParamDomain d;
        d.add_text(text);
        return d;
    }

    void add_text(std::string_view text) {
        for (auto& item : split_top(text)) add(parse_constraint(item));
    }

    static Constraint parse_constraint(std::string_view s) {
        static const std::pair<const char*, Rel> ops[] = {{"!=", Rel::Ne}, {">=", Rel::Ge}, {"<=", Rel::Le},
                                                          {">", Rel::Gt},  {"<", Rel::Lt},  {"=", Rel::Eq}};
        for (const auto& [tok, r] : ops) {
            auto k = s.find(tok);
            if (k == std::string_view::npos) continue;
            Scalar lhs = parse_scalar(s.substr(0, k));
            Scalar rhs = parse_scalar(s.substr(k + std::string_view(tok).size()));
            return {lhs - rhs, r};
        }
        throw ParseError("constraint without relation: '" + std::string(s) + "'");
    }

    void add(Constraint c) {
        c.expr = reduce(c.expr);
        if (c.expr.is_constant()) {
            int sg = sgn(c.expr.constant());
            if (!rel_holds(sg, c.rel)) {
                empty_ = true;
                why_ = "constraint " + c.expr.str() + " " + rel_str(c.rel) + " 0 is false";
            }
            return;
        }
        if (c.rel != Rel::Eq) {
            if (c.rel == Rel::Ne) c.expr = Scalar(monic(c.expr.num()), c.expr.den());
            for (const auto& o : cons_)
                if (o.rel == c.rel && o.expr == c.expr) return;
            cons_.push_back(std::move(c));
            return;
        }
        eliminate(c.expr);
    }

    void merge(const ParamDomain& o) {
        for (const auto& [v, e] : o.subs_) add({Scalar::param(v) - e, Rel::Eq});
        for (const auto& c : o.cons_) add(c);
        if (o.empty_) {
            empty_ = true;
            why_ = o.why_;
        }
    }

    Scalar reduce(const Scalar& s) const {
        if (subs_.empty()) return s;
        std::map<int, Scalar> m(subs_.begin(), subs_.end());
        return s.subs(m);
    }

    bool trivially_empty() const { return empty_; }
    const std::string& why_empty() const { return why_; }
    const std::vector<Constraint>& constraints() const { return cons_; }
    const std::vector<std::pair<int, Scalar>>& substitutions() const { return subs_; }

    // Polynomials known not to vanish anywhere on the domain.
    std::vector<Poly> nonzero_factors() const {
        std::vector<Poly> out;
        for (const auto& c : cons_)
            if (c.rel == Rel::Ne || c.rel == Rel::Gt || c.rel == Rel::Lt) {
                out.push_back(c.expr.num());
                if (!c.expr.den().is_constant()) out.push_back(c.expr.den());
            }
        return out;
    }

    // True when s cannot vanish on the domain: its numerator is a constant
    // times a product of known nonzero factors.
    bool nonvanishing(const Scalar& s0) const {
        Scalar s = reduce(s0);
        if (s.is_zero()) return false;
        Poly n = s.num();
        auto fs = nonzero_factors();
        bool progress = true;
        while (!n.is_constant() && progress) {
            progress = false;
            for (const auto& f : fs) {
                if (f.is_constant()) continue;
                if (auto q = try_divide(n, f)) {
                    n = *q;
                    progress = true;
                }
            }
        }
        if (n.is_constant()) return true;
        // a linear factor in one variable whose root some constraint on that variable excludes
        if (auto vs = n.vars(); vs.size() == 1 && n.degree(*vs.begin()) == 1) {
            int v = *vs.begin();
            auto cs = n.coeffs(v);
            Assignment root{{v, mpq_class(-cs[0].constant() / cs[1].constant())}};
            for (const auto& c : cons_) {
                auto cv = c.expr.vars();
                if (cv.size() != 1 || *cv.begin() != v) continue;
                try {
                    if (!rel_holds(sgn(c.expr.eval(root)), c.rel)) return true;
                } catch (const DenominatorVanishes&) {
                    return true;
                }
            }
        }
        // single-variable factors forced nonzero by a strict sign constraint are handled above;
        // as a last resort accept a numerator that is a power of a factor.
        for (const auto& f : fs) {
            if (f.is_constant()) continue;
            Poly m = n;
            while (!m.is_constant())
                if (auto q = try_divide(m, f))
                    m = *q;
                else
                    break;
            if (m.is_constant()) return true;
        }
        return false;
    }

    bool contains(const Assignment& a) const {
        try {
            for (const auto& [v, e] : subs_) (void)e.eval(a);
            for (const auto& c : cons_)
                if (!rel_holds(sgn(c.expr.eval(a)), c.rel)) return false;
        } catch (const DenominatorVanishes&) {
            return false;
        }
        return true;
    }

    std::set<int> free_vars() const {
        std::set<int> s;
        for (const auto& c : cons_) {
            auto t = c.expr.vars();
            s.insert(t.begin(), t.end());
        }
        for (const auto& [v, e] : subs_) {
            auto t = e.vars();
            s.insert(t.begin(), t.end());
        }
        for (const auto& [v, e] : subs_) s.erase(v);
        return s;
    }

    // Sample a rational point for the free variables plus `extra` ones.
    template <class Rng>
    Assignment sample(Rng& rng, const std::set<int>& extra, const SampleConfig& cfg) const {
        if (empty_) throw DomainUnsatisfiable(why_);
        std::set<int> vs = free_vars();
        for (int v : extra)
            if (!is_substituted(v)) vs.insert(v);
        std::uniform_int_distribution<long> num(-cfg.height, cfg.height), den(1, cfg.height);
        for (int k = 0; k < cfg.attempts; ++k) {
            Assignment a;
            std::vector<mpq_class> drawn;
            for (int v : vs) {
                // one draw in four repeats an earlier value up to sign, so coincidences such as x=z get probed
                if (!drawn.empty() && rng() % 4 == 0) {
                    mpq_class q = drawn[rng() % drawn.size()];
                    a[v] = rng() % 2 ? q : mpq_class(-q);
                } else {
                    long p = num(rng);
                    long q = den(rng);
                    a[v] = mpq_class(p, q);
                }
                a[v].canonicalize();
                drawn.push_back(a[v]);
            }
            for (auto& [v, q] : a) q.canonicalize();
            if (contains(a)) {
                for (const auto& [v, e] : subs_) a[v] = e.eval(a);
                return a;
            }
        }
        throw DomainUnsatisfiable("no sample point found after " + std::to_string(cfg.attempts) + " attempts");
    }

    bool is_substituted(int v) const {
        for (const auto& [w, e] : subs_)
            if (w == v) return true;
        return false;
    }

    std::string str() const {
        std::string s;
        for (const auto& [v, e] : subs_) {
            if (!s.empty()) s += ", ";
            s += var_name(v) + "=" + e.str();
        }
        for (const auto& c : cons_) {
            if (!s.empty()) s += ", ";
            s += c.expr.str() + rel_str(c.rel) + "0";
        }
        return s;
    }

    static std::vector<std::string> split_top(std::string_view text) {
        std::vector<std::string> out;
        std::string cur;
        int depth = 0;
        for (char c : text) {
            if (c == '(' || c == '[' || c == '{') ++depth;
            if (c == ')' || c == ']' || c == '}') --depth;
            if (c == ',' && depth == 0) {
                push_trimmed(out, cur);
                cur.clear();
            } else
                cur += c;
        }
        push_trimmed(out, cur);
        return out;
    }

private:
    static void push_trimmed(std::vector<std::string>& out, const std::string& s) {
        size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
        if (a == std::string::npos) return;
        out.push_back(s.substr(a, b - a + 1));
    }

    void eliminate(const Scalar& e) {
        const Poly& n = e.num();
        // pick a variable of degree one; prefer constant coefficients, then later-registered names
        int best = -1;
        bool best_const = false;
        for (int v : n.vars()) {
            if (n.degree(v) != 1) continue;
            bool k = n.coeffs(v)[1].is_constant();
            if (best < 0 || (k && !best_const) || (k == best_const && v > best)) {
                best = v;
                best_const = k;
            }
        }
        if (best < 0) throw ParseError("equality " + e.str() + "=0 has no linearly occurring variable");
        auto cs = n.coeffs(best);
        Scalar val = Scalar(-cs[0]) / Scalar(cs[1]);
        std::map<int, Scalar> one{{best, val}};
        for (auto& [v, s] : subs_) s = s.subs(one);
        subs_.emplace_back(best, val);
        if (!cs[1].is_constant()) add({Scalar(cs[1]), Rel::Ne});
        if (!e.den().is_constant()) add({Scalar(e.den()), Rel::Ne});
        auto old = std::move(cons_);
        cons_.clear();
        for (auto& c : old) add(c);
    }

    std::vector<Constraint> cons_;
    std::vector<std::pair<int, Scalar>> subs_;
    bool empty_ = false;
    std::string why_;
};

enum class ZeroVerdict { ZeroExact, ZeroSampled, NonZero };

struct IdentityResult {
    ZeroVerdict verdict;
    Assignment witness;
    mpq_class value;
    int trials = 0;
    bool zero() const { return verdict != ZeroVerdict::NonZero; }
};

// Exact zero test after domain reduction; sampling only produces a witness.
inline IdentityResult identity_test(const Scalar& s0, const ParamDomain& dom, const SampleConfig& cfg = {}) {
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
    Scalar s = dom.reduce(s0);
    if (s.is_zero()) return {ZeroVerdict::ZeroExact, {}, 0, 0};
    std::mt19937_64 rng(cfg.seed);
    auto vs = s.vars();
    for (int k = 0; k < cfg.trials; ++k) {
        Assignment a = dom.sample(rng, vs, cfg);
        try {
            mpq_class v = s.eval(a);
            if (v != 0) return {ZeroVerdict::NonZero, a, v, k + 1};
        } catch (const DenominatorVanishes&) {
        }
    }
    return {ZeroVerdict::ZeroSampled, {}, 0, cfg.trials};
}

inline std::string verdict_str(ZeroVerdict v) {
    switch (v) {
        case ZeroVerdict::ZeroExact: return "ZeroExact";
        case ZeroVerdict::ZeroSampled: return "ZeroSampled";
        case ZeroVerdict::NonZero: return "NonZero";
    }
    return "?";
}

}  // namespace pk4
