#pragma once

#include "poly.hpp"

#include <cctype>
#include <ostream>

namespace pk4 {

struct DenominatorVanishes : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rational function num/den. Canonical: gcd(num,den)=1, den monic under lex,
// zero is 0/1. Equal values are structurally equal.
class Scalar {
public:
    Scalar() : den_(1) {}
    Scalar(long c) : num_(c), den_(1) {}
    Scalar(const mpq_class& c) : num_(c), den_(1) {}
    Scalar(Poly p) : num_(std::move(p)), den_(1) {}
    Scalar(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) { canon(); }

    static Scalar param(std::string_view name) { return Scalar(Poly::var(var_id(name))); }
    static Scalar param(int id) { return Scalar(Poly::var(id)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    mpq_class constant() const { return num_.constant() / den_.constant(); }
    std::set<int> vars() const {
        auto s = num_.vars();
        auto t = den_.vars();
        s.insert(t.begin(), t.end());
        return s;
    }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar operator-() const {
        Scalar r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return Scalar(a.num_ + b.num_, a.den_);
        if (b.den_.is_constant()) return Scalar(a.num_ + a.den_ * b.num_, a.den_);
        if (a.den_.is_constant()) return Scalar(a.num_ * b.den_ + b.num_, b.den_);
        return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.den_.is_constant() && b.den_.is_constant()) return Scalar(a.num_ * b.num_);
        // cross-cancel; inputs are reduced so the product is reduced
        Poly g1 = poly_gcd(a.num_, b.den_), g2 = poly_gcd(b.num_, a.den_);
        Scalar r;
        r.num_ = divide_exact(a.num_, g1) * divide_exact(b.num_, g2);
        r.den_ = divide_exact(a.den_, g2) * divide_exact(b.den_, g1);
        r.normalize_lead();
        return r;
    }
    Scalar inv() const {
        if (is_zero()) throw DivisionByZero("division by a zero scalar");
        Scalar r;
        r.num_ = den_;
        r.den_ = num_;
        r.normalize_lead();
        return r;
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    Scalar pow(unsigned e) const {
        Scalar r(1), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    mpq_class eval(const Assignment& a) const {
        mpq_class d = den_.eval(a);
        if (d == 0) throw DenominatorVanishes("denominator vanishes at sample point");
        return num_.eval(a) / d;
    }

    // Substitute some variables by scalars.
    Scalar subs(const std::map<int, Scalar>& s) const {
        if (s.empty()) return *this;
        bool touches = false;
        for (const auto& [v, e] : s)
            if (num_.has_var(v) || den_.has_var(v)) touches = true;
        if (!touches) return *this;
        return subs_poly(num_, s) / subs_poly(den_, s);
    }
    Scalar partial(const Assignment& a) const { return Scalar(num_.partial(a), den_.partial(a)); }

    std::string str() const {
        if (den_ == Poly(1)) return num_.str();
        std::string n = num_.str();
        if (num_.size() > 1) n = "(" + n + ")";
        std::string d = den_.str();
        bool bare = den_.size() == 1 && den_.lead_coeff() == 1 && den_.vars().size() == 1;
        if (!bare) d = "(" + d + ")";
        return n + "/" + d;
    }

private:
    static Scalar subs_poly(const Poly& p, const std::map<int, Scalar>& s) {
        Scalar acc;
        for (const auto& [m, c] : p.terms()) {
            Scalar t(c);
            Monomial rest;
            for (size_t i = 0; i < m.size(); ++i) {
                if (!m[i]) continue;
                auto it = s.find(static_cast<int>(i));
                if (it == s.end()) {
                    rest.resize(i + 1, 0);
                    rest[i] = m[i];
                } else {
                    t *= it->second.pow(m[i]);
                }
            }
            acc += t * Scalar(Poly::term(rest, 1));
        }
        return acc;
    }

    void canon() {
        if (den_.is_zero()) throw DivisionByZero("zero denominator");
        if (num_.is_zero()) {
            den_ = Poly(1);
            return;
        }
        if (!den_.is_constant()) {
            Poly g = poly_gcd(num_, den_);
            if (!g.is_constant()) {
                num_ = divide_exact(num_, g);
                den_ = divide_exact(den_, g);
            }
        }
        normalize_lead();
    }
    void normalize_lead() {
        if (num_.is_zero()) {
            den_ = Poly(1);
            return;
        }
        mpq_class c = den_.lead_coeff();
        if (c != 1) {
            mpq_class k = 1 / c;
            num_ = num_.scaled(k);
            den_ = den_.scaled(k);
        }
    }

    Poly num_, den_;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

// Recursive-descent parser for: integers, names, + - * / ( ) and ^ with a
// nonnegative integer exponent.
class ScalarParser {
public:
    explicit ScalarParser(std::string_view s) : s_(s) {}

    Scalar parse_all() {
        Scalar r = expr();
        skip();
        if (p_ != s_.size()) fail("unexpected '" + std::string(1, s_[p_]) + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("cannot parse '" + std::string(s_) + "': " + why);
    }
    void skip() {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }
    bool eat(char c) {
        skip();
        if (p_ < s_.size() && s_[p_] == c) {
            ++p_;
            return true;
        }
        return false;
    }
    Scalar expr() {
        Scalar r = term();
        while (true) {
            if (eat('+'))
                r += term();
            else if (eat('-'))
                r -= term();
            else
                return r;
        }
    }
    Scalar term() {
        Scalar r = unary();
        while (true) {
            if (eat('*'))
                r *= unary();
            else if (eat('/')) {
                Scalar d = unary();
                if (d.is_zero()) fail("division by zero");
                r /= d;
            } else
                return r;
        }
    }
    Scalar unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    Scalar power() {
        Scalar b = atom();
        if (eat('^')) {
            skip();
            size_t st = p_;
            while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
            if (st == p_) fail("exponent must be a nonnegative integer");
            b = b.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(st, p_ - st)))));
        }
        return b;
    }
    Scalar atom() {
        skip();
        if (p_ >= s_.size()) fail("unexpected end of input");
        char c = s_[p_];
        if (c == '(') {
            ++p_;
            Scalar r = expr();
            if (!eat(')')) fail("missing ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t st = p_;
            while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
            return Scalar(mpq_class(std::string(s_.substr(st, p_ - st))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t st = p_;
            while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
            return Scalar::param(s_.substr(st, p_ - st));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    size_t p_ = 0;
};

inline Scalar parse_scalar(std::string_view s) { return ScalarParser(s).parse_all(); }

inline Scalar operator""_s(const char* s, size_t n) { return parse_scalar(std::string_view(s, n)); }

}  // namespace pk4
