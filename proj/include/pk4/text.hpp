#pragma once

#include "linalg.hpp"

namespace pk4 {

// "-+" encodes the upper/lower sign pair (-/+), "+-" the pair (+/-).
inline bool has_variants(std::string_view s) {
    return s.find("-+") != std::string_view::npos || s.find("+-") != std::string_view::npos;
}

inline std::string apply_variant(std::string_view s, int variant) {
    std::string out;
    for (size_t i = 0; i < s.size(); ++i) {
        if (i + 1 < s.size() && (s.substr(i, 2) == "-+" || s.substr(i, 2) == "+-")) {
            bool upper_minus = s[i] == '-';
            out += (upper_minus == (variant == 1)) ? '-' : '+';
            ++i;
        } else {
            out += s[i];
        }
    }
    return out;
}

namespace detail {

// Decode a basis tag name: 'e'+k, 'e'+ij or 'E'+ij.
struct Tag {
    char kind;  // 'v' vector, 'f' form e_ij, 'E' endomorphism
    int i, j;
};

inline std::optional<Tag> decode_tag(const std::string& n) {
    auto dig = [](char c) { return c >= '1' && c <= '4'; };
    if (n.size() == 2 && n[0] == 'e' && dig(n[1])) return Tag{'v', n[1] - '1', -1};
    if (n.size() == 3 && (n[0] == 'e' || n[0] == 'E') && dig(n[1]) && dig(n[2]))
        return Tag{n[0] == 'e' ? 'f' : 'E', n[1] - '1', n[2] - '1'};
    return std::nullopt;
}

// Split a parsed expression that is linear in tags of the given kind.
inline std::vector<std::pair<Tag, Scalar>> linear_in_tags(const Scalar& s, char kind, std::string_view src) {
    for (int v : s.den().vars())
        if (decode_tag(var_name(v))) throw ParseError("basis symbol in a denominator: '" + std::string(src) + "'");
    std::map<std::pair<int, int>, Poly> acc;
    for (const auto& [m, c] : s.num().terms()) {
        std::optional<Tag> tag;
        Monomial rest = m;
        for (size_t i = 0; i < m.size(); ++i) {
            if (!m[i]) continue;
            auto t = decode_tag(var_name(static_cast<int>(i)));
            if (!t) continue;
            if (tag || m[i] != 1 || t->kind != kind)
                throw ParseError("not a linear combination of basis symbols: '" + std::string(src) + "'");
            tag = t;
            rest[i] = 0;
        }
        if (!tag) throw ParseError("term without basis symbol in '" + std::string(src) + "'");
        acc[{tag->i, tag->j}].add_term([&] { trim(rest); return rest; }(), c);
    }
    std::vector<std::pair<Tag, Scalar>> out;
    for (auto& [ij, p] : acc) out.push_back({Tag{kind, ij.first, ij.second}, Scalar(p, s.den())});
    return out;
}

}  // namespace detail

inline Vec4 parse_vec(std::string_view s) {
    Vec4 v{};
    std::string t(s);
    if (t.find_first_not_of(" \t") == std::string::npos || t == "0") return v;
    for (auto& [tag, c] : detail::linear_in_tags(parse_scalar(s), 'v', s)) v[static_cast<size_t>(tag.i)] += c;
    return v;
}

// Antisymmetric e^{ij} (sym=false) or symmetric eps^{ij} (sym=true); e_ii only when symmetric.
inline Mat4 parse_form(std::string_view s, bool sym) {
    Mat4 m;
    m.role = Role::BilinearForm;
    std::string t(s);
    if (t.find_first_not_of(" \t") == std::string::npos || t == "0") return m;
    for (auto& [tag, c] : detail::linear_in_tags(parse_scalar(s), 'f', s)) {
        if (tag.i == tag.j) {
            if (!sym) throw ParseError("e_ii in a two-form: '" + std::string(s) + "'");
            m(tag.i, tag.i) += c;
            continue;
        }
        m(tag.i, tag.j) += c;
        m(tag.j, tag.i) += sym ? c : -c;
    }
    return m;
}

inline Mat4 parse_endo(std::string_view s) {
    Mat4 m;
    m.role = Role::Endomorphism;
    std::string t(s);
    if (t.find_first_not_of(" \t") == std::string::npos || t == "0") return m;
    for (auto& [tag, c] : detail::linear_in_tags(parse_scalar(s), 'E', s)) m(tag.i, tag.j) += c;
    return m;
}

// Rows separated by ';', entries by ','.
inline Mat4 parse_matrix(std::string_view s, Role r = Role::Generic) {
    Mat4 m;
    m.role = r;
    std::vector<std::string> rows;
    std::string cur;
    for (char c : s) {
        if (c == ';') {
            rows.push_back(cur);
            cur.clear();
        } else
            cur += c;
    }
    rows.push_back(cur);
    if (rows.size() != 4) throw ParseError("matrix needs 4 rows: '" + std::string(s) + "'");
    for (int i = 0; i < 4; ++i) {
        auto items = ParamDomain::split_top(rows[static_cast<size_t>(i)]);
        if (items.size() != 4) throw ParseError("matrix row needs 4 entries: '" + std::string(s) + "'");
        for (int j = 0; j < 4; ++j) m(i, j) = parse_scalar(items[static_cast<size_t>(j)]);
    }
    return m;
}

inline std::string term_join(const std::vector<std::pair<std::string, Scalar>>& terms) {
    std::string s;
    for (const auto& [sym, c] : terms) {
        if (c.is_zero()) continue;
        std::string t;
        if (c == Scalar(1))
            t = sym;
        else if (c == Scalar(-1))
            t = "-" + sym;
        else if (c.den() == Poly(1) && c.num().size() == 1)
            t = c.str() + "*" + sym;
        else
            t = "(" + c.str() + ")*" + sym;
        if (!s.empty() && t[0] != '-') s += '+';
        s += t;
    }
    return s.empty() ? "0" : s;
}

inline std::string vec_text(const Vec4& v) {
    std::vector<std::pair<std::string, Scalar>> t;
    for (int i = 0; i < 4; ++i) t.push_back({"e" + std::to_string(i + 1), v[static_cast<size_t>(i)]});
    return term_join(t);
}

inline std::string endo_text(const Mat4& m) {
    std::vector<std::pair<std::string, Scalar>> t;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t.push_back({"E" + std::to_string(i + 1) + std::to_string(j + 1), m(i, j)});
    return term_join(t);
}

inline std::string form_text(const Mat4& m, bool sym) {
    std::vector<std::pair<std::string, Scalar>> t;
    for (int i = 0; i < 4; ++i)
        for (int j = sym ? i : i + 1; j < 4; ++j)
            t.push_back({"e" + std::to_string(i + 1) + std::to_string(j + 1), m(i, j)});
    return term_join(t);
}

}  // namespace pk4
