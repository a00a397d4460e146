#pragma once

#include "domain.hpp"

#include <json.hpp>

namespace pk4 {

enum class Status { Pass, Warn, Fail };

inline const char* status_str(Status s) {
    switch (s) {
        case Status::Pass: return "PASS";
        case Status::Warn: return "WARN";
        case Status::Fail: return "FAIL";
    }
    return "?";
}

inline Status worst(Status a, Status b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

struct Check {
    std::string name;
    Status status = Status::Pass;
    std::string detail;
    std::string witness;
};

struct EntryReport {
    std::string id;
    std::vector<Check> checks;
    std::vector<std::string> notes;

    Status status() const {
        Status s = Status::Pass;
        for (const auto& c : checks) s = worst(s, c.status);
        return s;
    }
    Check& add(std::string name, bool ok, std::string detail = {}, std::string witness = {}) {
        checks.push_back({std::move(name), ok ? Status::Pass : Status::Fail, std::move(detail), std::move(witness)});
        return checks.back();
    }
    void append(const EntryReport& o, const std::string& prefix = {}) {
        for (auto c : o.checks) {
            if (!prefix.empty()) c.name = prefix + c.name;
            checks.push_back(std::move(c));
        }
        notes.insert(notes.end(), o.notes.begin(), o.notes.end());
    }
    const Check* first_failure() const {
        for (const auto& c : checks)
            if (c.status == Status::Fail) return &c;
        return nullptr;
    }
};

inline nlohmann::json to_json(const Check& c) {
    nlohmann::json j{{"check", c.name}, {"status", status_str(c.status)}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    if (!c.witness.empty()) j["witness"] = c.witness;
    return j;
}

inline nlohmann::json to_json(const EntryReport& r) {
    nlohmann::json j{{"id", r.id}, {"status", status_str(r.status())}, {"checks", nlohmann::json::array()}};
    for (const auto& c : r.checks) j["checks"].push_back(to_json(c));
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

// First nonzero among a family of scalars (each reduced by the domain).
struct ZeroCheck {
    bool zero = true;
    std::string where;
    std::string value;
    std::string witness;
};

template <class Range>
ZeroCheck all_zero_on(const Range& items, const ParamDomain& dom, const SampleConfig& cfg) {
    for (const auto& [label, s] : items) {
        auto r = identity_test(s, dom, cfg);
        if (r.verdict == ZeroVerdict::NonZero)
            return {false, label, dom.reduce(s).str(), r.witness.empty() ? std::string() : assignment_str(r.witness) + " -> " + r.value.get_str()};
        if (r.verdict == ZeroVerdict::ZeroSampled) return {false, label, dom.reduce(s).str(), "vanishes at all samples"};
    }
    return {};
}

}  // namespace pk4
