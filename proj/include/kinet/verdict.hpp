#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace kinet {

using Json = nlohmann::ordered_json;

enum class Conclusion { holds, fails, not_applicable, evidence_only };

inline const char* to_string(Conclusion c) {
    switch (c) {
        case Conclusion::holds: return "holds";
        case Conclusion::fails: return "fails";
        case Conclusion::not_applicable: return "not_applicable";
        case Conclusion::evidence_only: return "evidence_only";
    }
    return "?";
}

struct Hypothesis {
    std::string label;
    bool ok = false;
    std::string witness;  // short justification or counterexample
};

// Outcome of one theorem-shaped check: the hypothesis list with per-item
// witnesses, the conclusion, and a payload of check-specific data.
struct Verdict {
    std::string name;
    std::vector<Hypothesis> hypotheses;
    Conclusion conclusion = Conclusion::not_applicable;
    Json payload = Json::object();

    bool all_hypotheses_hold() const {
        for (const auto& h : hypotheses)
            if (!h.ok) return false;
        return true;
    }

    Json to_json() const {
        Json j;
        j["name"] = name;
        j["hypotheses"] = Json::array();
        for (const auto& h : hypotheses)
            j["hypotheses"].push_back({{"label", h.label}, {"ok", h.ok}, {"witness", h.witness}});
        j["conclusion"] = to_string(conclusion);
        j["payload"] = payload;
        return j;
    }
};

}  // namespace kinet
