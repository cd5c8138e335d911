#include "cadbench/planner.hpp"

#include <fstream>

namespace cadbench {

using json = nlohmann::ordered_json;

const char* to_string(PlannerRole r) {
    switch (r) {
    case PlannerRole::mutate: return "mutate";
    case PlannerRole::gen_tests: return "gen-tests";
    case PlannerRole::refine: return "refine";
    case PlannerRole::group: return "group";
    case PlannerRole::classify: return "classify";
    case PlannerRole::gen_cad: return "gen-cad";
    default: return "repair";
    }
}

PlannerRole planner_role_from_string(const std::string& s) {
    if (s == "mutate") return PlannerRole::mutate;
    if (s == "gen-tests") return PlannerRole::gen_tests;
    if (s == "refine") return PlannerRole::refine;
    if (s == "group") return PlannerRole::group;
    if (s == "classify") return PlannerRole::classify;
    if (s == "gen-cad") return PlannerRole::gen_cad;
    if (s == "repair") return PlannerRole::repair;
    throw PlannerError("unknown planner role: " + s);
}

json request_to_json(const PlannerRequest& r) {
    json j;
    j["role"] = to_string(r.role);
    j["prompt"] = r.prompt;
    j["context_docs"] = json::array();
    for (const auto& d : r.context_docs) {
        j["context_docs"].push_back({{"name", d.name}, {"content", d.content}});
    }
    j["observations"] = r.observations;
    j["history"] = r.history;
    return j;
}

PlannerRequest request_from_json(const json& j) {
    PlannerRequest r;
    r.role = planner_role_from_string(j.at("role").get<std::string>());
    r.prompt = j.value("prompt", "");
    for (const auto& d : j.value("context_docs", json::array())) {
        r.context_docs.push_back({d.value("name", ""), d.value("content", "")});
    }
    for (const auto& o : j.value("observations", json::array())) r.observations.push_back(o);
    for (const auto& h : j.value("history", json::array())) r.history.push_back(h);
    return r;
}

json response_to_json(const PlannerResponse& r) {
    json j;
    j["artifacts"] = r.artifacts;
    j["raw"] = r.raw;
    j["malformed"] = r.malformed;
    if (r.prompt_tokens) j["prompt_tokens"] = *r.prompt_tokens;
    if (r.completion_tokens) j["completion_tokens"] = *r.completion_tokens;
    return j;
}

PlannerResponse response_from_json(const json& j) {
    PlannerResponse r;
    r.artifacts = j.value("artifacts", json());
    r.raw = j.value("raw", "");
    r.malformed = j.value("malformed", false);
    if (j.contains("prompt_tokens")) r.prompt_tokens = j["prompt_tokens"].get<int>();
    if (j.contains("completion_tokens")) r.completion_tokens = j["completion_tokens"].get<int>();
    return r;
}

std::optional<json> extract_artifacts(const std::string& raw) {
    // Fenced ```json block first.
    const std::string fence = "```json";
    size_t pos = raw.find(fence);
    if (pos == std::string::npos) pos = raw.find("``` json");
    if (pos != std::string::npos) {
        const size_t start = raw.find('\n', pos);
        const size_t end = raw.find("```", start == std::string::npos ? pos + fence.size() : start);
        if (start != std::string::npos && end != std::string::npos && end > start) {
            try {
                return json::parse(raw.substr(start + 1, end - start - 1));
            } catch (const std::exception&) {
            }
        }
    }
    // First balanced top-level JSON object or array.
    for (size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] != '{' && raw[i] != '[') continue;
        const char open = raw[i];
        const char close = open == '{' ? '}' : ']';
        int depth = 0;
        bool in_string = false;
        for (size_t k = i; k < raw.size(); ++k) {
            const char c = raw[k];
            if (in_string) {
                if (c == '\\') {
                    ++k;
                } else if (c == '"') {
                    in_string = false;
                }
                continue;
            }
            if (c == '"') {
                in_string = true;
            } else if (c == open) {
                ++depth;
            } else if (c == close) {
                --depth;
                if (depth == 0) {
                    try {
                        return json::parse(raw.substr(i, k - i + 1));
                    } catch (const std::exception&) {
                        break;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

std::vector<std::pair<int, std::string>> scan_transcript_for_leaks(
    const std::filesystem::path& transcript_jsonl, const std::vector<std::string>& fingerprints) {
    std::vector<std::pair<int, std::string>> hits;
    std::ifstream f(transcript_jsonl);
    if (!f) throw PlannerError("cannot open transcript: " + transcript_jsonl.string());
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        json j;
        try {
            j = json::parse(line);
        } catch (const std::exception&) {
            continue;
        }
        // Only the request side matters: leaked source in requests violates
        // the information-hiding contract.
        const std::string req = j.value("request", json()).dump();
        for (const auto& fp : fingerprints) {
            // Compare against the JSON-escaped form so newlines match.
            const std::string escaped = json(fp).dump();
            const std::string needle = escaped.substr(1, escaped.size() - 2);
            if (!needle.empty() && req.find(needle) != std::string::npos) {
                hits.emplace_back(lineno, fp);
            }
        }
    }
    return hits;
}

}  // namespace cadbench
