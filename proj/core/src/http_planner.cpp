#include "cadbench/planner.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT_DISABLED
#include <httplib.h>

#include <cstdlib>

namespace cadbench {

using json = nlohmann::ordered_json;

HttpPlanner::HttpPlanner(HttpPlannerConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.host.empty()) throw PlannerError("http planner: host not configured");
}

PlannerResponse HttpPlanner::complete(const PlannerRequest& request) {
    httplib::Client client(cfg_.host);
    client.set_read_timeout(120, 0);
    httplib::Headers headers;
    if (const char* key = std::getenv(cfg_.api_key_env.c_str()); key != nullptr && *key != '\0') {
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    std::string system_text;
    for (const auto& doc : request.context_docs) {
        system_text += "# " + doc.name + "\n" + doc.content + "\n\n";
    }
    std::string user_text = request.prompt;
    if (!request.observations.empty()) {
        user_text += "\n\nObservations:\n";
        for (const auto& o : request.observations) user_text += "- " + o + "\n";
    }

    std::string format_hint;
    for (int attempt = 0; attempt <= cfg_.max_format_retries; ++attempt) {
        json body;
        body["model"] = cfg_.model;
        body["temperature"] = cfg_.temperature;
        body["messages"] = json::array();
        if (!system_text.empty()) {
            body["messages"].push_back({{"role", "system"}, {"content", system_text}});
        }
        for (const auto& h : request.history) {
            body["messages"].push_back({{"role", "assistant"}, {"content", h}});
        }
        body["messages"].push_back({{"role", "user"}, {"content", user_text + format_hint}});

        const auto res = client.Post(cfg_.path, headers, body.dump(), "application/json");
        if (!res) {
            throw PlannerError("http planner: backend unreachable (" +
                               httplib::to_string(res.error()) + ")");
        }
        if (res->status < 200 || res->status >= 300) {
            throw PlannerError("http planner: backend returned status " +
                               std::to_string(res->status));
        }
        PlannerResponse out;
        try {
            const json parsed = json::parse(res->body);
            out.raw = parsed.at("choices").at(0).at("message").at("content").get<std::string>();
            if (parsed.contains("usage")) {
                out.prompt_tokens = parsed["usage"].value("prompt_tokens", 0);
                out.completion_tokens = parsed["usage"].value("completion_tokens", 0);
            }
        } catch (const std::exception& e) {
            throw PlannerError(std::string("http planner: malformed completion envelope: ") +
                               e.what());
        }
        if (auto artifacts = extract_artifacts(out.raw)) {
            out.artifacts = std::move(*artifacts);
            return out;
        }
        if (attempt == cfg_.max_format_retries) {
            out.malformed = true;
            return out;
        }
        format_hint =
            "\n\nYour previous reply could not be parsed. Respond again with a single fenced "
            "```json block containing only the structured payload.";
    }
    throw PlannerError("http planner: unreachable retry state");
}

}  // namespace cadbench
