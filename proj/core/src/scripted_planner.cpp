#include "cadbench/planner.hpp"

#include <fstream>

namespace cadbench {

using json = nlohmann::ordered_json;

ScriptedPlanner::ScriptedPlanner(const std::filesystem::path& fixture_jsonl) {
    std::ifstream f(fixture_jsonl);
    if (!f) throw PlannerError("cannot open scripted planner fixture: " + fixture_jsonl.string());
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const std::exception& e) {
            throw PlannerError("scripted fixture line " + std::to_string(lineno) +
                               " is not valid JSON: " + e.what());
        }
        const PlannerRole role = planner_role_from_string(j.at("role").get<std::string>());
        PlannerResponse resp;
        resp.artifacts = j.value("artifacts", json());
        resp.raw = j.value("raw", resp.artifacts.dump());
        resp.malformed = j.value("malformed", false);
        queues_[role].push_back(std::move(resp));
    }
}

ScriptedPlanner::ScriptedPlanner(const std::vector<std::pair<PlannerRole, PlannerResponse>>& turns) {
    for (const auto& [role, resp] : turns) queues_[role].push_back(resp);
}

PlannerResponse ScriptedPlanner::complete(const PlannerRequest& request) {
    auto it = queues_.find(request.role);
    const size_t idx = cursor_[request.role];
    if (it == queues_.end() || idx >= it->second.size()) {
        throw PlannerError(std::string("scripted planner exhausted for role ") +
                           to_string(request.role) + " (turn " + std::to_string(idx) + ")");
    }
    cursor_[request.role] = idx + 1;
    return it->second[idx];
}

RecordingPlanner::RecordingPlanner(Planner& inner, std::filesystem::path transcript_path)
    : inner_(inner), path_(std::move(transcript_path)) {
    if (!path_.parent_path().empty()) {
        std::filesystem::create_directories(path_.parent_path());
    }
}

PlannerResponse RecordingPlanner::complete(const PlannerRequest& request) {
    requests_.push_back(request);
    std::string error;
    PlannerResponse resp;
    bool threw = false;
    try {
        resp = inner_.complete(request);
    } catch (const std::exception& e) {
        threw = true;
        error = e.what();
    }
    json line;
    line["request"] = request_to_json(request);
    if (threw) {
        line["error"] = error;
    } else {
        line["response"] = response_to_json(resp);
    }
    std::ofstream f(path_, std::ios::app);
    if (f) f << line.dump() << "\n";
    if (threw) throw PlannerError(error);
    return resp;
}

}  // namespace cadbench
