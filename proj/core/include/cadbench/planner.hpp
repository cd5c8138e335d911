#pragma once

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cadbench {

enum class PlannerRole { mutate, gen_tests, refine, group, classify, gen_cad, repair };

const char* to_string(PlannerRole r);
PlannerRole planner_role_from_string(const std::string& s);

struct NamedBlob {
    std::string name;
    std::string content;
};

/// A single planner call. For roles gen_tests and refine the request builders
/// never place reference or mutant program source in any field; that contract
/// is auditable by scanning recorded transcripts.
struct PlannerRequest {
    PlannerRole role = PlannerRole::gen_cad;
    std::string prompt;
    std::vector<NamedBlob> context_docs;
    std::vector<std::string> observations;
    std::vector<std::string> history;
};

struct PlannerResponse {
    nlohmann::ordered_json artifacts;  // role-dependent structured payload
    std::string raw;
    bool malformed = false;
    std::optional<int> prompt_tokens;
    std::optional<int> completion_tokens;
};

class PlannerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Planner {
public:
    virtual ~Planner() = default;
    /// Throws PlannerError when the backend is unreachable/exhausted; returns
    /// a response with malformed=true after format-repair retries fail.
    virtual PlannerResponse complete(const PlannerRequest& request) = 0;
    virtual bool concurrent_safe() const { return false; }
};

// --- context documents ------------------------------------------------------

struct ContextOptions {
    bool skill_doc = false;
    bool reference_doc = false;
    std::vector<std::pair<std::string, std::string>> demos;  // (prompt, program) pairs
};

/// Deterministic ordering: skill doc, then reference doc, then demos.
std::vector<NamedBlob> build_context(PlannerRole role, const ContextOptions& options);

/// The harness-authored modeling-language guide (the "skill" document).
const std::string& skill_document();
/// The harness-authored inspection-API reference handed to test generators.
const std::string& api_reference_document();

// --- serialization ----------------------------------------------------------

nlohmann::ordered_json request_to_json(const PlannerRequest& r);
PlannerRequest request_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json response_to_json(const PlannerResponse& r);
PlannerResponse response_from_json(const nlohmann::ordered_json& j);

/// Extracts a structured artifact payload from raw backend text: the first
/// fenced ```json block, else the first balanced top-level JSON object.
std::optional<nlohmann::ordered_json> extract_artifacts(const std::string& raw);

// --- implementations ---------------------------------------------------------

/// Replays canned responses keyed by (role, per-role turn index).
class ScriptedPlanner : public Planner {
public:
    explicit ScriptedPlanner(const std::filesystem::path& fixture_jsonl);
    explicit ScriptedPlanner(const std::vector<std::pair<PlannerRole, PlannerResponse>>& turns);
    PlannerResponse complete(const PlannerRequest& request) override;
    bool concurrent_safe() const override { return false; }

private:
    std::map<PlannerRole, std::vector<PlannerResponse>> queues_;
    std::map<PlannerRole, size_t> cursor_;
};

/// Appends every request/response pair to a JSON-lines transcript.
class RecordingPlanner : public Planner {
public:
    RecordingPlanner(Planner& inner, std::filesystem::path transcript_path);
    PlannerResponse complete(const PlannerRequest& request) override;
    bool concurrent_safe() const override { return false; }

    const std::vector<PlannerRequest>& recorded_requests() const { return requests_; }

private:
    Planner& inner_;
    std::filesystem::path path_;
    std::vector<PlannerRequest> requests_;
};

struct HttpPlannerConfig {
    std::string host;             // e.g. "api.example.com" or "localhost:8080"
    std::string path = "/v1/chat/completions";
    std::string model;
    std::string api_key_env = "CADBENCH_API_KEY";
    double temperature = 0.0;
    int max_format_retries = 2;
};

/// OpenAI-style chat-completions backend over HTTP.
class HttpPlanner : public Planner {
public:
    explicit HttpPlanner(HttpPlannerConfig cfg);
    PlannerResponse complete(const PlannerRequest& request) override;

private:
    HttpPlannerConfig cfg_;
};

/// Scans a recorded transcript for leaked program source fingerprints.
/// Returns the matching line numbers (1-based) per fingerprint hit.
std::vector<std::pair<int, std::string>> scan_transcript_for_leaks(
    const std::filesystem::path& transcript_jsonl, const std::vector<std::string>& fingerprints);

}  // namespace cadbench
