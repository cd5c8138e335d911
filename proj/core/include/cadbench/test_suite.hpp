#pragma once

#include "cadbench/executor.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace cadbench {

class Planner;

enum class TestCategory {
    solid_shell_validity,
    topology,
    geometric_types,
    dimensions_ratios,
    volumetric,
    spatial_arrangement,
};

const char* to_string(TestCategory c);
TestCategory category_from_string(const std::string& s);

enum class PromptType { abstract_prompt, detailed_prompt };
const char* to_string(PromptType p);
PromptType prompt_type_from_string(const std::string& s);

/// One executable boolean predicate over a model.
struct CadTest {
    std::string id;
    std::string body;           // executable test body (cadscript)
    std::string description;
    std::string group;          // requirement-group id
    TestCategory category = TestCategory::topology;
};

struct TestSuite {
    std::vector<CadTest> tests;
    PromptType prompt_type = PromptType::detailed_prompt;
    std::string sample_id;

    const CadTest* find(const std::string& id) const;
    /// Unique ids, non-empty descriptions; throws std::invalid_argument.
    void validate() const;
};

enum class ModelStatus { ok, invalid };

struct TestResultRecord {
    script::TestVerdict verdict = script::TestVerdict::error;
    std::string message;
    std::int64_t duration_ms = 0;
};

struct SuiteReport {
    ModelStatus model_status = ModelStatus::ok;
    std::map<std::string, TestResultRecord> outcomes;  // test id → result

    static SuiteReport invalid() { return {ModelStatus::invalid, {}}; }
};

/// Executes every test independently; one test's error never skips another.
SuiteReport run_suite(const TestSuite& suite, const BRepModel& model, const Executor& ex,
                      std::int64_t per_test_timeout_ms = 0);

/// T(m) = ∧ T_i(m): true iff the model executed, the suite is non-empty, and
/// every verdict is pass (errors count as not-pass).
bool conjunction(const SuiteReport& report);

struct RequirementGroup {
    std::string id;
    std::string name;
    std::string description;
    std::vector<std::string> test_ids;
};

using GroupMap = std::map<std::string, RequirementGroup>;

/// Partitions the suite's tests into prompt-requirement groups via the
/// planner; falls back to one group per test on planner failure or when no
/// planner is configured.
GroupMap group_requirements(const TestSuite& suite, const std::string& prompt, Planner* planner);

/// Validates that a group map partitions exactly the suite's test ids.
bool is_partition(const GroupMap& groups, const TestSuite& suite);

/// Classifies via the planner when available, else by deterministic keyword
/// rules over the description and body.
TestCategory classify_category(const CadTest& test, Planner* planner);
TestCategory classify_category_keywords(const CadTest& test);

// Suite file format: JSON array of {id, body, description, group, category}.
nlohmann::ordered_json suite_to_json(const TestSuite& suite);
TestSuite suite_from_json(const nlohmann::ordered_json& j, const std::string& sample_id,
                          PromptType type);
nlohmann::ordered_json report_to_json(const SuiteReport& report, bool zero_durations = false);
SuiteReport report_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json groups_to_json(const GroupMap& groups);
GroupMap groups_from_json(const nlohmann::ordered_json& j);

}  // namespace cadbench
