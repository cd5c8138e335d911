#pragma once

#include "cadbench/metrics.hpp"
#include "cadbench/planner.hpp"
#include "cadbench/set_builder.hpp"
#include "cadbench/test_suite.hpp"

#include <filesystem>
#include <optional>

namespace cadbench {

struct PlannerAction {
    enum class Op { add, modify, remove };
    Op op = Op::add;
    std::string test_id;
    std::optional<CadTest> test;  // add/modify payload
};

struct RoundRecord {
    int round = 0;
    std::vector<std::pair<std::string, SuiteReport>> passing_reports;   // provenance → report
    std::vector<std::pair<std::string, SuiteReport>> mutation_reports;  // provenance → report
    std::vector<PlannerAction> actions;  // applied at the start of this round
    bool planner_failed = false;
};

struct RefinementConfig {
    int max_rounds = 4;              // R
    bool discard_on_exit = true;
    bool discard_on_augmented = false;  // stricter reading: discard on augmented refs too
    std::int64_t test_timeout_ms = 10000;
};

struct RefinementState {
    int round = 0;
    TestSuite suite;
    std::vector<RoundRecord> history;
};

struct UndetectedMutant {
    int entry_index = -1;   // index into sets.mutation
    int mutant_index = -1;
    std::string description;  // d̃
};

struct RefinementOutcome {
    TestSuite suite;  // final suite after the discard rule
    RefinementState state;
    bool converged = false;
    double mscore = 0.0;      // on the final suite, over mutation entries
    double soundness = 0.0;   // on the final suite, over the reference entry
    std::vector<UndetectedMutant> undetected;
    std::vector<std::string> discarded_test_ids;
};

/// Generates the initial suite from the prompt alone; the request contains
/// the prompt and the reference document, never any program source.
TestSuite initial_suite(const std::string& prompt, Planner& planner,
                        const std::string& reference_doc, const std::string& sample_id,
                        PromptType type);

/// One refinement round: executes the suite on every set entry, feeds the
/// diagnostic traces to the planner, applies its add/modify/remove actions.
/// On planner failure the suite is unchanged and the round recorded a no-op.
RefinementState refine_round(RefinementState state, const EvaluationSets& sets, const Executor& ex,
                             Planner& planner, const RefinementConfig& config,
                             const std::string& prompt);

/// The full loop: stops early on (all passing entries pass) ∧ (all mutation
/// entries killed), else at R rounds; on exit discards tests that do not pass
/// on the un-augmented reference.
RefinementOutcome run_refinement(const std::string& prompt, const EvaluationSets& sets,
                                 const Executor& ex, Planner& planner,
                                 const RefinementConfig& config,
                                 std::optional<TestSuite> initial = std::nullopt,
                                 const std::string& sample_id = "sample",
                                 PromptType type = PromptType::detailed_prompt);

/// Whether a suite report kills a mutation entry, restricted to `ids`.
bool kills_entry(const SuiteReport& report, const std::vector<std::string>& ids);

nlohmann::ordered_json refinement_transcript_json(const RefinementOutcome& outcome);
void save_refinement_transcript(const std::filesystem::path& path,
                                const RefinementOutcome& outcome);

}  // namespace cadbench
