#pragma once

#include "cadbench/generation.hpp"
#include "cadbench/metrics.hpp"
#include "cadbench/refinement.hpp"

#include <filesystem>
#include <optional>

namespace cadbench {

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One dataset sample on disk:
///   <dir>/<sample-id>/{prompts.json, reference.script,
///                      suites/{abstract,detailed}.json,
///                      groups/{abstract,detailed}.json, mutants/, runs/}
struct BenchmarkSample {
    std::string sample_id;
    std::string abstract_prompt;
    std::string detailed_prompt;
    CadProgram reference;
    std::optional<TestSuite> abstract_suite;
    std::optional<TestSuite> detailed_suite;
    GroupMap abstract_groups;
    GroupMap detailed_groups;
    std::filesystem::path dir;

    const std::string& prompt(PromptType t) const {
        return t == PromptType::abstract_prompt ? abstract_prompt : detailed_prompt;
    }
    const std::optional<TestSuite>& suite(PromptType t) const {
        return t == PromptType::abstract_prompt ? abstract_suite : detailed_suite;
    }
    const GroupMap& groups(PromptType t) const {
        return t == PromptType::abstract_prompt ? abstract_groups : detailed_groups;
    }
};

struct IngestIssue {
    std::string sample_id;
    std::string file;
    std::string field;
    std::string message;
};

struct IngestResult {
    std::vector<BenchmarkSample> samples;
    std::vector<IngestIssue> issues;  // malformed samples, reported not silently skipped
};

/// Throws SchemaError when the directory itself is missing.
IngestResult ingest(const std::filesystem::path& dataset_dir);

// --- pipeline ---------------------------------------------------------------

struct PipelineConfig {
    MutationConfig mutation;
    int augmentations = 5;
    RefinementConfig refinement;
    std::uint64_t seed = 0;
    bool force = false;              // re-run completed stages
    bool deterministic_artifacts = true;
    std::string stop_after;          // "" (full) | "mutants" | "sets"
};

struct PipelineOutcome {
    std::string sample_id;
    PromptType prompt_type = PromptType::detailed_prompt;
    bool completed = false;
    std::string failed_stage;   // empty when completed
    std::string diagnosis;
    std::filesystem::path suite_path;
    std::filesystem::path transcript_path;
};

/// mutation → filter → set-build → initial suite → refinement, persisting
/// every stage under <sample>/runs/pipeline/<prompt-type>/; idempotent re-run
/// from any completed stage. A null planner limits the pipeline to the
/// deterministic mutation path; refinement then requires a pre-existing suite.
PipelineOutcome build_pipeline(const BenchmarkSample& sample, PromptType type,
                               const PipelineConfig& config, const Executor& ex, Planner* planner);

// --- suite validation (Valid / Sound / MScore) --------------------------------

struct SuiteValidationResult {
    std::string sample_id;
    PromptType prompt_type;
    SuiteValidationAggregates aggregates;
    std::vector<TestValidityRecord> reference_records;
};

SuiteValidationResult validate_suite(const BenchmarkSample& sample, PromptType type,
                                     const TestSuite& suite, const EvaluationSets& sets,
                                     const Executor& ex);

// --- benchmark runs -------------------------------------------------------------

struct RunConfig {
    GenerationConfig generation;
    std::vector<PromptType> prompt_types{PromptType::detailed_prompt};
    bool deterministic_artifacts = true;
};

/// Generates, executes, and scores one sample; persists the SampleResult JSON
/// under out_dir/results/. Re-running reuses persisted results byte-identically.
SampleResult run_sample(const BenchmarkSample& sample, PromptType type, const RunConfig& config,
                        const Executor& ex, Planner& planner,
                        const std::filesystem::path& out_dir);

BenchmarkReport run_benchmark(const std::vector<BenchmarkSample>& samples, const RunConfig& config,
                              const Executor& ex, Planner& planner,
                              const std::filesystem::path& out_dir);

// --- reporting --------------------------------------------------------------------

struct ReportFiles {
    std::filesystem::path json_path;
    std::filesystem::path table_csv_path;
    std::filesystem::path categories_csv_path;
    bool partial = false;  // pending samples were present
};

/// Deterministic, byte-identical report emission from persisted results.
ReportFiles emit_report(const std::filesystem::path& run_dir, const std::string& format);

nlohmann::ordered_json sample_result_to_json(const SampleResult& r);
SampleResult sample_result_from_json(const nlohmann::ordered_json& j);

}  // namespace cadbench
