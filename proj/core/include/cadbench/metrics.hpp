#pragma once

#include "cadbench/test_suite.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cadbench {

class MetricsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class GenStatus { ok, invalid };

/// One benchmark sample's evaluation outcome. Invalid generations carry an
/// empty suite report and count as failures in every metric.
struct SampleResult {
    std::string sample_id;
    GenStatus generation_status = GenStatus::invalid;
    SuiteReport suite_report;
    GroupMap groups;
    PromptType prompt_type = PromptType::detailed_prompt;
    std::map<std::string, TestCategory> categories;  // test id → category
};

/// Verdict of one generated test executed on the reference model, used by the
/// suite-validation metrics (Valid / Sound).
struct TestValidityRecord {
    std::string test_id;
    script::TestVerdict verdict = script::TestVerdict::error;
};

/// Fraction of generated tests that execute without error on the reference.
double validity_ratio(const std::vector<TestValidityRecord>& records);

/// Fraction of valid tests that pass on the reference.
double soundness_ratio(const std::vector<TestValidityRecord>& records);

/// Fraction of mutation-set entries killed (≥1 fail-or-error verdict).
double mutation_score(const std::vector<SuiteReport>& mutation_reports);

bool is_killed(const SuiteReport& report);

/// Fraction of samples whose generation executed and passed every test.
double pass_rate(const std::vector<SampleResult>& results);

/// Per-sample fraction of requirement groups whose tests all pass; invalid
/// generations score 0.
double requirement_score(const SampleResult& result);
/// Unweighted mean of per-sample requirement scores.
double requirement_score_aggregate(const std::vector<SampleResult>& results);

/// Fraction of generations that failed to execute.
double invalid_ratio(const std::vector<SampleResult>& results);

/// Per category: passed tests / total tests across all samples; tests on
/// invalid generations count as not-passed. Categories absent everywhere are
/// omitted.
std::map<TestCategory, double> category_accuracy(const std::vector<SampleResult>& results);

struct SuiteValidationAggregates {
    double valid = 0.0;
    double sound = 0.0;
    double mscore = 0.0;
    int total_tests = 0;
    int valid_tests = 0;
    int sound_tests = 0;
    int mutants_total = 0;
    int mutants_killed = 0;
};

struct BenchmarkReport {
    std::vector<SampleResult> per_sample;
    double pr = 0.0;
    double rs = 0.0;
    double ir = 0.0;
    std::map<TestCategory, double> acc;
    std::optional<SuiteValidationAggregates> suite_validation;
};

BenchmarkReport aggregate_report(std::vector<SampleResult> results);

nlohmann::ordered_json report_to_json(const BenchmarkReport& report);
/// Table-shaped CSV: one row per prompt type with IR, RS, PR columns.
std::string report_to_csv(const BenchmarkReport& report);
/// Category × accuracy CSV.
std::string category_csv(const BenchmarkReport& report);

}  // namespace cadbench
