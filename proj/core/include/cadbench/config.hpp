#pragma once

#include "cadbench/bench.hpp"
#include "cadbench/planner.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>

namespace cadbench {

/// Global harness configuration. Resolution precedence:
/// CLI flag > environment variable (CADBENCH_*) > config file > default.
struct HarnessConfig {
    std::uint64_t seed = 0;
    int iou_resolution = 64;
    int workers = 0;  // 0 → hardware concurrency
    std::int64_t program_timeout_ms = 60000;
    std::int64_t test_timeout_ms = 10000;
    std::uint64_t memory_limit_mb = 512;
    std::string worker_path;

    MutationConfig mutation;
    int augmentations = 5;
    RefinementConfig refinement;

    std::string planner_mode = "none";  // none | scripted | live
    std::string planner_fixture;        // scripted replay JSONL
    std::string transcript_out;         // recorded planner traffic
    HttpPlannerConfig http;

    bool deterministic_artifacts = true;

    static HarnessConfig resolve(const std::optional<std::filesystem::path>& config_file,
                                 const std::map<std::string, std::string>& cli_overrides);

    ExecutorConfig executor_config() const;
    PipelineConfig pipeline_config() const;

    /// Builds the configured planner (scripted/live), wrapped in a recorder
    /// when transcript_out is set. Returns nullptr for mode "none".
    std::unique_ptr<Planner> make_planner() const;
};

}  // namespace cadbench
