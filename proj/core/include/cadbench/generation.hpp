#pragma once

#include "cadbench/executor.hpp"
#include "cadbench/metrics.hpp"
#include "cadbench/planner.hpp"

#include <functional>

namespace cadbench {

enum class Strategy { k_shot, skilled, react, cadtest, cadtest_log };

const char* to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

/// Extra observation source fed into iterative loops after each execution —
/// the hook behind the image-feedback variant. Rendering itself is out of
/// scope; a provider returns text observations derived from the result.
using ObservationProvider = std::function<std::vector<std::string>(const ExecutionResult&)>;

struct GenerationConfig {
    Strategy strategy = Strategy::react;
    int max_rounds = 5;          // iterative strategies
    int k_shots = 10;
    std::int64_t program_timeout_ms = 60000;
    std::int64_t test_timeout_ms = 10000;
    std::vector<std::pair<std::string, std::string>> demos;  // k-shot pool, dataset order
    ObservationProvider extra_observations;                  // optional hook
};

struct GenerationOutcome {
    CadProgram program;
    ExecutionResult final_result;
    int rounds = 0;              // planner calls made
    nlohmann::ordered_json transcript;
    /// Self-tests emitted by the cadtest strategies. Never used for scoring.
    std::vector<CadTest> self_tests;
};

/// Runs one generation strategy for a prompt.
GenerationOutcome generate(const std::string& prompt, Planner& planner, const Executor& ex,
                           const GenerationConfig& config);

}  // namespace cadbench
