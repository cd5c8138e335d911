#pragma once

#include "cadbench/brep_model.hpp"
#include "cadbench/interp.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cadbench {

struct CadProgram {
    enum class Origin { reference, generated, mutant };
    std::string source;
    std::string dialect = script::kDialectId;
    Origin origin = Origin::reference;
};

enum class ExecStatus { ok, runtime_error, timeout, resource_limit };

const char* to_string(ExecStatus s);
ExecStatus exec_status_from_string(const std::string& s);

struct ExecutionResult {
    ExecStatus status = ExecStatus::runtime_error;
    std::optional<BRepModel> model;        // present iff status == ok
    std::string model_step_path;           // retained when keep_artifacts is set
    std::string trace;                      // non-empty iff status == runtime_error
    std::vector<std::string> logs;
    std::int64_t duration_ms = 0;
};

struct TestExecution {
    script::TestVerdict verdict = script::TestVerdict::error;
    std::string message;
    std::vector<std::string> logs;
    std::int64_t duration_ms = 0;
};

struct ExecutorConfig {
    std::string worker_path;               // empty → env CADBENCH_WORKER or exe-relative lookup
    int max_workers = 0;                   // 0 → hardware_concurrency
    std::int64_t program_timeout_ms = 60000;
    std::int64_t test_timeout_ms = 10000;
    std::uint64_t memory_limit_mb = 512;
    std::filesystem::path scratch_dir;     // empty → std::filesystem::temp_directory_path()
    bool keep_artifacts = false;           // keep model STEP files next to results
};

class ExecutorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Runs programs and test bodies in isolated worker processes, one process
/// per invocation, speaking line-delimited JSON over pipes. A crash, loop, or
/// allocation blow-up in hostile input becomes a structured non-ok result.
class Executor {
public:
    explicit Executor(ExecutorConfig cfg = {});
    ~Executor();

    Executor(const Executor&) = delete;
    Executor& operator=(const Executor&) = delete;

    /// Throws ExecutorError if the dialect is not registered.
    ExecutionResult execute_program(const CadProgram& program, std::int64_t timeout_ms = 0) const;

    TestExecution execute_test(const std::string& body, const BRepModel& model,
                               std::int64_t timeout_ms = 0) const;

    /// Runs a list of (id, body) tests against one model inside a single
    /// worker with per-test interpreter deadlines. Observable behavior
    /// matches per-test execute_test; this exists so suites amortize model
    /// loading. Results are returned in input order.
    std::vector<TestExecution> execute_tests(
        const std::vector<std::pair<std::string, std::string>>& tests, const BRepModel& model,
        std::int64_t per_test_timeout_ms = 0) const;

    const ExecutorConfig& config() const { return cfg_; }

    static bool dialect_registered(const std::string& id);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    ExecutorConfig cfg_;
};

/// Resolves the worker binary: explicit path, CADBENCH_WORKER env var, then
/// next to the current executable.
std::string resolve_worker_path(const std::string& configured);

}  // namespace cadbench
