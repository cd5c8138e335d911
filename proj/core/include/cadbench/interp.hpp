#pragma once

#include "cadbench/brep_model.hpp"
#include "cadbench/script.hpp"

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

namespace cadbench::script {

struct InterpLimits {
    std::chrono::milliseconds deadline{0};   // 0 = unlimited
    std::uint64_t max_alloc_bytes = 256ull << 20;
    std::uint64_t max_steps = 0;             // 0 = unlimited
};

enum class ProgramStatus { ok, runtime_error, timeout, resource_limit };

struct ProgramOutcome {
    ProgramStatus status = ProgramStatus::runtime_error;
    BRepModel model;                 // valid when status == ok
    std::string trace;               // non-empty when status == runtime_error
    std::vector<std::string> logs;
};

/// Parses and executes a modeling program. The model is whatever the last
/// emit(shape) produced; a program that never emits is a runtime error.
ProgramOutcome run_program(const std::string& source, const InterpLimits& limits = {});

enum class TestVerdict { pass, fail, error };

const char* to_string(TestVerdict v);
TestVerdict test_verdict_from_string(const std::string& s);

struct TestOutcome {
    TestVerdict verdict = TestVerdict::error;
    std::string message;             // always non-empty
    std::vector<std::string> logs;
};

/// Executes a test body with `model` bound to the object under test and the
/// inspection builtins available. A false require(...) fails the test; an
/// uncaught script error yields verdict error.
TestOutcome run_test(const std::string& source, const BRepModel& model,
                     const InterpLimits& limits = {});

}  // namespace cadbench::script
