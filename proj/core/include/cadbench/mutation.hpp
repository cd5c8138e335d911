#pragma once

#include "cadbench/executor.hpp"
#include "cadbench/planner.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cadbench {

/// A prompt-violating variant of a reference program.
struct Mutant {
    CadProgram program;            // origin == mutant
    std::string description;       // why it violates the design intent
    std::string operator_id;       // deterministic operator id, or "planner"
    double iou_vs_reference = -1.0;
};

/// Deterministic operator catalog (the LLM-free mutation path).
enum class MutationOperatorKind {
    numeric_literal_scale,
    feature_deletion,
    boolean_op_substitution,
    parameter_swap,
    placement_shift,
};

const char* to_string(MutationOperatorKind k);

struct MutationConfig {
    int count = 6;               // K candidates per sample
    int max_repair_iters = 3;
    double iou_min = 0.05;
    double iou_max = 0.95;
    int iou_resolution = 64;
    std::uint64_t seed = 0;
};

/// K candidates via the planner (reference source is allowed in mutate
/// requests); falls back to the deterministic catalog when planner is null.
/// Candidates are not yet validated.
std::vector<Mutant> generate_mutants(const std::string& prompt, const CadProgram& reference,
                                     Planner* planner, int k, std::uint64_t seed);

/// Deterministic catalog application: cycles the five operators over
/// enumeration-ordered sites; byte-identical for a fixed seed and reference.
std::vector<Mutant> deterministic_mutants(const CadProgram& reference, int k, std::uint64_t seed);

/// ReAct repair loop: executes, feeds the error trace back, accepts the first
/// valid revision; discarded (nullopt) after max_iters failures.
std::optional<Mutant> repair_mutant(Mutant candidate, const Executor& ex, Planner* planner,
                                    int max_iters);

/// Executes candidates and retains those with iou_min <= IoU(mutant,
/// reference) <= iou_max; each retained mutant records its IoU and model.
struct FilteredMutant {
    Mutant mutant;
    BRepModel model;
};
std::vector<FilteredMutant> filter_mutants(const std::vector<Mutant>& candidates,
                                           const BRepModel& reference_model, const Executor& ex,
                                           double iou_min, double iou_max, int resolution);

// Mutant store: directory of {sample-id}/{mutant-id}.json.
void save_mutants(const std::filesystem::path& store_dir, const std::string& sample_id,
                  const std::vector<Mutant>& mutants);
std::vector<Mutant> load_mutants(const std::filesystem::path& store_dir,
                                 const std::string& sample_id);

}  // namespace cadbench
