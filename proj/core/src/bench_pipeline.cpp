#include "cadbench/bench.hpp"

#include "cadbench/step_io.hpp"

#include <fstream>

namespace cadbench {

using json = nlohmann::ordered_json;

namespace {

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    f << text;
}

std::string read_text(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

PipelineOutcome build_pipeline(const BenchmarkSample& sample, PromptType type,
                               const PipelineConfig& config, const Executor& ex,
                               Planner* planner) {
    PipelineOutcome out;
    out.sample_id = sample.sample_id;
    out.prompt_type = type;
    const auto stage_dir = sample.dir / "runs" / "pipeline" / to_string(type);
    std::filesystem::create_directories(stage_dir);
    const std::string prompt = sample.prompt(type);

    // Stage 0: the reference must execute.
    const auto ref_step = stage_dir / "reference.step";
    BRepModel reference_model;
    if (!config.force && std::filesystem::exists(ref_step)) {
        reference_model = load_step(ref_step);
    } else {
        const ExecutionResult r = ex.execute_program(sample.reference);
        if (r.status != ExecStatus::ok || !r.model) {
            out.failed_stage = "reference-execution";
            out.diagnosis = std::string(to_string(r.status)) + ": " + r.trace;
            return out;
        }
        reference_model = *r.model;
        save_step(reference_model, ref_step);
    }

    // Stage 1: mutants.
    const auto mutant_store = stage_dir / "mutants";
    std::vector<Mutant> candidates;
    if (!config.force && std::filesystem::exists(mutant_store / sample.sample_id)) {
        candidates = load_mutants(mutant_store, sample.sample_id);
    } else {
        try {
            candidates = generate_mutants(prompt, sample.reference, planner,
                                          config.mutation.count, config.mutation.seed);
        } catch (const PlannerError&) {
            candidates = deterministic_mutants(sample.reference, config.mutation.count,
                                               config.mutation.seed);
        }
        std::vector<Mutant> repaired;
        for (auto& c : candidates) {
            if (auto m = repair_mutant(std::move(c), ex, planner, config.mutation.max_repair_iters)) {
                repaired.push_back(std::move(*m));
            }
        }
        candidates = std::move(repaired);
        save_mutants(mutant_store, sample.sample_id, candidates);
    }
    if (config.stop_after == "mutants") {
        out.completed = true;
        return out;
    }

    // Stage 2: IoU filter + evaluation sets.
    const auto sets_dir = stage_dir / "sets";
    EvaluationSets sets;
    if (!config.force && std::filesystem::exists(sets_dir / "manifest.json")) {
        sets = load_sets_manifest(sets_dir);
    } else {
        const auto filtered =
            filter_mutants(candidates, reference_model, ex, config.mutation.iou_min,
                           config.mutation.iou_max, config.mutation.iou_resolution);
        const bool allow_scaling = type == PromptType::abstract_prompt;
        const auto transforms = sample_transforms(config.augmentations, allow_scaling, config.seed);
        sets = build_sets(reference_model, filtered, transforms);
        save_sets_manifest(sets_dir, sets);
    }
    if (config.stop_after == "sets") {
        out.completed = true;
        return out;
    }

    // Stage 3: initial suite + refinement.
    out.suite_path = stage_dir / "suite.json";
    out.transcript_path = stage_dir / "refinement.json";
    if (config.force || !std::filesystem::exists(out.suite_path)) {
        if (planner == nullptr) {
            out.failed_stage = "refinement";
            out.diagnosis = "suite refinement requires a planner (scripted or live)";
            return out;
        }
        std::optional<TestSuite> initial;
        if (const auto& existing = sample.suite(type)) initial = *existing;
        RefinementOutcome refined;
        try {
            refined = run_refinement(prompt, sets, ex, *planner, config.refinement, initial,
                                     sample.sample_id, type);
        } catch (const PlannerError& e) {
            out.failed_stage = "refinement";
            out.diagnosis = e.what();
            return out;
        }
        save_refinement_transcript(out.transcript_path, refined);
        write_text(out.suite_path, suite_to_json(refined.suite).dump(2) + "\n");
    }

    out.completed = true;
    (void)read_text;
    return out;
}

SuiteValidationResult validate_suite(const BenchmarkSample& sample, PromptType type,
                                     const TestSuite& suite, const EvaluationSets& sets,
                                     const Executor& ex) {
    SuiteValidationResult out;
    out.sample_id = sample.sample_id;
    out.prompt_type = type;

    // Valid / Sound on the un-augmented reference entry.
    const SetEntry* reference = nullptr;
    for (const auto& e : sets.passing) {
        if (e.is_reference && !e.skipped) reference = &e;
    }
    if (reference == nullptr) throw std::invalid_argument("validate_suite: no reference entry");
    const SuiteReport ref_report = run_suite(suite, reference->model, ex);
    for (const auto& [id, r] : ref_report.outcomes) {
        out.reference_records.push_back({id, r.verdict});
    }
    auto& agg = out.aggregates;
    agg.total_tests = int(out.reference_records.size());
    for (const auto& rec : out.reference_records) {
        if (rec.verdict != script::TestVerdict::error) ++agg.valid_tests;
        if (rec.verdict == script::TestVerdict::pass) ++agg.sound_tests;
    }
    agg.valid = agg.total_tests > 0 ? double(agg.valid_tests) / agg.total_tests : 0.0;
    agg.sound = agg.valid_tests > 0 ? double(agg.sound_tests) / agg.valid_tests : 0.0;

    // MScore over mutation entries.
    std::vector<std::string> ids;
    for (const auto& t : suite.tests) ids.push_back(t.id);
    for (const auto& e : sets.mutation) {
        if (e.skipped) continue;
        const SuiteReport r = run_suite(suite, e.model, ex);
        ++agg.mutants_total;
        if (kills_entry(r, ids)) ++agg.mutants_killed;
    }
    agg.mscore = agg.mutants_total > 0 ? double(agg.mutants_killed) / agg.mutants_total : 0.0;
    return out;
}

}  // namespace cadbench
