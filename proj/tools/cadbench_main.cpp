#include "cadbench/bench.hpp"
#include "cadbench/config.hpp"
#include "cadbench/step_io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

using namespace cadbench;

struct CommonArgs {
    std::string dataset;
    std::string sample;  // empty = all samples
    std::string prompt_type = "detailed";
    std::string config_file;
    std::map<std::string, std::string> overrides;
};

void add_config_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_file, "JSON config file");
    static const char* keys[] = {
        "seed",          "workers",         "iou-resolution",  "program-timeout-ms",
        "test-timeout-ms", "memory-limit-mb", "mutants",        "repair-iters",
        "iou-min",       "iou-max",         "augmentations",   "rounds",
        "planner-mode",  "planner-fixture", "transcript-out",  "planner-host",
        "planner-model", "planner-key-env", "worker",          "discard-on-augmented",
    };
    for (const char* key : keys) {
        cmd->add_option_function<std::string>(
            std::string("--") + key,
            [&args, key](const std::string& v) { args.overrides[key] = v; });
    }
}

HarnessConfig resolve_config(const CommonArgs& args) {
    std::optional<std::filesystem::path> file;
    if (!args.config_file.empty()) file = args.config_file;
    return HarnessConfig::resolve(file, args.overrides);
}

std::vector<PromptType> prompt_types_of(const std::string& s) {
    if (s == "both") return {PromptType::detailed_prompt, PromptType::abstract_prompt};
    return {prompt_type_from_string(s)};
}

std::vector<BenchmarkSample> select_samples(const CommonArgs& args) {
    const IngestResult ingested = ingest(args.dataset);
    for (const auto& issue : ingested.issues) {
        std::fprintf(stderr, "[ingest] sample %s: %s%s%s: %s\n", issue.sample_id.c_str(),
                     issue.file.c_str(), issue.field.empty() ? "" : " field ",
                     issue.field.c_str(), issue.message.c_str());
    }
    std::vector<BenchmarkSample> out;
    for (const auto& s : ingested.samples) {
        if (args.sample.empty() || s.sample_id == args.sample) out.push_back(s);
    }
    if (out.empty()) {
        std::fprintf(stderr, "warning: no matching samples in %s\n", args.dataset.c_str());
    }
    return out;
}

int run_pipeline_stage(const CommonArgs& args, const std::string& stop_after, bool force) {
    const HarnessConfig cfg = resolve_config(args);
    const Executor ex(cfg.executor_config());
    const auto planner = cfg.make_planner();
    PipelineConfig pcfg = cfg.pipeline_config();
    pcfg.stop_after = stop_after;
    pcfg.force = force;

    int failures = 0;
    for (const auto& sample : select_samples(args)) {
        for (const PromptType type : prompt_types_of(args.prompt_type)) {
            const PipelineOutcome r = build_pipeline(sample, type, pcfg, ex, planner.get());
            if (r.completed) {
                std::printf("[ok] %s/%s\n", sample.sample_id.c_str(), to_string(type));
            } else {
                ++failures;
                std::printf("[failed] %s/%s at %s: %s\n", sample.sample_id.c_str(),
                            to_string(type), r.failed_stage.c_str(), r.diagnosis.c_str());
            }
        }
    }
    return failures == 0 ? 0 : 1;
}

int cmd_validate_suite(const CommonArgs& args) {
    const HarnessConfig cfg = resolve_config(args);
    const Executor ex(cfg.executor_config());

    std::printf("%-24s %-9s %-18s %-18s %-8s\n", "sample", "prompt", "Valid", "Sound", "MScore");
    int failures = 0;
    SuiteValidationAggregates total;
    for (const auto& sample : select_samples(args)) {
        for (const PromptType type : prompt_types_of(args.prompt_type)) {
            const auto stage_dir = sample.dir / "runs" / "pipeline" / to_string(type);
            const auto suite_path = stage_dir / "suite.json";
            std::optional<TestSuite> suite = sample.suite(type);
            if (std::filesystem::exists(suite_path)) {
                std::ifstream f(suite_path);
                nlohmann::ordered_json j;
                f >> j;
                suite = suite_from_json(j, sample.sample_id, type);
            }
            if (!suite) {
                std::printf("%-24s %-9s no suite available\n", sample.sample_id.c_str(),
                            to_string(type));
                ++failures;
                continue;
            }
            if (!std::filesystem::exists(stage_dir / "sets" / "manifest.json")) {
                std::printf("%-24s %-9s no evaluation sets (run build-sets first)\n",
                            sample.sample_id.c_str(), to_string(type));
                ++failures;
                continue;
            }
            const EvaluationSets sets = load_sets_manifest(stage_dir / "sets");
            const SuiteValidationResult r = validate_suite(sample, type, *suite, sets, ex);
            const auto& a = r.aggregates;
            std::printf("%-24s %-9s %5.1f%% (%d/%d)  %5.1f%% (%d/%d)   %.3f\n",
                        sample.sample_id.c_str(), to_string(type), 100 * a.valid, a.valid_tests,
                        a.total_tests, 100 * a.sound, a.sound_tests, a.valid_tests, a.mscore);
            total.total_tests += a.total_tests;
            total.valid_tests += a.valid_tests;
            total.sound_tests += a.sound_tests;
            total.mutants_total += a.mutants_total;
            total.mutants_killed += a.mutants_killed;

            nlohmann::ordered_json out;
            out["sample_id"] = r.sample_id;
            out["prompt_type"] = to_string(type);
            out["valid"] = a.valid;
            out["sound"] = a.sound;
            out["mscore"] = a.mscore;
            out["counts"] = {{"total_tests", a.total_tests},
                             {"valid_tests", a.valid_tests},
                             {"sound_tests", a.sound_tests},
                             {"mutants_total", a.mutants_total},
                             {"mutants_killed", a.mutants_killed}};
            std::ofstream vf(stage_dir / "validation.json");
            vf << out.dump(2) << "\n";
        }
    }
    if (total.total_tests > 0) {
        const double valid = double(total.valid_tests) / total.total_tests;
        const double sound = total.valid_tests ? double(total.sound_tests) / total.valid_tests : 0;
        const double mscore =
            total.mutants_total ? double(total.mutants_killed) / total.mutants_total : 0;
        std::printf("%-24s %-9s %5.1f%% (%d/%d)  %5.1f%% (%d/%d)   %.3f\n", "TOTAL", "",
                    100 * valid, total.valid_tests, total.total_tests, 100 * sound,
                    total.sound_tests, total.valid_tests, mscore);
    }
    return failures == 0 ? 0 : 1;
}

int cmd_run(const CommonArgs& args, const std::string& strategy, const std::string& out_dir,
            int max_rounds) {
    const HarnessConfig cfg = resolve_config(args);
    const Executor ex(cfg.executor_config());
    const auto planner = cfg.make_planner();
    if (!planner) {
        std::fprintf(stderr, "run requires --planner-mode scripted or live\n");
        return 2;
    }
    RunConfig rcfg;
    rcfg.generation.strategy = strategy_from_string(strategy);
    rcfg.generation.max_rounds = max_rounds;
    rcfg.generation.program_timeout_ms = cfg.program_timeout_ms;
    rcfg.generation.test_timeout_ms = cfg.test_timeout_ms;
    rcfg.prompt_types = prompt_types_of(args.prompt_type);
    rcfg.deterministic_artifacts = cfg.deterministic_artifacts;

    const BenchmarkReport report =
        run_benchmark(select_samples(args), rcfg, ex, *planner, out_dir);
    std::printf("PR %.3f  RS %.3f  IR %.3f  (%zu sample results)\n", report.pr, report.rs,
                report.ir, report.per_sample.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"test-driven CAD generation benchmark harness"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string strategy = "react";
    std::string out_dir = "runs/bench";
    std::string report_dir;
    std::string format = "both";
    int max_rounds = 5;
    bool force = false;

    auto add_common = [&](CLI::App* cmd, bool needs_dataset) {
        if (needs_dataset) {
            cmd->add_option("--dataset", args.dataset, "dataset directory")->required();
            cmd->add_option("--sample", args.sample, "restrict to one sample id");
            cmd->add_option("--prompt-type", args.prompt_type, "detailed | abstract | both");
        }
        add_config_flags(cmd, args);
    };

    auto* mutate = app.add_subcommand("mutate", "generate and repair mutant candidates");
    add_common(mutate, true);
    mutate->add_flag("--force", force, "re-run completed stages");

    auto* build_sets_cmd = app.add_subcommand("build-sets", "build passing and mutation sets");
    add_common(build_sets_cmd, true);
    build_sets_cmd->add_flag("--force", force, "re-run completed stages");

    auto* refine = app.add_subcommand("refine", "run the iterative suite refinement loop");
    add_common(refine, true);
    refine->add_flag("--force", force, "re-run completed stages");

    auto* validate = app.add_subcommand("validate-suite", "emit Valid / Sound / MScore");
    add_common(validate, true);

    auto* run = app.add_subcommand("run", "run a generation benchmark");
    add_common(run, true);
    run->add_option("--strategy", strategy, "k-shot | skilled | react | cadtest | cadtest-log")
        ->required();
    run->add_option("--out", out_dir, "output directory")->required();
    run->add_option("--max-rounds", max_rounds, "planner rounds for iterative strategies");

    auto* report = app.add_subcommand("report", "emit reports from a completed run directory");
    report->add_option("--run", report_dir, "run directory")->required();
    report->add_option("--format", format, "json | csv | both");
    add_config_flags(report, args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (mutate->parsed()) return run_pipeline_stage(args, "mutants", force);
        if (build_sets_cmd->parsed()) return run_pipeline_stage(args, "sets", force);
        if (refine->parsed()) return run_pipeline_stage(args, "", force);
        if (validate->parsed()) return cmd_validate_suite(args);
        if (run->parsed()) return cmd_run(args, strategy, out_dir, max_rounds);
        if (report->parsed()) {
            const ReportFiles files = cadbench::emit_report(report_dir, format);
            if (!files.json_path.empty()) std::printf("wrote %s\n", files.json_path.c_str());
            if (!files.table_csv_path.empty()) {
                std::printf("wrote %s\n", files.table_csv_path.c_str());
            }
            if (!files.categories_csv_path.empty()) {
                std::printf("wrote %s\n", files.categories_csv_path.c_str());
            }
            if (files.partial) std::printf("note: report is partial (pending samples)\n");
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
