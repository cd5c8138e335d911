#include "cadbench/bench.hpp"

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

SampleResult run_sample(const BenchmarkSample& sample, PromptType type, const RunConfig& config,
                        const Executor& ex, Planner& planner,
                        const std::filesystem::path& out_dir) {
    const auto results_dir = out_dir / "results";
    std::filesystem::create_directories(results_dir);
    const auto result_path =
        results_dir / (sample.sample_id + "-" + to_string(type) + ".json");
    if (std::filesystem::exists(result_path)) {
        return sample_result_from_json(json::parse(read_text(result_path)));
    }

    const auto& suite_opt = sample.suite(type);
    if (!suite_opt) {
        throw SchemaError("sample " + sample.sample_id + " has no " +
                          std::string(to_string(type)) + " suite");
    }
    const TestSuite& suite = *suite_opt;

    SampleResult r;
    r.sample_id = sample.sample_id;
    r.prompt_type = type;
    for (const auto& t : suite.tests) r.categories[t.id] = t.category;
    r.groups = sample.groups(type);
    if (r.groups.empty()) {
        // Fall back to the suite's own group ids.
        for (const auto& t : suite.tests) {
            const std::string gid = t.group.empty() ? "g-" + t.id : t.group;
            auto& g = r.groups[gid];
            g.id = gid;
            if (g.name.empty()) g.name = gid;
            g.test_ids.push_back(t.id);
        }
    }

    const GenerationOutcome gen = generate(sample.prompt(type), planner, ex, config.generation);
    const auto transcript_dir = out_dir / "transcripts";
    std::filesystem::create_directories(transcript_dir);
    write_text(transcript_dir / (sample.sample_id + "-" + to_string(type) + ".json"),
               gen.transcript.dump(2) + "\n");

    if (gen.final_result.status == ExecStatus::ok && gen.final_result.model) {
        r.generation_status = GenStatus::ok;
        // Scoring uses only the benchmark suite; self-tests are never scored.
        r.suite_report = run_suite(suite, *gen.final_result.model, ex, config.generation.test_timeout_ms);
    } else {
        r.generation_status = GenStatus::invalid;
        r.suite_report = SuiteReport::invalid();
    }

    write_text(result_path, sample_result_to_json(r).dump(2) + "\n");
    return r;
}

BenchmarkReport run_benchmark(const std::vector<BenchmarkSample>& samples, const RunConfig& config,
                              const Executor& ex, Planner& planner,
                              const std::filesystem::path& out_dir) {
    std::vector<SampleResult> results;
    for (const auto& s : samples) {
        for (const PromptType type : config.prompt_types) {
            results.push_back(run_sample(s, type, config, ex, planner, out_dir));
        }
    }
    BenchmarkReport report = aggregate_report(std::move(results));
    write_text(out_dir / "aggregate.json", report_to_json(report).dump(2) + "\n");
    write_text(out_dir / "table.csv", report_to_csv(report));
    write_text(out_dir / "categories.csv", category_csv(report));
    return report;
}

ReportFiles emit_report(const std::filesystem::path& run_dir, const std::string& format) {
    const auto results_dir = run_dir / "results";
    if (!std::filesystem::exists(results_dir)) {
        throw SchemaError("run directory has no results/: " + run_dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(results_dir)) {
        if (e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<SampleResult> results;
    ReportFiles out;
    for (const auto& p : files) {
        try {
            results.push_back(sample_result_from_json(json::parse(read_text(p))));
        } catch (const std::exception&) {
            out.partial = true;  // pending or corrupt sample left in place
        }
    }
    const BenchmarkReport report = aggregate_report(std::move(results));
    json j = report_to_json(report);
    if (out.partial) j["partial"] = true;

    if (format == "json" || format == "both") {
        out.json_path = run_dir / "aggregate.json";
        write_text(out.json_path, j.dump(2) + "\n");
    }
    if (format == "csv" || format == "both") {
        out.table_csv_path = run_dir / "table.csv";
        write_text(out.table_csv_path, report_to_csv(report));
        out.categories_csv_path = run_dir / "categories.csv";
        write_text(out.categories_csv_path, category_csv(report));
    }
    return out;
}

}  // namespace cadbench
