#include "cadbench/metrics.hpp"

#include <algorithm>
#include <cstdio>

namespace cadbench {

using json = nlohmann::ordered_json;

double validity_ratio(const std::vector<TestValidityRecord>& records) {
    if (records.empty()) throw MetricsError("validity_ratio: no records");
    const auto valid = std::count_if(records.begin(), records.end(), [](const auto& r) {
        return r.verdict != script::TestVerdict::error;
    });
    return double(valid) / double(records.size());
}

double soundness_ratio(const std::vector<TestValidityRecord>& records) {
    std::size_t valid = 0, sound = 0;
    for (const auto& r : records) {
        if (r.verdict == script::TestVerdict::error) continue;
        ++valid;
        if (r.verdict == script::TestVerdict::pass) ++sound;
    }
    if (valid == 0) throw MetricsError("soundness_ratio: no valid tests");
    return double(sound) / double(valid);
}

bool is_killed(const SuiteReport& report) {
    return std::any_of(report.outcomes.begin(), report.outcomes.end(), [](const auto& kv) {
        return kv.second.verdict != script::TestVerdict::pass;
    });
}

double mutation_score(const std::vector<SuiteReport>& mutation_reports) {
    if (mutation_reports.empty()) throw MetricsError("mutation_score: empty mutation set");
    const auto killed = std::count_if(mutation_reports.begin(), mutation_reports.end(),
                                      [](const SuiteReport& r) { return is_killed(r); });
    return double(killed) / double(mutation_reports.size());
}

double pass_rate(const std::vector<SampleResult>& results) {
    if (results.empty()) throw MetricsError("pass_rate: no samples");
    const auto passed = std::count_if(results.begin(), results.end(), [](const SampleResult& r) {
        return r.generation_status == GenStatus::ok && conjunction(r.suite_report);
    });
    return double(passed) / double(results.size());
}

double requirement_score(const SampleResult& result) {
    if (result.generation_status == GenStatus::invalid) return 0.0;
    if (result.groups.empty()) return 0.0;
    std::size_t satisfied = 0;
    for (const auto& [gid, group] : result.groups) {
        const bool all_pass = std::all_of(
            group.test_ids.begin(), group.test_ids.end(), [&](const std::string& id) {
                auto it = result.suite_report.outcomes.find(id);
                return it != result.suite_report.outcomes.end() &&
                       it->second.verdict == script::TestVerdict::pass;
            });
        if (all_pass) ++satisfied;
    }
    return double(satisfied) / double(result.groups.size());
}

double requirement_score_aggregate(const std::vector<SampleResult>& results) {
    if (results.empty()) throw MetricsError("requirement_score: no samples");
    double sum = 0.0;
    for (const auto& r : results) sum += requirement_score(r);
    return sum / double(results.size());
}

double invalid_ratio(const std::vector<SampleResult>& results) {
    if (results.empty()) throw MetricsError("invalid_ratio: no samples");
    const auto invalid = std::count_if(results.begin(), results.end(), [](const SampleResult& r) {
        return r.generation_status == GenStatus::invalid;
    });
    return double(invalid) / double(results.size());
}

std::map<TestCategory, double> category_accuracy(const std::vector<SampleResult>& results) {
    std::map<TestCategory, std::pair<int, int>> counts;  // category → (passed, total)
    for (const auto& r : results) {
        for (const auto& [id, cat] : r.categories) {
            auto& [passed, total] = counts[cat];
            ++total;
            if (r.generation_status == GenStatus::ok) {
                auto it = r.suite_report.outcomes.find(id);
                if (it != r.suite_report.outcomes.end() &&
                    it->second.verdict == script::TestVerdict::pass) {
                    ++passed;
                }
            }
        }
    }
    std::map<TestCategory, double> out;
    for (const auto& [cat, pt] : counts) {
        if (pt.second > 0) out[cat] = double(pt.first) / double(pt.second);
    }
    return out;
}

BenchmarkReport aggregate_report(std::vector<SampleResult> results) {
    BenchmarkReport report;
    report.per_sample = std::move(results);
    if (!report.per_sample.empty()) {
        report.pr = pass_rate(report.per_sample);
        report.rs = requirement_score_aggregate(report.per_sample);
        report.ir = invalid_ratio(report.per_sample);
        report.acc = category_accuracy(report.per_sample);
    }
    return report;
}

json report_to_json(const BenchmarkReport& report) {
    json j;
    j["aggregates"] = {{"PR", report.pr}, {"RS", report.rs}, {"IR", report.ir}};
    j["aggregates"]["Acc"] = json::object();
    for (const auto& [cat, acc] : report.acc) {
        j["aggregates"]["Acc"][to_string(cat)] = acc;
    }
    if (report.suite_validation) {
        const auto& sv = *report.suite_validation;
        j["suite_validation"] = {{"Valid", sv.valid},
                                 {"Sound", sv.sound},
                                 {"MScore", sv.mscore},
                                 {"total_tests", sv.total_tests},
                                 {"valid_tests", sv.valid_tests},
                                 {"sound_tests", sv.sound_tests},
                                 {"mutants_total", sv.mutants_total},
                                 {"mutants_killed", sv.mutants_killed}};
    }
    j["samples"] = json::array();
    for (const auto& r : report.per_sample) {
        json s;
        s["sample_id"] = r.sample_id;
        s["prompt_type"] = to_string(r.prompt_type);
        s["generation_status"] = r.generation_status == GenStatus::ok ? "ok" : "invalid";
        s["conjunction"] = conjunction(r.suite_report);
        s["requirement_score"] = requirement_score(r);
        s["report"] = report_to_json(r.suite_report, true);
        j["samples"].push_back(std::move(s));
    }
    return j;
}

namespace {

std::string fmt3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace

std::string report_to_csv(const BenchmarkReport& report) {
    // One row per prompt type present, shaped like the evaluation table:
    // prompt_type, IR, RS, PR, n_samples.
    std::string out = "prompt_type,IR,RS,PR,n_samples\n";
    for (const PromptType type : {PromptType::detailed_prompt, PromptType::abstract_prompt}) {
        std::vector<SampleResult> subset;
        for (const auto& r : report.per_sample) {
            if (r.prompt_type == type) subset.push_back(r);
        }
        if (subset.empty()) continue;
        out += std::string(to_string(type)) + "," + fmt3(invalid_ratio(subset)) + "," +
               fmt3(requirement_score_aggregate(subset)) + "," + fmt3(pass_rate(subset)) + "," +
               std::to_string(subset.size()) + "\n";
    }
    return out;
}

std::string category_csv(const BenchmarkReport& report) {
    std::string out = "category,accuracy\n";
    for (const auto& [cat, acc] : report.acc) {
        out += std::string(to_string(cat)) + "," + fmt3(acc) + "\n";
    }
    return out;
}

}  // namespace cadbench
