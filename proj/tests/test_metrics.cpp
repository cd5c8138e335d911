#include "doctest.h"

#include "cadbench/metrics.hpp"

#include <cmath>
#include <random>

using namespace cadbench;
using script::TestVerdict;

namespace {

// --- independent brute-force recount oracle ---------------------------------
// Walks raw verdict records with plain loops; shares no code with the metrics
// module's counting.

struct Oracle {
    static double pass_rate(const std::vector<SampleResult>& rs) {
        int n = 0;
        for (const auto& r : rs) {
            if (r.generation_status != GenStatus::ok) continue;
            if (r.suite_report.outcomes.empty()) continue;
            bool all = true;
            for (const auto& [id, rec] : r.suite_report.outcomes) {
                if (rec.verdict != TestVerdict::pass) all = false;
            }
            if (all) ++n;
        }
        return double(n) / double(rs.size());
    }
    static double requirement_score(const SampleResult& r) {
        if (r.generation_status != GenStatus::ok || r.groups.empty()) return 0.0;
        int sat = 0;
        for (const auto& [gid, g] : r.groups) {
            bool all = true;
            for (const auto& id : g.test_ids) {
                bool pass = false;
                for (const auto& [oid, rec] : r.suite_report.outcomes) {
                    if (oid == id && rec.verdict == TestVerdict::pass) pass = true;
                }
                if (!pass) all = false;
            }
            if (all) ++sat;
        }
        return double(sat) / double(r.groups.size());
    }
    static double invalid_ratio(const std::vector<SampleResult>& rs) {
        int n = 0;
        for (const auto& r : rs) {
            if (r.generation_status == GenStatus::invalid) ++n;
        }
        return double(n) / double(rs.size());
    }
    static std::map<TestCategory, double> category_accuracy(const std::vector<SampleResult>& rs) {
        std::map<TestCategory, int> pass, total;
        for (const auto& r : rs) {
            for (const auto& [id, cat] : r.categories) {
                total[cat] += 1;
                if (r.generation_status == GenStatus::ok) {
                    auto it = r.suite_report.outcomes.find(id);
                    if (it != r.suite_report.outcomes.end() &&
                        it->second.verdict == TestVerdict::pass) {
                        pass[cat] += 1;
                    }
                }
            }
        }
        std::map<TestCategory, double> out;
        for (const auto& [cat, t] : total) out[cat] = double(pass[cat]) / double(t);
        return out;
    }
};

std::vector<SampleResult> random_fixture(std::mt19937_64& rng, int n_samples) {
    std::uniform_int_distribution<int> verdict_pick(0, 2);
    std::uniform_int_distribution<int> ntests_pick(0, 8);
    std::uniform_int_distribution<int> invalid_pick(0, 4);
    std::uniform_int_distribution<int> cat_pick(0, 5);
    std::uniform_int_distribution<int> group_pick(1, 3);
    std::vector<SampleResult> out;
    for (int s = 0; s < n_samples; ++s) {
        SampleResult r;
        r.sample_id = "s" + std::to_string(s);
        r.prompt_type = s % 2 == 0 ? PromptType::detailed_prompt : PromptType::abstract_prompt;
        if (invalid_pick(rng) == 0) {
            r.generation_status = GenStatus::invalid;
            r.suite_report = SuiteReport::invalid();
        } else {
            r.generation_status = GenStatus::ok;
            const int n = ntests_pick(rng);
            for (int t = 0; t < n; ++t) {
                const std::string id = "t" + std::to_string(t);
                const auto v = static_cast<TestVerdict>(verdict_pick(rng));
                r.suite_report.outcomes[id] = {v, "m", 0};
                r.categories[id] = static_cast<TestCategory>(cat_pick(rng));
                const std::string gid = "g" + std::to_string(group_pick(rng));
                auto& g = r.groups[gid];
                g.id = gid;
                g.test_ids.push_back(id);
            }
        }
        // Invalid samples still carry categorized tests (from the benchmark
        // suite) so category accuracy can count them as failed.
        if (r.generation_status == GenStatus::invalid) {
            const int n = ntests_pick(rng);
            for (int t = 0; t < n; ++t) {
                const std::string id = "t" + std::to_string(t);
                r.categories[id] = static_cast<TestCategory>(cat_pick(rng));
                const std::string gid = "g" + std::to_string(group_pick(rng));
                auto& g = r.groups[gid];
                g.id = gid;
                g.test_ids.push_back(id);
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

TEST_CASE("metric arithmetic matches the brute-force recount on 50 fixtures") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const auto fixture = random_fixture(rng, 1 + trial % 9);
        CHECK(pass_rate(fixture) == Oracle::pass_rate(fixture));
        CHECK(invalid_ratio(fixture) == Oracle::invalid_ratio(fixture));
        double mean = 0.0;
        for (const auto& r : fixture) {
            CHECK(requirement_score(r) == Oracle::requirement_score(r));
            mean += Oracle::requirement_score(r);
        }
        CHECK(requirement_score_aggregate(fixture) == doctest::Approx(mean / fixture.size()).epsilon(1e-15));
        CHECK(category_accuracy(fixture) == Oracle::category_accuracy(fixture));
    }
}

TEST_CASE("paper spot values reproduce from their raw counts") {
    // Valid: 2543 of 2599.
    std::vector<TestValidityRecord> valid_records;
    for (int i = 0; i < 2599; ++i) {
        valid_records.push_back({"t" + std::to_string(i),
                                 i < 2543 ? TestVerdict::pass : TestVerdict::error});
    }
    CHECK(std::round(validity_ratio(valid_records) * 1000.0) / 1000.0 == 0.978);

    // Sound: 1191 of 1570 valid.
    std::vector<TestValidityRecord> sound_records;
    for (int i = 0; i < 1570; ++i) {
        sound_records.push_back({"t" + std::to_string(i),
                                 i < 1191 ? TestVerdict::pass : TestVerdict::fail});
    }
    CHECK(std::round(soundness_ratio(sound_records) * 1000.0) / 1000.0 == 0.759);

    // IR: 1 invalid of 200.
    std::vector<SampleResult> samples(200);
    for (int i = 0; i < 200; ++i) {
        samples[i].sample_id = "s" + std::to_string(i);
        samples[i].generation_status = i == 0 ? GenStatus::invalid : GenStatus::ok;
    }
    CHECK(invalid_ratio(samples) == 0.005);
}

TEST_CASE("mutation score counts fail-or-error kills") {
    SuiteReport killed_by_fail;
    killed_by_fail.outcomes["a"] = {TestVerdict::pass, "", 0};
    killed_by_fail.outcomes["b"] = {TestVerdict::fail, "", 0};
    SuiteReport killed_by_error;
    killed_by_error.outcomes["a"] = {TestVerdict::error, "", 0};
    SuiteReport survived;
    survived.outcomes["a"] = {TestVerdict::pass, "", 0};

    CHECK(mutation_score({killed_by_fail, killed_by_error, survived, survived}) == 0.5);
    CHECK(mutation_score({killed_by_fail, killed_by_error}) == 1.0);
    CHECK(mutation_score({killed_by_fail, survived, survived, survived}) == 0.25);
    CHECK_THROWS_AS(mutation_score({}), MetricsError);
}

TEST_CASE("validity and soundness edge cases") {
    std::vector<TestValidityRecord> all_valid{{"a", TestVerdict::pass}, {"b", TestVerdict::fail}};
    CHECK(validity_ratio(all_valid) == 1.0);
    CHECK(soundness_ratio(all_valid) == 0.5);
    std::vector<TestValidityRecord> none_valid{{"a", TestVerdict::error}};
    CHECK(validity_ratio(none_valid) == 0.0);
    CHECK_THROWS_AS(validity_ratio({}), MetricsError);
    CHECK_THROWS_AS(soundness_ratio(none_valid), MetricsError);
}

TEST_CASE("per-sample requirement score") {
    SampleResult r;
    r.generation_status = GenStatus::ok;
    r.suite_report.outcomes["a1"] = {TestVerdict::pass, "", 0};
    r.suite_report.outcomes["a2"] = {TestVerdict::pass, "", 0};
    r.suite_report.outcomes["b1"] = {TestVerdict::pass, "", 0};
    r.suite_report.outcomes["b2"] = {TestVerdict::fail, "", 0};
    r.suite_report.outcomes["c1"] = {TestVerdict::pass, "", 0};
    r.groups["A"] = {"A", "", "", {"a1", "a2"}};
    r.groups["B"] = {"B", "", "", {"b1", "b2"}};
    r.groups["C"] = {"C", "", "", {"c1"}};
    CHECK(requirement_score(r) == doctest::Approx(2.0 / 3.0));

    SampleResult invalid = r;
    invalid.generation_status = GenStatus::invalid;
    CHECK(requirement_score(invalid) == 0.0);
}

TEST_CASE("pass rate counts invalid generations as failures") {
    std::vector<SampleResult> rs(10);
    for (int i = 0; i < 10; ++i) {
        rs[i].sample_id = std::to_string(i);
        if (i < 6) {
            rs[i].generation_status = GenStatus::ok;
            rs[i].suite_report.outcomes["t"] = {TestVerdict::pass, "", 0};
        } else if (i < 9) {
            rs[i].generation_status = GenStatus::ok;
            rs[i].suite_report.outcomes["t"] = {TestVerdict::fail, "", 0};
        } else {
            rs[i].generation_status = GenStatus::invalid;
        }
    }
    CHECK(pass_rate(rs) == 0.6);
    std::vector<SampleResult> all_invalid(3);
    for (auto& r : all_invalid) r.generation_status = GenStatus::invalid;
    CHECK(pass_rate(all_invalid) == 0.0);
}

TEST_CASE("metrics are permutation invariant") {
    std::mt19937_64 rng(7);
    auto fixture = random_fixture(rng, 8);
    const double pr = pass_rate(fixture);
    const double rs = requirement_score_aggregate(fixture);
    const double ir = invalid_ratio(fixture);
    std::shuffle(fixture.begin(), fixture.end(), rng);
    CHECK(pass_rate(fixture) == pr);
    CHECK(requirement_score_aggregate(fixture) == doctest::Approx(rs).epsilon(1e-15));
    CHECK(invalid_ratio(fixture) == ir);
}

TEST_CASE("adding an invalid sample weakly decreases PR/RS and increases IR") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        auto fixture = random_fixture(rng, 6);
        const double pr0 = pass_rate(fixture);
        const double rs0 = requirement_score_aggregate(fixture);
        const double ir0 = invalid_ratio(fixture);
        SampleResult bad;
        bad.sample_id = "bad";
        bad.generation_status = GenStatus::invalid;
        fixture.push_back(bad);
        CHECK(pass_rate(fixture) <= pr0);
        CHECK(requirement_score_aggregate(fixture) <= rs0 + 1e-12);
        CHECK(invalid_ratio(fixture) > ir0);
    }
}

TEST_CASE("PR is bounded by RS aggregate when every group has a test") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const auto fixture = random_fixture(rng, 5);
        CHECK(pass_rate(fixture) <= requirement_score_aggregate(fixture) + 1e-12);
    }
}

TEST_CASE("category accuracy counts invalid-sample tests as failed") {
    SampleResult ok;
    ok.generation_status = GenStatus::ok;
    ok.suite_report.outcomes["a"] = {TestVerdict::pass, "", 0};
    ok.categories["a"] = TestCategory::volumetric;
    SampleResult bad;
    bad.generation_status = GenStatus::invalid;
    bad.categories["b"] = TestCategory::volumetric;
    const auto acc = category_accuracy({ok, bad});
    CHECK(acc.at(TestCategory::volumetric) == 0.5);
    CHECK(acc.count(TestCategory::topology) == 0);  // absent categories omitted
}

TEST_CASE("CSV emission is deterministic and consistent with JSON") {
    std::mt19937_64 rng(17);
    const auto fixture = random_fixture(rng, 6);
    const BenchmarkReport report = aggregate_report(fixture);
    const auto j = report_to_json(report);
    CHECK(j["aggregates"]["PR"].get<double>() == report.pr);
    CHECK(report_to_csv(report) == report_to_csv(report));
    CHECK(category_csv(report) == category_csv(report));
}
