#include "cadbench/test_suite.hpp"

#include "cadbench/planner.hpp"

#include <algorithm>
#include <set>

namespace cadbench {

using json = nlohmann::ordered_json;

const char* to_string(TestCategory c) {
    switch (c) {
    case TestCategory::solid_shell_validity: return "solid-shell-validity";
    case TestCategory::topology: return "topology";
    case TestCategory::geometric_types: return "geometric-types";
    case TestCategory::dimensions_ratios: return "dimensions-ratios";
    case TestCategory::volumetric: return "volumetric";
    default: return "spatial-arrangement";
    }
}

TestCategory category_from_string(const std::string& s) {
    if (s == "solid-shell-validity") return TestCategory::solid_shell_validity;
    if (s == "topology") return TestCategory::topology;
    if (s == "geometric-types") return TestCategory::geometric_types;
    if (s == "dimensions-ratios") return TestCategory::dimensions_ratios;
    if (s == "volumetric") return TestCategory::volumetric;
    if (s == "spatial-arrangement") return TestCategory::spatial_arrangement;
    throw std::invalid_argument("unknown test category: " + s);
}

const char* to_string(PromptType p) {
    return p == PromptType::abstract_prompt ? "abstract" : "detailed";
}

PromptType prompt_type_from_string(const std::string& s) {
    if (s == "abstract") return PromptType::abstract_prompt;
    if (s == "detailed") return PromptType::detailed_prompt;
    throw std::invalid_argument("unknown prompt type: " + s);
}

const CadTest* TestSuite::find(const std::string& id) const {
    for (const auto& t : tests) {
        if (t.id == id) return &t;
    }
    return nullptr;
}

void TestSuite::validate() const {
    std::set<std::string> ids;
    for (const auto& t : tests) {
        if (t.id.empty()) throw std::invalid_argument("test with empty id");
        if (!ids.insert(t.id).second) throw std::invalid_argument("duplicate test id: " + t.id);
        if (t.description.empty()) {
            throw std::invalid_argument("test " + t.id + " has an empty description");
        }
        if (t.body.empty()) throw std::invalid_argument("test " + t.id + " has an empty body");
    }
}

SuiteReport run_suite(const TestSuite& suite, const BRepModel& model, const Executor& ex,
                      std::int64_t per_test_timeout_ms) {
    SuiteReport report;
    if (model.empty()) return SuiteReport::invalid();
    if (suite.tests.empty()) return report;
    std::vector<std::pair<std::string, std::string>> batch;
    batch.reserve(suite.tests.size());
    for (const auto& t : suite.tests) batch.emplace_back(t.id, t.body);
    const auto results = ex.execute_tests(batch, model, per_test_timeout_ms);
    for (size_t i = 0; i < suite.tests.size(); ++i) {
        report.outcomes[suite.tests[i].id] =
            TestResultRecord{results[i].verdict, results[i].message, results[i].duration_ms};
    }
    return report;
}

bool conjunction(const SuiteReport& report) {
    if (report.model_status != ModelStatus::ok) return false;
    if (report.outcomes.empty()) return false;  // an empty suite certifies nothing
    return std::all_of(report.outcomes.begin(), report.outcomes.end(), [](const auto& kv) {
        return kv.second.verdict == script::TestVerdict::pass;
    });
}

bool is_partition(const GroupMap& groups, const TestSuite& suite) {
    std::set<std::string> seen;
    size_t total = 0;
    for (const auto& [gid, g] : groups) {
        for (const auto& id : g.test_ids) {
            if (!suite.find(id)) return false;
            if (!seen.insert(id).second) return false;
            ++total;
        }
    }
    return total == suite.tests.size();
}

namespace {

GroupMap fallback_groups(const TestSuite& suite) {
    GroupMap out;
    for (const auto& t : suite.tests) {
        RequirementGroup g;
        g.id = "g-" + t.id;
        g.name = "requirement for " + t.id;
        g.description = t.description;
        g.test_ids = {t.id};
        out[g.id] = std::move(g);
    }
    return out;
}

}  // namespace

GroupMap group_requirements(const TestSuite& suite, const std::string& prompt, Planner* planner) {
    if (suite.tests.empty()) return {};
    if (planner == nullptr) return fallback_groups(suite);

    PlannerRequest req;
    req.role = PlannerRole::group;
    req.prompt =
        "Group the following tests by the prompt requirement they verify. Every test id must "
        "appear in exactly one group. Reply with {\"groups\":[{\"id\",\"name\",\"description\","
        "\"test_ids\"}]}.\n\nDesign prompt: " +
        prompt;
    for (const auto& t : suite.tests) {
        req.observations.push_back(t.id + ": " + t.description);
    }
    try {
        const PlannerResponse resp = planner->complete(req);
        if (resp.malformed || !resp.artifacts.contains("groups")) {
            return fallback_groups(suite);
        }
        GroupMap out;
        for (const auto& g : resp.artifacts["groups"]) {
            RequirementGroup rg;
            rg.id = g.value("id", "");
            rg.name = g.value("name", rg.id);
            rg.description = g.value("description", "");
            for (const auto& id : g.value("test_ids", json::array())) {
                rg.test_ids.push_back(id);
            }
            if (rg.id.empty()) return fallback_groups(suite);
            out[rg.id] = std::move(rg);
        }
        if (!is_partition(out, suite)) return fallback_groups(suite);
        return out;
    } catch (const PlannerError&) {
        return fallback_groups(suite);
    }
}

TestCategory classify_category_keywords(const CadTest& test) {
    std::string text = test.description + " " + test.body;
    std::transform(text.begin(), text.end(), text.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    auto has_any = [&](std::initializer_list<const char*> keys) {
        return std::any_of(keys.begin(), keys.end(),
                           [&](const char* k) { return text.find(k) != std::string::npos; });
    };
    if (has_any({"single_solid", "single_shell", "solid_count", "shell_count", "watertight",
                 "positive_volume", "connected", "valid solid", "one solid", "solid body"})) {
        return TestCategory::solid_shell_validity;
    }
    if (has_any({"volume", "fill factor", "occupied"})) {
        return TestCategory::volumetric;
    }
    if (has_any({"concentric", "coaxial", "center", "symmetr", "align", "offset", "parallel",
                 "perpendicular", "contains", "through", "position", "placement", "spacing"})) {
        return TestCategory::spatial_arrangement;
    }
    if (has_any({"cylindrical", "spherical", "conical", "planar", "toroidal", "class_of",
                 "circle", "arc", "straight"})) {
        return TestCategory::geometric_types;
    }
    if (has_any({"bbox", "area", "radius", "length", "dimension", "ratio", "aspect", "width",
                 "height", "thick", "diameter", "deep"})) {
        return TestCategory::dimensions_ratios;
    }
    return TestCategory::topology;
}

TestCategory classify_category(const CadTest& test, Planner* planner) {
    if (planner == nullptr) return classify_category_keywords(test);
    PlannerRequest req;
    req.role = PlannerRole::classify;
    req.prompt =
        "Classify this test into exactly one category: solid-shell-validity, topology, "
        "geometric-types, dimensions-ratios, volumetric, spatial-arrangement. Reply with "
        "{\"category\": \"...\"}.\n\nDescription: " +
        test.description + "\nBody:\n" + test.body;
    try {
        const PlannerResponse resp = planner->complete(req);
        if (!resp.malformed && resp.artifacts.contains("category")) {
            return category_from_string(resp.artifacts["category"].get<std::string>());
        }
    } catch (const PlannerError&) {
    } catch (const std::invalid_argument&) {
    }
    return classify_category_keywords(test);
}

json suite_to_json(const TestSuite& suite) {
    json arr = json::array();
    for (const auto& t : suite.tests) {
        arr.push_back({{"id", t.id},
                       {"body", t.body},
                       {"description", t.description},
                       {"group", t.group},
                       {"category", to_string(t.category)}});
    }
    return arr;
}

TestSuite suite_from_json(const json& j, const std::string& sample_id, PromptType type) {
    TestSuite suite;
    suite.sample_id = sample_id;
    suite.prompt_type = type;
    for (const auto& t : j) {
        CadTest test;
        test.id = t.at("id");
        test.body = t.at("body");
        test.description = t.at("description");
        test.group = t.value("group", "");
        test.category = category_from_string(t.value("category", "topology"));
        suite.tests.push_back(std::move(test));
    }
    suite.validate();
    return suite;
}

json report_to_json(const SuiteReport& report, bool zero_durations) {
    json j;
    j["model_status"] = report.model_status == ModelStatus::ok ? "ok" : "invalid";
    j["outcomes"] = json::object();
    for (const auto& [id, r] : report.outcomes) {
        j["outcomes"][id] = {{"verdict", script::to_string(r.verdict)},
                             {"message", r.message},
                             {"duration_ms", zero_durations ? 0 : r.duration_ms}};
    }
    return j;
}

SuiteReport report_from_json(const json& j) {
    SuiteReport report;
    report.model_status = j.value("model_status", "ok") == "ok" ? ModelStatus::ok : ModelStatus::invalid;
    for (const auto& [id, r] : j.value("outcomes", json::object()).items()) {
        report.outcomes[id] =
            TestResultRecord{script::test_verdict_from_string(r.value("verdict", "error")),
                             r.value("message", ""), r.value("duration_ms", std::int64_t(0))};
    }
    return report;
}

json groups_to_json(const GroupMap& groups) {
    json arr = json::array();
    for (const auto& [id, g] : groups) {
        arr.push_back({{"id", g.id},
                       {"name", g.name},
                       {"description", g.description},
                       {"test_ids", g.test_ids}});
    }
    return arr;
}

GroupMap groups_from_json(const json& j) {
    GroupMap out;
    for (const auto& g : j) {
        RequirementGroup rg;
        rg.id = g.at("id");
        rg.name = g.value("name", rg.id);
        rg.description = g.value("description", "");
        for (const auto& id : g.value("test_ids", json::array())) rg.test_ids.push_back(id);
        out[rg.id] = std::move(rg);
    }
    return out;
}

}  // namespace cadbench
