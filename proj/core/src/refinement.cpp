#include "cadbench/refinement.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace cadbench {

using json = nlohmann::ordered_json;

namespace {

CadTest test_from_json(const json& j, const std::string& fallback_id) {
    CadTest t;
    t.id = j.value("id", fallback_id);
    if (t.id.empty()) t.id = fallback_id;
    t.body = j.value("body", "");
    t.description = j.value("description", "");
    t.group = j.value("group", "");
    try {
        t.category = category_from_string(j.value("category", "topology"));
    } catch (const std::invalid_argument&) {
        t.category = TestCategory::topology;
    }
    return t;
}

std::string fresh_id(const TestSuite& suite, int& counter) {
    while (true) {
        const std::string id = "t" + std::to_string(++counter);
        if (!suite.find(id)) return id;
    }
}

}  // namespace

TestSuite initial_suite(const std::string& prompt, Planner& planner,
                        const std::string& reference_doc, const std::string& sample_id,
                        PromptType type) {
    if (prompt.empty()) throw std::invalid_argument("initial_suite: empty prompt");
    PlannerRequest req;
    req.role = PlannerRole::gen_tests;
    req.context_docs.push_back({"reference", reference_doc});
    req.prompt =
        "Write a suite of property tests for a CAD model generated from the design prompt below. "
        "Each test checks one verifiable property of the prompt, carries a description of the "
        "property, and must not assume any particular implementation. Reply with "
        "{\"tests\":[{\"id\",\"body\",\"description\",\"group\",\"category\"}]}.\n\n"
        "Design prompt: " +
        prompt;
    const PlannerResponse resp = planner.complete(req);
    if (resp.malformed || !resp.artifacts.contains("tests")) {
        throw PlannerError("gen-tests: planner returned no usable tests payload");
    }
    TestSuite suite;
    suite.sample_id = sample_id;
    suite.prompt_type = type;
    int counter = 0;
    for (const auto& tj : resp.artifacts["tests"]) {
        CadTest t = test_from_json(tj, "t" + std::to_string(counter + 1));
        if (suite.find(t.id)) t.id = fresh_id(suite, counter);
        ++counter;
        if (t.body.empty()) continue;
        if (t.description.empty()) t.description = "unnamed property";
        suite.tests.push_back(std::move(t));
    }
    return suite;
}

namespace {

struct RoundExecution {
    RoundRecord record;
    bool all_passing_ok = true;
    bool all_mutants_killed = true;
};

RoundExecution execute_round(const TestSuite& suite, const EvaluationSets& sets,
                             const Executor& ex, const RefinementConfig& config, int round) {
    RoundExecution out;
    out.record.round = round;
    for (const auto& e : sets.passing) {
        if (e.skipped) continue;
        SuiteReport r = run_suite(suite, e.model, ex, config.test_timeout_ms);
        if (!conjunction(r)) out.all_passing_ok = false;
        out.record.passing_reports.emplace_back(e.provenance, std::move(r));
    }
    std::vector<std::string> ids;
    for (const auto& t : suite.tests) ids.push_back(t.id);
    for (const auto& e : sets.mutation) {
        if (e.skipped) continue;
        SuiteReport r = run_suite(suite, e.model, ex, config.test_timeout_ms);
        if (!kills_entry(r, ids)) out.all_mutants_killed = false;
        out.record.mutation_reports.emplace_back(e.provenance, std::move(r));
    }
    if (sets.mutation.empty()) out.all_mutants_killed = true;
    return out;
}

std::vector<std::string> build_observations(const TestSuite& suite, const EvaluationSets& sets,
                                            const RoundRecord& record) {
    std::vector<std::string> obs;
    auto describe = [&](const std::string& id) {
        const CadTest* t = suite.find(id);
        return t ? t->description : std::string("removed test");
    };
    size_t pi = 0;
    for (const auto& e : sets.passing) {
        if (e.skipped) continue;
        const auto& [prov, report] = record.passing_reports[pi++];
        for (const auto& [id, r] : report.outcomes) {
            if (r.verdict == script::TestVerdict::pass) continue;
            obs.push_back("[passing] " + prov + " :: " + id + " (" + describe(id) +
                          "): " + script::to_string(r.verdict) + " — " + r.message);
        }
    }
    std::vector<std::string> ids;
    for (const auto& t : suite.tests) ids.push_back(t.id);
    size_t mi = 0;
    for (const auto& e : sets.mutation) {
        if (e.skipped) continue;
        const auto& [prov, report] = record.mutation_reports[mi++];
        if (kills_entry(report, ids)) {
            std::string killers;
            for (const auto& [id, r] : report.outcomes) {
                if (r.verdict != script::TestVerdict::pass) {
                    if (!killers.empty()) killers += ", ";
                    killers += id;
                }
            }
            obs.push_back("[mutation] " + prov + " :: killed by " + killers);
        } else {
            std::string detail;
            for (const auto& [id, r] : report.outcomes) {
                detail += "\n    " + id + ": " + r.message;
            }
            obs.push_back("[mutation] " + prov +
                          " :: UNDETECTED — every test passed on this violation;" + detail);
        }
    }
    return obs;
}

std::vector<PlannerAction> parse_actions(const json& artifacts) {
    std::vector<PlannerAction> out;
    if (!artifacts.contains("actions")) throw PlannerError("refine: missing actions payload");
    for (const auto& aj : artifacts["actions"]) {
        PlannerAction a;
        const std::string op = aj.value("op", "");
        if (op == "add") {
            a.op = PlannerAction::Op::add;
        } else if (op == "modify") {
            a.op = PlannerAction::Op::modify;
        } else if (op == "remove") {
            a.op = PlannerAction::Op::remove;
        } else {
            throw PlannerError("refine: unknown action op '" + op + "'");
        }
        a.test_id = aj.value("id", "");
        if (aj.contains("test")) a.test = test_from_json(aj["test"], a.test_id);
        out.push_back(std::move(a));
    }
    return out;
}

/// Builds the refine request from the previous round's traces, completes it,
/// and applies the resulting actions. Returns false (suite untouched beyond
/// already-applied nothing) on planner failure.
bool plan_update(TestSuite& suite, const EvaluationSets& sets, const RoundRecord& last,
                 Planner& planner, const std::string& prompt,
                 std::vector<PlannerAction>& actions_out);

void apply_actions(TestSuite& suite, std::vector<PlannerAction>& actions) {
    int counter = int(suite.tests.size());
    for (auto& a : actions) {
        switch (a.op) {
        case PlannerAction::Op::add: {
            if (!a.test) break;
            CadTest t = *a.test;
            if (t.id.empty() || suite.find(t.id)) t.id = fresh_id(suite, counter);
            a.test_id = t.id;
            suite.tests.push_back(std::move(t));
            break;
        }
        case PlannerAction::Op::modify: {
            if (!a.test) break;
            for (auto& t : suite.tests) {
                if (t.id != a.test_id) continue;
                if (!a.test->body.empty()) t.body = a.test->body;
                if (!a.test->description.empty()) t.description = a.test->description;
                if (!a.test->group.empty()) t.group = a.test->group;
                t.category = a.test->category;
                break;
            }
            break;
        }
        case PlannerAction::Op::remove:
            std::erase_if(suite.tests, [&](const CadTest& t) { return t.id == a.test_id; });
            break;
        }
    }
}

bool plan_update(TestSuite& suite, const EvaluationSets& sets, const RoundRecord& last,
                 Planner& planner, const std::string& prompt,
                 std::vector<PlannerAction>& actions_out) {
    PlannerRequest req;
    req.role = PlannerRole::refine;
    req.context_docs.push_back({"reference", api_reference_document()});
    req.prompt =
        "Refine the test suite for the design prompt below using the execution feedback. "
        "Modify tests that fail on valid models, add tests that detect undetected violations, "
        "remove redundant or incorrect tests. Reply with {\"actions\":[{\"op\":\"add|modify|"
        "remove\",\"id\",\"test\"}]}.\n\nDesign prompt: " +
        prompt;
    for (const auto& t : suite.tests) {
        req.history.push_back(t.id + ": " + t.description);
    }
    req.observations = build_observations(suite, sets, last);
    try {
        const PlannerResponse resp = planner.complete(req);
        if (resp.malformed) throw PlannerError("refine: malformed planner response");
        actions_out = parse_actions(resp.artifacts);
        apply_actions(suite, actions_out);
        return true;
    } catch (const PlannerError&) {
        actions_out.clear();
        return false;
    }
}

}  // namespace

bool kills_entry(const SuiteReport& report, const std::vector<std::string>& ids) {
    return std::any_of(ids.begin(), ids.end(), [&](const std::string& id) {
        auto it = report.outcomes.find(id);
        return it != report.outcomes.end() && it->second.verdict != script::TestVerdict::pass;
    });
}

RefinementState refine_round(RefinementState state, const EvaluationSets& sets, const Executor& ex,
                             Planner& planner, const RefinementConfig& config,
                             const std::string& prompt) {
    RoundExecution exec = execute_round(state.suite, sets, ex, config, state.round + 1);
    exec.record.planner_failed =
        !plan_update(state.suite, sets, exec.record, planner, prompt, exec.record.actions);
    state.round += 1;
    state.history.push_back(std::move(exec.record));
    return state;
}

RefinementOutcome run_refinement(const std::string& prompt, const EvaluationSets& sets,
                                 const Executor& ex, Planner& planner,
                                 const RefinementConfig& config, std::optional<TestSuite> initial,
                                 const std::string& sample_id, PromptType type) {
    if (config.max_rounds < 1) throw std::invalid_argument("run_refinement: R must be >= 1");
    RefinementOutcome out;
    RefinementState state;
    state.suite = initial ? std::move(*initial)
                          : initial_suite(prompt, planner, api_reference_document(), sample_id, type);

    RoundExecution last;
    for (int round = 1; round <= config.max_rounds; ++round) {
        std::vector<PlannerAction> actions;
        bool planner_failed = false;
        if (round > 1) {
            // Update the suite from the previous round's traces.
            planner_failed =
                !plan_update(state.suite, sets, last.record, planner, prompt, actions);
        }
        last = execute_round(state.suite, sets, ex, config, round);
        last.record.actions = std::move(actions);
        last.record.planner_failed = planner_failed;
        state.round = round;
        state.history.push_back(last.record);
        if (last.all_passing_ok && last.all_mutants_killed) {
            out.converged = true;
            break;
        }
    }

    // Discard rule: keep only tests that pass on the (un-augmented) reference;
    // optionally require passing on augmented references too.
    TestSuite final_suite = state.suite;
    if (config.discard_on_exit && !last.record.passing_reports.empty()) {
        std::set<std::string> discard;
        size_t pi = 0;
        for (const auto& e : sets.passing) {
            if (e.skipped) continue;
            const auto& report = last.record.passing_reports[pi++].second;
            const bool applies = e.is_reference || config.discard_on_augmented;
            if (!applies) continue;
            for (const auto& [id, r] : report.outcomes) {
                if (r.verdict != script::TestVerdict::pass) discard.insert(id);
            }
        }
        for (const auto& id : discard) out.discarded_test_ids.push_back(id);
        std::erase_if(final_suite.tests,
                      [&](const CadTest& t) { return discard.count(t.id) > 0; });
    }

    // Final metrics on the final suite, from the last round's reports.
    std::vector<std::string> final_ids;
    for (const auto& t : final_suite.tests) final_ids.push_back(t.id);
    {
        int killed = 0, total = 0;
        size_t mi = 0;
        for (const auto& e : sets.mutation) {
            if (e.skipped) continue;
            const auto& report = last.record.mutation_reports[mi++].second;
            ++total;
            if (kills_entry(report, final_ids)) {
                ++killed;
            } else {
                out.undetected.push_back({int(mi - 1), e.mutant_index, e.mutant_description});
            }
        }
        out.mscore = total > 0 ? double(killed) / double(total) : 1.0;
    }
    {
        // Soundness on the un-augmented reference entry.
        size_t pi = 0;
        out.soundness = final_ids.empty() ? 0.0 : 1.0;
        for (const auto& e : sets.passing) {
            if (e.skipped) continue;
            const auto& report = last.record.passing_reports[pi++].second;
            if (!e.is_reference) continue;
            int pass = 0;
            for (const auto& id : final_ids) {
                auto it = report.outcomes.find(id);
                if (it != report.outcomes.end() && it->second.verdict == script::TestVerdict::pass) {
                    ++pass;
                }
            }
            out.soundness = final_ids.empty() ? 0.0 : double(pass) / double(final_ids.size());
        }
    }

    out.suite = std::move(final_suite);
    out.state = std::move(state);
    return out;
}

json refinement_transcript_json(const RefinementOutcome& outcome) {
    json j;
    j["rounds"] = json::array();
    for (const auto& rec : outcome.state.history) {
        json rj;
        rj["round"] = rec.round;
        rj["planner_failed"] = rec.planner_failed;
        rj["actions"] = json::array();
        for (const auto& a : rec.actions) {
            json aj;
            aj["op"] = a.op == PlannerAction::Op::add      ? "add"
                       : a.op == PlannerAction::Op::modify ? "modify"
                                                           : "remove";
            aj["id"] = a.test_id;
            if (a.test) {
                aj["test"] = {{"id", a.test->id},
                              {"body", a.test->body},
                              {"description", a.test->description},
                              {"group", a.test->group},
                              {"category", to_string(a.test->category)}};
            }
            rj["actions"].push_back(std::move(aj));
        }
        rj["passing"] = json::array();
        for (const auto& [prov, rep] : rec.passing_reports) {
            rj["passing"].push_back({{"provenance", prov}, {"report", report_to_json(rep, true)}});
        }
        rj["mutation"] = json::array();
        for (const auto& [prov, rep] : rec.mutation_reports) {
            rj["mutation"].push_back({{"provenance", prov}, {"report", report_to_json(rep, true)}});
        }
        j["rounds"].push_back(std::move(rj));
    }
    j["converged"] = outcome.converged;
    j["mscore"] = outcome.mscore;
    j["soundness"] = outcome.soundness;
    j["discarded"] = outcome.discarded_test_ids;
    j["undetected"] = json::array();
    for (const auto& u : outcome.undetected) {
        j["undetected"].push_back({{"entry_index", u.entry_index},
                                   {"mutant_index", u.mutant_index},
                                   {"description", u.description}});
    }
    j["final_suite"] = suite_to_json(outcome.suite);
    return j;
}

void save_refinement_transcript(const std::filesystem::path& path,
                                const RefinementOutcome& outcome) {
    if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path);
    f << refinement_transcript_json(outcome).dump(2) << "\n";
}

}  // namespace cadbench
