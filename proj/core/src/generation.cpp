#include "cadbench/generation.hpp"

#include <algorithm>

namespace cadbench {

using json = nlohmann::ordered_json;

const char* to_string(Strategy s) {
    switch (s) {
    case Strategy::k_shot: return "k-shot";
    case Strategy::skilled: return "skilled";
    case Strategy::react: return "react";
    case Strategy::cadtest: return "cadtest";
    default: return "cadtest-log";
    }
}

Strategy strategy_from_string(const std::string& s) {
    if (s == "k-shot" || s == "kshot" || s == "10-shots") return Strategy::k_shot;
    if (s == "skilled") return Strategy::skilled;
    if (s == "react") return Strategy::react;
    if (s == "cadtest" || s == "cadtests") return Strategy::cadtest;
    if (s == "cadtest-log" || s == "cadtests-log") return Strategy::cadtest_log;
    throw std::invalid_argument("unknown strategy: " + s);
}

namespace {

ContextOptions context_for(const GenerationConfig& config) {
    ContextOptions opts;
    switch (config.strategy) {
    case Strategy::k_shot: {
        const size_t n = std::min<size_t>(config.demos.size(), size_t(config.k_shots));
        opts.demos.assign(config.demos.begin(), config.demos.begin() + n);
        break;
    }
    case Strategy::skilled:
    case Strategy::react:
        opts.skill_doc = true;
        break;
    case Strategy::cadtest:
    case Strategy::cadtest_log:
        opts.skill_doc = true;
        opts.reference_doc = true;  // test authoring needs the inspection API
        break;
    }
    return opts;
}

std::string base_prompt(const std::string& prompt, const GenerationConfig& config) {
    switch (config.strategy) {
    case Strategy::k_shot:
    case Strategy::skilled:
    case Strategy::react:
        return "Write a modeling program for this design. Reply with {\"program\": \"...\"}.\n\n"
               "Design prompt: " +
               prompt;
    case Strategy::cadtest:
        return "Write a modeling program for this design together with a set of property tests "
               "that verify the prompt's requirements on the produced solid. Reply with "
               "{\"program\": \"...\", \"tests\": [{\"id\",\"body\",\"description\"}]}.\n\n"
               "Design prompt: " +
               prompt;
    case Strategy::cadtest_log:
        return "Write a modeling program for this design together with a set of property tests. "
               "Inject log(...) statements into the program that report intermediate geometric "
               "and topological properties after each modeling stage. Reply with {\"program\": "
               "\"...\", \"tests\": [{\"id\",\"body\",\"description\"}]}.\n\nDesign prompt: " +
               prompt;
    }
    return prompt;
}

std::vector<CadTest> parse_self_tests(const json& artifacts) {
    std::vector<CadTest> out;
    int counter = 0;
    for (const auto& tj : artifacts.value("tests", json::array())) {
        CadTest t;
        t.id = tj.value("id", "self-" + std::to_string(counter++));
        t.body = tj.value("body", "");
        t.description = tj.value("description", t.id);
        if (!t.body.empty()) out.push_back(std::move(t));
    }
    return out;
}

}  // namespace

GenerationOutcome generate(const std::string& prompt, Planner& planner, const Executor& ex,
                           const GenerationConfig& config) {
    if (config.max_rounds < 1) throw std::invalid_argument("generate: max_rounds must be >= 1");
    GenerationOutcome out;
    out.program.origin = CadProgram::Origin::generated;
    out.transcript["strategy"] = to_string(config.strategy);
    out.transcript["rounds"] = json::array();

    const bool iterative = config.strategy == Strategy::react ||
                           config.strategy == Strategy::cadtest ||
                           config.strategy == Strategy::cadtest_log;
    const int max_rounds = iterative ? config.max_rounds : 1;

    std::vector<std::string> observations;
    std::vector<std::string> history;

    for (int round = 1; round <= max_rounds; ++round) {
        PlannerRequest req;
        req.role = PlannerRole::gen_cad;
        req.context_docs = build_context(PlannerRole::gen_cad, context_for(config));
        req.prompt = base_prompt(prompt, config);
        req.observations = observations;
        req.history = history;

        PlannerResponse resp;
        try {
            resp = planner.complete(req);
        } catch (const PlannerError& e) {
            json rj;
            rj["round"] = round;
            rj["error"] = e.what();
            out.transcript["rounds"].push_back(std::move(rj));
            break;
        }
        out.rounds = round;
        if (resp.malformed || !resp.artifacts.contains("program")) {
            json rj;
            rj["round"] = round;
            rj["malformed"] = true;
            out.transcript["rounds"].push_back(std::move(rj));
            observations = {"your previous reply carried no program payload"};
            history.push_back(resp.raw);
            continue;
        }
        out.program.source = resp.artifacts["program"].get<std::string>();
        out.self_tests = parse_self_tests(resp.artifacts);

        out.final_result = ex.execute_program(out.program, config.program_timeout_ms);

        json rj;
        rj["round"] = round;
        rj["program"] = out.program.source;
        rj["status"] = to_string(out.final_result.status);
        rj["logs"] = out.final_result.logs;

        observations.clear();
        bool self_tests_pass = true;
        if (out.final_result.status != ExecStatus::ok) {
            observations.push_back(std::string("execution ") + to_string(out.final_result.status) +
                                   ": " + out.final_result.trace);
            self_tests_pass = false;
        } else {
            if (config.strategy == Strategy::cadtest || config.strategy == Strategy::cadtest_log) {
                std::vector<std::pair<std::string, std::string>> batch;
                for (const auto& t : out.self_tests) batch.emplace_back(t.id, t.body);
                const auto verdicts =
                    ex.execute_tests(batch, *out.final_result.model, config.test_timeout_ms);
                json tj = json::array();
                for (size_t i = 0; i < verdicts.size(); ++i) {
                    tj.push_back({{"id", out.self_tests[i].id},
                                  {"verdict", script::to_string(verdicts[i].verdict)},
                                  {"message", verdicts[i].message}});
                    if (verdicts[i].verdict != script::TestVerdict::pass) {
                        self_tests_pass = false;
                        observations.push_back("self-test " + out.self_tests[i].id + " (" +
                                               out.self_tests[i].description +
                                               "): " + script::to_string(verdicts[i].verdict) +
                                               " — " + verdicts[i].message);
                    } else {
                        observations.push_back("self-test " + out.self_tests[i].id + " passed: " +
                                               verdicts[i].message);
                    }
                }
                rj["self_tests"] = std::move(tj);
            }
            if (config.strategy == Strategy::cadtest_log) {
                for (const auto& l : out.final_result.logs) {
                    observations.push_back("log: " + l);
                }
            }
        }
        if (config.extra_observations) {
            for (auto& o : config.extra_observations(out.final_result)) {
                observations.push_back(std::move(o));
            }
        }
        out.transcript["rounds"].push_back(std::move(rj));

        const bool done = config.strategy == Strategy::react
                              ? out.final_result.status == ExecStatus::ok
                              : out.final_result.status == ExecStatus::ok && self_tests_pass;
        if (!iterative || done) break;
        history.push_back("round " + std::to_string(round) + " program:\n" + out.program.source);
    }

    if (out.program.source.empty()) {
        out.final_result.status = ExecStatus::runtime_error;
        out.final_result.trace = "planner produced no program";
    } else if (out.rounds > 0 && !out.final_result.model && out.final_result.trace.empty() &&
               out.final_result.status == ExecStatus::ok) {
        out.final_result.status = ExecStatus::runtime_error;
        out.final_result.trace = "no model produced";
    }
    out.transcript["final_status"] = to_string(out.final_result.status);
    return out;
}

}  // namespace cadbench
