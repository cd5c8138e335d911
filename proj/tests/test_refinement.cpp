#include "doctest.h"

#include "refinement_fixture.hpp"

using namespace cadbench;
using namespace cadbench::testhelpers;
using json = nlohmann::ordered_json;

TEST_CASE("initial_suite builds from the prompt alone") {
    PlannerResponse gen;
    gen.artifacts = json{{"tests", json::array({t1_solid(), t4_radius(), t5_centering()})}};
    ScriptedPlanner inner({{PlannerRole::gen_tests, gen}});
    const auto transcript =
        std::filesystem::temp_directory_path() / "cadbench-initial-suite.jsonl";
    std::filesystem::remove(transcript);
    RecordingPlanner planner(inner, transcript);

    const TestSuite suite = initial_suite(plate_prompt(), planner, api_reference_document(),
                                          "plate", PromptType::detailed_prompt);
    REQUIRE(suite.tests.size() == 3);
    CHECK(suite.find("t1") != nullptr);
    for (const auto& t : suite.tests) CHECK(!t.description.empty());

    // Contract check: the request payload holds the prompt and the reference
    // doc but no program source.
    REQUIRE(planner.recorded_requests().size() == 1);
    const auto& req = planner.recorded_requests()[0];
    CHECK(req.prompt.find(plate_prompt()) != std::string::npos);
    REQUIRE(req.context_docs.size() == 1);
    CHECK(req.context_docs[0].content == api_reference_document());
    const auto hits = scan_transcript_for_leaks(
        transcript, {plate_reference_source(), "box(10, 8, 2)"});
    CHECK(hits.empty());
    std::filesystem::remove(transcript);
}

TEST_CASE("prompt with hole yields topology and spatial categories") {
    PlannerResponse gen;
    gen.artifacts = json{{"tests", json::array({t1_solid(), t4_radius(), t5_centering()})}};
    ScriptedPlanner planner({{PlannerRole::gen_tests, gen}});
    const TestSuite suite =
        initial_suite("a cube with a centered through-hole", planner, api_reference_document(),
                      "s", PromptType::abstract_prompt);
    bool has_validity = false, has_spatial = false;
    for (const auto& t : suite.tests) {
        if (t.category == TestCategory::solid_shell_validity) has_validity = true;
        if (t.category == TestCategory::spatial_arrangement) has_spatial = true;
    }
    CHECK(has_validity);
    CHECK(has_spatial);
}

TEST_CASE("scripted scenario A: actions, discard, and full kill within R=4") {
    const auto& ex = shared_executor();
    const EvaluationSets sets = plate_sets(ex);
    auto inner = plate_scenario_converging();
    const auto transcript = std::filesystem::temp_directory_path() / "cadbench-refine-a.jsonl";
    std::filesystem::remove(transcript);
    RecordingPlanner planner(inner, transcript);

    RefinementConfig config;
    config.max_rounds = 4;
    const RefinementOutcome out = run_refinement(plate_prompt(), sets, ex, planner, config);

    CHECK(out.state.round == 4);
    CHECK(!out.converged);  // the erroring test keeps the passing set red
    CHECK(out.mscore == 1.0);
    CHECK(out.soundness == 1.0);
    REQUIRE(out.discarded_test_ids.size() == 1);
    CHECK(out.discarded_test_ids[0] == "t3");
    CHECK(out.undetected.empty());

    // Final suite contains the modified, added, and surviving tests only.
    REQUIRE(out.suite.tests.size() == 3);
    CHECK(out.suite.find("t2") != nullptr);
    CHECK(out.suite.find("t4") != nullptr);
    CHECK(out.suite.find("t5") != nullptr);
    CHECK(out.suite.find("t1") == nullptr);  // removed by the planner
    CHECK(out.suite.find("t2")->body.find("sorted") != std::string::npos);  // modified

    // Round 1: the pose-dependent t2 fails on at least one augmented entry.
    const auto& round1 = out.state.history[0];
    bool t2_failed_on_augmented = false;
    for (size_t i = 1; i < round1.passing_reports.size(); ++i) {
        const auto it = round1.passing_reports[i].second.outcomes.find("t2");
        if (it != round1.passing_reports[i].second.outcomes.end() &&
            it->second.verdict == script::TestVerdict::fail) {
            t2_failed_on_augmented = true;
        }
    }
    CHECK(t2_failed_on_augmented);
    // Round 2 carries the add/modify/remove actions.
    const auto& round2 = out.state.history[1];
    REQUIRE(round2.actions.size() == 3);
    CHECK(round2.actions[0].op == PlannerAction::Op::modify);
    CHECK(round2.actions[1].op == PlannerAction::Op::add);
    CHECK(round2.actions[2].op == PlannerAction::Op::remove);
    // After the modification, t2 passes on the whole passing set.
    for (const auto& [prov, rep] : round2.passing_reports) {
        CHECK(rep.outcomes.at("t2").verdict == script::TestVerdict::pass);
    }

    // Monotone termination: every round executed exactly |passing|+|mutation|
    // suite runs.
    for (const auto& rec : out.state.history) {
        CHECK(rec.passing_reports.size() == sets.passing.size());
        CHECK(rec.mutation_reports.size() == sets.mutation.size());
    }

    // Information hiding: no planner request contains program source.
    const auto hits = scan_transcript_for_leaks(
        transcript, {plate_reference_source(), PlateMutantSources::off_center,
                     PlateMutantSources::small_hole, PlateMutantSources::thick_plate,
                     "box(10, 8, 2)", "cylinder(0.75, 4)"});
    CHECK(hits.empty());
    std::filesystem::remove(transcript);
}

TEST_CASE("scripted scenario B: never-addressed mutant exits at R with MScore 2/3") {
    const auto& ex = shared_executor();
    const EvaluationSets sets = plate_sets(ex);
    auto planner = plate_scenario_nonconverging();
    RefinementConfig config;
    config.max_rounds = 4;
    const RefinementOutcome out = run_refinement(plate_prompt(), sets, ex, planner, config);

    CHECK(out.state.round == 4);
    CHECK(!out.converged);
    CHECK(out.mscore == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(out.discarded_test_ids.empty());
    CHECK(out.soundness == 1.0);
    REQUIRE(out.undetected.size() == 6);  // the off-center mutant and its 5 augmentations
    for (const auto& u : out.undetected) {
        CHECK(u.mutant_index == 0);
        CHECK(u.description.find("centered") != std::string::npos);
    }
}

TEST_CASE("converging scenario stops early") {
    const auto& ex = shared_executor();
    const EvaluationSets sets = plate_sets(ex);
    // A suite that is sound and kills everything from the start.
    PlannerResponse gen;
    gen.artifacts = json{
        {"tests", json::array({t2_pose_invariant_body(), t4_radius(), t5_centering()})}};
    ScriptedPlanner planner({{PlannerRole::gen_tests, gen}});
    RefinementConfig config;
    config.max_rounds = 4;
    const RefinementOutcome out = run_refinement(plate_prompt(), sets, ex, planner, config);
    CHECK(out.converged);
    CHECK(out.state.round == 1);  // early stop after the first full round
    CHECK(out.mscore == 1.0);
    CHECK(out.soundness == 1.0);
    CHECK(out.state.history.size() == 1);
}

TEST_CASE("planner failure leaves the suite unchanged and logs a no-op round") {
    const auto& ex = shared_executor();
    const EvaluationSets sets = plate_sets(ex, 2);
    PlannerResponse gen;
    gen.artifacts = json{{"tests", json::array({t1_solid()})}};
    // No refine turns at all: every refine call fails.
    ScriptedPlanner planner({{PlannerRole::gen_tests, gen}});
    RefinementConfig config;
    config.max_rounds = 3;
    const RefinementOutcome out = run_refinement(plate_prompt(), sets, ex, planner, config);
    CHECK(out.state.round == 3);
    for (size_t i = 1; i < out.state.history.size(); ++i) {
        CHECK(out.state.history[i].planner_failed);
        CHECK(out.state.history[i].actions.empty());
    }
    REQUIRE(out.suite.tests.size() == 1);
    CHECK(out.suite.tests[0].id == "t1");
}

TEST_CASE("refine_round executes then updates") {
    const auto& ex = shared_executor();
    const EvaluationSets sets = plate_sets(ex, 2);
    PlannerResponse refine1;
    refine1.artifacts =
        json{{"actions", json::array({json{{"op", "add"}, {"test", t5_centering()}}})}};
    ScriptedPlanner planner({{PlannerRole::refine, refine1}});
    RefinementState state;
    state.suite.sample_id = "plate";
    state.suite.tests.push_back({"t1",
                                 "require(positive_volume(model), \"has material\")\n",
                                 "has material", "g", TestCategory::solid_shell_validity});
    RefinementConfig config;
    const RefinementState next = refine_round(state, sets, ex, planner, config, plate_prompt());
    CHECK(next.round == 1);
    REQUIRE(next.history.size() == 1);
    CHECK(next.history[0].passing_reports.size() == sets.passing.size());
    CHECK(next.suite.tests.size() == 2);  // t5 added after the execution
    CHECK(next.history[0].actions.size() == 1);
}

TEST_CASE("empty final suite is possible and reported") {
    const auto& ex = shared_executor();
    const EvaluationSets sets = plate_sets(ex, 2);
    PlannerResponse gen;
    gen.artifacts = json{{"tests", json::array({t3_erroring()})}};
    PlannerResponse noop;
    noop.artifacts = json{{"actions", json::array()}};
    ScriptedPlanner planner({{PlannerRole::gen_tests, gen},
                             {PlannerRole::refine, noop},
                             {PlannerRole::refine, noop}});
    RefinementConfig config;
    config.max_rounds = 3;
    const RefinementOutcome out = run_refinement(plate_prompt(), sets, ex, planner, config);
    CHECK(out.suite.tests.empty());
    CHECK(out.discarded_test_ids == std::vector<std::string>{"t3"});
    CHECK(out.soundness == 0.0);
}

TEST_CASE("refinement transcript serializes every round") {
    const auto& ex = shared_executor();
    const EvaluationSets sets = plate_sets(ex, 2);
    auto planner = plate_scenario_converging();
    RefinementConfig config;
    config.max_rounds = 4;
    const RefinementOutcome out = run_refinement(plate_prompt(), sets, ex, planner, config);
    const json j = refinement_transcript_json(out);
    CHECK(j["rounds"].size() == 4);
    CHECK(j["mscore"] == 1.0);
    CHECK(j["final_suite"].size() == out.suite.tests.size());
    const auto path = std::filesystem::temp_directory_path() / "cadbench-transcript.json";
    save_refinement_transcript(path, out);
    CHECK(std::filesystem::exists(path));
    std::filesystem::remove(path);
}
