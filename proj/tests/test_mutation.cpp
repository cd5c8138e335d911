#include "doctest.h"

#include "cadbench/mutation.hpp"

#include "test_helpers.hpp"

using namespace cadbench;
using cadbench::testhelpers::shared_executor;
using json = nlohmann::ordered_json;

namespace {

// Three-feature reference: a plate with two through-holes.
const char* kReference =
    "let base = box(10, 10, 5)\n"
    "let hole1 = cylinder(1.8, 7).translate(3, 5, -1)\n"
    "let hole2 = cylinder(1.8, 7).translate(7, 5, -1)\n"
    "emit(difference(base, hole1, hole2))\n";

CadProgram reference_program() {
    CadProgram p;
    p.source = kReference;
    return p;
}

// Chosen so the catalog yields the half-height and identity-equivalent
// mutants among the candidates (see the determinism test below).
constexpr std::uint64_t kSeed = 4;

}  // namespace

TEST_CASE("deterministic catalog yields executable, well-formed candidates") {
    const auto mutants = deterministic_mutants(reference_program(), 8, kSeed);
    CHECK(mutants.size() >= 6);
    int executable = 0;
    for (const auto& m : mutants) {
        CHECK(!m.description.empty());
        CHECK(m.program.origin == CadProgram::Origin::mutant);
        const auto r = shared_executor().execute_program(m.program);
        if (r.status == ExecStatus::ok) ++executable;
    }
    CHECK(executable >= 6);
}

TEST_CASE("deterministic catalog is byte-identical across reruns") {
    const auto a = deterministic_mutants(reference_program(), 8, kSeed);
    const auto b = deterministic_mutants(reference_program(), 8, kSeed);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].program.source == b[i].program.source);
        CHECK(a[i].description == b[i].description);
        CHECK(a[i].operator_id == b[i].operator_id);
    }
    // A different seed changes at least one candidate.
    const auto c = deterministic_mutants(reference_program(), 8, kSeed + 1);
    bool any_diff = false;
    for (size_t i = 0; i < std::min(a.size(), c.size()); ++i) {
        if (a[i].program.source != c[i].program.source) any_diff = true;
    }
    CHECK(any_diff);
}

TEST_CASE("catalog produces the expected operator effects") {
    const auto mutants = deterministic_mutants(reference_program(), 8, kSeed);
    // parameter-swap on box(10, 10, ...) swaps equal dims: identity-equivalent.
    bool found_identity = false;
    bool found_half_height = false;
    bool found_feature_deletion = false;
    for (const auto& m : mutants) {
        if (m.operator_id == "parameter-swap" &&
            m.program.source.find("box(10, 10, 5)") != std::string::npos) {
            found_identity = true;
        }
        if (m.operator_id == "numeric-literal-scale" &&
            m.program.source.find("box(10, 10, 2.5)") != std::string::npos) {
            found_half_height = true;
        }
        if (m.operator_id == "feature-deletion" &&
            m.program.source.find("hole2") == std::string::npos) {
            found_feature_deletion = true;
        }
    }
    CHECK(found_identity);
    CHECK(found_half_height);
    CHECK(found_feature_deletion);
}

TEST_CASE("feature deletion reduces the face count") {
    const auto mutants = deterministic_mutants(reference_program(), 8, kSeed);
    const auto& ex = shared_executor();
    const auto ref = ex.execute_program(reference_program());
    REQUIRE(ref.status == ExecStatus::ok);
    for (const auto& m : mutants) {
        if (m.operator_id != "feature-deletion") continue;
        const auto r = ex.execute_program(m.program);
        REQUIRE(r.status == ExecStatus::ok);
        CHECK(r.model->topo_counts().faces < ref.model->topo_counts().faces);
    }
}

TEST_CASE("IoU filtering removes identity and degenerate mutants") {
    const auto& ex = shared_executor();
    const auto ref = ex.execute_program(reference_program());
    REQUIRE(ref.status == ExecStatus::ok);

    std::vector<Mutant> candidates;
    Mutant identical;
    identical.program.source = kReference;
    identical.program.origin = CadProgram::Origin::mutant;
    identical.description = "no-op variant";
    identical.operator_id = "manual";
    candidates.push_back(identical);

    Mutant half;
    half.program.source =
        "let base = box(10, 10, 2.5)\n"
        "let hole1 = cylinder(1.8, 7).translate(3, 5, -1)\n"
        "let hole2 = cylinder(1.8, 7).translate(7, 5, -1)\n"
        "emit(difference(base, hole1, hole2))\n";
    half.program.origin = CadProgram::Origin::mutant;
    half.description = "violates the stated thickness: plate height halved";
    half.operator_id = "manual";
    candidates.push_back(half);

    Mutant degenerate;
    degenerate.program.source =
        "let base = box(10, 10, 5)\nemit(difference(base, box(20, 20, 20).translate(-5, -5, -5)))\n";
    degenerate.program.origin = CadProgram::Origin::mutant;
    degenerate.description = "violates everything: all material removed";
    degenerate.operator_id = "manual";
    candidates.push_back(degenerate);

    const auto kept = filter_mutants(candidates, *ref.model, ex, 0.05, 0.95, 64);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].mutant.description.find("halved") != std::string::npos);
    CHECK(kept[0].mutant.iou_vs_reference == doctest::Approx(0.5).epsilon(0.04));
    CHECK(std::abs(kept[0].mutant.iou_vs_reference - 0.5) <= 0.02);
}

TEST_CASE("every retained mutant executes ok and sits strictly inside the band") {
    const auto& ex = shared_executor();
    const auto ref = ex.execute_program(reference_program());
    REQUIRE(ref.status == ExecStatus::ok);
    const auto candidates = deterministic_mutants(reference_program(), 8, kSeed);
    const auto kept = filter_mutants(candidates, *ref.model, ex, 0.05, 0.95, 64);
    CHECK(!kept.empty());
    for (const auto& fm : kept) {
        CHECK(fm.mutant.iou_vs_reference >= 0.05);
        CHECK(fm.mutant.iou_vs_reference < 0.95);
        CHECK(!fm.model.empty());
    }
}

TEST_CASE("repair: already-valid candidate returns unchanged with no planner calls") {
    Mutant valid;
    valid.program.source = "emit(box(1, 1, 1))\n";
    valid.description = "d";
    ScriptedPlanner planner(std::vector<std::pair<PlannerRole, PlannerResponse>>{});
    const auto out = repair_mutant(valid, shared_executor(), &planner, 3);
    REQUIRE(out.has_value());
    CHECK(out->program.source == valid.program.source);
}

TEST_CASE("repair: scripted planner fixes a typo on iteration 1") {
    Mutant broken;
    broken.program.source = "emit(bxo(1, 1, 1))\n";
    broken.description = "d";
    PlannerResponse fix;
    fix.artifacts = json{{"source", "emit(box(1, 1, 1))\n"}};
    ScriptedPlanner planner({{PlannerRole::repair, fix}});
    const auto out = repair_mutant(broken, shared_executor(), &planner, 3);
    REQUIRE(out.has_value());
    CHECK(out->program.source == "emit(box(1, 1, 1))\n");
}

TEST_CASE("repair: a planner that never fixes leads to discard after max iters") {
    Mutant broken;
    broken.program.source = "emit(bxo(1, 1, 1))\n";
    broken.description = "d";
    std::vector<std::pair<PlannerRole, PlannerResponse>> turns;
    for (int i = 0; i < 3; ++i) {
        PlannerResponse bad;
        bad.artifacts = json{{"source", "emit(still_broken)\n"}};
        turns.push_back({PlannerRole::repair, bad});
    }
    ScriptedPlanner planner(turns);
    CHECK(!repair_mutant(broken, shared_executor(), &planner, 3).has_value());
}

TEST_CASE("planner-backed generation parses mutants and rejects empty payloads") {
    PlannerResponse resp;
    resp.artifacts = json::parse(
        R"({"mutants":[{"source":"emit(box(2,1,1))\n","description":"violates the requirement that the part is a cube"}]})");
    ScriptedPlanner planner({{PlannerRole::mutate, resp}});
    const auto mutants = generate_mutants("a cube", reference_program(), &planner, 1, 0);
    REQUIRE(mutants.size() == 1);
    CHECK(mutants[0].operator_id == "planner");
    CHECK(mutants[0].description.find("violates") != std::string::npos);

    PlannerResponse empty;
    empty.artifacts = json::parse(R"({"mutants":[]})");
    ScriptedPlanner planner2({{PlannerRole::mutate, empty}});
    CHECK_THROWS_AS(generate_mutants("a cube", reference_program(), &planner2, 1, 0),
                    PlannerError);
}

TEST_CASE("mutant store round-trips") {
    const auto dir = std::filesystem::temp_directory_path() / "cadbench-mutant-store-test";
    std::filesystem::remove_all(dir);
    auto mutants = deterministic_mutants(reference_program(), 5, kSeed);
    for (auto& m : mutants) m.iou_vs_reference = 0.42;
    save_mutants(dir, "s1", mutants);
    const auto back = load_mutants(dir, "s1");
    REQUIRE(back.size() == mutants.size());
    for (size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].program.source == mutants[i].program.source);
        CHECK(back[i].description == mutants[i].description);
        CHECK(back[i].iou_vs_reference == 0.42);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("filter validates the band") {
    const auto ref = shared_executor().execute_program(reference_program());
    REQUIRE(ref.status == ExecStatus::ok);
    CHECK_THROWS_AS(filter_mutants({}, *ref.model, shared_executor(), 0.9, 0.1, 64),
                    std::invalid_argument);
}
