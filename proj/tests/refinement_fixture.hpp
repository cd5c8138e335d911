#pragma once

#include "cadbench/refinement.hpp"

#include "test_helpers.hpp"

#include <json.hpp>

namespace cadbench::testhelpers {

// Scripted refinement scenario around a 10 x 8 x 2 plate with one centered
// through-hole of radius 1.5, three mutants, and five augmentations.

inline const char* plate_reference_source() {
    return "let base = box(10, 8, 2)\n"
           "let hole = cylinder(1.5, 4).translate(5, 4, -1)\n"
           "emit(difference(base, hole))\n";
}

inline const char* plate_prompt() {
    return "A rectangular plate 10 x 8 x 2 with a single circular through-hole of radius 1.5 "
           "centered in the plate.";
}

struct PlateMutantSources {
    // m0: hole shifted off-center; m1: hole radius halved; m2: plate height doubled.
    static constexpr const char* off_center =
        "let base = box(10, 8, 2)\n"
        "let hole = cylinder(1.5, 4).translate(7, 4, -1)\n"
        "emit(difference(base, hole))\n";
    static constexpr const char* small_hole =
        "let base = box(10, 8, 2)\n"
        "let hole = cylinder(0.75, 4).translate(5, 4, -1)\n"
        "emit(difference(base, hole))\n";
    static constexpr const char* thick_plate =
        "let base = box(10, 8, 4)\n"
        "let hole = cylinder(1.5, 6).translate(5, 4, -1)\n"
        "emit(difference(base, hole))\n";
};

inline std::vector<FilteredMutant> plate_mutants(const Executor& ex) {
    const std::array<std::pair<const char*, const char*>, 3> defs{{
        {PlateMutantSources::off_center,
         "violates the requirement that the hole is centered in the plate"},
        {PlateMutantSources::small_hole,
         "violates the requirement that the hole radius is 1.5"},
        {PlateMutantSources::thick_plate,
         "violates the requirement that the plate is 2 units thick"},
    }};
    std::vector<FilteredMutant> out;
    for (const auto& [src, desc] : defs) {
        FilteredMutant fm;
        fm.mutant.program.source = src;
        fm.mutant.program.origin = CadProgram::Origin::mutant;
        fm.mutant.description = desc;
        fm.mutant.operator_id = "scripted";
        const auto r = ex.execute_program(fm.mutant.program);
        if (r.status != ExecStatus::ok) {
            throw std::runtime_error("plate mutant failed to execute: " + r.trace);
        }
        fm.model = *r.model;
        out.push_back(std::move(fm));
    }
    return out;
}

inline EvaluationSets plate_sets(const Executor& ex, int augmentations = 5,
                                 std::uint64_t seed = 42) {
    const auto ref = ex.execute_program(CadProgram{plate_reference_source()});
    if (ref.status != ExecStatus::ok) throw std::runtime_error("plate reference failed");
    return build_sets(*ref.model, plate_mutants(ex),
                      sample_transforms(augmentations, false, seed));
}

// --- test bodies used by the scripted turns -----------------------------------

inline nlohmann::ordered_json test_json(const std::string& id, const std::string& body,
                                        const std::string& description,
                                        const std::string& group = "",
                                        const std::string& category = "topology") {
    return {{"id", id},
            {"body", body},
            {"description", description},
            {"group", group},
            {"category", category}};
}

inline nlohmann::ordered_json t1_solid() {
    return test_json("t1",
                     "require(single_solid(model) and positive_volume(model), \"solid body\")\n",
                     "the result is one solid body", "g-shape", "solid-shell-validity");
}

inline nlohmann::ordered_json t2_pose_dependent() {
    return test_json(
        "t2", "require(approx(bbox_max(model).x, 10, 0.000001), \"plate spans to x = 10\")\n",
        "the plate reaches x = 10", "g-dims", "dimensions-ratios");
}

inline nlohmann::ordered_json t2_pose_invariant_body() {
    return test_json("t2",
                     "let d = bbox_dims(model)\n"
                     "let lo = min(d.x, min(d.y, d.z))\n"
                     "let hi = max(d.x, max(d.y, d.z))\n"
                     "let mid = d.x + d.y + d.z - lo - hi\n"
                     "require(approx(lo, 2, 0.001) and approx(mid, 8, 0.001) and "
                     "approx(hi, 10, 0.001), \"sorted dims are 2 x 8 x 10\")\n",
                     "the sorted bounding-box dimensions are 2 x 8 x 10", "g-dims",
                     "dimensions-ratios");
}

inline nlohmann::ordered_json t3_erroring() {
    return test_json("t3", "let f = nth(faces(model, \"toroidal\"), 0)\nrequire(true, \"ok\")\n",
                     "inspects a toroidal face", "g-shape", "geometric-types");
}

inline nlohmann::ordered_json t4_radius() {
    return test_json("t4",
                     "let holes = faces(model, \"cylindrical\")\n"
                     "require(count(holes) == 1, \"exactly one cylindrical bore\")\n"
                     "require(approx(radius_of(nth(holes, 0)), 1.5, 0.01), "
                     "\"bore radius is 1.5\")\n",
                     "the through-hole has radius 1.5", "g-hole", "dimensions-ratios");
}

inline nlohmann::ordered_json t5_centering() {
    return test_json("t5",
                     "let holes = faces(model, \"cylindrical\")\n"
                     "require(count(holes) == 1, \"exactly one cylindrical bore\")\n"
                     "require(dist(centroid_of(nth(holes, 0)), bbox_center(model)) < 0.01, "
                     "\"bore is concentric with the plate center\")\n",
                     "the hole is centered in the plate", "g-hole", "spatial-arrangement");
}

/// Scenario A: converges on soundness+kills only after add/modify/remove
/// actions; one erroring test survives to the end and is discarded.
inline ScriptedPlanner plate_scenario_converging() {
    using json = nlohmann::ordered_json;
    PlannerResponse gen;
    gen.artifacts = json{
        {"tests", json::array({t1_solid(), t2_pose_dependent(), t3_erroring(), t4_radius()})}};
    PlannerResponse refine1;
    refine1.artifacts = json{
        {"actions", json::array({
                        json{{"op", "modify"}, {"id", "t2"}, {"test", t2_pose_invariant_body()}},
                        json{{"op", "add"}, {"test", t5_centering()}},
                        json{{"op", "remove"}, {"id", "t1"}},
                    })}};
    PlannerResponse noop;
    noop.artifacts = json{{"actions", json::array()}};
    return ScriptedPlanner({{PlannerRole::gen_tests, gen},
                            {PlannerRole::refine, refine1},
                            {PlannerRole::refine, noop},
                            {PlannerRole::refine, noop}});
}

/// Scenario B: a sound suite that never addresses the off-center mutant.
inline ScriptedPlanner plate_scenario_nonconverging() {
    using json = nlohmann::ordered_json;
    PlannerResponse gen;
    gen.artifacts =
        json{{"tests", json::array({t1_solid(), t4_radius(), t2_pose_invariant_body()})}};
    PlannerResponse noop;
    noop.artifacts = json{{"actions", json::array()}};
    return ScriptedPlanner({{PlannerRole::gen_tests, gen},
                            {PlannerRole::refine, noop},
                            {PlannerRole::refine, noop},
                            {PlannerRole::refine, noop}});
}

}  // namespace cadbench::testhelpers
