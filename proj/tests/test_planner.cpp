#include "doctest.h"

#include "cadbench/planner.hpp"

#include <fstream>

using namespace cadbench;
using json = nlohmann::ordered_json;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("scripted planner replays turns keyed by (role, index)") {
    PlannerResponse a, b, c;
    a.artifacts = json{{"program", "emit(box(1,1,1))\n"}};
    b.artifacts = json{{"program", "emit(box(2,2,2))\n"}};
    c.artifacts = json{{"category", "topology"}};
    ScriptedPlanner planner({{PlannerRole::gen_cad, a},
                             {PlannerRole::gen_cad, b},
                             {PlannerRole::classify, c}});

    PlannerRequest gen{PlannerRole::gen_cad, "p", {}, {}, {}};
    PlannerRequest cls{PlannerRole::classify, "p", {}, {}, {}};
    CHECK(planner.complete(cls).artifacts == c.artifacts);  // roles have separate queues
    CHECK(planner.complete(gen).artifacts == a.artifacts);
    CHECK(planner.complete(gen).artifacts == b.artifacts);
    CHECK_THROWS_AS(planner.complete(gen), PlannerError);  // exhausted
}

TEST_CASE("scripted planner loads JSONL fixtures") {
    const auto path = temp_file("cadbench-fixture-test.jsonl");
    {
        std::ofstream f(path);
        f << R"({"role":"gen-cad","artifacts":{"program":"emit(box(1,1,1))\n"}})" << "\n";
        f << R"({"role":"repair","artifacts":{"source":"emit(box(2,2,2))\n"}})" << "\n";
    }
    ScriptedPlanner planner(path);
    PlannerRequest gen{PlannerRole::gen_cad, "p", {}, {}, {}};
    CHECK(planner.complete(gen).artifacts["program"] == "emit(box(1,1,1))\n");
    PlannerRequest rep{PlannerRole::repair, "p", {}, {}, {}};
    CHECK(planner.complete(rep).artifacts["source"] == "emit(box(2,2,2))\n");
    std::filesystem::remove(path);
}

TEST_CASE("fenced block extraction") {
    const auto a = extract_artifacts("Here you go:\n```json\n{\"program\": \"emit(box(1,1,1))\"}\n```\nDone.");
    REQUIRE(a.has_value());
    CHECK((*a)["program"] == "emit(box(1,1,1))");

    // Bare top-level object with nested braces inside strings.
    const auto b = extract_artifacts(
        "prose {\"tests\": [{\"id\": \"t1\", \"body\": \"require(true, \\\"{ok}\\\")\"}]} more");
    REQUIRE(b.has_value());
    CHECK((*b)["tests"][0]["id"] == "t1");

    CHECK(!extract_artifacts("no structured payload here").has_value());
    CHECK(!extract_artifacts("broken { \"a\": ").has_value());
}

TEST_CASE("recording planner appends request/response lines") {
    const auto path = temp_file("cadbench-transcript-test.jsonl");
    std::filesystem::remove(path);
    PlannerResponse resp;
    resp.artifacts = json{{"program", "emit(box(1,1,1))\n"}};
    ScriptedPlanner inner({{PlannerRole::gen_cad, resp}});
    RecordingPlanner rec(inner, path);

    PlannerRequest req{PlannerRole::gen_cad, "build a cube", {}, {"obs-1"}, {}};
    rec.complete(req);
    CHECK_THROWS_AS(rec.complete(req), PlannerError);  // exhaustion also recorded

    std::ifstream f(path);
    std::string line;
    REQUIRE(std::getline(f, line));
    const json first = json::parse(line);
    CHECK(first["request"]["prompt"] == "build a cube");
    CHECK(first["response"]["artifacts"]["program"] == "emit(box(1,1,1))\n");
    REQUIRE(std::getline(f, line));
    CHECK(json::parse(line).contains("error"));
    CHECK(rec.recorded_requests().size() == 2);
    std::filesystem::remove(path);
}

TEST_CASE("transcript leak scan finds planted fingerprints") {
    const auto path = temp_file("cadbench-leakscan-test.jsonl");
    {
        std::ofstream f(path);
        json clean;
        clean["request"] = {{"role", "gen-tests"}, {"prompt", "a cube with a hole"}};
        f << clean.dump() << "\n";
        json leaky;
        leaky["request"] = {{"role", "refine"},
                            {"observations", json::array({"oops: let base = box(10, 8, 2)"})}};
        f << leaky.dump() << "\n";
    }
    const auto hits = scan_transcript_for_leaks(path, {"let base = box(10, 8, 2)"});
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].first == 2);
    const auto none = scan_transcript_for_leaks(path, {"cylinder(1.5, 12)"});
    CHECK(none.empty());
    std::filesystem::remove(path);
}

TEST_CASE("build_context orders skill doc, reference doc, demos") {
    ContextOptions opts;
    opts.skill_doc = true;
    opts.reference_doc = true;
    opts.demos = {{"a cube", "emit(box(1,1,1))\n"}, {"a ball", "emit(sphere(1))\n"}};
    const auto blobs = build_context(PlannerRole::gen_cad, opts);
    REQUIRE(blobs.size() == 4);
    CHECK(blobs[0].name == "skill");
    CHECK(blobs[1].name == "reference");
    CHECK(blobs[2].name == "demo-0");
    CHECK(blobs[3].name == "demo-1");
    CHECK(blobs[2].content.find("a cube") != std::string::npos);

    const auto none = build_context(PlannerRole::gen_cad, {});
    CHECK(none.empty());

    ContextOptions ten;
    for (int i = 0; i < 10; ++i) ten.demos.push_back({"p" + std::to_string(i), "prog"});
    const auto demos = build_context(PlannerRole::gen_cad, ten);
    REQUIRE(demos.size() == 10);
    for (int i = 0; i < 10; ++i) {
        CHECK(demos[i].name == "demo-" + std::to_string(i));  // dataset order
    }
}

TEST_CASE("request/response JSON round-trip") {
    PlannerRequest req{PlannerRole::refine, "fix", {{"reference", "doc"}}, {"obs"}, {"turn"}};
    const PlannerRequest back = request_from_json(request_to_json(req));
    CHECK(back.role == PlannerRole::refine);
    CHECK(back.prompt == "fix");
    CHECK(back.context_docs.size() == 1);
    CHECK(back.observations == req.observations);
    CHECK(back.history == req.history);

    PlannerResponse resp;
    resp.artifacts = json{{"x", 1}};
    resp.raw = "raw";
    resp.prompt_tokens = 5;
    const PlannerResponse rback = response_from_json(response_to_json(resp));
    CHECK(rback.artifacts == resp.artifacts);
    CHECK(rback.raw == "raw");
    CHECK(rback.prompt_tokens == 5);
}
