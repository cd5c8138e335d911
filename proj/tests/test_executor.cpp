#include "doctest.h"

#include "cadbench/executor.hpp"

#include "test_helpers.hpp"

#include <future>

using namespace cadbench;
using cadbench::testhelpers::shared_executor;

TEST_CASE("execute_program: ok path produces a model") {
    auto& ex = shared_executor();
    CadProgram p{"let b = box(1, 1, 1)\nemit(b)\n"};
    const auto r = ex.execute_program(p);
    REQUIRE(r.status == ExecStatus::ok);
    REQUIRE(r.model.has_value());
    CHECK(r.model->topo_counts().faces == 6);
    CHECK(r.trace.empty());
}

TEST_CASE("execute_program: runtime error carries a trace") {
    auto& ex = shared_executor();
    const auto r = ex.execute_program(CadProgram{"emit(undefined_name)\n"});
    CHECK(r.status == ExecStatus::runtime_error);
    CHECK(!r.model.has_value());
    CHECK(!r.trace.empty());
}

TEST_CASE("execute_program: unbounded loop terminates within timeout + 500ms") {
    auto& ex = shared_executor();
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = ex.execute_program(
        CadProgram{"let i = 0\nwhile true { set i = i + 1 }\nemit(box(1,1,1))\n"}, 2000);
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
            .count();
    CHECK(r.status == ExecStatus::timeout);
    CHECK(ms <= 2500);
}

TEST_CASE("execute_program: allocation blow-up is a resource-limit result") {
    auto& ex = shared_executor();
    const auto r = ex.execute_program(
        CadProgram{"let xs = [1]\nwhile true { set xs = append(xs, xs) }\nemit(box(1,1,1))\n"},
        30000);
    CHECK(r.status == ExecStatus::resource_limit);
}

TEST_CASE("execute_program: determinism across runs") {
    auto& ex = shared_executor();
    const CadProgram p{
        "let plate = box(8, 6, 2)\n"
        "let hole = cylinder(1, 4).translate(4, 3, -1)\n"
        "emit(difference(plate, hole))\n"};
    const auto r1 = ex.execute_program(p);
    const auto r2 = ex.execute_program(p);
    REQUIRE(r1.status == ExecStatus::ok);
    REQUIRE(r2.status == ExecStatus::ok);
    CHECK(r1.model->topo_counts() == r2.model->topo_counts());
    CHECK(r1.model->volume() == doctest::Approx(r2.model->volume()).epsilon(1e-9));
}

TEST_CASE("execute_program: log fidelity") {
    auto& ex = shared_executor();
    const auto r = ex.execute_program(
        CadProgram{"log(\"a\")\nlog(\"b\")\nlog(\"c\")\nemit(box(1,1,1))\n"});
    REQUIRE(r.status == ExecStatus::ok);
    CHECK(r.logs == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("execute_test verdicts and messages") {
    auto& ex = shared_executor();
    const auto cube = testhelpers::unit_cube();

    const auto pass = ex.execute_test(
        "let v = volume(model)\nrequire(v > 0, \"volume is \" + str(v))\n", cube);
    CHECK(pass.verdict == script::TestVerdict::pass);
    CHECK(pass.message.find("volume is") != std::string::npos);

    const auto fail = ex.execute_test(
        "let f = face_count(model)\nrequire(f == 7, \"expected 7, got \" + str(f))\n", cube);
    CHECK(fail.verdict == script::TestVerdict::fail);
    CHECK(fail.message == "expected 7, got 6");

    const auto err = ex.execute_test("let x = 1 / 0\n", cube);
    CHECK(err.verdict == script::TestVerdict::error);
    CHECK(!err.message.empty());
}

TEST_CASE("execute_tests batch keeps input order and isolates errors") {
    auto& ex = shared_executor();
    const auto cube = testhelpers::unit_cube();
    const auto results = ex.execute_tests(
        {{"a", "require(volume(model) > 0, \"positive\")\n"},
         {"b", "let x = 1 / 0\n"},
         {"c", "require(face_count(model) == 6, \"six faces\")\n"}},
        cube);
    REQUIRE(results.size() == 3);
    CHECK(results[0].verdict == script::TestVerdict::pass);
    CHECK(results[1].verdict == script::TestVerdict::error);
    CHECK(results[2].verdict == script::TestVerdict::pass);
}

TEST_CASE("isolation: a mixed batch yields one structured result each") {
    auto& ex = shared_executor();
    std::vector<std::future<ExecutionResult>> futs;
    for (int i = 0; i < 12; ++i) {
        CadProgram p;
        switch (i % 4) {
        case 0: p.source = "emit(box(1, 1, " + std::to_string(1 + i) + "))\n"; break;
        case 1: p.source = "emit(broken_reference)\n"; break;
        case 2: p.source = "let i = 0\nwhile true { set i = i + 1 }\nemit(box(1,1,1))\n"; break;
        default: p.source = "let xs = [1]\nwhile true { set xs = append(xs, xs) }\n"; break;
        }
        futs.push_back(std::async(std::launch::async, [&ex, p] {
            return ex.execute_program(p, 1200);
        }));
    }
    int ok = 0, rte = 0, to = 0, rl = 0;
    for (auto& f : futs) {
        const auto r = f.get();
        switch (r.status) {
        case ExecStatus::ok: ++ok; break;
        case ExecStatus::runtime_error: ++rte; break;
        case ExecStatus::timeout: ++to; break;
        case ExecStatus::resource_limit: ++rl; break;
        }
    }
    CHECK(ok == 3);
    CHECK(rte == 3);
    CHECK(to == 3);
    CHECK(rl == 3);
}

TEST_CASE("unknown dialect is rejected") {
    auto& ex = shared_executor();
    CadProgram p{"emit(box(1,1,1))\n", "python/occ"};
    CHECK_THROWS_AS(ex.execute_program(p), ExecutorError);
}
