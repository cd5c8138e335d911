#include "cadbench/worker.hpp"

#include "cadbench/executor.hpp"
#include "cadbench/step_io.hpp"

#include <json.hpp>

#include <chrono>
#include <iostream>

#if defined(__unix__) || defined(__APPLE__)
#include <sys/resource.h>
#endif

namespace cadbench {

namespace {

using json = nlohmann::ordered_json;

void apply_memory_limit(std::uint64_t mb) {
#if defined(__unix__) || defined(__APPLE__)
    if (mb == 0) return;
    rlimit lim{};
    lim.rlim_cur = lim.rlim_max = static_cast<rlim_t>(mb) * 1024 * 1024;
    setrlimit(RLIMIT_AS, &lim);
#else
    (void)mb;
#endif
}

json run_program_request(const json& req) {
    const auto t0 = std::chrono::steady_clock::now();
    json resp;
    const std::string dialect = req.value("dialect", std::string(script::kDialectId));
    if (dialect != script::kDialectId) {
        resp["status"] = "runtime-error";
        resp["trace"] = "unknown dialect: " + dialect;
        resp["logs"] = json::array();
        resp["duration_ms"] = 0;
        return resp;
    }
    script::InterpLimits limits;
    limits.deadline = std::chrono::milliseconds(req.value("timeout_ms", std::int64_t(0)));
    const std::uint64_t mem_mb = req.value("memory_limit_mb", std::uint64_t(0));
    if (mem_mb) limits.max_alloc_bytes = mem_mb * 1024 * 1024 / 4;

    const script::ProgramOutcome out = script::run_program(req.at("source"), limits);
    switch (out.status) {
    case script::ProgramStatus::ok: resp["status"] = "ok"; break;
    case script::ProgramStatus::runtime_error: resp["status"] = "runtime-error"; break;
    case script::ProgramStatus::timeout: resp["status"] = "timeout"; break;
    case script::ProgramStatus::resource_limit: resp["status"] = "resource-limit"; break;
    }
    if (out.status == script::ProgramStatus::ok) {
        const std::string path = req.value("model_out_path", std::string());
        if (!path.empty()) {
            save_step(out.model, path);
            resp["model_path"] = path;
        }
    }
    resp["trace"] = out.trace;
    resp["logs"] = out.logs;
    resp["duration_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
            .count();
    return resp;
}

json run_one_test(const std::string& body, const BRepModel& model, std::int64_t timeout_ms,
                  std::uint64_t mem_mb) {
    const auto t0 = std::chrono::steady_clock::now();
    script::InterpLimits limits;
    limits.deadline = std::chrono::milliseconds(timeout_ms);
    if (mem_mb) limits.max_alloc_bytes = mem_mb * 1024 * 1024 / 4;
    const script::TestOutcome out = script::run_test(body, model, limits);
    json resp;
    resp["verdict"] = to_string(out.verdict);
    resp["message"] = out.message;
    resp["logs"] = out.logs;
    resp["duration_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
            .count();
    return resp;
}

json run_test_request(const json& req) {
    const std::string model_path = req.at("model_path");
    BRepModel model;
    try {
        model = load_step(model_path);
    } catch (const std::exception& e) {
        json resp;
        if (req.contains("tests")) {
            resp["results"] = json::array();
            for (const auto& t : req.at("tests")) {
                json r;
                r["id"] = t.value("id", "");
                r["verdict"] = "error";
                r["message"] = std::string("failed to load model: ") + e.what();
                r["logs"] = json::array();
                r["duration_ms"] = 0;
                resp["results"].push_back(std::move(r));
            }
        } else {
            resp["verdict"] = "error";
            resp["message"] = std::string("failed to load model: ") + e.what();
            resp["logs"] = json::array();
            resp["duration_ms"] = 0;
        }
        return resp;
    }

    // Force the boundary analysis now so its cost is not charged to the
    // first test's deadline.
    try {
        (void)model.topo_counts();
    } catch (const std::exception&) {
    }

    const std::int64_t timeout_ms = req.value("timeout_ms", std::int64_t(0));
    const std::uint64_t mem_mb = req.value("memory_limit_mb", std::uint64_t(0));
    if (!req.contains("tests")) {
        return run_one_test(req.at("body"), model, timeout_ms, mem_mb);
    }
    json resp;
    resp["results"] = json::array();
    for (const auto& t : req.at("tests")) {
        json r = run_one_test(t.at("body"), model, timeout_ms, mem_mb);
        r["id"] = t.value("id", "");
        resp["results"].push_back(std::move(r));
    }
    return resp;
}

}  // namespace

int worker_serve(std::istream& in, std::ostream& out) {
    std::string line;
    if (!std::getline(in, line)) return 1;
    json resp;
    try {
        const json req = json::parse(line);
        apply_memory_limit(req.value("memory_limit_mb", std::uint64_t(0)));
        const std::string mode = req.value("mode", "program");
        if (mode == "program") {
            resp = run_program_request(req);
        } else if (mode == "test" || mode == "tests") {
            resp = run_test_request(req);
        } else {
            resp["status"] = "runtime-error";
            resp["trace"] = "unknown mode: " + mode;
            resp["logs"] = json::array();
            resp["duration_ms"] = 0;
        }
    } catch (const std::bad_alloc&) {
        resp = json{{"status", "resource-limit"}, {"trace", ""}, {"logs", json::array()},
                    {"duration_ms", 0}};
    } catch (const std::exception& e) {
        resp = json{{"status", "runtime-error"},
                    {"trace", std::string("worker failure: ") + e.what()},
                    {"logs", json::array()},
                    {"duration_ms", 0}};
    }
    out << resp.dump() << "\n" << std::flush;
    return 0;
}

}  // namespace cadbench
