#include "cadbench/config.hpp"

#include <cstdlib>
#include <fstream>

namespace cadbench {

using json = nlohmann::ordered_json;

namespace {

/// A RecordingPlanner that owns its inner backend.
class OwningRecorder : public Planner {
public:
    OwningRecorder(std::unique_ptr<Planner> inner, std::filesystem::path path)
        : inner_(std::move(inner)), recorder_(*inner_, std::move(path)) {}
    PlannerResponse complete(const PlannerRequest& request) override {
        return recorder_.complete(request);
    }

private:
    std::unique_ptr<Planner> inner_;
    RecordingPlanner recorder_;
};

std::optional<std::string> env_value(const std::string& key) {
    if (const char* v = std::getenv(key.c_str()); v != nullptr && *v != '\0') {
        return std::string(v);
    }
    return std::nullopt;
}

}  // namespace

HarnessConfig HarnessConfig::resolve(const std::optional<std::filesystem::path>& config_file,
                                     const std::map<std::string, std::string>& cli_overrides) {
    HarnessConfig cfg;

    json file;
    if (config_file) {
        std::ifstream f(*config_file);
        if (!f) throw SchemaError("cannot open config file: " + config_file->string());
        f >> file;
    }

    // key: canonical name used for both CLI overrides and CADBENCH_<UPPER>.
    auto lookup = [&](const std::string& key) -> std::optional<std::string> {
        if (auto it = cli_overrides.find(key); it != cli_overrides.end()) return it->second;
        std::string env_key = "CADBENCH_";
        for (char c : key) env_key += c == '-' ? '_' : char(std::toupper(c));
        if (auto v = env_value(env_key)) return v;
        if (file.contains(key)) {
            const auto& jv = file[key];
            return jv.is_string() ? jv.get<std::string>() : jv.dump();
        }
        return std::nullopt;
    };
    auto as_u64 = [&](const std::string& key, std::uint64_t def) {
        const auto v = lookup(key);
        return v ? std::stoull(*v) : def;
    };
    auto as_i64 = [&](const std::string& key, std::int64_t def) {
        const auto v = lookup(key);
        return v ? std::stoll(*v) : def;
    };
    auto as_int = [&](const std::string& key, int def) {
        const auto v = lookup(key);
        return v ? std::stoi(*v) : def;
    };
    auto as_double = [&](const std::string& key, double def) {
        const auto v = lookup(key);
        return v ? std::stod(*v) : def;
    };
    auto as_str = [&](const std::string& key, const std::string& def) {
        const auto v = lookup(key);
        return v ? *v : def;
    };
    auto as_bool = [&](const std::string& key, bool def) {
        const auto v = lookup(key);
        if (!v) return def;
        return *v == "1" || *v == "true" || *v == "yes";
    };

    cfg.seed = as_u64("seed", cfg.seed);
    cfg.iou_resolution = as_int("iou-resolution", cfg.iou_resolution);
    cfg.workers = as_int("workers", cfg.workers);
    cfg.program_timeout_ms = as_i64("program-timeout-ms", cfg.program_timeout_ms);
    cfg.test_timeout_ms = as_i64("test-timeout-ms", cfg.test_timeout_ms);
    cfg.memory_limit_mb = as_u64("memory-limit-mb", cfg.memory_limit_mb);
    cfg.worker_path = as_str("worker", cfg.worker_path);

    cfg.mutation.count = as_int("mutants", cfg.mutation.count);
    cfg.mutation.max_repair_iters = as_int("repair-iters", cfg.mutation.max_repair_iters);
    cfg.mutation.iou_min = as_double("iou-min", cfg.mutation.iou_min);
    cfg.mutation.iou_max = as_double("iou-max", cfg.mutation.iou_max);
    cfg.mutation.iou_resolution = cfg.iou_resolution;
    cfg.mutation.seed = cfg.seed;

    cfg.augmentations = as_int("augmentations", cfg.augmentations);
    cfg.refinement.max_rounds = as_int("rounds", cfg.refinement.max_rounds);
    cfg.refinement.discard_on_augmented =
        as_bool("discard-on-augmented", cfg.refinement.discard_on_augmented);
    cfg.refinement.test_timeout_ms = cfg.test_timeout_ms;

    cfg.planner_mode = as_str("planner-mode", cfg.planner_mode);
    cfg.planner_fixture = as_str("planner-fixture", cfg.planner_fixture);
    cfg.transcript_out = as_str("transcript-out", cfg.transcript_out);
    cfg.http.host = as_str("planner-host", cfg.http.host);
    cfg.http.path = as_str("planner-path", cfg.http.path);
    cfg.http.model = as_str("planner-model", cfg.http.model);
    cfg.http.api_key_env = as_str("planner-key-env", cfg.http.api_key_env);
    cfg.http.temperature = as_double("planner-temperature", cfg.http.temperature);

    cfg.deterministic_artifacts = as_bool("deterministic-artifacts", cfg.deterministic_artifacts);
    return cfg;
}

ExecutorConfig HarnessConfig::executor_config() const {
    ExecutorConfig ex;
    ex.worker_path = worker_path;
    ex.max_workers = workers;
    ex.program_timeout_ms = program_timeout_ms;
    ex.test_timeout_ms = test_timeout_ms;
    ex.memory_limit_mb = memory_limit_mb;
    return ex;
}

PipelineConfig HarnessConfig::pipeline_config() const {
    PipelineConfig p;
    p.mutation = mutation;
    p.augmentations = augmentations;
    p.refinement = refinement;
    p.seed = seed;
    p.deterministic_artifacts = deterministic_artifacts;
    return p;
}

std::unique_ptr<Planner> HarnessConfig::make_planner() const {
    std::unique_ptr<Planner> inner;
    if (planner_mode == "scripted") {
        if (planner_fixture.empty()) {
            throw PlannerError("planner-mode scripted requires planner-fixture");
        }
        inner = std::make_unique<ScriptedPlanner>(std::filesystem::path(planner_fixture));
    } else if (planner_mode == "live") {
        inner = std::make_unique<HttpPlanner>(http);
    } else if (planner_mode == "none") {
        return nullptr;
    } else {
        throw PlannerError("unknown planner-mode: " + planner_mode);
    }
    if (!transcript_out.empty()) {
        return std::make_unique<OwningRecorder>(std::move(inner), transcript_out);
    }
    return inner;
}

}  // namespace cadbench
