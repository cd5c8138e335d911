#include "cadbench/bench.hpp"

#include <algorithm>
#include <fstream>

namespace cadbench {

using json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) throw SchemaError("cannot open " + p.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

json read_json(const std::filesystem::path& p) {
    try {
        return json::parse(read_file(p));
    } catch (const json::parse_error& e) {
        throw SchemaError(p.string() + ": " + e.what());
    }
}

}  // namespace

IngestResult ingest(const std::filesystem::path& dataset_dir) {
    if (!std::filesystem::exists(dataset_dir)) {
        throw SchemaError("dataset directory does not exist: " + dataset_dir.string());
    }
    IngestResult out;
    std::vector<std::filesystem::path> sample_dirs;
    for (const auto& e : std::filesystem::directory_iterator(dataset_dir)) {
        if (e.is_directory()) sample_dirs.push_back(e.path());
    }
    std::sort(sample_dirs.begin(), sample_dirs.end());

    for (const auto& dir : sample_dirs) {
        const std::string id = dir.filename().string();
        auto issue = [&](const std::string& file, const std::string& field,
                         const std::string& message) {
            out.issues.push_back({id, file, field, message});
        };
        BenchmarkSample s;
        s.sample_id = id;
        s.dir = dir;
        bool ok = true;

        const auto prompts_path = dir / "prompts.json";
        if (!std::filesystem::exists(prompts_path)) {
            issue("prompts.json", "", "missing file");
            ok = false;
        } else {
            try {
                const json pj = read_json(prompts_path);
                if (!pj.contains("abstract") || !pj["abstract"].is_string() ||
                    pj["abstract"].get<std::string>().empty()) {
                    issue("prompts.json", "abstract", "missing or empty");
                    ok = false;
                } else {
                    s.abstract_prompt = pj["abstract"].get<std::string>();
                }
                if (!pj.contains("detailed") || !pj["detailed"].is_string() ||
                    pj["detailed"].get<std::string>().empty()) {
                    issue("prompts.json", "detailed", "missing or empty");
                    ok = false;
                } else {
                    s.detailed_prompt = pj["detailed"].get<std::string>();
                }
            } catch (const SchemaError& e) {
                issue("prompts.json", "", e.what());
                ok = false;
            }
        }

        const auto ref_path = dir / "reference.script";
        if (!std::filesystem::exists(ref_path)) {
            issue("reference.script", "", "missing file");
            ok = false;
        } else {
            s.reference.source = read_file(ref_path);
            s.reference.origin = CadProgram::Origin::reference;
            if (s.reference.source.empty()) {
                issue("reference.script", "", "empty program source");
                ok = false;
            }
        }

        for (const PromptType type : {PromptType::abstract_prompt, PromptType::detailed_prompt}) {
            const std::string name = std::string(to_string(type)) + ".json";
            const auto suite_path = dir / "suites" / name;
            if (std::filesystem::exists(suite_path)) {
                try {
                    TestSuite suite = suite_from_json(read_json(suite_path), id, type);
                    if (type == PromptType::abstract_prompt) {
                        s.abstract_suite = std::move(suite);
                    } else {
                        s.detailed_suite = std::move(suite);
                    }
                } catch (const std::exception& e) {
                    issue("suites/" + name, "", e.what());
                    ok = false;
                }
            }
            const auto groups_path = dir / "groups" / name;
            if (std::filesystem::exists(groups_path)) {
                try {
                    GroupMap groups = groups_from_json(read_json(groups_path));
                    if (type == PromptType::abstract_prompt) {
                        s.abstract_groups = std::move(groups);
                    } else {
                        s.detailed_groups = std::move(groups);
                    }
                } catch (const std::exception& e) {
                    issue("groups/" + name, "", e.what());
                    ok = false;
                }
            }
        }

        if (ok) out.samples.push_back(std::move(s));
    }
    return out;
}

json sample_result_to_json(const SampleResult& r) {
    json j;
    j["sample_id"] = r.sample_id;
    j["prompt_type"] = to_string(r.prompt_type);
    j["generation_status"] = r.generation_status == GenStatus::ok ? "ok" : "invalid";
    j["report"] = report_to_json(r.suite_report, true);
    j["groups"] = groups_to_json(r.groups);
    j["categories"] = json::object();
    for (const auto& [id, cat] : r.categories) j["categories"][id] = to_string(cat);
    return j;
}

SampleResult sample_result_from_json(const json& j) {
    SampleResult r;
    r.sample_id = j.at("sample_id");
    r.prompt_type = prompt_type_from_string(j.value("prompt_type", "detailed"));
    r.generation_status = j.value("generation_status", "invalid") == "ok" ? GenStatus::ok
                                                                          : GenStatus::invalid;
    r.suite_report = report_from_json(j.value("report", json::object()));
    r.groups = groups_from_json(j.value("groups", json::array()));
    for (const auto& [id, cat] : j.value("categories", json::object()).items()) {
        r.categories[id] = category_from_string(cat.get<std::string>());
    }
    return r;
}

}  // namespace cadbench
