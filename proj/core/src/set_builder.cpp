#include "cadbench/set_builder.hpp"

#include "cadbench/step_io.hpp"

#include <json.hpp>

#include <fstream>
#include <random>
#include <sstream>

namespace cadbench {

using json = nlohmann::ordered_json;

std::vector<SimilarityTransform> sample_transforms(int count, bool allow_scaling,
                                                   std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample_transforms: count must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> rot_pick(0, 6);  // 0 = identity, then ±90 about X/Y/Z
    std::uniform_real_distribution<double> scale_pick(0.5, 2.0);
    std::uniform_real_distribution<double> t_pick(-10.0, 10.0);
    std::vector<SimilarityTransform> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        SimilarityTransform t;
        const int r = rot_pick(rng);
        if (r > 0) {
            const int axis = (r - 1) / 2;
            const double deg = (r - 1) % 2 == 0 ? 90.0 : -90.0;
            t.rotation = SimilarityTransform::rotation_about_axis(axis, deg).rotation;
        }
        t.scale = allow_scaling ? scale_pick(rng) : 1.0;
        t.translation = Vec3(t_pick(rng), t_pick(rng), t_pick(rng));
        out.push_back(t);
    }
    return out;
}

std::string transform_description(const SimilarityTransform& t) {
    std::ostringstream ss;
    ss.precision(4);
    // Recover the axis-angle form for the restricted rotation set.
    if ((t.rotation - Mat3::Identity()).norm() < 1e-12) {
        ss << "rotation identity";
    } else {
        const Eigen::AngleAxisd aa(t.rotation);
        const Vec3 ax = aa.axis();
        const char* axis_name = std::abs(ax.x()) > 0.9   ? "X"
                                : std::abs(ax.y()) > 0.9 ? "Y"
                                                         : "Z";
        const double sign = ax.sum() >= 0 ? 1.0 : -1.0;
        ss << "rotation " << sign * aa.angle() * 180.0 / M_PI << " deg about " << axis_name;
    }
    ss << ", scale " << t.scale << ", translation (" << t.translation.x() << ", "
       << t.translation.y() << ", " << t.translation.z() << ")";
    return ss.str();
}

EvaluationSets build_sets(const BRepModel& reference, const std::vector<FilteredMutant>& mutants,
                          const std::vector<SimilarityTransform>& transforms) {
    if (reference.empty()) throw EmptyModelError("build_sets: reference model is empty");
    EvaluationSets sets;

    auto add_entries = [&](std::vector<SetEntry>& dest, const BRepModel& base, int mutant_index,
                           const std::string& mutant_desc) {
        SetEntry root;
        root.model = base;
        root.is_reference = mutant_index < 0;
        root.mutant_index = mutant_index;
        root.mutant_description = mutant_desc;
        root.provenance = mutant_index < 0 ? "reference model"
                                           : "mutant #" + std::to_string(mutant_index) + ": " +
                                                 mutant_desc;
        dest.push_back(std::move(root));
        for (const auto& a : transforms) {
            SetEntry e;
            e.mutant_index = mutant_index;
            e.mutant_description = mutant_desc;
            e.transform = a;
            try {
                e.model = apply_transform(base, a);
                e.provenance = (mutant_index < 0
                                    ? std::string("augmented reference: ")
                                    : "augmented mutant #" + std::to_string(mutant_index) + " (" +
                                          mutant_desc + "): ") +
                               transform_description(a);
            } catch (const KernelError& err) {
                e.skipped = true;
                e.skip_reason = err.what();
                e.provenance = "skipped augmentation: " + std::string(err.what());
            }
            dest.push_back(std::move(e));
        }
    };

    add_entries(sets.passing, reference, -1, "");
    for (size_t i = 0; i < mutants.size(); ++i) {
        add_entries(sets.mutation, mutants[i].model, int(i), mutants[i].mutant.description);
    }
    return sets;
}

namespace {

json entry_to_json(const SetEntry& e, const std::filesystem::path& dir, const std::string& stem) {
    json j;
    j["provenance"] = e.provenance;
    j["is_reference"] = e.is_reference;
    j["mutant_index"] = e.mutant_index;
    j["mutant_description"] = e.mutant_description;
    j["skipped"] = e.skipped;
    j["skip_reason"] = e.skip_reason;
    if (e.transform) {
        const auto& t = *e.transform;
        json tj;
        tj["scale"] = t.scale;
        tj["translation"] = {t.translation.x(), t.translation.y(), t.translation.z()};
        tj["rotation"] = json::array();
        for (int r = 0; r < 3; ++r) {
            tj["rotation"].push_back({t.rotation(r, 0), t.rotation(r, 1), t.rotation(r, 2)});
        }
        j["transform"] = tj;
    }
    if (!e.skipped && !e.model.empty()) {
        const std::string file = stem + ".step";
        save_step(e.model, dir / file);
        j["step"] = file;
    }
    return j;
}

SetEntry entry_from_json(const json& j, const std::filesystem::path& dir) {
    SetEntry e;
    e.provenance = j.value("provenance", "");
    e.is_reference = j.value("is_reference", false);
    e.mutant_index = j.value("mutant_index", -1);
    e.mutant_description = j.value("mutant_description", "");
    e.skipped = j.value("skipped", false);
    e.skip_reason = j.value("skip_reason", "");
    if (j.contains("transform")) {
        SimilarityTransform t;
        const auto& tj = j["transform"];
        t.scale = tj.value("scale", 1.0);
        const auto& tr = tj["translation"];
        t.translation = Vec3(tr[0], tr[1], tr[2]);
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) t.rotation(r, c) = tj["rotation"][r][c];
        }
        e.transform = t;
    }
    if (j.contains("step")) e.model = load_step(dir / j["step"].get<std::string>());
    return e;
}

}  // namespace

void save_sets_manifest(const std::filesystem::path& dir, const EvaluationSets& sets) {
    std::filesystem::create_directories(dir);
    json j;
    j["passing"] = json::array();
    j["mutation"] = json::array();
    for (size_t i = 0; i < sets.passing.size(); ++i) {
        j["passing"].push_back(entry_to_json(sets.passing[i], dir, "passing-" + std::to_string(i)));
    }
    for (size_t i = 0; i < sets.mutation.size(); ++i) {
        j["mutation"].push_back(
            entry_to_json(sets.mutation[i], dir, "mutation-" + std::to_string(i)));
    }
    std::ofstream f(dir / "manifest.json");
    f << j.dump(2) << "\n";
}

EvaluationSets load_sets_manifest(const std::filesystem::path& dir) {
    std::ifstream f(dir / "manifest.json");
    if (!f) throw std::runtime_error("missing sets manifest in " + dir.string());
    json j;
    f >> j;
    EvaluationSets sets;
    for (const auto& e : j.value("passing", json::array())) {
        sets.passing.push_back(entry_from_json(e, dir));
    }
    for (const auto& e : j.value("mutation", json::array())) {
        sets.mutation.push_back(entry_from_json(e, dir));
    }
    return sets;
}

}  // namespace cadbench
