#pragma once

#include "cadbench/brep_model.hpp"
#include "cadbench/mutation.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cadbench {

/// One model of the passing or mutation set with serializable provenance.
struct SetEntry {
    BRepModel model;
    std::string provenance;          // transform/mutation description, never source
    bool is_reference = false;       // un-augmented reference entry
    int mutant_index = -1;           // -1 for passing entries
    std::string mutant_description;  // d̃ for mutation entries
    std::optional<SimilarityTransform> transform;  // augmentation parameters
    bool skipped = false;
    std::string skip_reason;
};

struct EvaluationSets {
    std::vector<SetEntry> passing;   // reference + augmentations
    std::vector<SetEntry> mutation;  // each mutant + its augmentations
};

/// Samples augmentation transforms: rotation from {identity, ±90° about
/// X/Y/Z}, uniform scale in [0.5, 2] when allowed (else 1), translation
/// components in [-10, 10]. Deterministic for a fixed seed.
std::vector<SimilarityTransform> sample_transforms(int count, bool allow_scaling,
                                                   std::uint64_t seed);

std::string transform_description(const SimilarityTransform& t);

/// passing = reference + its images; mutation = each mutant model + images.
/// A failing transform application marks the entry skipped, never aborts.
EvaluationSets build_sets(const BRepModel& reference, const std::vector<FilteredMutant>& mutants,
                          const std::vector<SimilarityTransform>& transforms);

/// Manifest: STEP files plus a JSON listing of paths and provenance.
void save_sets_manifest(const std::filesystem::path& dir, const EvaluationSets& sets);
EvaluationSets load_sets_manifest(const std::filesystem::path& dir);

}  // namespace cadbench
