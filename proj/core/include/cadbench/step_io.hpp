#pragma once

#include "cadbench/brep_model.hpp"

#include <filesystem>
#include <string>

namespace cadbench {

class StepError : public KernelError {
public:
    using KernelError::KernelError;
};

/// Serializes the model as an ISO-10303-21 file using the STEP CSG entities
/// (BLOCK, RIGHT_CIRCULAR_CYLINDER, SPHERE, RIGHT_CIRCULAR_CONE,
/// BOOLEAN_RESULT, CSG_SOLID). The root transform is folded into the
/// primitive placements; uniform scale folds into the dimensions.
std::string to_step(const BRepModel& model);
void save_step(const BRepModel& model, const std::filesystem::path& path);

/// Parses a file produced by to_step (and the CSG subset generally).
BRepModel from_step(const std::string& text);
BRepModel load_step(const std::filesystem::path& path);

}  // namespace cadbench
