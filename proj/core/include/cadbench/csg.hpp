#pragma once

#include "cadbench/primitive.hpp"

#include <memory>
#include <vector>

namespace cadbench {

enum class BoolOp { unite, subtract, intersect };

struct CsgNode;
using CsgNodePtr = std::shared_ptr<const CsgNode>;

/// Immutable CSG tree: boolean combinations of posed primitives.
struct CsgNode {
    enum class Kind { primitive, boolean };
    Kind kind = Kind::primitive;

    Primitive prim;          // kind == primitive
    BoolOp op = BoolOp::unite;  // kind == boolean
    CsgNodePtr left, right;

    static CsgNodePtr make(Primitive p);
    static CsgNodePtr make(BoolOp op, CsgNodePtr l, CsgNodePtr r);
};

/// Distributes a similarity transform over the tree, composing it into every
/// primitive pose. Returns a new tree; the input is untouched.
CsgNodePtr transformed(const CsgNodePtr& node, const SimilarityTransform& a);

/// Three-valued point classification with boundary tolerance (base units).
PointClass classify(const CsgNode& node, const Vec3& p, double tol);

void collect_primitives(const CsgNodePtr& node, std::vector<const Primitive*>& out);

/// Conservative bounding box (union of primitive boxes; exact for unions).
BoundingBox conservative_bounds(const CsgNode& node);

/// All parametric ray distances where the material state flips, sorted
/// ascending, grazes removed, deduplicated within `dedup_tol`.
std::vector<double> ray_crossings(const CsgNode& node, const Vec3& origin, const Vec3& dir_unit,
                                  double boundary_tol, double dedup_tol);

}  // namespace cadbench
