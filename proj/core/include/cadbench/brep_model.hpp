#pragma once

#include "cadbench/analysis.hpp"
#include "cadbench/csg.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cadbench {

struct TopoCounts {
    int solids = 0;
    int shells = 0;
    int faces = 0;
    int edges = 0;
    int vertices = 0;

    bool operator==(const TopoCounts&) const = default;
};

struct ValidityFlags {
    bool single_solid = false;
    bool single_shell = false;
    bool positive_volume = false;
    bool connected = false;
};

/// World-frame face entity as returned by queries and selectors.
struct FaceEntity {
    SurfaceClass surface_class = SurfaceClass::other;
    double area = 0.0;
    Vec3 centroid = Vec3::Zero();
    std::optional<Vec3> normal;     // unit, planar faces only
    std::optional<Vec3> axis;       // cylindrical/conical
    std::optional<double> radius;   // cylindrical/conical/spherical
};

struct EdgeEntity {
    CurveClass curve_class = CurveClass::other;
    double length = 0.0;
    std::optional<double> radius;   // circle/arc
    bool closed = false;
    Vec3 centroid = Vec3::Zero();
    std::array<Vec3, 2> endpoints{Vec3::Zero(), Vec3::Zero()};
};

struct VertexEntity {
    Vec3 position = Vec3::Zero();
};

/// An executed solid: immutable CSG tree in a base frame plus a root
/// similarity transform. Queries are world-frame; the heavy boundary analysis
/// is computed once per tree and shared across transformed copies, which
/// makes measure queries exactly covariant under apply_transform.
class BRepModel {
public:
    BRepModel() = default;  // empty model
    explicit BRepModel(CsgNodePtr tree, SimilarityTransform root = {});

    bool empty() const { return tree_ == nullptr; }

    TopoCounts topo_counts() const;
    BoundingBox bounding_box() const;   // throws EmptyModelError
    double volume() const;              // throws EmptyModelError
    double surface_area() const;        // throws EmptyModelError
    Vec3 center_of_mass() const;        // throws EmptyModelError
    bool contains_point(const Vec3& p) const;  // throws EmptyModelError
    /// Boundary crossings sorted by distance, grazes deduplicated.
    std::vector<Vec3> ray_intersections(const Vec3& origin, const Vec3& dir) const;
    ValidityFlags is_valid_solid() const;

    std::vector<FaceEntity> faces() const;
    std::vector<EdgeEntity> edges() const;
    std::vector<VertexEntity> vertices() const;

    /// apply_transform: composes onto the root transform; shares the tree.
    BRepModel transformed(const SimilarityTransform& a) const;

    const CsgNodePtr& tree() const { return tree_; }
    const SimilarityTransform& root_transform() const { return root_; }

    /// Optional reference to the producing program (id or path).
    std::optional<std::string> source;

    static constexpr double kBoundaryTol = 1e-7;

private:
    const ModelAnalysis& analysis() const;

    CsgNodePtr tree_;
    SimilarityTransform root_;
    std::shared_ptr<const ModelAnalysis> analysis_;
};

TopoCounts topo_counts(const BRepModel& m);
BoundingBox bounding_box(const BRepModel& m);
double volume(const BRepModel& m);
double surface_area(const BRepModel& m);
Vec3 center_of_mass(const BRepModel& m);
bool contains_point(const BRepModel& m, const Vec3& p);
std::vector<Vec3> ray_intersections(const BRepModel& m, const Vec3& origin, const Vec3& dir);
BRepModel apply_transform(const BRepModel& m, const SimilarityTransform& a);
ValidityFlags is_valid_solid(const BRepModel& m);

/// Voxel intersection-over-union over the joint bounding box.
/// Deterministic: voxel centers; a non-zero seed adds seeded jitter.
double iou(const BRepModel& a, const BRepModel& b, int resolution = 64, std::uint64_t seed = 0);

}  // namespace cadbench
