#pragma once

#include "cadbench/csg.hpp"

#include <array>
#include <optional>
#include <vector>

namespace cadbench {

/// One connected face region of the result boundary, base frame.
struct AnalyzedFace {
    SurfaceClass surface_class = SurfaceClass::other;
    double area = 0.0;
    Vec3 centroid = Vec3::Zero();
    Vec3 normal = Vec3::Zero();       // material-outward, at the region's param centroid
    bool planar_normal = false;       // true when the normal is constant (planar)
    std::optional<Vec3> axis;         // cylindrical/conical carriers
    std::optional<double> radius;     // cylindrical/conical/spherical carriers
    int shell_id = -1;
    BoundingBox bounds;

    // Integrals used by volume / center-of-mass assembly.
    double flux = 0.0;                // ∫ (p·n) dA, material-outward n
    Vec3 moment = Vec3::Zero();       // ∫ (p_i²/2) n_i dA

    // Support-query seeds: sampled region points with their params, plus the
    // carrier needed to refine extremes locally. The carrier points into the
    // analyzed tree; the owning model keeps that tree alive.
    FaceRef carrier;
    std::vector<Vec3> support_points;
    std::vector<std::array<double, 2>> support_params;
    double step_u = 0.0, step_v = 0.0;  // base grid cell size in param space
};

struct AnalyzedEdge {
    CurveClass curve_class = CurveClass::other;
    double length = 0.0;
    std::optional<double> radius;
    bool closed = false;
    Vec3 centroid = Vec3::Zero();
    std::array<Vec3, 2> endpoints{Vec3::Zero(), Vec3::Zero()};
};

/// Full boundary analysis of a CSG tree in its base frame. Immutable once
/// built; shared between models that differ only by root transform.
struct ModelAnalysis {
    bool empty = true;
    int solids = 0;
    int shells = 0;
    std::vector<AnalyzedFace> faces;
    std::vector<AnalyzedEdge> edges;
    std::vector<Vec3> vertices;

    double volume = 0.0;
    double surface_area = 0.0;
    Vec3 center_of_mass = Vec3::Zero();
    BoundingBox bounds;  // tight, base frame

    // Exact support fast path: populated when the tree is a single primitive
    // or a disjoint union of primitives.
    std::vector<Primitive> support_prims;
    double probe_eps = 0.0;
};

struct AnalysisOptions {
    int grid = 64;             // base param grid per face (longest side)
    int adaptive_depth = 4;    // extra subdivision levels on region borders
    int edge_samples = 384;    // samples per analytic self-edge
    double eps_rel = 1e-6;     // boundary probe offset, relative to model diagonal
};

ModelAnalysis analyze(const CsgNodePtr& tree, const AnalysisOptions& opts = {});

/// Max of dir·p over the solid, base frame. Exact on the primitive fast path,
/// sampled-and-refined otherwise. `tree` must be the analyzed tree.
double support_distance(const ModelAnalysis& analysis, const CsgNodePtr& tree, const Vec3& dir);

/// Tight world-frame bounding box of the analyzed tree under a root transform.
BoundingBox world_bounds(const ModelAnalysis& analysis, const CsgNodePtr& tree,
                         const SimilarityTransform& root);

}  // namespace cadbench
