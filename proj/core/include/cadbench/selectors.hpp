#pragma once

#include "cadbench/brep_model.hpp"

#include <string>
#include <variant>
#include <vector>

namespace cadbench {

enum class EntityKind { face, edge, vertex };

/// A single conjunctive filter of a selector query.
struct SelectorFilter {
    enum class Kind {
        surface_class,     // faces
        curve_class,       // edges
        max_along,         // entities whose centroid attains the max along `direction`
        min_along,
        area_between,      // faces, [lo, hi]
        length_between,    // edges
        radius_between,    // faces or edges carrying a radius
        parallel_to,       // planar face normal ⟂ dir; cyl/cone axis ∥ dir; line edge ∥ dir
        perpendicular_to,  // planar face normal ∥ dir; cyl/cone axis ⟂ dir; line edge ⟂ dir
        always_true,
    };
    Kind kind = Kind::always_true;
    SurfaceClass surface_class = SurfaceClass::planar;
    CurveClass curve_class = CurveClass::line;
    Vec3 direction = Vec3(0, 0, 1);
    double lo = 0.0;
    double hi = 0.0;

    static SelectorFilter by_surface_class(SurfaceClass c);
    static SelectorFilter by_curve_class(CurveClass c);
    static SelectorFilter max_along_dir(const Vec3& d);
    static SelectorFilter min_along_dir(const Vec3& d);
    static SelectorFilter area_between(double lo, double hi);
    static SelectorFilter length_between(double lo, double hi);
    static SelectorFilter radius_between(double lo, double hi);
    static SelectorFilter parallel(const Vec3& d);
    static SelectorFilter perpendicular(const Vec3& d);
    static SelectorFilter always();
};

struct SelectorQuery {
    EntityKind kind = EntityKind::face;
    std::vector<SelectorFilter> filters;  // conjunctive; must be non-empty

    void validate() const;  // throws KernelError on empty filter list
};

using SelectedEntity = std::variant<FaceEntity, EdgeEntity, VertexEntity>;

Vec3 entity_centroid(const SelectedEntity& e);

/// Entities satisfying all filters, in the model's deterministic order
/// (centroid-lexicographic, area/length descending tie-break).
std::vector<SelectedEntity> select(const BRepModel& m, const SelectorQuery& q);

}  // namespace cadbench
