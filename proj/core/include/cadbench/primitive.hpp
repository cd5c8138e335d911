#pragma once

#include "cadbench/geometry.hpp"

#include <array>
#include <vector>

namespace cadbench {

enum class SurfaceClass { planar, cylindrical, conical, spherical, toroidal, other };
enum class CurveClass { line, circle, arc, spline, other };

const char* to_string(SurfaceClass c);
const char* to_string(CurveClass c);
SurfaceClass surface_class_from_string(const std::string& s);
CurveClass curve_class_from_string(const std::string& s);

enum class PrimitiveKind { box, cylinder, sphere, cone };

struct FaceRef;
struct EdgeRef;

/// Analytic solid primitive in its canonical local frame, posed into the model
/// base frame by a similarity transform.
///
/// Local frames:
///   box      — axis-aligned, corner at origin, spans [0,a]x[0,b]x[0,c]
///   cylinder — radius a, axis +Z from z=0 to z=b
///   sphere   — radius a, centered at origin
///   cone     — base radius a at z=0, top radius c at z=b (frustum; c=0 ⇒ apex)
struct Primitive {
    PrimitiveKind kind = PrimitiveKind::box;
    double a = 1.0, b = 1.0, c = 1.0;
    SimilarityTransform pose;

    PointClass classify_local(const Vec3& p, double tol) const;
    /// Classify a base-frame point; `tol` is in base-frame units.
    PointClass classify(const Vec3& p, double tol) const;

    /// Parametric distances (base-frame units) where the ray crosses this
    /// primitive's surface. Unfiltered candidates; the CSG layer classifies.
    void ray_candidates(const Vec3& origin, const Vec3& dir_unit, std::vector<double>& ts) const;

    double volume() const;
    double surface_area() const;
    Vec3 center_of_mass() const;
    BoundingBox bounds() const;
    /// Exact support function: max over the solid of dir·p (dir unit, base frame).
    double support(const Vec3& dir) const;

    int face_count() const;
    FaceRef face(int index) const;
    int self_edge_count() const;
    EdgeRef self_edge(int index) const;
    /// Isolated vertices not arising as edge endpoints (cone apex).
    std::vector<Vec3> apex_points() const;

    void validate() const;
};

/// A parametric face patch of a primitive, evaluated in the base frame.
struct FaceRef {
    const Primitive* prim = nullptr;
    int index = -1;

    SurfaceClass surface_class() const;
    /// Parameter domain [u0,u1]x[v0,v1].
    std::array<double, 4> domain() const;
    bool periodic_u() const;
    bool periodic_v() const;

    Vec3 eval(double u, double v) const;
    /// Outward unit normal at (u,v), base frame.
    Vec3 normal(double u, double v) const;
    /// Outward unit normal of the carrier surface at a base-frame point
    /// assumed to lie on (or very near) the surface.
    Vec3 normal_at_point(const Vec3& p) const;
    /// |dS/du x dS/dv| at (u,v), base-frame units².
    double area_element(double u, double v) const;
    /// Total analytic area of the (unclipped) patch.
    double analytic_area() const;
    /// Conservative bound on the distance between the true patch over a
    /// param cell of size (du,dv) and the cell's corner hull (curvature sag).
    double cell_pad(double du, double dv) const;

    /// Signed distance-like implicit of the carrier surface (zero on the
    /// surface, positive outside), base-frame units.
    double surface_implicit(const Vec3& p) const;
    /// True if the two faces lie on the same carrier surface (within tol).
    bool same_surface(const FaceRef& other, double tol) const;

    /// For cylindrical/conical faces: world axis direction and radius.
    Vec3 axis_direction() const;
    double radius() const;

    bool valid() const { return prim != nullptr && index >= 0; }
};

/// An analytic self-edge of a primitive (box segment, cap rim circle).
struct EdgeRef {
    const Primitive* prim = nullptr;
    int index = -1;

    CurveClass curve_class() const;
    bool closed() const;
    /// Curve point at t in [0,1], base frame.
    Vec3 eval(double t) const;
    double analytic_length() const;
    /// Circle radius (base frame) for circular edges, 0 otherwise.
    double radius() const;
    /// Indices of the two adjacent faces on the owning primitive.
    std::array<int, 2> adjacent_faces() const;

    bool valid() const { return prim != nullptr && index >= 0; }
};

}  // namespace cadbench
