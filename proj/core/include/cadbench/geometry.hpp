#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>

namespace cadbench {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Base class for all geometry-kernel failures.
class KernelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown by queries that require at least one solid.
class EmptyModelError : public KernelError {
public:
    EmptyModelError() : KernelError("model is empty") {}
    explicit EmptyModelError(const std::string& what) : KernelError(what) {}
};

/// Uniform scale, then rotation, then translation: world = t + r * (s * p).
struct SimilarityTransform {
    double scale = 1.0;
    Mat3 rotation = Mat3::Identity();
    Vec3 translation = Vec3::Zero();

    static SimilarityTransform identity() { return {}; }
    static SimilarityTransform scaling(double s);
    static SimilarityTransform translate(const Vec3& t);
    /// Right-handed rotation about a coordinate axis (0=X,1=Y,2=Z), angle in degrees.
    static SimilarityTransform rotation_about_axis(int axis, double degrees);

    Vec3 apply(const Vec3& p) const { return translation + rotation * (scale * p); }
    Vec3 apply_direction(const Vec3& d) const { return rotation * d; }

    /// this ∘ inner: apply `inner` first, then this.
    SimilarityTransform compose(const SimilarityTransform& inner) const;
    SimilarityTransform inverse() const;

    bool is_identity(double tol = 1e-12) const;
    /// Enforces s > 0 and r ∈ SO(3) within 1e-9; throws KernelError otherwise.
    void validate() const;
};

struct BoundingBox {
    Vec3 min = Vec3::Zero();
    Vec3 max = Vec3::Zero();

    Vec3 dims() const { return max - min; }
    Vec3 center() const { return 0.5 * (min + max); }
    double diagonal() const { return (max - min).norm(); }
    double volume() const;
    bool contains(const Vec3& p, double tol = 0.0) const;
    bool intersects(const BoundingBox& other) const;

    void expand(const Vec3& p);
    static BoundingBox merged(const BoundingBox& a, const BoundingBox& b);
    static std::optional<BoundingBox> intersection(const BoundingBox& a, const BoundingBox& b);
};

/// Three-valued point membership used by CSG classification.
enum class PointClass { inside, on_boundary, outside };

inline PointClass complement(PointClass c) {
    switch (c) {
    case PointClass::inside: return PointClass::outside;
    case PointClass::outside: return PointClass::inside;
    default: return PointClass::on_boundary;
    }
}

}  // namespace cadbench
