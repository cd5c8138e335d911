#include "cadbench/geometry.hpp"

#include <cmath>

namespace cadbench {

SimilarityTransform SimilarityTransform::scaling(double s) {
    SimilarityTransform a;
    a.scale = s;
    return a;
}

SimilarityTransform SimilarityTransform::translate(const Vec3& t) {
    SimilarityTransform a;
    a.translation = t;
    return a;
}

SimilarityTransform SimilarityTransform::rotation_about_axis(int axis, double degrees) {
    SimilarityTransform a;
    const double rad = degrees * M_PI / 180.0;
    Vec3 u = Vec3::Zero();
    u[axis] = 1.0;
    a.rotation = Eigen::AngleAxisd(rad, u).toRotationMatrix();
    return a;
}

SimilarityTransform SimilarityTransform::compose(const SimilarityTransform& inner) const {
    // world = t_o + r_o s_o (t_i + r_i s_i p) = (t_o + r_o s_o t_i) + (r_o r_i)(s_o s_i) p
    SimilarityTransform out;
    out.scale = scale * inner.scale;
    out.rotation = rotation * inner.rotation;
    out.translation = translation + rotation * (scale * inner.translation);
    return out;
}

SimilarityTransform SimilarityTransform::inverse() const {
    SimilarityTransform inv;
    inv.scale = 1.0 / scale;
    inv.rotation = rotation.transpose();
    inv.translation = -(inv.rotation * translation) / scale;
    return inv;
}

bool SimilarityTransform::is_identity(double tol) const {
    return std::abs(scale - 1.0) <= tol && translation.norm() <= tol &&
           (rotation - Mat3::Identity()).norm() <= tol;
}

void SimilarityTransform::validate() const {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw KernelError("similarity transform: scale must be positive and finite");
    }
    const Mat3 rtr = rotation.transpose() * rotation;
    if ((rtr - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-9) {
        throw KernelError("similarity transform: rotation is not orthonormal");
    }
    if (std::abs(rotation.determinant() - 1.0) > 1e-9) {
        throw KernelError("similarity transform: rotation determinant != +1");
    }
}

double BoundingBox::volume() const {
    const Vec3 d = dims();
    if (d.x() < 0 || d.y() < 0 || d.z() < 0) return 0.0;
    return d.x() * d.y() * d.z();
}

bool BoundingBox::contains(const Vec3& p, double tol) const {
    return p.x() >= min.x() - tol && p.x() <= max.x() + tol &&
           p.y() >= min.y() - tol && p.y() <= max.y() + tol &&
           p.z() >= min.z() - tol && p.z() <= max.z() + tol;
}

bool BoundingBox::intersects(const BoundingBox& o) const {
    return min.x() <= o.max.x() && max.x() >= o.min.x() &&
           min.y() <= o.max.y() && max.y() >= o.min.y() &&
           min.z() <= o.max.z() && max.z() >= o.min.z();
}

void BoundingBox::expand(const Vec3& p) {
    min = min.cwiseMin(p);
    max = max.cwiseMax(p);
}

BoundingBox BoundingBox::merged(const BoundingBox& a, const BoundingBox& b) {
    return {a.min.cwiseMin(b.min), a.max.cwiseMax(b.max)};
}

std::optional<BoundingBox> BoundingBox::intersection(const BoundingBox& a, const BoundingBox& b) {
    BoundingBox r{a.min.cwiseMax(b.min), a.max.cwiseMin(b.max)};
    if (r.min.x() > r.max.x() || r.min.y() > r.max.y() || r.min.z() > r.max.z()) {
        return std::nullopt;
    }
    return r;
}

}  // namespace cadbench
