#include "cadbench/brep_model.hpp"

#include <random>

namespace cadbench {

double iou(const BRepModel& a, const BRepModel& b, int resolution, std::uint64_t seed) {
    if (a.empty() || b.empty()) throw EmptyModelError("iou requires two non-empty models");
    if (resolution < 8) throw KernelError("iou: resolution must be >= 8");

    const BoundingBox joint = BoundingBox::merged(a.bounding_box(), b.bounding_box());
    const Vec3 d = joint.dims();
    const Vec3 step(d.x() / resolution, d.y() / resolution, d.z() / resolution);

    const SimilarityTransform inv_a = a.root_transform().inverse();
    const SimilarityTransform inv_b = b.root_transform().inverse();
    const double tol_a = BRepModel::kBoundaryTol / a.root_transform().scale;
    const double tol_b = BRepModel::kBoundaryTol / b.root_transform().scale;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-0.49, 0.49);

    std::uint64_t in_a = 0, in_b = 0, in_both = 0;
    for (int k = 0; k < resolution; ++k) {
        for (int j = 0; j < resolution; ++j) {
            for (int i = 0; i < resolution; ++i) {
                Vec3 p = joint.min + Vec3((i + 0.5) * step.x(), (j + 0.5) * step.y(),
                                          (k + 0.5) * step.z());
                if (seed != 0) {
                    p += Vec3(jitter(rng) * step.x(), jitter(rng) * step.y(),
                              jitter(rng) * step.z());
                }
                const bool ia = classify(*a.tree(), inv_a.apply(p), tol_a) != PointClass::outside;
                const bool ib = classify(*b.tree(), inv_b.apply(p), tol_b) != PointClass::outside;
                in_a += ia;
                in_b += ib;
                in_both += ia && ib;
            }
        }
    }
    const std::uint64_t in_union = in_a + in_b - in_both;
    if (in_union == 0) return 0.0;
    return double(in_both) / double(in_union);
}

}  // namespace cadbench
