#pragma once

#include "cadbench/brep_model.hpp"
#include "cadbench/executor.hpp"

#include <random>

namespace cadbench::testhelpers {

/// Shared process-level executor wired to the built worker binary.
inline const Executor& shared_executor() {
    static const Executor ex = [] {
        ExecutorConfig cfg;
#ifdef CADBENCH_WORKER_BIN
        cfg.worker_path = CADBENCH_WORKER_BIN;
#endif
        return Executor(cfg);
    }();
    return ex;
}

inline BRepModel unit_cube() {
    Primitive p;
    p.kind = PrimitiveKind::box;
    p.a = p.b = p.c = 1.0;
    return BRepModel(CsgNode::make(p));
}

inline BRepModel box_model(double dx, double dy, double dz) {
    Primitive p;
    p.kind = PrimitiveKind::box;
    p.a = dx;
    p.b = dy;
    p.c = dz;
    return BRepModel(CsgNode::make(p));
}

inline BRepModel cylinder_model(double r, double h) {
    Primitive p;
    p.kind = PrimitiveKind::cylinder;
    p.a = r;
    p.b = h;
    return BRepModel(CsgNode::make(p));
}

/// Unit cube with a through-hole of radius r along +X, centered at (y,z).
inline BRepModel cube_with_hole(double r, double y = 0.5, double z = 0.5) {
    Primitive cube;
    cube.kind = PrimitiveKind::box;
    cube.a = cube.b = cube.c = 1.0;
    Primitive hole;
    hole.kind = PrimitiveKind::cylinder;
    hole.a = r;
    hole.b = 2.0;
    // Cylinder axis +Z by default; rotate onto +X and run it through the cube.
    SimilarityTransform t = SimilarityTransform::rotation_about_axis(1, 90.0);
    t = SimilarityTransform::translate(Vec3(-0.5, y, z)).compose(t);
    hole.pose = t;
    return BRepModel(CsgNode::make(BoolOp::subtract, CsgNode::make(cube), CsgNode::make(hole)));
}

inline BRepModel two_disjoint_cubes() {
    Primitive a;
    a.kind = PrimitiveKind::box;
    a.a = a.b = a.c = 1.0;
    Primitive b = a;
    b.pose = SimilarityTransform::translate(Vec3(3, 0, 0));
    return BRepModel(CsgNode::make(BoolOp::unite, CsgNode::make(a), CsgNode::make(b)));
}

/// Cube with a fully interior spherical cavity.
inline BRepModel cube_with_cavity(double r = 0.25) {
    Primitive cube;
    cube.kind = PrimitiveKind::box;
    cube.a = cube.b = cube.c = 1.0;
    Primitive void_sphere;
    void_sphere.kind = PrimitiveKind::sphere;
    void_sphere.a = r;
    void_sphere.pose = SimilarityTransform::translate(Vec3(0.5, 0.5, 0.5));
    return BRepModel(
        CsgNode::make(BoolOp::subtract, CsgNode::make(cube), CsgNode::make(void_sphere)));
}

/// Deterministic similarity transform in the augmentation family: rotation
/// from {identity, ±90° about X/Y/Z}, optional uniform scale, translation.
inline SimilarityTransform seeded_transform(std::uint64_t seed, bool allow_scaling) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> rot_pick(0, 6);
    std::uniform_real_distribution<double> scale_pick(0.5, 2.0);
    std::uniform_real_distribution<double> t_pick(-10.0, 10.0);
    SimilarityTransform out;
    const int r = rot_pick(rng);
    if (r > 0) {
        const int axis = (r - 1) / 2;
        const double deg = (r - 1) % 2 == 0 ? 90.0 : -90.0;
        out.rotation = SimilarityTransform::rotation_about_axis(axis, deg).rotation;
    }
    out.scale = allow_scaling ? scale_pick(rng) : 1.0;
    out.translation = Vec3(t_pick(rng), t_pick(rng), t_pick(rng));
    return out;
}

/// Independent crossing-count oracle: dense membership sampling along a ray.
/// Counts material sign changes over [t0, t1]; independent of the analytic
/// ray pipeline.
inline int ray_crossing_oracle(const BRepModel& m, const Vec3& origin, const Vec3& dir,
                               double t0, double t1, int samples = 20000) {
    const Vec3 d = dir.normalized();
    int crossings = 0;
    bool prev = m.contains_point(origin + t0 * d);
    for (int i = 1; i <= samples; ++i) {
        const double t = t0 + (t1 - t0) * i / samples;
        const bool cur = m.contains_point(origin + t * d);
        if (cur != prev) ++crossings;
        prev = cur;
    }
    return crossings;
}

}  // namespace cadbench::testhelpers
