#include "cadbench/selectors.hpp"

#include <algorithm>
#include <cmath>

namespace cadbench {

SelectorFilter SelectorFilter::by_surface_class(SurfaceClass c) {
    SelectorFilter f;
    f.kind = Kind::surface_class;
    f.surface_class = c;
    return f;
}
SelectorFilter SelectorFilter::by_curve_class(CurveClass c) {
    SelectorFilter f;
    f.kind = Kind::curve_class;
    f.curve_class = c;
    return f;
}
SelectorFilter SelectorFilter::max_along_dir(const Vec3& d) {
    SelectorFilter f;
    f.kind = Kind::max_along;
    f.direction = d.normalized();
    return f;
}
SelectorFilter SelectorFilter::min_along_dir(const Vec3& d) {
    SelectorFilter f;
    f.kind = Kind::min_along;
    f.direction = d.normalized();
    return f;
}
SelectorFilter SelectorFilter::area_between(double lo, double hi) {
    SelectorFilter f;
    f.kind = Kind::area_between;
    f.lo = lo;
    f.hi = hi;
    return f;
}
SelectorFilter SelectorFilter::length_between(double lo, double hi) {
    SelectorFilter f;
    f.kind = Kind::length_between;
    f.lo = lo;
    f.hi = hi;
    return f;
}
SelectorFilter SelectorFilter::radius_between(double lo, double hi) {
    SelectorFilter f;
    f.kind = Kind::radius_between;
    f.lo = lo;
    f.hi = hi;
    return f;
}
SelectorFilter SelectorFilter::parallel(const Vec3& d) {
    SelectorFilter f;
    f.kind = Kind::parallel_to;
    f.direction = d.normalized();
    return f;
}
SelectorFilter SelectorFilter::perpendicular(const Vec3& d) {
    SelectorFilter f;
    f.kind = Kind::perpendicular_to;
    f.direction = d.normalized();
    return f;
}
SelectorFilter SelectorFilter::always() { return {}; }

void SelectorQuery::validate() const {
    if (filters.empty()) throw KernelError("selector query requires at least one filter");
}

Vec3 entity_centroid(const SelectedEntity& e) {
    if (const auto* f = std::get_if<FaceEntity>(&e)) return f->centroid;
    if (const auto* ed = std::get_if<EdgeEntity>(&e)) return ed->centroid;
    return std::get<VertexEntity>(e).position;
}

namespace {

constexpr double kDirTol = 1e-6;

bool passes(const SelectedEntity& e, const SelectorFilter& f) {
    const auto* face = std::get_if<FaceEntity>(&e);
    const auto* edge = std::get_if<EdgeEntity>(&e);
    switch (f.kind) {
    case SelectorFilter::Kind::always_true:
        return true;
    case SelectorFilter::Kind::surface_class:
        return face && face->surface_class == f.surface_class;
    case SelectorFilter::Kind::curve_class:
        return edge && edge->curve_class == f.curve_class;
    case SelectorFilter::Kind::area_between:
        return face && face->area >= f.lo && face->area <= f.hi;
    case SelectorFilter::Kind::length_between:
        return edge && edge->length >= f.lo && edge->length <= f.hi;
    case SelectorFilter::Kind::radius_between: {
        if (face && face->radius) return *face->radius >= f.lo && *face->radius <= f.hi;
        if (edge && edge->radius) return *edge->radius >= f.lo && *edge->radius <= f.hi;
        return false;
    }
    case SelectorFilter::Kind::parallel_to: {
        if (face) {
            if (face->normal) return std::abs(face->normal->dot(f.direction)) < kDirTol;
            if (face->axis) return std::abs(std::abs(face->axis->dot(f.direction)) - 1.0) < kDirTol;
            return false;
        }
        if (edge) {
            if (edge->curve_class == CurveClass::line) {
                const Vec3 d = (edge->endpoints[1] - edge->endpoints[0]).normalized();
                return std::abs(std::abs(d.dot(f.direction)) - 1.0) < kDirTol;
            }
            return false;
        }
        return false;
    }
    case SelectorFilter::Kind::perpendicular_to: {
        if (face) {
            if (face->normal) return std::abs(std::abs(face->normal->dot(f.direction)) - 1.0) < kDirTol;
            if (face->axis) return std::abs(face->axis->dot(f.direction)) < kDirTol;
            return false;
        }
        if (edge) {
            if (edge->curve_class == CurveClass::line) {
                const Vec3 d = (edge->endpoints[1] - edge->endpoints[0]).normalized();
                return std::abs(d.dot(f.direction)) < kDirTol;
            }
            return false;
        }
        return false;
    }
    case SelectorFilter::Kind::max_along:
    case SelectorFilter::Kind::min_along:
        return true;  // handled as a group pass
    }
    return false;
}

}  // namespace

std::vector<SelectedEntity> select(const BRepModel& m, const SelectorQuery& q) {
    q.validate();
    std::vector<SelectedEntity> pool;
    if (m.empty()) return pool;
    switch (q.kind) {
    case EntityKind::face:
        for (auto& f : m.faces()) pool.emplace_back(std::move(f));
        break;
    case EntityKind::edge:
        for (auto& e : m.edges()) pool.emplace_back(std::move(e));
        break;
    case EntityKind::vertex:
        for (auto& v : m.vertices()) pool.emplace_back(std::move(v));
        break;
    }

    // Per-entity filters first, then extremal group filters over survivors.
    for (const auto& f : q.filters) {
        if (f.kind == SelectorFilter::Kind::max_along || f.kind == SelectorFilter::Kind::min_along) {
            continue;
        }
        std::erase_if(pool, [&](const SelectedEntity& e) { return !passes(e, f); });
    }
    for (const auto& f : q.filters) {
        if (f.kind != SelectorFilter::Kind::max_along && f.kind != SelectorFilter::Kind::min_along) {
            continue;
        }
        if (pool.empty()) break;
        const double sign = f.kind == SelectorFilter::Kind::max_along ? 1.0 : -1.0;
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& e : pool) {
            best = std::max(best, sign * entity_centroid(e).dot(f.direction));
        }
        const double tol = 1e-7 * (1.0 + std::abs(best));
        std::erase_if(pool, [&](const SelectedEntity& e) {
            return sign * entity_centroid(e).dot(f.direction) < best - tol;
        });
    }
    return pool;  // pool order inherited from the model's deterministic ordering
}

}  // namespace cadbench
