#include "cadbench/brep_model.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cadbench {

BRepModel::BRepModel(CsgNodePtr tree, SimilarityTransform root)
    : tree_(std::move(tree)), root_(root) {
    root_.validate();
}

const ModelAnalysis& BRepModel::analysis() const {
    static const ModelAnalysis kEmpty{};
    if (!tree_) return kEmpty;
    if (!analysis_) {
        // Models are immutable; concurrent duplicate computation is harmless
        // (last writer wins, both results identical).
        const_cast<BRepModel*>(this)->analysis_ =
            std::make_shared<const ModelAnalysis>(analyze(tree_));
    }
    return *analysis_;
}

TopoCounts BRepModel::topo_counts() const {
    if (empty()) return {};
    const ModelAnalysis& a = analysis();
    return {a.solids, a.shells, int(a.faces.size()), int(a.edges.size()), int(a.vertices.size())};
}

BoundingBox BRepModel::bounding_box() const {
    if (empty()) throw EmptyModelError();
    const ModelAnalysis& a = analysis();
    if (a.faces.empty()) throw EmptyModelError("model has no material");
    return world_bounds(a, tree_, root_);
}

double BRepModel::volume() const {
    if (empty()) throw EmptyModelError();
    const double s = root_.scale;
    return analysis().volume * s * s * s;
}

double BRepModel::surface_area() const {
    if (empty()) throw EmptyModelError();
    const double s = root_.scale;
    return analysis().surface_area * s * s;
}

Vec3 BRepModel::center_of_mass() const {
    if (empty()) throw EmptyModelError();
    return root_.apply(analysis().center_of_mass);
}

bool BRepModel::contains_point(const Vec3& p) const {
    if (empty()) throw EmptyModelError();
    const Vec3 q = root_.inverse().apply(p);
    return classify(*tree_, q, kBoundaryTol / root_.scale) != PointClass::outside;
}

std::vector<Vec3> BRepModel::ray_intersections(const Vec3& origin, const Vec3& dir) const {
    if (empty()) throw EmptyModelError();
    const Vec3 dir_unit = dir.normalized();
    const Vec3 o_base = root_.inverse().apply(origin);
    const Vec3 d_base = root_.rotation.transpose() * dir_unit;
    const double s = root_.scale;
    const auto base_ts =
        ray_crossings(*tree_, o_base, d_base, kBoundaryTol / s, kBoundaryTol / s);
    std::vector<Vec3> hits;
    hits.reserve(base_ts.size());
    for (double bt : base_ts) {
        hits.push_back(origin + (bt * s) * dir_unit);
    }
    return hits;
}

ValidityFlags BRepModel::is_valid_solid() const {
    if (empty()) return {};
    const ModelAnalysis& a = analysis();
    ValidityFlags f;
    f.single_solid = a.solids == 1;
    f.single_shell = a.shells == 1 && a.solids == 1;
    f.positive_volume = a.volume > 0.0;
    f.connected = a.solids == 1;
    return f;
}

namespace {

bool lex_less(const Vec3& a, const Vec3& b, double tol) {
    for (int k = 0; k < 3; ++k) {
        if (a[k] < b[k] - tol) return true;
        if (a[k] > b[k] + tol) return false;
    }
    return false;
}

}  // namespace

std::vector<FaceEntity> BRepModel::faces() const {
    if (empty()) return {};
    const ModelAnalysis& a = analysis();
    const double s = root_.scale;
    std::vector<FaceEntity> out;
    out.reserve(a.faces.size());
    for (const auto& f : a.faces) {
        FaceEntity e;
        e.surface_class = f.surface_class;
        e.area = f.area * s * s;
        e.centroid = root_.apply(f.centroid);
        if (f.planar_normal) e.normal = root_.rotation * f.normal;
        if (f.axis) e.axis = root_.rotation * (*f.axis);
        if (f.radius) e.radius = *f.radius * s;
        out.push_back(std::move(e));
    }
    const double tol = 1e-9 * (1.0 + (a.bounds.max - a.bounds.min).norm() * s);
    std::stable_sort(out.begin(), out.end(), [&](const FaceEntity& x, const FaceEntity& y) {
        if (lex_less(x.centroid, y.centroid, tol)) return true;
        if (lex_less(y.centroid, x.centroid, tol)) return false;
        return x.area > y.area;
    });
    return out;
}

std::vector<EdgeEntity> BRepModel::edges() const {
    if (empty()) return {};
    const ModelAnalysis& a = analysis();
    const double s = root_.scale;
    std::vector<EdgeEntity> out;
    out.reserve(a.edges.size());
    for (const auto& ed : a.edges) {
        EdgeEntity e;
        e.curve_class = ed.curve_class;
        e.length = ed.length * s;
        if (ed.radius) e.radius = *ed.radius * s;
        e.closed = ed.closed;
        e.centroid = root_.apply(ed.centroid);
        e.endpoints = {root_.apply(ed.endpoints[0]), root_.apply(ed.endpoints[1])};
        out.push_back(std::move(e));
    }
    const double tol = 1e-9 * (1.0 + (a.bounds.max - a.bounds.min).norm() * s);
    std::stable_sort(out.begin(), out.end(), [&](const EdgeEntity& x, const EdgeEntity& y) {
        if (lex_less(x.centroid, y.centroid, tol)) return true;
        if (lex_less(y.centroid, x.centroid, tol)) return false;
        return x.length > y.length;
    });
    return out;
}

std::vector<VertexEntity> BRepModel::vertices() const {
    if (empty()) return {};
    const ModelAnalysis& a = analysis();
    std::vector<VertexEntity> out;
    out.reserve(a.vertices.size());
    for (const auto& v : a.vertices) out.push_back({root_.apply(v)});
    const double tol = 1e-9;
    std::stable_sort(out.begin(), out.end(), [&](const VertexEntity& x, const VertexEntity& y) {
        return lex_less(x.position, y.position, tol);
    });
    return out;
}

BRepModel BRepModel::transformed(const SimilarityTransform& a) const {
    a.validate();
    if (empty()) throw EmptyModelError();
    BRepModel out;
    out.tree_ = tree_;
    out.root_ = a.compose(root_);
    out.analysis_ = analysis_;  // may still be null; computed on demand
    out.source = source;
    return out;
}

TopoCounts topo_counts(const BRepModel& m) { return m.topo_counts(); }
BoundingBox bounding_box(const BRepModel& m) { return m.bounding_box(); }
double volume(const BRepModel& m) { return m.volume(); }
double surface_area(const BRepModel& m) { return m.surface_area(); }
Vec3 center_of_mass(const BRepModel& m) { return m.center_of_mass(); }
bool contains_point(const BRepModel& m, const Vec3& p) { return m.contains_point(p); }
std::vector<Vec3> ray_intersections(const BRepModel& m, const Vec3& origin, const Vec3& dir) {
    return m.ray_intersections(origin, dir);
}
BRepModel apply_transform(const BRepModel& m, const SimilarityTransform& a) {
    return m.transformed(a);
}
ValidityFlags is_valid_solid(const BRepModel& m) { return m.is_valid_solid(); }

}  // namespace cadbench
