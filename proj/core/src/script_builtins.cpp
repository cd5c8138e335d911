#include "script_interp_detail.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace cadbench::script::detail {

namespace {

struct Args {
    Context& ctx;
    const std::string& name;
    std::vector<Value>& vals;
    int line, col;

    [[noreturn]] void fail(const std::string& msg) const {
        ctx.fail(name + ": " + msg, line, col);
    }
    void arity(size_t n) const {
        if (vals.size() != n) {
            fail("expected " + std::to_string(n) + " argument(s), got " +
                 std::to_string(vals.size()));
        }
    }
    void arity_at_least(size_t n) const {
        if (vals.size() < n) fail("expected at least " + std::to_string(n) + " argument(s)");
    }
    double number(size_t i) const {
        if (const double* d = std::get_if<double>(&vals[i].data)) return *d;
        fail("argument " + std::to_string(i + 1) + " must be a number, got " + type_name(vals[i]));
    }
    bool boolean(size_t i) const {
        if (const bool* b = std::get_if<bool>(&vals[i].data)) return *b;
        fail("argument " + std::to_string(i + 1) + " must be a bool, got " + type_name(vals[i]));
    }
    std::string text(size_t i) const {
        if (const std::string* s = std::get_if<std::string>(&vals[i].data)) return *s;
        fail("argument " + std::to_string(i + 1) + " must be a string, got " + type_name(vals[i]));
    }
    Vec3 vec(size_t i) const {
        if (const Vec3* v = std::get_if<Vec3>(&vals[i].data)) return *v;
        fail("argument " + std::to_string(i + 1) + " must be a vec, got " + type_name(vals[i]));
    }
    CsgNodePtr shape(size_t i) const {
        if (const CsgNodePtr* s = std::get_if<CsgNodePtr>(&vals[i].data)) return *s;
        fail("argument " + std::to_string(i + 1) + " must be a shape, got " + type_name(vals[i]));
    }
    ValueList list(size_t i) const {
        if (const ValueList* l = std::get_if<ValueList>(&vals[i].data)) return *l;
        fail("argument " + std::to_string(i + 1) + " must be a list, got " + type_name(vals[i]));
    }
    const SelectedEntity& entity(size_t i) const {
        if (const SelectedEntity* e = std::get_if<SelectedEntity>(&vals[i].data)) return *e;
        fail("argument " + std::to_string(i + 1) + " must be an entity, got " +
             type_name(vals[i]));
    }
    const BRepModel& brep(size_t i) const {
        if (const ModelRef* mr = std::get_if<ModelRef>(&vals[i].data)) return **mr;
        fail("argument " + std::to_string(i + 1) + " must be a model, got " + type_name(vals[i]));
    }
};

Value make_shape(Args& a, PrimitiveKind kind, double x, double y, double z) {
    Primitive p;
    p.kind = kind;
    p.a = x;
    p.b = y;
    p.c = z;
    try {
        p.validate();
    } catch (const KernelError& e) {
        a.fail(e.what());
    }
    a.ctx.charge(128);
    return Value(CsgNode::make(std::move(p)));
}

Value transformed_shape(Args& a, const SimilarityTransform& t) {
    a.ctx.charge(128);
    return Value(transformed(a.shape(0), t));
}

ValueList entities_to_list(Context& ctx, std::vector<SelectedEntity> entities) {
    auto list = std::make_shared<std::vector<Value>>();
    list->reserve(entities.size());
    for (auto& e : entities) list->push_back(Value(std::move(e)));
    ctx.charge(64 * (list->size() + 1));
    return list;
}

SelectorFilter filter_from_spec(Args& a, const std::string& spec, EntityKind kind) {
    static const std::map<std::string, Vec3> dirs = {
        {"x", Vec3(1, 0, 0)}, {"y", Vec3(0, 1, 0)}, {"z", Vec3(0, 0, 1)}};
    auto dir_of = [&](const std::string& s) -> Vec3 {
        auto it = dirs.find(s);
        if (it == dirs.end()) a.fail("unknown axis '" + s + "' in selector spec");
        return it->second;
    };
    if (spec.rfind("max_", 0) == 0) return SelectorFilter::max_along_dir(dir_of(spec.substr(4)));
    if (spec.rfind("min_", 0) == 0) return SelectorFilter::min_along_dir(dir_of(spec.substr(4)));
    if (spec.rfind("parallel_", 0) == 0) return SelectorFilter::parallel(dir_of(spec.substr(9)));
    if (spec.rfind("perp_", 0) == 0) return SelectorFilter::perpendicular(dir_of(spec.substr(5)));
    if (spec == "any") return SelectorFilter::always();
    if (kind == EntityKind::edge) {
        const CurveClass c = curve_class_from_string(spec);
        if (std::string(to_string(c)) != spec) a.fail("unknown edge selector '" + spec + "'");
        return SelectorFilter::by_curve_class(c);
    }
    const SurfaceClass c = surface_class_from_string(spec);
    if (std::string(to_string(c)) != spec) a.fail("unknown face selector '" + spec + "'");
    return SelectorFilter::by_surface_class(c);
}

Value select_entities(Args& a, EntityKind kind) {
    a.arity_at_least(1);
    SelectorQuery q;
    q.kind = kind;
    if (a.vals.size() == 1) {
        q.filters.push_back(SelectorFilter::always());
    } else {
        for (size_t i = 1; i < a.vals.size(); ++i) {
            q.filters.push_back(filter_from_spec(a, a.text(i), kind));
        }
    }
    return Value(entities_to_list(a.ctx, select(a.brep(0), q)));
}

Value refilter(Args& a, EntityKind assumed_kind) {
    a.arity_at_least(2);
    const ValueList l = a.list(0);
    std::vector<SelectedEntity> pool;
    for (const auto& v : *l) {
        if (const SelectedEntity* e = std::get_if<SelectedEntity>(&v.data)) {
            pool.push_back(*e);
        } else {
            a.fail("list must contain entities");
        }
    }
    if (!pool.empty() && std::holds_alternative<EdgeEntity>(pool.front())) {
        assumed_kind = EntityKind::edge;
    }
    std::vector<SelectorFilter> filters;
    for (size_t i = 1; i < a.vals.size(); ++i) {
        filters.push_back(filter_from_spec(a, a.text(i), assumed_kind));
    }
    for (const auto& f : filters) {
        if (f.kind == SelectorFilter::Kind::max_along || f.kind == SelectorFilter::Kind::min_along) {
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
            continue;
        }
        SelectorQuery q;  // reuse the per-entity predicate through select()'s filter logic
        (void)q;
        std::erase_if(pool, [&](const SelectedEntity& e) {
            // Inline per-entity filter evaluation mirroring selectors.cpp.
            const auto* face = std::get_if<FaceEntity>(&e);
            const auto* edge = std::get_if<EdgeEntity>(&e);
            switch (f.kind) {
            case SelectorFilter::Kind::surface_class:
                return !(face && face->surface_class == f.surface_class);
            case SelectorFilter::Kind::curve_class:
                return !(edge && edge->curve_class == f.curve_class);
            case SelectorFilter::Kind::parallel_to:
                if (face && face->normal) return !(std::abs(face->normal->dot(f.direction)) < 1e-6);
                if (face && face->axis) {
                    return !(std::abs(std::abs(face->axis->dot(f.direction)) - 1.0) < 1e-6);
                }
                if (edge && edge->curve_class == CurveClass::line) {
                    const Vec3 d = (edge->endpoints[1] - edge->endpoints[0]).normalized();
                    return !(std::abs(std::abs(d.dot(f.direction)) - 1.0) < 1e-6);
                }
                return true;
            case SelectorFilter::Kind::perpendicular_to:
                if (face && face->normal) {
                    return !(std::abs(std::abs(face->normal->dot(f.direction)) - 1.0) < 1e-6);
                }
                if (face && face->axis) return !(std::abs(face->axis->dot(f.direction)) < 1e-6);
                if (edge && edge->curve_class == CurveClass::line) {
                    const Vec3 d = (edge->endpoints[1] - edge->endpoints[0]).normalized();
                    return !(std::abs(d.dot(f.direction)) < 1e-6);
                }
                return true;
            default:
                return false;
            }
        });
    }
    return Value(entities_to_list(a.ctx, std::move(pool)));
}

}  // namespace

Value call_builtin(Context& ctx, const std::string& name, std::vector<Value>& vals, int line,
                   int col) {
    Args a{ctx, name, vals, line, col};

    // --- construction -------------------------------------------------------
    if (name == "box") {
        a.arity(3);
        return make_shape(a, PrimitiveKind::box, a.number(0), a.number(1), a.number(2));
    }
    if (name == "cylinder") {
        a.arity(2);
        return make_shape(a, PrimitiveKind::cylinder, a.number(0), a.number(1), 0.0);
    }
    if (name == "sphere") {
        a.arity(1);
        return make_shape(a, PrimitiveKind::sphere, a.number(0), 0.0, 0.0);
    }
    if (name == "cone") {
        a.arity(3);
        // cone(r_base, r_top, h); primitive stores (a=r_base, b=h, c=r_top).
        return make_shape(a, PrimitiveKind::cone, a.number(0), a.number(2), a.number(1));
    }
    if (name == "union" || name == "difference") {
        a.arity_at_least(2);
        const BoolOp op = name == "union" ? BoolOp::unite : BoolOp::subtract;
        CsgNodePtr acc = a.shape(0);
        for (size_t i = 1; i < vals.size(); ++i) {
            acc = CsgNode::make(op, acc, a.shape(i));
        }
        ctx.charge(64 * vals.size());
        return Value(acc);
    }
    if (name == "intersection") {
        a.arity(2);
        ctx.charge(64);
        return Value(CsgNode::make(BoolOp::intersect, a.shape(0), a.shape(1)));
    }
    if (name == "translate") {
        a.arity(4);
        return transformed_shape(
            a, SimilarityTransform::translate(Vec3(a.number(1), a.number(2), a.number(3))));
    }
    if (name == "rotate_x" || name == "rotate_y" || name == "rotate_z") {
        a.arity(2);
        const int axis = name.back() == 'x' ? 0 : name.back() == 'y' ? 1 : 2;
        return transformed_shape(a, SimilarityTransform::rotation_about_axis(axis, a.number(1)));
    }
    if (name == "scale") {
        a.arity(2);
        if (a.number(1) <= 0) a.fail("scale factor must be positive");
        return transformed_shape(a, SimilarityTransform::scaling(a.number(1)));
    }
    if (name == "emit") {
        a.arity(1);
        if (ctx.test_mode) a.fail("emit is not available in test bodies");
        ctx.emitted = BRepModel(a.shape(0));
        ctx.has_emitted = true;
        return Value();
    }

    // --- logging and checks ---------------------------------------------------
    if (name == "log") {
        std::string msg;
        for (size_t i = 0; i < vals.size(); ++i) {
            if (i) msg += " ";
            msg += to_display(vals[i]);
        }
        ctx.charge(msg.size() + 16);
        ctx.logs.push_back(std::move(msg));
        return Value();
    }
    if (name == "require") {
        a.arity(2);
        const std::string msg = a.text(1);
        if (!a.boolean(0)) throw TestFailSignal{msg};
        ctx.checks.push_back(msg);
        ctx.charge(msg.size() + 16);
        return Value();
    }
    if (name == "fail") {
        a.arity(1);
        throw TestFailSignal{a.text(0)};
    }

    // --- math and utility -------------------------------------------------------
    if (name == "vec") {
        a.arity(3);
        return Value(Vec3(a.number(0), a.number(1), a.number(2)));
    }
    if (name == "abs") {
        a.arity(1);
        return Value(std::abs(a.number(0)));
    }
    if (name == "sqrt") {
        a.arity(1);
        if (a.number(0) < 0) a.fail("sqrt of a negative number");
        return Value(std::sqrt(a.number(0)));
    }
    if (name == "floor") {
        a.arity(1);
        return Value(std::floor(a.number(0)));
    }
    if (name == "ceil") {
        a.arity(1);
        return Value(std::ceil(a.number(0)));
    }
    if (name == "pow") {
        a.arity(2);
        return Value(std::pow(a.number(0), a.number(1)));
    }
    if (name == "min") {
        a.arity(2);
        return Value(std::min(a.number(0), a.number(1)));
    }
    if (name == "max") {
        a.arity(2);
        return Value(std::max(a.number(0), a.number(1)));
    }
    if (name == "approx") {
        a.arity(3);
        return Value(std::abs(a.number(0) - a.number(1)) <= a.number(2));
    }
    if (name == "str") {
        a.arity(1);
        std::string s = to_display(vals[0]);
        ctx.charge(s.size() + 16);
        return Value(std::move(s));
    }
    if (name == "norm") {
        a.arity(1);
        return Value(a.vec(0).norm());
    }
    if (name == "dot") {
        a.arity(2);
        return Value(a.vec(0).dot(a.vec(1)));
    }
    if (name == "dist") {
        a.arity(2);
        return Value((a.vec(0) - a.vec(1)).norm());
    }

    // --- lists ---------------------------------------------------------------------
    if (name == "count") {
        a.arity(1);
        return Value(double(a.list(0)->size()));
    }
    if (name == "nth") {
        a.arity(2);
        const ValueList l = a.list(0);
        const int i = int(a.number(1));
        if (i < 0 || size_t(i) >= l->size()) {
            a.fail("index " + std::to_string(i) + " out of range (size " +
                   std::to_string(l->size()) + ")");
        }
        return (*l)[size_t(i)];
    }
    if (name == "append") {
        a.arity(2);
        const ValueList l = a.list(0);
        auto out = std::make_shared<std::vector<Value>>(*l);
        out->push_back(vals[1]);
        ctx.charge(48 * (out->size() + 1));
        return Value(std::move(out));
    }

    // --- model inspection -------------------------------------------------------------
    if (name == "volume") {
        a.arity(1);
        return Value(a.brep(0).volume());
    }
    if (name == "surface_area") {
        a.arity(1);
        return Value(a.brep(0).surface_area());
    }
    if (name == "center_of_mass" || name == "com") {
        a.arity(1);
        return Value(a.brep(0).center_of_mass());
    }
    if (name == "bbox_min") {
        a.arity(1);
        return Value(a.brep(0).bounding_box().min);
    }
    if (name == "bbox_max") {
        a.arity(1);
        return Value(a.brep(0).bounding_box().max);
    }
    if (name == "bbox_dims") {
        a.arity(1);
        return Value(Vec3(a.brep(0).bounding_box().dims()));
    }
    if (name == "bbox_center") {
        a.arity(1);
        return Value(Vec3(a.brep(0).bounding_box().center()));
    }
    if (name == "solid_count") {
        a.arity(1);
        return Value(double(a.brep(0).topo_counts().solids));
    }
    if (name == "shell_count") {
        a.arity(1);
        return Value(double(a.brep(0).topo_counts().shells));
    }
    if (name == "face_count") {
        a.arity(1);
        return Value(double(a.brep(0).topo_counts().faces));
    }
    if (name == "edge_count") {
        a.arity(1);
        return Value(double(a.brep(0).topo_counts().edges));
    }
    if (name == "vertex_count") {
        a.arity(1);
        return Value(double(a.brep(0).topo_counts().vertices));
    }
    if (name == "contains") {
        a.arity(2);
        return Value(a.brep(0).contains_point(a.vec(1)));
    }
    if (name == "ray_hit_count") {
        a.arity(3);
        return Value(double(a.brep(0).ray_intersections(a.vec(1), a.vec(2)).size()));
    }
    if (name == "ray_hit") {
        a.arity(4);
        const auto hits = a.brep(0).ray_intersections(a.vec(1), a.vec(2));
        const int i = int(a.number(3));
        if (i < 0 || size_t(i) >= hits.size()) {
            a.fail("ray hit index " + std::to_string(i) + " out of range (count " +
                   std::to_string(hits.size()) + ")");
        }
        return Value(hits[size_t(i)]);
    }
    if (name == "single_solid") {
        a.arity(1);
        return Value(a.brep(0).is_valid_solid().single_solid);
    }
    if (name == "single_shell") {
        a.arity(1);
        return Value(a.brep(0).is_valid_solid().single_shell);
    }
    if (name == "positive_volume") {
        a.arity(1);
        return Value(a.brep(0).is_valid_solid().positive_volume);
    }
    if (name == "connected") {
        a.arity(1);
        return Value(a.brep(0).is_valid_solid().connected);
    }

    // --- selectors ------------------------------------------------------------------------
    if (name == "faces") return select_entities(a, EntityKind::face);
    if (name == "edges") return select_entities(a, EntityKind::edge);
    if (name == "verts") return select_entities(a, EntityKind::vertex);
    if (name == "filter") return refilter(a, EntityKind::face);
    if (name == "filter_radius" || name == "filter_area" || name == "filter_length") {
        a.arity(3);
        const ValueList l = a.list(0);
        const double lo = a.number(1), hi = a.number(2);
        auto out = std::make_shared<std::vector<Value>>();
        for (const auto& v : *l) {
            const SelectedEntity* e = std::get_if<SelectedEntity>(&v.data);
            if (e == nullptr) a.fail("list must contain entities");
            const auto* face = std::get_if<FaceEntity>(e);
            const auto* edge = std::get_if<EdgeEntity>(e);
            bool keep = false;
            if (name == "filter_radius") {
                if (face && face->radius) keep = *face->radius >= lo && *face->radius <= hi;
                if (edge && edge->radius) keep = *edge->radius >= lo && *edge->radius <= hi;
            } else if (name == "filter_area") {
                keep = face && face->area >= lo && face->area <= hi;
            } else {
                keep = edge && edge->length >= lo && edge->length <= hi;
            }
            if (keep) out->push_back(v);
        }
        ctx.charge(48 * (out->size() + 1));
        return Value(std::move(out));
    }

    // --- entity accessors -------------------------------------------------------------------
    if (name == "area_of") {
        a.arity(1);
        if (const auto* f = std::get_if<FaceEntity>(&a.entity(0))) return Value(f->area);
        a.fail("entity has no area");
    }
    if (name == "length_of") {
        a.arity(1);
        if (const auto* e = std::get_if<EdgeEntity>(&a.entity(0))) return Value(e->length);
        a.fail("entity has no length");
    }
    if (name == "radius_of") {
        a.arity(1);
        if (const auto* f = std::get_if<FaceEntity>(&a.entity(0))) {
            if (f->radius) return Value(*f->radius);
        }
        if (const auto* e = std::get_if<EdgeEntity>(&a.entity(0))) {
            if (e->radius) return Value(*e->radius);
        }
        a.fail("entity has no radius");
    }
    if (name == "normal_of") {
        a.arity(1);
        if (const auto* f = std::get_if<FaceEntity>(&a.entity(0))) {
            if (f->normal) return Value(*f->normal);
        }
        a.fail("entity has no normal (planar faces only)");
    }
    if (name == "axis_of") {
        a.arity(1);
        if (const auto* f = std::get_if<FaceEntity>(&a.entity(0))) {
            if (f->axis) return Value(*f->axis);
        }
        a.fail("entity has no axis");
    }
    if (name == "centroid_of") {
        a.arity(1);
        return Value(entity_centroid(a.entity(0)));
    }
    if (name == "class_of") {
        a.arity(1);
        const SelectedEntity& e = a.entity(0);
        if (const auto* f = std::get_if<FaceEntity>(&e)) {
            return Value(std::string(to_string(f->surface_class)));
        }
        if (const auto* ed = std::get_if<EdgeEntity>(&e)) {
            return Value(std::string(to_string(ed->curve_class)));
        }
        return Value(std::string("vertex"));
    }
    if (name == "is_closed") {
        a.arity(1);
        if (const auto* e = std::get_if<EdgeEntity>(&a.entity(0))) return Value(e->closed);
        a.fail("entity is not an edge");
    }
    if (name == "position_of") {
        a.arity(1);
        if (const auto* v = std::get_if<VertexEntity>(&a.entity(0))) return Value(v->position);
        a.fail("entity is not a vertex");
    }
    if (name == "endpoint_of") {
        a.arity(2);
        if (const auto* e = std::get_if<EdgeEntity>(&a.entity(0))) {
            const int i = int(a.number(1));
            if (i != 0 && i != 1) a.fail("endpoint index must be 0 or 1");
            return Value(e->endpoints[size_t(i)]);
        }
        a.fail("entity is not an edge");
    }

    a.fail("unknown function '" + name + "'");
}

}  // namespace cadbench::script::detail
