#include "cadbench/primitive.hpp"

#include <algorithm>
#include <cmath>

namespace cadbench {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

const char* to_string(SurfaceClass c) {
    switch (c) {
    case SurfaceClass::planar: return "planar";
    case SurfaceClass::cylindrical: return "cylindrical";
    case SurfaceClass::conical: return "conical";
    case SurfaceClass::spherical: return "spherical";
    case SurfaceClass::toroidal: return "toroidal";
    default: return "other";
    }
}

const char* to_string(CurveClass c) {
    switch (c) {
    case CurveClass::line: return "line";
    case CurveClass::circle: return "circle";
    case CurveClass::arc: return "arc";
    case CurveClass::spline: return "spline";
    default: return "other";
    }
}

SurfaceClass surface_class_from_string(const std::string& s) {
    if (s == "planar") return SurfaceClass::planar;
    if (s == "cylindrical") return SurfaceClass::cylindrical;
    if (s == "conical") return SurfaceClass::conical;
    if (s == "spherical") return SurfaceClass::spherical;
    if (s == "toroidal") return SurfaceClass::toroidal;
    return SurfaceClass::other;
}

CurveClass curve_class_from_string(const std::string& s) {
    if (s == "line") return CurveClass::line;
    if (s == "circle") return CurveClass::circle;
    if (s == "arc") return CurveClass::arc;
    if (s == "spline") return CurveClass::spline;
    return CurveClass::other;
}

void Primitive::validate() const {
    pose.validate();
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    switch (kind) {
    case PrimitiveKind::box:
        if (!positive(a) || !positive(b) || !positive(c)) throw KernelError("box: dimensions must be positive");
        break;
    case PrimitiveKind::cylinder:
        if (!positive(a) || !positive(b)) throw KernelError("cylinder: radius and height must be positive");
        break;
    case PrimitiveKind::sphere:
        if (!positive(a)) throw KernelError("sphere: radius must be positive");
        break;
    case PrimitiveKind::cone:
        if (!positive(a) || !positive(b) || c < 0.0 || !std::isfinite(c)) {
            throw KernelError("cone: base radius and height must be positive, top radius >= 0");
        }
        break;
    }
}

PointClass Primitive::classify_local(const Vec3& p, double tol) const {
    double d = 0.0;  // negative inside, positive outside (approximate signed distance)
    switch (kind) {
    case PrimitiveKind::box: {
        const Vec3 dims(a, b, c);
        d = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < 3; ++k) {
            d = std::max(d, std::max(-p[k], p[k] - dims[k]));
        }
        break;
    }
    case PrimitiveKind::cylinder: {
        const double dr = std::hypot(p.x(), p.y()) - a;
        const double dz = std::max(-p.z(), p.z() - b);
        d = std::max(dr, dz);
        break;
    }
    case PrimitiveKind::sphere:
        d = p.norm() - a;
        break;
    case PrimitiveKind::cone: {
        const double rad = a + (c - a) * clamp01(p.z() / b);
        const double slope = (a - c) / b;
        const double cos_half = 1.0 / std::sqrt(1.0 + slope * slope);
        const double dr = (std::hypot(p.x(), p.y()) - rad) * cos_half;
        const double dz = std::max(-p.z(), p.z() - b);
        d = std::max(dr, dz);
        break;
    }
    }
    if (d < -tol) return PointClass::inside;
    if (d > tol) return PointClass::outside;
    return PointClass::on_boundary;
}

PointClass Primitive::classify(const Vec3& p, double tol) const {
    const SimilarityTransform inv = pose.inverse();
    return classify_local(inv.apply(p), tol / pose.scale);
}

void Primitive::ray_candidates(const Vec3& origin, const Vec3& dir_unit, std::vector<double>& ts) const {
    const SimilarityTransform inv = pose.inverse();
    const Vec3 o = inv.apply(origin);
    const Vec3 d = pose.rotation.transpose() * dir_unit;  // unit in local frame
    const double s = pose.scale;
    const double pad = 1e-9 * (std::abs(a) + std::abs(b) + std::abs(c) + 1.0);

    auto push = [&](double beta) { ts.push_back(beta * s); };

    auto quadratic = [&](double A, double B, double C, auto&& accept) {
        if (std::abs(A) < 1e-14) {
            if (std::abs(B) > 1e-14) {
                const double t = -C / B;
                if (accept(t)) push(t);
            }
            return;
        }
        const double disc = B * B - 4 * A * C;
        if (disc < 0) return;
        const double sq = std::sqrt(disc);
        for (double t : {(-B - sq) / (2 * A), (-B + sq) / (2 * A)}) {
            if (accept(t)) push(t);
        }
    };

    switch (kind) {
    case PrimitiveKind::box: {
        const Vec3 dims(a, b, c);
        for (int k = 0; k < 3; ++k) {
            if (std::abs(d[k]) < 1e-14) continue;
            for (double plane : {0.0, dims[k]}) {
                const double t = (plane - o[k]) / d[k];
                const Vec3 q = o + t * d;
                bool in = true;
                for (int j = 0; j < 3; ++j) {
                    if (j == k) continue;
                    if (q[j] < -pad || q[j] > dims[j] + pad) in = false;
                }
                if (in) push(t);
            }
        }
        break;
    }
    case PrimitiveKind::cylinder: {
        quadratic(d.x() * d.x() + d.y() * d.y(), 2 * (o.x() * d.x() + o.y() * d.y()),
                  o.x() * o.x() + o.y() * o.y() - a * a, [&](double t) {
                      const double z = o.z() + t * d.z();
                      return z >= -pad && z <= b + pad;
                  });
        if (std::abs(d.z()) > 1e-14) {
            for (double plane : {0.0, b}) {
                const double t = (plane - o.z()) / d.z();
                const Vec3 q = o + t * d;
                if (std::hypot(q.x(), q.y()) <= a + pad) push(t);
            }
        }
        break;
    }
    case PrimitiveKind::sphere:
        quadratic(1.0, 2 * o.dot(d), o.squaredNorm() - a * a, [](double) { return true; });
        break;
    case PrimitiveKind::cone: {
        const double k = (c - a) / b;
        // (ox+t dx)^2 + (oy+t dy)^2 = (a + k (oz + t dz))^2
        const double A = d.x() * d.x() + d.y() * d.y() - k * k * d.z() * d.z();
        const double B = 2 * (o.x() * d.x() + o.y() * d.y() - k * d.z() * (a + k * o.z()));
        const double C = o.x() * o.x() + o.y() * o.y() - (a + k * o.z()) * (a + k * o.z());
        quadratic(A, B, C, [&](double t) {
            const double z = o.z() + t * d.z();
            return z >= -pad && z <= b + pad;
        });
        if (std::abs(d.z()) > 1e-14) {
            for (double plane : {0.0, b}) {
                const double rad = plane == 0.0 ? a : c;
                if (rad <= 0.0) continue;
                const double t = (plane - o.z()) / d.z();
                const Vec3 q = o + t * d;
                if (std::hypot(q.x(), q.y()) <= rad + pad) push(t);
            }
        }
        break;
    }
    }
}

double Primitive::volume() const {
    const double s3 = pose.scale * pose.scale * pose.scale;
    switch (kind) {
    case PrimitiveKind::box: return s3 * a * b * c;
    case PrimitiveKind::cylinder: return s3 * M_PI * a * a * b;
    case PrimitiveKind::sphere: return s3 * 4.0 / 3.0 * M_PI * a * a * a;
    case PrimitiveKind::cone: return s3 * M_PI * b / 3.0 * (a * a + a * c + c * c);
    }
    return 0.0;
}

double Primitive::surface_area() const {
    const double s2 = pose.scale * pose.scale;
    switch (kind) {
    case PrimitiveKind::box: return s2 * 2.0 * (a * b + a * c + b * c);
    case PrimitiveKind::cylinder: return s2 * (kTwoPi * a * b + 2.0 * M_PI * a * a);
    case PrimitiveKind::sphere: return s2 * 4.0 * M_PI * a * a;
    case PrimitiveKind::cone: {
        const double slant = std::hypot(a - c, b);
        return s2 * (M_PI * (a + c) * slant + M_PI * a * a + M_PI * c * c);
    }
    }
    return 0.0;
}

Vec3 Primitive::center_of_mass() const {
    Vec3 local = Vec3::Zero();
    switch (kind) {
    case PrimitiveKind::box: local = Vec3(a / 2, b / 2, c / 2); break;
    case PrimitiveKind::cylinder: local = Vec3(0, 0, b / 2); break;
    case PrimitiveKind::sphere: local = Vec3::Zero(); break;
    case PrimitiveKind::cone: {
        const double denom = a * a + a * c + c * c;
        local = Vec3(0, 0, b * (a * a + 2 * a * c + 3 * c * c) / (4 * denom));
        break;
    }
    }
    return pose.apply(local);
}

double Primitive::support(const Vec3& dir) const {
    switch (kind) {
    case PrimitiveKind::box: {
        double best = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < 8; ++i) {
            const Vec3 corner((i & 1) ? a : 0.0, (i & 2) ? b : 0.0, (i & 4) ? c : 0.0);
            best = std::max(best, dir.dot(pose.apply(corner)));
        }
        return best;
    }
    case PrimitiveKind::sphere:
        return dir.dot(pose.apply(Vec3::Zero())) + a * pose.scale;
    case PrimitiveKind::cylinder:
    case PrimitiveKind::cone: {
        const Vec3 axis = pose.rotation.col(2);
        const double perp = (dir - dir.dot(axis) * axis).norm();
        const double r_bot = (kind == PrimitiveKind::cylinder ? a : a) * pose.scale;
        const double r_top = (kind == PrimitiveKind::cylinder ? a : c) * pose.scale;
        const Vec3 c_bot = pose.apply(Vec3(0, 0, 0));
        const Vec3 c_top = pose.apply(Vec3(0, 0, b));
        return std::max(dir.dot(c_bot) + r_bot * perp, dir.dot(c_top) + r_top * perp);
    }
    }
    return 0.0;
}

BoundingBox Primitive::bounds() const {
    BoundingBox box;
    for (int k = 0; k < 3; ++k) {
        Vec3 e = Vec3::Zero();
        e[k] = 1.0;
        box.max[k] = support(e);
        box.min[k] = -support(-e);
    }
    return box;
}

int Primitive::face_count() const {
    switch (kind) {
    case PrimitiveKind::box: return 6;
    case PrimitiveKind::cylinder: return 3;
    case PrimitiveKind::sphere: return 1;
    case PrimitiveKind::cone: return c > 0.0 ? 3 : 2;
    }
    return 0;
}

FaceRef Primitive::face(int index) const { return FaceRef{this, index}; }

int Primitive::self_edge_count() const {
    switch (kind) {
    case PrimitiveKind::box: return 12;
    case PrimitiveKind::cylinder: return 2;
    case PrimitiveKind::sphere: return 0;
    case PrimitiveKind::cone: return c > 0.0 ? 2 : 1;
    }
    return 0;
}

EdgeRef Primitive::self_edge(int index) const { return EdgeRef{this, index}; }

std::vector<Vec3> Primitive::apex_points() const {
    if (kind == PrimitiveKind::cone && c == 0.0) {
        return {pose.apply(Vec3(0, 0, b))};
    }
    return {};
}

// ---------------------------------------------------------------------------
// FaceRef

namespace {

// Box faces: index k in [0,6): axis = k/2, side = k%2 (0 → coord 0, 1 → coord dim).
// Param (u,v) spans the other two axes in ascending order of axis id.
struct BoxFaceFrame {
    int axis, side, ua, va;  // ua/va: local axes parameterized by u and v
};

BoxFaceFrame box_face_frame(int index) {
    const int axis = index / 2;
    const int side = index % 2;
    const int ua = axis == 0 ? 1 : 0;
    const int va = axis == 2 ? 1 : 2;
    return {axis, side, ua, va};
}

}  // namespace

SurfaceClass FaceRef::surface_class() const {
    switch (prim->kind) {
    case PrimitiveKind::box: return SurfaceClass::planar;
    case PrimitiveKind::cylinder: return index == 0 ? SurfaceClass::cylindrical : SurfaceClass::planar;
    case PrimitiveKind::sphere: return SurfaceClass::spherical;
    case PrimitiveKind::cone: return index == 0 ? SurfaceClass::conical : SurfaceClass::planar;
    }
    return SurfaceClass::other;
}

std::array<double, 4> FaceRef::domain() const {
    const Primitive& p = *prim;
    switch (p.kind) {
    case PrimitiveKind::box: {
        const auto f = box_face_frame(index);
        const Vec3 dims(p.a, p.b, p.c);
        return {0.0, dims[f.ua], 0.0, dims[f.va]};
    }
    case PrimitiveKind::cylinder:
        if (index == 0) return {0.0, kTwoPi, 0.0, p.b};
        return {0.0, kTwoPi, 0.0, p.a};
    case PrimitiveKind::sphere:
        return {0.0, kTwoPi, 0.0, M_PI};
    case PrimitiveKind::cone:
        if (index == 0) return {0.0, kTwoPi, 0.0, p.b};
        return {0.0, kTwoPi, 0.0, index == 1 ? p.a : p.c};
    }
    return {0, 1, 0, 1};
}

bool FaceRef::periodic_u() const {
    return !(prim->kind == PrimitiveKind::box);
}

bool FaceRef::periodic_v() const { return false; }

Vec3 FaceRef::eval(double u, double v) const {
    const Primitive& p = *prim;
    Vec3 local = Vec3::Zero();
    switch (p.kind) {
    case PrimitiveKind::box: {
        const auto f = box_face_frame(index);
        const Vec3 dims(p.a, p.b, p.c);
        local[f.axis] = f.side ? dims[f.axis] : 0.0;
        local[f.ua] = u;
        local[f.va] = v;
        break;
    }
    case PrimitiveKind::cylinder:
        if (index == 0) {
            local = Vec3(p.a * std::cos(u), p.a * std::sin(u), v);
        } else {
            const double z = index == 1 ? 0.0 : p.b;
            local = Vec3(v * std::cos(u), v * std::sin(u), z);
        }
        break;
    case PrimitiveKind::sphere:
        local = p.a * Vec3(std::cos(u) * std::sin(v), std::sin(u) * std::sin(v), std::cos(v));
        break;
    case PrimitiveKind::cone:
        if (index == 0) {
            const double rad = p.a + (p.c - p.a) * (v / p.b);
            local = Vec3(rad * std::cos(u), rad * std::sin(u), v);
        } else {
            const double z = index == 1 ? 0.0 : p.b;
            local = Vec3(v * std::cos(u), v * std::sin(u), z);
        }
        break;
    }
    return p.pose.apply(local);
}

Vec3 FaceRef::normal(double u, double v) const {
    const Primitive& p = *prim;
    Vec3 n = Vec3::Zero();
    switch (p.kind) {
    case PrimitiveKind::box: {
        const auto f = box_face_frame(index);
        n[f.axis] = f.side ? 1.0 : -1.0;
        break;
    }
    case PrimitiveKind::cylinder:
        if (index == 0) {
            n = Vec3(std::cos(u), std::sin(u), 0.0);
        } else {
            n = Vec3(0, 0, index == 1 ? -1.0 : 1.0);
        }
        break;
    case PrimitiveKind::sphere:
        n = Vec3(std::cos(u) * std::sin(v), std::sin(u) * std::sin(v), std::cos(v));
        break;
    case PrimitiveKind::cone:
        if (index == 0) {
            const double slope = (p.c - p.a) / p.b;
            n = Vec3(std::cos(u), std::sin(u), -slope).normalized();
        } else {
            n = Vec3(0, 0, index == 1 ? -1.0 : 1.0);
        }
        break;
    }
    return p.pose.rotation * n;
}

Vec3 FaceRef::normal_at_point(const Vec3& pt) const {
    const Primitive& p = *prim;
    const Vec3 q = p.pose.inverse().apply(pt);
    Vec3 n = Vec3::Zero();
    switch (p.kind) {
    case PrimitiveKind::box: {
        const auto f = box_face_frame(index);
        n[f.axis] = f.side ? 1.0 : -1.0;
        break;
    }
    case PrimitiveKind::cylinder:
        if (index == 0) {
            n = Vec3(q.x(), q.y(), 0.0);
            n = n.norm() > 1e-14 ? Vec3(n.normalized()) : Vec3(1, 0, 0);
        } else {
            n = Vec3(0, 0, index == 1 ? -1.0 : 1.0);
        }
        break;
    case PrimitiveKind::sphere:
        n = q.norm() > 1e-14 ? Vec3(q.normalized()) : Vec3(0, 0, 1);
        break;
    case PrimitiveKind::cone:
        if (index == 0) {
            const double rho = std::hypot(q.x(), q.y());
            const double slope = (p.c - p.a) / p.b;
            const Vec3 radial = rho > 1e-14 ? Vec3(q.x() / rho, q.y() / rho, 0.0) : Vec3(1, 0, 0);
            n = (radial + Vec3(0, 0, -slope)).normalized();
        } else {
            n = Vec3(0, 0, index == 1 ? -1.0 : 1.0);
        }
        break;
    }
    return p.pose.rotation * n;
}

double FaceRef::area_element(double u, double v) const {
    (void)u;
    const Primitive& p = *prim;
    const double s2 = p.pose.scale * p.pose.scale;
    switch (p.kind) {
    case PrimitiveKind::box: return s2;
    case PrimitiveKind::cylinder: return index == 0 ? s2 * p.a : s2 * v;
    case PrimitiveKind::sphere: return s2 * p.a * p.a * std::sin(v);
    case PrimitiveKind::cone:
        if (index == 0) {
            const double slope = (p.c - p.a) / p.b;
            const double rad = p.a + (p.c - p.a) * (v / p.b);
            return s2 * rad * std::sqrt(1.0 + slope * slope);
        }
        return s2 * v;
    }
    return s2;
}

double FaceRef::analytic_area() const {
    const Primitive& p = *prim;
    const double s2 = p.pose.scale * p.pose.scale;
    switch (p.kind) {
    case PrimitiveKind::box: {
        const auto f = box_face_frame(index);
        const Vec3 dims(p.a, p.b, p.c);
        return s2 * dims[f.ua] * dims[f.va];
    }
    case PrimitiveKind::cylinder:
        return index == 0 ? s2 * kTwoPi * p.a * p.b : s2 * M_PI * p.a * p.a;
    case PrimitiveKind::sphere:
        return s2 * 4.0 * M_PI * p.a * p.a;
    case PrimitiveKind::cone:
        if (index == 0) return s2 * M_PI * (p.a + p.c) * std::hypot(p.a - p.c, p.b);
        return s2 * M_PI * (index == 1 ? p.a * p.a : p.c * p.c);
    }
    return 0.0;
}

double FaceRef::cell_pad(double du, double dv) const {
    const Primitive& p = *prim;
    const double s = p.pose.scale;
    switch (p.kind) {
    case PrimitiveKind::box: return 0.0;
    case PrimitiveKind::cylinder:
        return index == 0 ? s * p.a * du * du / 8.0 : 0.0;
    case PrimitiveKind::sphere:
        return s * p.a * (du * du + dv * dv) / 8.0;
    case PrimitiveKind::cone:
        return index == 0 ? s * std::max(p.a, p.c) * du * du / 8.0 : 0.0;
    }
    return 0.0;
}

double FaceRef::surface_implicit(const Vec3& pt) const {
    const Primitive& p = *prim;
    const Vec3 q = p.pose.inverse().apply(pt);
    const double s = p.pose.scale;
    switch (p.kind) {
    case PrimitiveKind::box: {
        const auto f = box_face_frame(index);
        const Vec3 dims(p.a, p.b, p.c);
        const double plane = f.side ? dims[f.axis] : 0.0;
        const double sign = f.side ? 1.0 : -1.0;
        return s * sign * (q[f.axis] - plane);
    }
    case PrimitiveKind::cylinder:
        if (index == 0) return s * (std::hypot(q.x(), q.y()) - p.a);
        return s * (index == 1 ? -q.z() : q.z() - p.b);
    case PrimitiveKind::sphere:
        return s * (q.norm() - p.a);
    case PrimitiveKind::cone:
        if (index == 0) {
            const double rad = p.a + (p.c - p.a) * (q.z() / p.b);
            const double slope = (p.a - p.c) / p.b;
            return s * (std::hypot(q.x(), q.y()) - rad) / std::sqrt(1.0 + slope * slope);
        }
        return s * (index == 1 ? -q.z() : q.z() - p.b);
    }
    return 0.0;
}

bool FaceRef::same_surface(const FaceRef& other, double tol) const {
    // Two faces share a carrier iff the other's implicit vanishes across this
    // patch. Probed at spread parameter samples; cheap and class-agnostic.
    const auto dom = domain();
    for (double fu : {0.13, 0.52, 0.91}) {
        for (double fv : {0.17, 0.58, 0.94}) {
            const double u = dom[0] + fu * (dom[1] - dom[0]);
            const double v = dom[2] + fv * (dom[3] - dom[2]);
            if (std::abs(other.surface_implicit(eval(u, v))) > tol) return false;
        }
    }
    return true;
}

Vec3 FaceRef::axis_direction() const {
    return prim->pose.rotation.col(2);
}

double FaceRef::radius() const {
    const Primitive& p = *prim;
    if (p.kind == PrimitiveKind::cylinder && index == 0) return p.a * p.pose.scale;
    if (p.kind == PrimitiveKind::cone && index == 0) return std::max(p.a, p.c) * p.pose.scale;
    if (p.kind == PrimitiveKind::sphere) return p.a * p.pose.scale;
    return 0.0;
}

// ---------------------------------------------------------------------------
// EdgeRef

namespace {

// Box edges 0..11: 4 along each local axis. Edge e along axis k connects two
// faces of the other axes; its position is given by two bits.
struct BoxEdgeFrame {
    int axis;       // axis the edge runs along
    int oa, ob;     // the two fixed axes
    int sa, sb;     // side bit per fixed axis
};

BoxEdgeFrame box_edge_frame(int index) {
    const int axis = index / 4;
    const int bits = index % 4;
    const int oa = axis == 0 ? 1 : 0;
    const int ob = axis == 2 ? 1 : 2;
    return {axis, oa, ob, bits & 1, (bits >> 1) & 1};
}

}  // namespace

CurveClass EdgeRef::curve_class() const {
    return prim->kind == PrimitiveKind::box ? CurveClass::line : CurveClass::circle;
}

bool EdgeRef::closed() const { return prim->kind != PrimitiveKind::box; }

Vec3 EdgeRef::eval(double t) const {
    const Primitive& p = *prim;
    Vec3 local = Vec3::Zero();
    switch (p.kind) {
    case PrimitiveKind::box: {
        const auto f = box_edge_frame(index);
        const Vec3 dims(p.a, p.b, p.c);
        local[f.axis] = t * dims[f.axis];
        local[f.oa] = f.sa ? dims[f.oa] : 0.0;
        local[f.ob] = f.sb ? dims[f.ob] : 0.0;
        break;
    }
    case PrimitiveKind::cylinder: {
        const double z = index == 0 ? 0.0 : p.b;
        local = Vec3(p.a * std::cos(kTwoPi * t), p.a * std::sin(kTwoPi * t), z);
        break;
    }
    case PrimitiveKind::cone: {
        const double z = index == 0 ? 0.0 : p.b;
        const double rad = index == 0 ? p.a : p.c;
        local = Vec3(rad * std::cos(kTwoPi * t), rad * std::sin(kTwoPi * t), z);
        break;
    }
    default:
        break;
    }
    return p.pose.apply(local);
}

double EdgeRef::analytic_length() const {
    const Primitive& p = *prim;
    const double s = p.pose.scale;
    switch (p.kind) {
    case PrimitiveKind::box: {
        const auto f = box_edge_frame(index);
        const Vec3 dims(p.a, p.b, p.c);
        return s * dims[f.axis];
    }
    case PrimitiveKind::cylinder:
        return s * kTwoPi * p.a;
    case PrimitiveKind::cone:
        return s * kTwoPi * (index == 0 ? p.a : p.c);
    default:
        return 0.0;
    }
}

double EdgeRef::radius() const {
    const Primitive& p = *prim;
    const double s = p.pose.scale;
    if (p.kind == PrimitiveKind::cylinder) return s * p.a;
    if (p.kind == PrimitiveKind::cone) return s * (index == 0 ? p.a : p.c);
    return 0.0;
}

std::array<int, 2> EdgeRef::adjacent_faces() const {
    const Primitive& p = *prim;
    switch (p.kind) {
    case PrimitiveKind::box: {
        const auto f = box_edge_frame(index);
        return {2 * f.oa + f.sa, 2 * f.ob + f.sb};
    }
    case PrimitiveKind::cylinder:
        return {0, index == 0 ? 1 : 2};
    case PrimitiveKind::cone:
        return {0, index == 0 ? 1 : 2};
    default:
        return {-1, -1};
    }
}

}  // namespace cadbench
