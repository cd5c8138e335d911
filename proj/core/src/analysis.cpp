#include "cadbench/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

namespace cadbench {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

/// Strict material test plus boundary probes against the whole tree.
struct Classifier {
    const CsgNode* root;
    double eps;  // probe offset, base units

    bool material(const Vec3& p) const {
        return classify(*root, p, eps * 0.25) == PointClass::inside;
    }
    /// True iff exactly one side of the carrier at p (normal n) has material.
    bool on_boundary(const Vec3& p, const Vec3& n) const {
        return material(p + eps * n) != material(p - eps * n);
    }
    /// +1 if material lies on the -n side, -1 on the +n side.
    double orientation(const Vec3& p, const Vec3& n) const {
        return material(p - eps * n) ? 1.0 : -1.0;
    }
};

// ---------------------------------------------------------------------------
// Face grids

struct FaceGrid {
    FaceRef face;
    int prim_ordinal = 0;
    int face_index = 0;
    double u0, u1, v0, v1, du, dv;
    int nu = 0, nv = 0;
    bool per_u = false;
    std::vector<uint8_t> node_in;  // (nu+1)*(nv+1)
    std::vector<uint8_t> cell_in;  // nu*nv, center classification
    std::vector<int> cell_label;   // global component id or -1
    double cell_world = 0.0;       // approx world size of one cell

    double pu(int i) const { return u0 + du * i; }
    double pv(int j) const { return v0 + dv * j; }
    int node_idx(int i, int j) const { return j * (nu + 1) + i; }
    int cell_idx(int i, int j) const { return j * nu + i; }
};

/// Probe params are inset from non-periodic domain edges so boundary probes
/// never sit exactly on an adjacent carrier surface.
struct FaceSampler {
    const FaceGrid* grid;
    const Classifier* cls;

    bool probe(double u, double v) const {
        double pu = u, pv = v;
        if (!grid->per_u) {
            const double inset_u = grid->du * 1e-3;
            pu = std::clamp(u, grid->u0 + inset_u, grid->u1 - inset_u);
        }
        const double inset_v = grid->dv * 1e-3;
        pv = std::clamp(v, grid->v0 + inset_v, grid->v1 - inset_v);
        const Vec3 p = grid->face.eval(pu, pv);
        return cls->on_boundary(p, grid->face.normal(pu, pv));
    }
    /// Bisects along the param segment a→b for the region flip. `a` in, `b` out.
    std::array<double, 2> cross(std::array<double, 2> a, std::array<double, 2> b) const {
        for (int it = 0; it < 14; ++it) {
            const std::array<double, 2> m{0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
            (probe(m[0], m[1]) ? a : b) = m;
        }
        return {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
    }
};

struct ComponentAccum {
    double area = 0.0;
    Vec3 centroid_acc = Vec3::Zero();
    double flux = 0.0;
    Vec3 moment = Vec3::Zero();
    double u_acc = 0.0, v_acc = 0.0;
    BoundingBox bounds;
    bool bounds_init = false;
    double orient = 0.0;  // +1 material on -n side, -1 on +n side
    std::vector<Vec3> border_samples;
    std::vector<std::pair<std::array<double, 2>, Vec3>> region_samples;  // param → point
    int grid_index = -1;
    FaceRef face;
    double cell_world = 0.0;
    // Max-x sample for shell orientation (cell centers only, unambiguous).
    double max_x = -std::numeric_limits<double>::infinity();
    std::array<double, 2> max_x_param{0, 0};

    void add_point(const Vec3& p) {
        if (!bounds_init) {
            bounds = BoundingBox{p, p};
            bounds_init = true;
        } else {
            bounds.expand(p);
        }
    }
};

struct Integrand {
    const FaceRef* face;
    ComponentAccum* acc;

    void accumulate(double u, double v, double w) const {
        const Vec3 p = face->eval(u, v);
        const Vec3 n = face->normal(u, v);
        const double m = face->area_element(u, v) * w;
        acc->area += m;
        acc->centroid_acc += m * p;
        acc->flux += m * p.dot(n);
        for (int k = 0; k < 3; ++k) acc->moment[k] += m * 0.5 * p[k] * p[k] * n[k];
        acc->u_acc += m * u;
        acc->v_acc += m * v;
        acc->add_point(p);
    }
};

void gauss_rect(const Integrand& ig, double ua, double ub, double va, double vb) {
    static const double g = 1.0 / std::sqrt(3.0);
    const double cu = 0.5 * (ua + ub), cv = 0.5 * (va + vb);
    const double hu = 0.5 * (ub - ua), hv = 0.5 * (vb - va);
    const double w = hu * hv;
    for (int a : {-1, 1}) {
        for (int b : {-1, 1}) {
            ig.accumulate(cu + a * g * hu, cv + b * g * hv, w);
        }
    }
}

void tri_centroid(const Integrand& ig, const std::array<double, 2>& p0,
                  const std::array<double, 2>& p1, const std::array<double, 2>& p2) {
    const double area = 0.5 * std::abs((p1[0] - p0[0]) * (p2[1] - p0[1]) -
                                       (p2[0] - p0[0]) * (p1[1] - p0[1]));
    if (area <= 0.0) return;
    ig.accumulate((p0[0] + p1[0] + p2[0]) / 3.0, (p0[1] + p1[1] + p2[1]) / 3.0, area);
}

void integrate_cell(const FaceSampler& fs, const Integrand& ig, double ua, double ub, double va,
                    double vb, bool in00, bool in10, bool in11, bool in01, int depth,
                    int max_depth, std::vector<std::array<double, 2>>* crossings_out) {
    const int count = int(in00) + int(in10) + int(in11) + int(in01);
    if (count == 4) {
        gauss_rect(ig, ua, ub, va, vb);
        return;
    }
    if (depth < max_depth) {
        const double um = 0.5 * (ua + ub), vm = 0.5 * (va + vb);
        const bool c = fs.probe(um, vm);
        const bool e0 = fs.probe(um, va), e1 = fs.probe(ub, vm);
        const bool e2 = fs.probe(um, vb), e3 = fs.probe(ua, vm);
        if (count == 0 && !c && !e0 && !e1 && !e2 && !e3) return;
        integrate_cell(fs, ig, ua, um, va, vm, in00, e0, c, e3, depth + 1, max_depth, crossings_out);
        integrate_cell(fs, ig, um, ub, va, vm, e0, in10, e1, c, depth + 1, max_depth, crossings_out);
        integrate_cell(fs, ig, um, ub, vm, vb, c, e1, in11, e2, depth + 1, max_depth, crossings_out);
        integrate_cell(fs, ig, ua, um, vm, vb, e3, c, e2, in01, depth + 1, max_depth, crossings_out);
        return;
    }
    if (count == 0) return;

    // Leaf: polygon reconstruction following the cell boundary.
    const std::array<std::array<double, 2>, 4> corner{{{ua, va}, {ub, va}, {ub, vb}, {ua, vb}}};
    const std::array<bool, 4> cin{in00, in10, in11, in01};
    std::vector<std::array<double, 2>> poly;
    for (int k = 0; k < 4; ++k) {
        const int nk = (k + 1) % 4;
        if (cin[k]) poly.push_back(corner[k]);
        if (cin[k] != cin[nk]) {
            const auto x = cin[k] ? fs.cross(corner[k], corner[nk]) : fs.cross(corner[nk], corner[k]);
            poly.push_back(x);
            if (crossings_out) crossings_out->push_back(x);
        }
    }
    if (poly.size() < 3) return;
    for (size_t k = 1; k + 1 < poly.size(); ++k) {
        tri_centroid(ig, poly[0], poly[k], poly[k + 1]);
    }
}

// ---------------------------------------------------------------------------
// Edge extraction

struct EdgeProbe {
    const Classifier* cls;
    double delta;

    bool alive(const Vec3& p, const Vec3& na, const Vec3& nb) const {
        Vec3 d = na.cross(nb);
        const double dn = d.norm();
        if (dn < 1e-2) return false;  // tangential contact
        d /= dn;
        const Vec3 ta = na.cross(d).normalized();
        const Vec3 tb = nb.cross(d).normalized();
        const bool a1 = cls->on_boundary(p + delta * ta, na);
        const bool a2 = cls->on_boundary(p - delta * ta, na);
        if (a1 == a2) return false;
        const bool b1 = cls->on_boundary(p + delta * tb, nb);
        const bool b2 = cls->on_boundary(p - delta * tb, nb);
        return b1 != b2;
    }
};

struct FittedCurve {
    CurveClass cls = CurveClass::other;
    double length = 0.0;
    double radius = 0.0;
    Vec3 centroid = Vec3::Zero();
};

FittedCurve fit_curve(const std::vector<Vec3>& pts, bool closed, double tol) {
    FittedCurve out;
    Vec3 mean = Vec3::Zero();
    for (const auto& p : pts) mean += p;
    mean /= double(pts.size());
    out.centroid = mean;

    double poly_len = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) poly_len += (pts[i + 1] - pts[i]).norm();
    if (closed && pts.size() > 2) poly_len += (pts.front() - pts.back()).norm();
    out.length = poly_len;

    if (pts.size() < 3) {
        out.cls = CurveClass::line;
        out.length = (pts.back() - pts.front()).norm();
        return out;
    }

    if (!closed) {
        const Vec3 dir = pts.back() - pts.front();
        const double dn = dir.norm();
        if (dn > 0) {
            const Vec3 u = dir / dn;
            double dev = 0.0;
            for (const auto& p : pts) {
                const Vec3 rel = p - pts.front();
                dev = std::max(dev, (rel - rel.dot(u) * u).norm());
            }
            if (dev < tol) {
                out.cls = CurveClass::line;
                out.length = dn;
                return out;
            }
        }
    }

    Mat3 cov = Mat3::Zero();
    for (const auto& p : pts) cov += (p - mean) * (p - mean).transpose();
    Eigen::SelfAdjointEigenSolver<Mat3> eig(cov);
    const Vec3 nrm = eig.eigenvectors().col(0);
    double plane_dev = 0.0;
    for (const auto& p : pts) plane_dev = std::max(plane_dev, std::abs((p - mean).dot(nrm)));
    if (plane_dev < tol * 4) {
        const Vec3 ex = eig.eigenvectors().col(2);
        const Vec3 ey = eig.eigenvectors().col(1);
        Eigen::MatrixXd A(pts.size(), 3);
        Eigen::VectorXd rhs(pts.size());
        for (size_t i = 0; i < pts.size(); ++i) {
            const double x = (pts[i] - mean).dot(ex);
            const double y = (pts[i] - mean).dot(ey);
            A(i, 0) = 2 * x;
            A(i, 1) = 2 * y;
            A(i, 2) = 1.0;
            rhs(i) = x * x + y * y;
        }
        const Eigen::Vector3d sol = A.colPivHouseholderQr().solve(rhs);
        const double cx = sol(0), cy = sol(1);
        const double r2 = sol(2) + cx * cx + cy * cy;
        if (r2 > 0) {
            const double r = std::sqrt(r2);
            double dev = 0.0;
            for (const auto& p : pts) {
                const double x = (p - mean).dot(ex) - cx;
                const double y = (p - mean).dot(ey) - cy;
                dev = std::max(dev, std::abs(std::hypot(x, y) - r));
            }
            if (dev < tol * 4) {
                out.radius = r;
                auto angle_of = [&](const Vec3& p) {
                    return std::atan2((p - mean).dot(ey) - cy, (p - mean).dot(ex) - cx);
                };
                if (closed) {
                    out.cls = CurveClass::circle;
                    out.length = kTwoPi * r;
                    out.centroid = mean + cx * ex + cy * ey;
                } else {
                    out.cls = CurveClass::arc;
                    double ang = 0.0;
                    for (size_t i = 0; i + 1 < pts.size(); ++i) {
                        double d = angle_of(pts[i + 1]) - angle_of(pts[i]);
                        while (d > M_PI) d -= kTwoPi;
                        while (d < -M_PI) d += kTwoPi;
                        ang += d;
                    }
                    out.length = std::abs(ang) * r;
                }
                return out;
            }
        }
    }
    out.cls = CurveClass::other;
    return out;
}

/// Splits a cyclic or open aliveness mask into runs of consecutive true.
std::vector<std::pair<int, int>> alive_runs(const std::vector<uint8_t>& alive, bool cyclic) {
    const int n = int(alive.size());
    std::vector<std::pair<int, int>> runs;  // [first, last] inclusive
    if (n == 0) return runs;
    if (cyclic) {
        bool all = true;
        for (auto v : alive) all = all && v;
        if (all) {
            runs.emplace_back(0, n - 1);
            return runs;
        }
        int start = -1;
        for (int k = 0; k < 2 * n; ++k) {
            const bool cur = alive[k % n];
            if (cur && start < 0) start = k;
            if (!cur && start >= 0) {
                if (start < n) runs.emplace_back(start, k - 1);
                start = -1;
            }
        }
        return runs;
    }
    int start = -1;
    for (int k = 0; k <= n; ++k) {
        const bool cur = k < n && alive[k];
        if (cur && start < 0) start = k;
        if (!cur && start >= 0) {
            runs.emplace_back(start, k - 1);
            start = -1;
        }
    }
    return runs;
}

// ---------------------------------------------------------------------------
// Single-primitive analytic analysis

void append_primitive_analysis(const Primitive& prim, int shell_id, ModelAnalysis& out) {
    for (int fi = 0; fi < prim.face_count(); ++fi) {
        const FaceRef f = prim.face(fi);
        AnalyzedFace af;
        af.carrier = f;
        af.surface_class = f.surface_class();
        af.area = f.analytic_area();
        af.planar_normal = af.surface_class == SurfaceClass::planar;
        af.shell_id = shell_id;
        const auto dom = f.domain();

        switch (prim.kind) {
        case PrimitiveKind::box:
            af.centroid = f.eval(0.5 * (dom[0] + dom[1]), 0.5 * (dom[2] + dom[3]));
            break;
        case PrimitiveKind::cylinder:
            af.centroid = prim.pose.apply(fi == 0 ? Vec3(0, 0, prim.b / 2)
                                                  : Vec3(0, 0, fi == 1 ? 0.0 : prim.b));
            break;
        case PrimitiveKind::sphere:
            af.centroid = prim.pose.apply(Vec3::Zero());
            break;
        case PrimitiveKind::cone:
            if (fi == 0) {
                const double zbar = prim.b * (prim.a + 2 * prim.c) / (3 * (prim.a + prim.c));
                af.centroid = prim.pose.apply(Vec3(0, 0, zbar));
            } else {
                af.centroid = prim.pose.apply(Vec3(0, 0, fi == 1 ? 0.0 : prim.b));
            }
            break;
        }
        af.normal = af.planar_normal
                        ? f.normal(0.5 * (dom[0] + dom[1]), 0.5 * (dom[2] + dom[3]))
                        : f.normal_at_point(af.centroid);
        if (af.surface_class == SurfaceClass::cylindrical || af.surface_class == SurfaceClass::conical) {
            af.axis = f.axis_direction();
            af.radius = f.radius();
        } else if (af.surface_class == SurfaceClass::spherical) {
            af.radius = f.radius();
        }
        af.bounds = prim.bounds();
        out.faces.push_back(std::move(af));
    }

    for (int ei = 0; ei < prim.self_edge_count(); ++ei) {
        const EdgeRef e = prim.self_edge(ei);
        AnalyzedEdge ae;
        ae.curve_class = e.curve_class();
        ae.closed = e.closed();
        ae.length = e.analytic_length();
        if (ae.curve_class == CurveClass::circle) {
            ae.radius = e.radius();
            Vec3 acc = Vec3::Zero();
            for (int k = 0; k < 8; ++k) acc += e.eval(k / 8.0);
            ae.centroid = acc / 8.0;
            ae.endpoints = {e.eval(0.0), e.eval(0.0)};
        } else {
            ae.endpoints = {e.eval(0.0), e.eval(1.0)};
            ae.centroid = 0.5 * (ae.endpoints[0] + ae.endpoints[1]);
        }
        out.edges.push_back(std::move(ae));
    }

    if (prim.kind == PrimitiveKind::box) {
        for (int i = 0; i < 8; ++i) {
            out.vertices.push_back(prim.pose.apply(
                Vec3((i & 1) ? prim.a : 0.0, (i & 2) ? prim.b : 0.0, (i & 4) ? prim.c : 0.0)));
        }
    }
    for (const auto& apex : prim.apex_points()) out.vertices.push_back(apex);

    const double v = prim.volume();
    out.center_of_mass = (out.center_of_mass * out.volume + v * prim.center_of_mass());
    out.volume += v;
    out.center_of_mass /= out.volume;
    out.surface_area += prim.surface_area();
    out.bounds = out.solids == 0 ? prim.bounds() : BoundingBox::merged(out.bounds, prim.bounds());
    out.solids += 1;
    out.shells += 1;
    out.support_prims.push_back(prim);
}

bool is_pure_union(const CsgNode& node, std::vector<const Primitive*>& prims) {
    if (node.kind == CsgNode::Kind::primitive) {
        prims.push_back(&node.prim);
        return true;
    }
    if (node.op != BoolOp::unite) return false;
    return is_pure_union(*node.left, prims) && is_pure_union(*node.right, prims);
}

}  // namespace

// ---------------------------------------------------------------------------

ModelAnalysis analyze(const CsgNodePtr& tree, const AnalysisOptions& opts) {
    ModelAnalysis out;
    if (!tree) return out;
    out.empty = false;

    // Fast path: a primitive, or a union of pairwise-disjoint primitives.
    {
        std::vector<const Primitive*> prims;
        if (is_pure_union(*tree, prims)) {
            bool disjoint = true;
            for (size_t i = 0; i < prims.size() && disjoint; ++i) {
                for (size_t j = i + 1; j < prims.size(); ++j) {
                    BoundingBox bi = prims[i]->bounds();
                    const BoundingBox bj = prims[j]->bounds();
                    const double pad = 1e-9 * (bi.diagonal() + bj.diagonal());
                    bi.min -= Vec3::Constant(pad);
                    bi.max += Vec3::Constant(pad);
                    if (bi.intersects(bj)) {
                        disjoint = false;
                        break;
                    }
                }
            }
            if (disjoint) {
                for (const Primitive* p : prims) append_primitive_analysis(*p, out.shells, out);
                return out;
            }
        }
    }

    // General path: sampled boundary analysis.
    const BoundingBox outer = conservative_bounds(*tree);
    const double diag = std::max(outer.diagonal(), 1e-12);
    const double eps = opts.eps_rel * diag;
    out.probe_eps = eps;
    const Classifier cls{tree.get(), eps};

    std::vector<const Primitive*> prims;
    collect_primitives(tree, prims);

    // --- face grids --------------------------------------------------------
    std::vector<FaceGrid> grids;
    std::map<std::pair<int, int>, int> grid_of;  // (prim ordinal, face idx) → grid
    for (size_t pi = 0; pi < prims.size(); ++pi) {
        const Primitive& prim = *prims[pi];
        for (int fi = 0; fi < prim.face_count(); ++fi) {
            FaceGrid g;
            g.face = prim.face(fi);
            g.prim_ordinal = int(pi);
            g.face_index = fi;
            const auto dom = g.face.domain();
            g.u0 = dom[0];
            g.u1 = dom[1];
            g.v0 = dom[2];
            g.v1 = dom[3];
            g.per_u = g.face.periodic_u();
            const double mu = 0.5 * (g.u0 + g.u1), mv = 0.5 * (g.v0 + g.v1);
            const double lu = (g.face.eval(mu, mv) - g.face.eval(g.u0, mv)).norm() * 2.0;
            const double lv = (g.face.eval(mu, g.v1) - g.face.eval(mu, mv)).norm() * 2.0;
            const double lmax = std::max({lu, lv, 1e-12});
            g.nu = std::clamp(int(std::lround(opts.grid * lu / lmax)), 8, opts.grid);
            g.nv = std::clamp(int(std::lround(opts.grid * lv / lmax)), 8, opts.grid);
            if (g.per_u) g.nu = std::max(g.nu, 24);
            g.du = (g.u1 - g.u0) / g.nu;
            g.dv = (g.v1 - g.v0) / g.nv;
            g.cell_world = (g.face.eval(g.u0 + g.du, mv) - g.face.eval(g.u0, mv)).norm() +
                           (g.face.eval(mu, g.v0 + g.dv) - g.face.eval(mu, g.v0)).norm();

            g.node_in.assign((g.nu + 1) * (g.nv + 1), 0);
            g.cell_in.assign(g.nu * g.nv, 0);
            g.cell_label.assign(g.nu * g.nv, -1);
            const FaceSampler fs{&g, &cls};
            for (int j = 0; j <= g.nv; ++j) {
                for (int i = 0; i <= g.nu; ++i) {
                    g.node_in[g.node_idx(i, j)] = fs.probe(g.pu(i), g.pv(j)) ? 1 : 0;
                }
            }
            for (int j = 0; j < g.nv; ++j) {
                for (int i = 0; i < g.nu; ++i) {
                    g.cell_in[g.cell_idx(i, j)] =
                        fs.probe(g.pu(i) + 0.5 * g.du, g.pv(j) + 0.5 * g.dv) ? 1 : 0;
                }
            }
            grid_of[{int(pi), fi}] = int(grids.size());
            grids.push_back(std::move(g));
        }
    }

    // --- connected components over cells ------------------------------------
    int total_cells = 0;
    std::vector<int> grid_cell_base(grids.size());
    for (size_t gi = 0; gi < grids.size(); ++gi) {
        grid_cell_base[gi] = total_cells;
        total_cells += grids[gi].nu * grids[gi].nv;
    }
    UnionFind uf(total_cells);
    for (size_t gi = 0; gi < grids.size(); ++gi) {
        FaceGrid& g = grids[gi];
        const int base = grid_cell_base[gi];
        for (int j = 0; j < g.nv; ++j) {
            for (int i = 0; i < g.nu; ++i) {
                if (!g.cell_in[g.cell_idx(i, j)]) continue;
                const int id = base + g.cell_idx(i, j);
                if (i + 1 < g.nu && g.cell_in[g.cell_idx(i + 1, j)]) {
                    uf.unite(id, base + g.cell_idx(i + 1, j));
                }
                if (j + 1 < g.nv && g.cell_in[g.cell_idx(i, j + 1)]) {
                    uf.unite(id, base + g.cell_idx(i, j + 1));
                }
                if (g.per_u && i == 0 && g.cell_in[g.cell_idx(g.nu - 1, j)]) {
                    uf.unite(id, base + g.cell_idx(g.nu - 1, j));
                }
            }
        }
    }
    std::map<int, int> component_of_root;
    std::vector<ComponentAccum> comps;
    for (size_t gi = 0; gi < grids.size(); ++gi) {
        FaceGrid& g = grids[gi];
        const int base = grid_cell_base[gi];
        for (int j = 0; j < g.nv; ++j) {
            for (int i = 0; i < g.nu; ++i) {
                if (!g.cell_in[g.cell_idx(i, j)]) continue;
                const int root = uf.find(base + g.cell_idx(i, j));
                auto it = component_of_root.find(root);
                if (it == component_of_root.end()) {
                    it = component_of_root.emplace(root, int(comps.size())).first;
                    ComponentAccum acc;
                    acc.grid_index = int(gi);
                    acc.face = g.face;
                    acc.cell_world = g.cell_world;
                    comps.push_back(std::move(acc));
                }
                g.cell_label[g.cell_idx(i, j)] = it->second;
            }
        }
    }

    // --- integration ---------------------------------------------------------
    for (size_t gi = 0; gi < grids.size(); ++gi) {
        FaceGrid& g = grids[gi];
        const FaceSampler fs{&g, &cls};
        for (int j = 0; j < g.nv; ++j) {
            for (int i = 0; i < g.nu; ++i) {
                int label = g.cell_label[g.cell_idx(i, j)];
                const bool n00 = g.node_in[g.node_idx(i, j)];
                const bool n10 = g.node_in[g.node_idx(i + 1, j)];
                const bool n11 = g.node_in[g.node_idx(i + 1, j + 1)];
                const bool n01 = g.node_in[g.node_idx(i, j + 1)];
                if (label < 0) {
                    if (!(n00 || n10 || n11 || n01)) continue;
                    for (auto [di, dj] : std::initializer_list<std::pair<int, int>>{
                             {-1, 0}, {1, 0}, {0, -1}, {0, 1}}) {
                        int ni = i + di, nj = j + dj;
                        if (g.per_u) ni = (ni + g.nu) % g.nu;
                        if (ni < 0 || ni >= g.nu || nj < 0 || nj >= g.nv) continue;
                        if (g.cell_label[g.cell_idx(ni, nj)] >= 0) {
                            label = g.cell_label[g.cell_idx(ni, nj)];
                            break;
                        }
                    }
                    if (label < 0) continue;
                }
                ComponentAccum& acc = comps[label];
                const double cu = g.pu(i) + 0.5 * g.du, cv = g.pv(j) + 0.5 * g.dv;
                if (g.cell_in[g.cell_idx(i, j)]) {
                    const Vec3 cp = g.face.eval(cu, cv);
                    if (acc.orient == 0.0) {
                        acc.orient = cls.orientation(cp, g.face.normal(cu, cv));
                    }
                    if (cp.x() > acc.max_x) {
                        acc.max_x = cp.x();
                        acc.max_x_param = {cu, cv};
                    }
                    acc.region_samples.push_back({{cu, cv}, cp});
                }
                const Integrand ig{&g.face, &acc};
                const bool border_cell = !(n00 && n10 && n11 && n01) || !g.cell_in[g.cell_idx(i, j)];
                std::vector<std::array<double, 2>> crossings;
                integrate_cell(fs, ig, g.pu(i), g.pu(i + 1), g.pv(j), g.pv(j + 1), n00, n10, n11,
                               n01, 0, opts.adaptive_depth, border_cell ? &crossings : nullptr);
                for (const auto& x : crossings) {
                    const Vec3 p = g.face.eval(x[0], x[1]);
                    acc.border_samples.push_back(p);
                    acc.region_samples.push_back({x, p});
                    acc.add_point(p);
                }
                if (!g.per_u && (i == 0 || i + 1 == g.nu)) {
                    const int ii = i == 0 ? 0 : g.nu;
                    if (g.node_in[g.node_idx(ii, j)]) {
                        const std::array<double, 2> x{g.pu(ii), g.pv(j)};
                        const Vec3 p = g.face.eval(x[0], x[1]);
                        acc.border_samples.push_back(p);
                        acc.region_samples.push_back({x, p});
                    }
                }
                if (j == 0 || j + 1 == g.nv) {
                    const int jj = j == 0 ? 0 : g.nv;
                    if (g.node_in[g.node_idx(i, jj)]) {
                        const std::array<double, 2> x{g.pu(i), g.pv(jj)};
                        const Vec3 p = g.face.eval(x[0], x[1]);
                        acc.border_samples.push_back(p);
                        acc.region_samples.push_back({x, p});
                    }
                }
            }
        }
    }

    // --- faces ---------------------------------------------------------------
    std::vector<int> comp_to_face(comps.size(), -1);
    const double min_area = 1e-10 * diag * diag;
    for (size_t ci = 0; ci < comps.size(); ++ci) {
        ComponentAccum& acc = comps[ci];
        if (acc.area <= min_area) continue;
        AnalyzedFace af;
        af.carrier = acc.face;
        af.surface_class = acc.face.surface_class();
        af.area = acc.area;
        af.centroid = acc.centroid_acc / acc.area;
        const double mu = acc.u_acc / acc.area, mv = acc.v_acc / acc.area;
        const double orient = acc.orient == 0.0 ? 1.0 : acc.orient;
        af.normal = orient * acc.face.normal(mu, mv);
        af.planar_normal = af.surface_class == SurfaceClass::planar;
        if (af.surface_class == SurfaceClass::cylindrical || af.surface_class == SurfaceClass::conical) {
            af.axis = acc.face.axis_direction();
            af.radius = acc.face.radius();
        } else if (af.surface_class == SurfaceClass::spherical) {
            af.radius = acc.face.radius();
        }
        af.flux = orient * acc.flux;
        af.moment = orient * acc.moment;
        af.bounds = acc.bounds_init ? acc.bounds : BoundingBox{af.centroid, af.centroid};
        const FaceGrid& g = grids[acc.grid_index];
        af.step_u = g.du;
        af.step_v = g.dv;
        // Support seeds: per-axis extremes plus a spread of region samples.
        {
            std::vector<size_t> keep;
            for (int axis = 0; axis < 3; ++axis) {
                size_t lo = 0, hi = 0;
                for (size_t k = 1; k < acc.region_samples.size(); ++k) {
                    if (acc.region_samples[k].second[axis] < acc.region_samples[lo].second[axis]) lo = k;
                    if (acc.region_samples[k].second[axis] > acc.region_samples[hi].second[axis]) hi = k;
                }
                keep.push_back(lo);
                keep.push_back(hi);
            }
            const size_t step = std::max<size_t>(1, acc.region_samples.size() / 48);
            for (size_t k = 0; k < acc.region_samples.size(); k += step) keep.push_back(k);
            std::sort(keep.begin(), keep.end());
            keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
            for (size_t k : keep) {
                af.support_params.push_back(acc.region_samples[k].first);
                af.support_points.push_back(acc.region_samples[k].second);
            }
        }
        comp_to_face[ci] = int(out.faces.size());
        out.faces.push_back(std::move(af));
    }

    for (const auto& f : out.faces) {
        out.volume += f.flux;
        out.surface_area += f.area;
        out.center_of_mass += f.moment;
    }
    out.volume /= 3.0;
    if (out.volume > 1e-12 * diag * diag * diag) {
        out.center_of_mass /= out.volume;
    } else {
        out.volume = std::max(out.volume, 0.0);
        out.center_of_mass = Vec3::Zero();
    }

    // --- shells ----------------------------------------------------------------
    {
        std::vector<int> live;
        for (size_t ci = 0; ci < comps.size(); ++ci) {
            if (comp_to_face[ci] >= 0) live.push_back(int(ci));
        }
        UnionFind suf(int(live.size()));
        for (size_t ai = 0; ai < live.size(); ++ai) {
            for (size_t bi = ai + 1; bi < live.size(); ++bi) {
                const ComponentAccum& ca = comps[live[ai]];
                const ComponentAccum& cb = comps[live[bi]];
                const double d_adj = 2.0 * std::max(ca.cell_world, cb.cell_world);
                BoundingBox ba = ca.bounds;
                ba.min -= Vec3::Constant(d_adj);
                ba.max += Vec3::Constant(d_adj);
                if (!ba.intersects(cb.bounds)) continue;
                bool touch = false;
                for (const auto& pa : ca.border_samples) {
                    for (const auto& pb : cb.border_samples) {
                        if ((pa - pb).squaredNorm() <= d_adj * d_adj) {
                            touch = true;
                            break;
                        }
                    }
                    if (touch) break;
                }
                if (touch) suf.unite(int(ai), int(bi));
            }
        }
        std::map<int, int> shell_of_root;
        struct ShellInfo {
            double max_x = -std::numeric_limits<double>::infinity();
            int comp = -1;
        };
        std::vector<ShellInfo> shells;
        for (size_t ai = 0; ai < live.size(); ++ai) {
            const int root = suf.find(int(ai));
            auto it = shell_of_root.find(root);
            if (it == shell_of_root.end()) {
                it = shell_of_root.emplace(root, int(shells.size())).first;
                shells.push_back({});
            }
            const int sid = it->second;
            out.faces[comp_to_face[live[ai]]].shell_id = sid;
            const ComponentAccum& acc = comps[live[ai]];
            if (acc.max_x > shells[sid].max_x) {
                shells[sid].max_x = acc.max_x;
                shells[sid].comp = live[ai];
            }
        }
        out.shells = int(shells.size());
        for (const auto& sh : shells) {
            if (sh.comp < 0) continue;
            const ComponentAccum& acc = comps[sh.comp];
            const Vec3 p = acc.face.eval(acc.max_x_param[0], acc.max_x_param[1]);
            const Vec3 n = acc.face.normal(acc.max_x_param[0], acc.max_x_param[1]);
            const double orient = acc.orient == 0.0 ? 1.0 : acc.orient;
            const Vec3 away = -orient * n;  // points away from material
            if (away.x() > 0) out.solids += 1;
        }
        // Degenerate safeguard: any material implies at least one solid.
        if (out.solids == 0 && !out.faces.empty()) out.solids = 1;
    }

    // --- edges: primitive self-edges ---------------------------------------------
    const EdgeProbe ep{&cls, 6.0 * eps};
    std::vector<Vec3> vertex_candidates;
    for (size_t pi = 0; pi < prims.size(); ++pi) {
        const Primitive& prim = *prims[pi];
        for (int ei = 0; ei < prim.self_edge_count(); ++ei) {
            const EdgeRef e = prim.self_edge(ei);
            const auto adj = e.adjacent_faces();
            const FaceRef fa = prim.face(adj[0]);
            const FaceRef fb = prim.face(adj[1]);
            const bool cyclic = e.closed();
            const int n = opts.edge_samples;
            std::vector<uint8_t> alive(n, 0);
            const double t_inset = cyclic ? 0.0 : 1e-6;
            auto t_of = [&](double k) {
                const double t = cyclic ? k / n : k / (n - 1);
                return std::clamp(t, t_inset, 1.0 - t_inset);
            };
            auto alive_at = [&](double t) {
                const Vec3 p = e.eval(t);
                return ep.alive(p, fa.normal_at_point(p), fb.normal_at_point(p));
            };
            for (int k = 0; k < n; ++k) alive[k] = alive_at(t_of(k)) ? 1 : 0;
            for (const auto& run : alive_runs(alive, cyclic)) {
                const int len = run.second - run.first + 1;
                if (len < 2) continue;
                const bool full_cycle = cyclic && len == n;
                double t0 = t_of(run.first);
                double t1 = t_of(run.second % n) + (cyclic && run.second >= n ? 1.0 : 0.0);
                if (!full_cycle) {
                    // Refine endpoints against the adjacent dead samples.
                    auto bisect = [&](double t_alive, double t_dead) {
                        for (int it = 0; it < 30; ++it) {
                            const double m = 0.5 * (t_alive + t_dead);
                            const double mm = m - std::floor(m);
                            (alive_at(mm) ? t_alive : t_dead) = m;
                        }
                        return t_alive;
                    };
                    const double step = cyclic ? 1.0 / n : 1.0 / (n - 1);
                    if (cyclic || run.first > 0) t0 = bisect(t0, t0 - step);
                    if (cyclic || run.second < n - 1) t1 = bisect(t1, t1 + step);
                }
                AnalyzedEdge ae;
                ae.closed = full_cycle;
                ae.curve_class = e.curve_class();
                if (full_cycle) {
                    ae.length = e.analytic_length();
                    if (ae.curve_class == CurveClass::circle) ae.radius = e.radius();
                    Vec3 acc = Vec3::Zero();
                    for (int k = 0; k < 8; ++k) acc += e.eval(k / 8.0);
                    ae.centroid = acc / 8.0;
                    ae.endpoints = {e.eval(0.0), e.eval(0.0)};
                } else {
                    const double frac = t1 - t0;
                    ae.length = e.analytic_length() * frac;
                    if (ae.curve_class == CurveClass::circle) {
                        ae.curve_class = CurveClass::arc;
                        ae.radius = e.radius();
                    }
                    ae.endpoints = {e.eval(t0 - std::floor(t0)), e.eval(t1 - std::floor(t1))};
                    ae.centroid = e.eval(0.5 * (t0 + t1) - std::floor(0.5 * (t0 + t1)));
                    vertex_candidates.push_back(ae.endpoints[0]);
                    vertex_candidates.push_back(ae.endpoints[1]);
                }
                out.edges.push_back(std::move(ae));
            }
        }
        for (const auto& apex : prim.apex_points()) {
            // Apex survives if the wall is boundary just below it.
            const FaceRef wall = prim.face(0);
            const auto dom = wall.domain();
            bool alive = false;
            for (int k = 0; k < 8 && !alive; ++k) {
                const double u = dom[0] + (dom[1] - dom[0]) * (k + 0.5) / 8.0;
                const double v = dom[2] + (dom[3] - dom[2]) * 0.995;
                alive = cls.on_boundary(wall.eval(u, v), wall.normal(u, v));
            }
            if (alive) out.vertices.push_back(apex);
        }
    }

    // --- edges: intersection curves between different primitives -------------------
    const double fit_tol = 1e-5 * diag;
    for (size_t pi = 0; pi < prims.size(); ++pi) {
        for (size_t pj = pi + 1; pj < prims.size(); ++pj) {
            BoundingBox bi = prims[pi]->bounds();
            bi.min -= Vec3::Constant(4 * eps);
            bi.max += Vec3::Constant(4 * eps);
            if (!bi.intersects(prims[pj]->bounds())) continue;
            for (int fi = 0; fi < prims[pi]->face_count(); ++fi) {
                for (int fj = 0; fj < prims[pj]->face_count(); ++fj) {
                    FaceRef fa = prims[pi]->face(fi);
                    FaceRef fb = prims[pj]->face(fj);
                    // March on a non-periodic grid when we can choose.
                    if (fa.periodic_u() && !fb.periodic_u()) std::swap(fa, fb);
                    if (fa.same_surface(fb, 1e-9 * diag)) continue;
                    const FaceGrid& g = grids[grid_of.at(
                        {fa.prim == prims[pi] ? int(pi) : int(pj), fa.index})];

                    // Node values of fb's implicit over fa's grid.
                    std::vector<double> gv((g.nu + 1) * (g.nv + 1));
                    bool any_neg = false, any_pos = false;
                    for (int j = 0; j <= g.nv; ++j) {
                        for (int i = 0; i <= g.nu; ++i) {
                            const double val = fb.surface_implicit(g.face.eval(g.pu(i), g.pv(j)));
                            gv[g.node_idx(i, j)] = val;
                            any_neg = any_neg || val < 0;
                            any_pos = any_pos || val > 0;
                        }
                    }
                    if (!any_neg || !any_pos) continue;

                    // Marching squares: crossing params keyed by grid edge id.
                    auto h_edge = [&](int i, int j) { return 2 * (j * (g.nu + 1) + i); };
                    auto v_edge = [&](int i, int j) { return 2 * (j * (g.nu + 1) + i) + 1; };
                    std::unordered_map<int, std::array<double, 2>> crossing;
                    auto cross_param = [&](int i0, int j0, int i1, int j1) -> std::array<double, 2> {
                        // Bisection along the param segment for fb's implicit.
                        std::array<double, 2> a{g.pu(i0), g.pv(j0)};
                        std::array<double, 2> b{g.pu(i1), g.pv(j1)};
                        double va = gv[g.node_idx(i0, j0)];
                        for (int it = 0; it < 20; ++it) {
                            const std::array<double, 2> m{0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
                            const double vm = fb.surface_implicit(g.face.eval(m[0], m[1]));
                            if ((vm < 0) == (va < 0)) {
                                a = m;
                                va = vm;
                            } else {
                                b = m;
                            }
                        }
                        return {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
                    };
                    std::unordered_map<int, std::vector<int>> link;  // edge id → neighbours
                    for (int j = 0; j < g.nv; ++j) {
                        for (int i = 0; i < g.nu; ++i) {
                            const double v00 = gv[g.node_idx(i, j)];
                            const double v10 = gv[g.node_idx(i + 1, j)];
                            const double v11 = gv[g.node_idx(i + 1, j + 1)];
                            const double v01 = gv[g.node_idx(i, j + 1)];
                            if (std::abs(v00) < 1e-12 && std::abs(v10) < 1e-12 &&
                                std::abs(v11) < 1e-12 && std::abs(v01) < 1e-12) {
                                continue;  // coincident plateau
                            }
                            std::vector<int> ids;
                            auto consider = [&](bool sa, bool sb, int id, int i0, int j0, int i1, int j1) {
                                if (sa == sb) return;
                                if (!crossing.count(id)) crossing[id] = cross_param(i0, j0, i1, j1);
                                ids.push_back(id);
                            };
                            consider(v00 < 0, v10 < 0, h_edge(i, j), i, j, i + 1, j);
                            consider(v10 < 0, v11 < 0, v_edge(i + 1, j), i + 1, j, i + 1, j + 1);
                            consider(v01 < 0, v11 < 0, h_edge(i, j + 1), i, j + 1, i + 1, j + 1);
                            consider(v00 < 0, v01 < 0, v_edge(i, j), i, j, i, j + 1);
                            if (ids.size() == 2) {
                                link[ids[0]].push_back(ids[1]);
                                link[ids[1]].push_back(ids[0]);
                            } else if (ids.size() == 4) {
                                // Saddle: resolve by center sign.
                                const double vc = fb.surface_implicit(
                                    g.face.eval(g.pu(i) + 0.5 * g.du, g.pv(j) + 0.5 * g.dv));
                                // Pair edges so the curve separates center from opposite corners.
                                const bool ccw = (vc < 0) == (v00 < 0);
                                const int a0 = ids[0], a1 = ids[1], a2 = ids[2], a3 = ids[3];
                                if (ccw) {
                                    link[a0].push_back(a1);
                                    link[a1].push_back(a0);
                                    link[a2].push_back(a3);
                                    link[a3].push_back(a2);
                                } else {
                                    link[a0].push_back(a3);
                                    link[a3].push_back(a0);
                                    link[a1].push_back(a2);
                                    link[a2].push_back(a1);
                                }
                            }
                        }
                    }

                    // Walk chains.
                    std::unordered_map<int, bool> used;
                    std::vector<std::pair<std::vector<std::array<double, 2>>, bool>> chains;
                    for (const auto& [id, nbrs] : link) {
                        if (used[id] || nbrs.size() != 1) continue;  // open chain start
                        std::vector<std::array<double, 2>> chain;
                        int cur = id, prev = -1;
                        while (cur >= 0 && !used[cur]) {
                            used[cur] = true;
                            chain.push_back(crossing[cur]);
                            int next = -1;
                            for (int nb : link[cur]) {
                                if (nb != prev) {
                                    next = nb;
                                    break;
                                }
                            }
                            prev = cur;
                            cur = next;
                        }
                        if (chain.size() >= 2) chains.push_back({std::move(chain), false});
                    }
                    for (const auto& [id, nbrs] : link) {  // closed loops
                        if (used[id]) continue;
                        std::vector<std::array<double, 2>> chain;
                        int cur = id, prev = -1;
                        while (cur >= 0 && !used[cur]) {
                            used[cur] = true;
                            chain.push_back(crossing[cur]);
                            int next = -1;
                            for (int nb : link[cur]) {
                                if (nb != prev) {
                                    next = nb;
                                    break;
                                }
                            }
                            prev = cur;
                            cur = next;
                        }
                        if (chain.size() >= 3) chains.push_back({std::move(chain), true});
                    }

                    // Aliveness filtering and measurement per chain.
                    for (auto& [chain, closed_chain] : chains) {
                        std::vector<Vec3> pts(chain.size());
                        std::vector<uint8_t> alive(chain.size());
                        for (size_t k = 0; k < chain.size(); ++k) {
                            pts[k] = g.face.eval(chain[k][0], chain[k][1]);
                            alive[k] = ep.alive(pts[k], fa.normal_at_point(pts[k]),
                                                fb.normal_at_point(pts[k]))
                                           ? 1
                                           : 0;
                        }
                        for (const auto& run : alive_runs(alive, closed_chain)) {
                            const int len = run.second - run.first + 1;
                            if (len < 3) continue;
                            const bool full = closed_chain && len == int(chain.size());
                            std::vector<Vec3> run_pts;
                            for (int k = run.first; k <= run.second; ++k) {
                                run_pts.push_back(pts[k % chain.size()]);
                            }
                            const FittedCurve fc = fit_curve(run_pts, full, fit_tol);
                            AnalyzedEdge ae;
                            ae.curve_class = fc.cls;
                            ae.closed = full;
                            ae.length = fc.length;
                            if (fc.cls == CurveClass::circle || fc.cls == CurveClass::arc) {
                                ae.radius = fc.radius;
                            }
                            ae.centroid = fc.centroid;
                            ae.endpoints = {run_pts.front(), run_pts.back()};
                            if (full) ae.endpoints = {run_pts.front(), run_pts.front()};
                            if (!full) {
                                vertex_candidates.push_back(ae.endpoints[0]);
                                vertex_candidates.push_back(ae.endpoints[1]);
                            }
                            out.edges.push_back(std::move(ae));
                        }
                    }
                }
            }
        }
    }

    // --- vertices ------------------------------------------------------------------
    {
        const double cluster_tol = 1e-4 * diag;
        UnionFind vuf(int(vertex_candidates.size()));
        for (size_t i = 0; i < vertex_candidates.size(); ++i) {
            for (size_t j = i + 1; j < vertex_candidates.size(); ++j) {
                if ((vertex_candidates[i] - vertex_candidates[j]).squaredNorm() <=
                    cluster_tol * cluster_tol) {
                    vuf.unite(int(i), int(j));
                }
            }
        }
        std::map<int, std::pair<Vec3, int>> clusters;
        for (size_t i = 0; i < vertex_candidates.size(); ++i) {
            auto& c = clusters[vuf.find(int(i))];
            c.first += vertex_candidates[i];
            c.second += 1;
        }
        for (const auto& [root, c] : clusters) {
            out.vertices.push_back(c.first / c.second);
        }
    }

    // --- tight base-frame bounds ------------------------------------------------------
    if (!out.faces.empty()) {
        for (int axis = 0; axis < 3; ++axis) {
            Vec3 e = Vec3::Zero();
            e[axis] = 1.0;
            out.bounds.max[axis] = support_distance(out, tree, e);
            out.bounds.min[axis] = -support_distance(out, tree, -e);
        }
    }

    return out;
}

// ---------------------------------------------------------------------------

namespace {

/// Local pattern-search refinement of dir·p over a face region.
double refine_support(const Classifier& cls, const AnalyzedFace& f, std::array<double, 2> start,
                      const Vec3& dir) {
    const FaceRef& face = f.carrier;
    const auto dom = face.domain();
    const bool per_u = face.periodic_u();
    auto probe = [&](double u, double v) -> double {
        if (per_u) {
            const double span = dom[1] - dom[0];
            u = dom[0] + std::fmod(std::fmod(u - dom[0], span) + span, span);
        } else {
            const double inset = f.step_u * 1e-3;
            u = std::clamp(u, dom[0] + inset, dom[1] - inset);
        }
        const double inset_v = f.step_v * 1e-3;
        v = std::clamp(v, dom[2] + inset_v, dom[3] - inset_v);
        if (!cls.on_boundary(face.eval(u, v), face.normal(u, v))) {
            return -std::numeric_limits<double>::infinity();
        }
        return dir.dot(face.eval(u, v));
    };
    double su = f.step_u, sv = f.step_v;
    std::array<double, 2> cur = start;
    double best = probe(cur[0], cur[1]);
    if (!std::isfinite(best)) best = dir.dot(face.eval(cur[0], cur[1]));
    for (int it = 0; it < 60; ++it) {
        bool moved = false;
        for (auto [du, dv] : std::initializer_list<std::pair<double, double>>{
                 {su, 0.0}, {-su, 0.0}, {0.0, sv}, {0.0, -sv}}) {
            const double val = probe(cur[0] + du, cur[1] + dv);
            if (val > best + 1e-15) {
                best = val;
                cur = {cur[0] + du, cur[1] + dv};
                moved = true;
            }
        }
        if (!moved) {
            su *= 0.5;
            sv *= 0.5;
            if (su < 1e-9 * (dom[1] - dom[0]) && sv < 1e-9 * (dom[3] - dom[2])) break;
        }
    }
    return best;
}

}  // namespace

double support_distance(const ModelAnalysis& analysis, const CsgNodePtr& tree, const Vec3& dir) {
    if (!analysis.support_prims.empty()) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& p : analysis.support_prims) best = std::max(best, p.support(dir));
        return best;
    }
    double best = -std::numeric_limits<double>::infinity();
    const Classifier cls{tree.get(), analysis.probe_eps};
    for (const auto& f : analysis.faces) {
        // Best seed sample, then local refinement.
        size_t bi = 0;
        double bv = -std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < f.support_points.size(); ++k) {
            const double v = dir.dot(f.support_points[k]);
            if (v > bv) {
                bv = v;
                bi = k;
            }
        }
        if (!std::isfinite(bv)) continue;
        best = std::max(best, refine_support(cls, f, f.support_params[bi], dir));
    }
    return best;
}

BoundingBox world_bounds(const ModelAnalysis& analysis, const CsgNodePtr& tree,
                         const SimilarityTransform& root) {
    BoundingBox out;
    for (int axis = 0; axis < 3; ++axis) {
        Vec3 e = Vec3::Zero();
        e[axis] = 1.0;
        const Vec3 d_pos = root.rotation.transpose() * e;
        out.max[axis] = e.dot(root.translation) +
                        root.scale * support_distance(analysis, tree, d_pos);
        out.min[axis] = e.dot(root.translation) -
                        root.scale * support_distance(analysis, tree, -d_pos);
    }
    return out;
}

}  // namespace cadbench
