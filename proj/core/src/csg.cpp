#include "cadbench/csg.hpp"

#include <algorithm>
#include <cmath>

namespace cadbench {

CsgNodePtr CsgNode::make(Primitive p) {
    auto node = std::make_shared<CsgNode>();
    node->kind = Kind::primitive;
    node->prim = std::move(p);
    return node;
}

CsgNodePtr CsgNode::make(BoolOp op, CsgNodePtr l, CsgNodePtr r) {
    auto node = std::make_shared<CsgNode>();
    node->kind = Kind::boolean;
    node->op = op;
    node->left = std::move(l);
    node->right = std::move(r);
    return node;
}

CsgNodePtr transformed(const CsgNodePtr& node, const SimilarityTransform& a) {
    if (!node) return nullptr;
    if (node->kind == CsgNode::Kind::primitive) {
        Primitive p = node->prim;
        p.pose = a.compose(p.pose);
        return CsgNode::make(std::move(p));
    }
    return CsgNode::make(node->op, transformed(node->left, a), transformed(node->right, a));
}

PointClass classify(const CsgNode& node, const Vec3& p, double tol) {
    if (node.kind == CsgNode::Kind::primitive) {
        return node.prim.classify(p, tol);
    }
    const PointClass l = classify(*node.left, p, tol);
    PointClass r = classify(*node.right, p, tol);
    if (node.op == BoolOp::subtract) r = complement(r);

    const bool intersect_like = node.op != BoolOp::unite;
    if (intersect_like) {
        if (l == PointClass::outside || r == PointClass::outside) return PointClass::outside;
        if (l == PointClass::inside && r == PointClass::inside) return PointClass::inside;
        return PointClass::on_boundary;
    }
    if (l == PointClass::inside || r == PointClass::inside) return PointClass::inside;
    if (l == PointClass::outside && r == PointClass::outside) return PointClass::outside;
    return PointClass::on_boundary;
}

void collect_primitives(const CsgNodePtr& node, std::vector<const Primitive*>& out) {
    if (!node) return;
    if (node->kind == CsgNode::Kind::primitive) {
        out.push_back(&node->prim);
        return;
    }
    collect_primitives(node->left, out);
    collect_primitives(node->right, out);
}

BoundingBox conservative_bounds(const CsgNode& node) {
    if (node.kind == CsgNode::Kind::primitive) {
        return node.prim.bounds();
    }
    const BoundingBox l = conservative_bounds(*node.left);
    const BoundingBox r = conservative_bounds(*node.right);
    switch (node.op) {
    case BoolOp::unite:
        return BoundingBox::merged(l, r);
    case BoolOp::subtract:
        return l;
    case BoolOp::intersect: {
        auto i = BoundingBox::intersection(l, r);
        return i ? *i : BoundingBox{l.min, l.min};
    }
    }
    return l;
}

std::vector<double> ray_crossings(const CsgNode& node, const Vec3& origin, const Vec3& dir_unit,
                                  double boundary_tol, double dedup_tol) {
    std::vector<const Primitive*> prims;
    CsgNodePtr self;  // classify() takes a node reference; gather primitives directly
    std::vector<double> candidates;
    {
        std::vector<const Primitive*> stack;
        // Walk without shared_ptr ownership.
        std::vector<const CsgNode*> nodes{&node};
        while (!nodes.empty()) {
            const CsgNode* n = nodes.back();
            nodes.pop_back();
            if (n->kind == CsgNode::Kind::primitive) {
                n->prim.ray_candidates(origin, dir_unit, candidates);
            } else {
                nodes.push_back(n->left.get());
                nodes.push_back(n->right.get());
            }
        }
    }
    if (candidates.empty()) return {};
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [&](double x, double y) { return std::abs(x - y) <= dedup_tol; }),
                     candidates.end());

    // Classify midpoints of consecutive candidate intervals plus sentinels.
    const double span = candidates.back() - candidates.front() + 1.0;
    std::vector<double> probes;
    probes.push_back(candidates.front() - 0.01 * span);
    for (size_t i = 0; i + 1 < candidates.size(); ++i) {
        probes.push_back(0.5 * (candidates[i] + candidates[i + 1]));
    }
    probes.push_back(candidates.back() + 0.01 * span);

    std::vector<bool> inside(probes.size());
    for (size_t i = 0; i < probes.size(); ++i) {
        inside[i] = classify(node, origin + probes[i] * dir_unit, boundary_tol * 1e-3) == PointClass::inside;
    }

    std::vector<double> crossings;
    for (size_t i = 0; i + 1 < probes.size(); ++i) {
        if (inside[i] != inside[i + 1]) crossings.push_back(candidates[i]);
    }
    return crossings;
}

}  // namespace cadbench
