#include "doctest.h"

#include "cadbench/selectors.hpp"

#include "test_helpers.hpp"

using namespace cadbench;
using namespace cadbench::testhelpers;

TEST_CASE("select the top face of a cube") {
    const auto cube = unit_cube();
    SelectorQuery q;
    q.kind = EntityKind::face;
    q.filters = {SelectorFilter::max_along_dir(Vec3(0, 0, 1))};
    const auto hits = select(cube, q);
    REQUIRE(hits.size() == 1);
    const auto& f = std::get<FaceEntity>(hits[0]);
    CHECK(f.area == doctest::Approx(1.0));
    REQUIRE(f.normal.has_value());
    CHECK((*f.normal - Vec3(0, 0, 1)).norm() < 1e-9);
}

TEST_CASE("select cylindrical faces") {
    const auto cyl = cylinder_model(1.0, 2.0);
    SelectorQuery q;
    q.kind = EntityKind::face;
    q.filters = {SelectorFilter::by_surface_class(SurfaceClass::cylindrical)};
    const auto hits = select(cyl, q);
    REQUIRE(hits.size() == 1);
    const auto& f = std::get<FaceEntity>(hits[0]);
    REQUIRE(f.radius.has_value());
    CHECK(*f.radius == doctest::Approx(1.0));
    REQUIRE(f.axis.has_value());
    CHECK(std::abs(f.axis->dot(Vec3(0, 0, 1))) == doctest::Approx(1.0));
}

TEST_CASE("no circular edges on a cube") {
    const auto cube = unit_cube();
    SelectorQuery q;
    q.kind = EntityKind::edge;
    q.filters = {SelectorFilter::by_curve_class(CurveClass::circle)};
    CHECK(select(cube, q).empty());
}

TEST_CASE("always-true filter returns every entity of the kind") {
    const auto cube = unit_cube();
    SelectorQuery faces_q{EntityKind::face, {SelectorFilter::always()}};
    SelectorQuery edges_q{EntityKind::edge, {SelectorFilter::always()}};
    SelectorQuery verts_q{EntityKind::vertex, {SelectorFilter::always()}};
    CHECK(select(cube, faces_q).size() == 6);
    CHECK(select(cube, edges_q).size() == 12);
    CHECK(select(cube, verts_q).size() == 8);
}

TEST_CASE("selector soundness: returned entities satisfy the filters") {
    const auto m = cube_with_hole(0.2);
    SelectorQuery q;
    q.kind = EntityKind::face;
    q.filters = {SelectorFilter::by_surface_class(SurfaceClass::planar),
                 SelectorFilter::perpendicular(Vec3(1, 0, 0))};
    const auto hits = select(m, q);
    CHECK(hits.size() == 2);  // the two x-normal annular faces
    for (const auto& h : hits) {
        const auto& f = std::get<FaceEntity>(h);
        CHECK(f.surface_class == SurfaceClass::planar);
        REQUIRE(f.normal.has_value());
        CHECK(std::abs(std::abs(f.normal->dot(Vec3(1, 0, 0))) - 1.0) < 1e-6);
    }
}

TEST_CASE("deterministic ordering: centroid-lexicographic") {
    const auto twin = two_disjoint_cubes();
    SelectorQuery q{EntityKind::face, {SelectorFilter::always()}};
    const auto hits = select(twin, q);
    REQUIRE(hits.size() == 12);
    for (size_t i = 0; i + 1 < hits.size(); ++i) {
        const Vec3 a = entity_centroid(hits[i]);
        const Vec3 b = entity_centroid(hits[i + 1]);
        const bool le = a.x() < b.x() + 1e-9 ||
                        (a.x() <= b.x() + 1e-9 && a.y() <= b.y() + 1e-9);
        CHECK(le);
    }
    // Repeat queries agree entity by entity.
    const auto again = select(twin, q);
    for (size_t i = 0; i < hits.size(); ++i) {
        CHECK((entity_centroid(hits[i]) - entity_centroid(again[i])).norm() == 0.0);
    }
}

TEST_CASE("empty filter list is rejected") {
    SelectorQuery q;
    q.kind = EntityKind::face;
    CHECK_THROWS_AS(q.validate(), KernelError);
}

TEST_CASE("radius filter on edges finds hole rims") {
    const auto m = cube_with_hole(0.2);
    SelectorQuery q;
    q.kind = EntityKind::edge;
    q.filters = {SelectorFilter::radius_between(0.19, 0.21)};
    const auto hits = select(m, q);
    CHECK(hits.size() == 2);
    for (const auto& h : hits) {
        const auto& e = std::get<EdgeEntity>(h);
        CHECK(e.curve_class == CurveClass::circle);
        CHECK(e.length == doctest::Approx(2 * M_PI * 0.2).epsilon(1e-6));
    }
}
