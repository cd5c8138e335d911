#include "doctest.h"

#include "cadbench/geometry.hpp"

#include <random>

using namespace cadbench;

namespace {

SimilarityTransform random_similarity(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1, 1);
    SimilarityTransform t;
    t.scale = 0.5 + 1.5 * std::abs(u(rng));
    const Vec3 axis = Vec3(u(rng), u(rng), u(rng)).normalized();
    t.rotation = Eigen::AngleAxisd(u(rng) * M_PI, axis).toRotationMatrix();
    t.translation = Vec3(u(rng), u(rng), u(rng)) * 10.0;
    return t;
}

}  // namespace

TEST_CASE("similarity transform composes and inverts") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        const SimilarityTransform a = random_similarity(rng);
        const SimilarityTransform b = random_similarity(rng);
        const Vec3 p(0.3, -1.2, 2.5);
        CHECK((a.compose(b).apply(p) - a.apply(b.apply(p))).norm() < 1e-9);
        CHECK((a.inverse().apply(a.apply(p)) - p).norm() < 1e-9);
        CHECK_NOTHROW(a.validate());
    }
}

TEST_CASE("transform validation rejects bad inputs") {
    SimilarityTransform t;
    t.scale = -1.0;
    CHECK_THROWS_AS(t.validate(), KernelError);
    t.scale = 1.0;
    t.rotation(0, 0) = 2.0;
    CHECK_THROWS_AS(t.validate(), KernelError);
    // Reflection: orthonormal but det = -1.
    SimilarityTransform r;
    r.rotation = Mat3::Identity();
    r.rotation(2, 2) = -1.0;
    CHECK_THROWS_AS(r.validate(), KernelError);
}

TEST_CASE("bounding box operations") {
    BoundingBox a{Vec3(0, 0, 0), Vec3(1, 2, 3)};
    CHECK(a.volume() == doctest::Approx(6.0));
    CHECK(a.contains(Vec3(0.5, 1, 1)));
    CHECK(!a.contains(Vec3(-0.1, 0, 0)));
    BoundingBox b{Vec3(0.5, 0.5, 0.5), Vec3(2, 2, 2)};
    CHECK(a.intersects(b));
    const auto i = BoundingBox::intersection(a, b);
    REQUIRE(i.has_value());
    CHECK(i->min == Vec3(0.5, 0.5, 0.5));
    CHECK(i->max == Vec3(1, 2, 2));
    const auto m = BoundingBox::merged(a, b);
    CHECK(m.max == Vec3(2, 2, 3));
    CHECK(!BoundingBox::intersection(a, BoundingBox{Vec3(5, 5, 5), Vec3(6, 6, 6)}).has_value());
}

TEST_CASE("rotation about axis is exact for 90 degrees") {
    const auto r = SimilarityTransform::rotation_about_axis(2, 90.0);
    const Vec3 p = r.apply(Vec3(1, 0, 0));
    CHECK((p - Vec3(0, 1, 0)).norm() < 1e-12);
}
