#include "doctest.h"

#include "cadbench/step_io.hpp"

#include "test_helpers.hpp"

using namespace cadbench;
using namespace cadbench::testhelpers;

TEST_CASE("STEP round-trip preserves geometry") {
    const auto models = {unit_cube(), cylinder_model(1.0, 2.0), cube_with_hole(0.2),
                         two_disjoint_cubes()};
    for (const auto& m : models) {
        const std::string text = to_step(m);
        CHECK(text.rfind("ISO-10303-21;", 0) == 0);
        const BRepModel back = from_step(text);
        CHECK(back.topo_counts() == m.topo_counts());
        CHECK(back.volume() == doctest::Approx(m.volume()).epsilon(1e-12));
        CHECK((back.center_of_mass() - m.center_of_mass()).norm() < 1e-12);
    }
}

TEST_CASE("STEP round-trip folds root transforms exactly") {
    const auto m = unit_cube();
    const auto t = apply_transform(m, seeded_transform(3, true));
    const BRepModel back = from_step(to_step(t));
    CHECK(back.volume() == doctest::Approx(t.volume()).epsilon(1e-12));
    CHECK((back.center_of_mass() - t.center_of_mass()).norm() < 1e-9);
    CHECK(back.topo_counts() == t.topo_counts());
}

TEST_CASE("STEP serialization is stable: save(load(save(x))) == save(x)") {
    const auto m = apply_transform(cube_with_hole(0.2), seeded_transform(5, true));
    const std::string s1 = to_step(m);
    const std::string s2 = to_step(from_step(s1));
    CHECK(s1 == s2);
}

TEST_CASE("STEP parse failures are reported") {
    CHECK_THROWS_AS(from_step("not a step file"), StepError);
    CHECK_THROWS_AS(from_step("ISO-10303-21;\nDATA;\n#1=FROB('');\nENDSEC;\n"), StepError);
    const BRepModel empty;
    CHECK_THROWS_AS(to_step(empty), StepError);
}

TEST_CASE("STEP cone support") {
    Primitive cone;
    cone.kind = PrimitiveKind::cone;
    cone.a = 2.0;
    cone.b = 3.0;
    cone.c = 0.5;
    const BRepModel m(CsgNode::make(cone));
    const BRepModel back = from_step(to_step(m));
    CHECK(back.volume() == doctest::Approx(m.volume()).epsilon(1e-12));
    CHECK(back.topo_counts() == m.topo_counts());
}
