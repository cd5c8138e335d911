#include "cadbench/planner.hpp"

namespace cadbench {

const std::string& skill_document() {
    static const std::string doc = R"DOC(# Modeling language guide (cadscript/1)

Programs build one solid and hand it to the harness with emit(shape).

Statements
  let name = expr          bind a value
  set name = expr          rebind
  while cond { ... }       loop
  if cond { ... } else { ... }
  log(args...)             emit a log line (joined with spaces)
  emit(shape)              declare the final solid (required, once)

Primitives (all dimensions positive)
  box(dx, dy, dz)          corner at the origin, spans [0,dx]x[0,dy]x[0,dz]
  cylinder(r, h)           axis +Z, base at z=0
  sphere(r)                centered at the origin
  cone(r_base, r_top, h)   frustum along +Z; r_top may be 0

Booleans and placement
  union(a, b, ...)         difference(a, b, ...)        intersection(a, b)
  shape.translate(x, y, z) shape.rotate_x(deg) / rotate_y / rotate_z
  shape.scale(s)           uniform scale, s > 0

Practices
  - Compose cuts from primitives that extend beyond the stock so boolean
    faces are unambiguous (e.g. drill with cylinder(r, thickness + 2)
    translated to start below the part).
  - Keep dimensions as written in the prompt; do not normalize units.
  - Use log() to report intermediate dimensions when asked for feedback.
)DOC";
    return doc;
}

const std::string& api_reference_document() {
    static const std::string doc = R"DOC(# Inspection API for test bodies (cadscript/1)

A test body runs with `model` bound to the solid under test. It passes when
every require(...) holds and fails at the first violated one. Always include
a message that states the measured value.

Checks
  require(cond, message)   assert; message should embed measurements via str()
  fail(message)            unconditional failure
  approx(a, b, tol)        |a-b| <= tol
  log(args...)             diagnostic output

Measures
  volume(model)  surface_area(model)  center_of_mass(model) -> vec
  bbox_min(model)  bbox_max(model)  bbox_dims(model)  bbox_center(model) -> vec
  solid_count(model)  shell_count(model)  face_count(model)
  edge_count(model)  vertex_count(model)
  single_solid(model)  single_shell(model)  positive_volume(model)
  connected(model) -> bool
  contains(model, vec(x,y,z)) -> bool
  ray_hit_count(model, origin, dir)  ray_hit(model, origin, dir, i) -> vec

Selectors (filters are conjunctive string specs)
  faces(model, specs...)   edges(model, specs...)   verts(model, specs...)
  specs: "planar" "cylindrical" "conical" "spherical" "other"
         "line" "circle" "arc" (edges)
         "max_x" "min_x" ... "max_z"      extreme centroid along an axis
         "parallel_x|y|z"  "perp_x|y|z"   orientation relative to an axis
  filter(list, specs...)         refine an existing selection
  filter_radius(list, lo, hi)    filter_area(list, lo, hi)
  filter_length(list, lo, hi)
  count(list)  nth(list, i)

Entity accessors
  area_of(f)  normal_of(f)  axis_of(f)  radius_of(f|e)  centroid_of(any)
  class_of(any)  length_of(e)  is_closed(e)  endpoint_of(e, 0|1)
  position_of(v)

Vectors and math
  vec(x,y,z)  v.x v.y v.z  norm(v)  dot(a,b)  dist(a,b)
  abs  sqrt  floor  ceil  pow  min  max  PI

Requirements on well-formed tests
  - One property per test; make it pose- and scale-invariant unless the
    prompt pins exact dimensions.
  - Prefer ratios (volume / bbox volume, radius / width) for abstract
    prompts; use absolute dimensions only when the prompt states them.
  - Derive expected values inside the test from the prompt's numbers, not
    from any reference implementation.
)DOC";
    return doc;
}

std::vector<NamedBlob> build_context(PlannerRole role, const ContextOptions& options) {
    std::vector<NamedBlob> out;
    if (options.skill_doc) out.push_back({"skill", skill_document()});
    if (options.reference_doc) {
        const bool test_facing = role == PlannerRole::gen_tests || role == PlannerRole::refine ||
                                 role == PlannerRole::classify || role == PlannerRole::group;
        out.push_back({"reference",
                       test_facing ? api_reference_document() : skill_document()});
    }
    int i = 0;
    for (const auto& [prompt, program] : options.demos) {
        NamedBlob blob;
        blob.name = "demo-" + std::to_string(i++);
        blob.content = "Prompt: " + prompt + "\nProgram:\n" + program;
        out.push_back(std::move(blob));
    }
    return out;
}

}  // namespace cadbench
