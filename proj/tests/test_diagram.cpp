#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <sstream>

#include "snowflake/builders.hpp"
#include "snowflake/diagram.hpp"
#include "snowflake/groups.hpp"

using namespace snowflake;

TEST_CASE("single face polygon") {
  Presentation p = presentation_V();
  Diagram d = Diagram::polygon(parse_word("A0 X0 x1"), FaceType::triangle);
  CHECK(d.boundary_word() == parse_word("A0 X0 x1"));
  CHECK(d.area() == 1);
  ValidationReport rep = d.validate(p);
  CHECK(rep.ok());
  CHECK(rep.vertices == 3);
  CHECK(rep.edges == 3);
  CHECK(rep.faces == 1);
}

TEST_CASE("a face with a non-relator label is reported") {
  Presentation p = presentation_V();
  Diagram d = Diagram::polygon(parse_word("x0 x0 x0"), FaceType::triangle);
  ValidationReport rep = d.validate(p);
  CHECK(!rep.ok());
}

TEST_CASE("empty diagram") {
  Diagram d;
  CHECK(d.boundary_word().empty());
  CHECK(d.area() == 0);
  CHECK(d.validate(presentation_V()).ok());
}

TEST_CASE("gluing two triangles along an edge") {
  Presentation p = presentation_V();
  // a0 = x0^-1 x1 and a0 = x1 x0^-1 share the a0 side
  Diagram d1 = Diagram::polygon(parse_word("A0 X0 x1"), FaceType::triangle);
  Diagram d2 = Diagram::polygon(parse_word("a0 x0 X1"), FaceType::triangle);
  // d1 boundary: A0 X0 x1; arc [0,1) reads A0. d2 boundary: a0 x0 X1; arc [0,1) reads a0.
  Diagram glued = glue(d1, 0, 1, d2, 0);
  CHECK(glued.validate(p).ok());
  CHECK(glued.area() == 2);
  // boundary: X0 x1 then x0 X1 from the second triangle
  CHECK(glued.boundary_word() == parse_word("X0 x1 x0 X1"));
  CHECK(glued.vertex_count() == 4);
  CHECK(glued.live_edge_count() == 5);
}

TEST_CASE("glue adds areas") {
  Presentation p = presentation_V();
  Diagram q1 = Diagram::polygon(parse_word("x0 y1 X0 Y1"), FaceType::quadrilateral);
  Diagram q2 = Diagram::polygon(parse_word("y1 x0 Y1 X0"), FaceType::quadrilateral);
  BigInt before = q1.area() + q2.area();
  Diagram glued = glue(q1, 0, 2, q2, 2);
  CHECK(glued.area() == before);
  CHECK(glued.validate(p).ok());
}

TEST_CASE("label mismatch is rejected") {
  Diagram d1 = Diagram::polygon(parse_word("A0 X0 x1"), FaceType::triangle);
  Diagram d2 = Diagram::polygon(parse_word("a0 x0 X1"), FaceType::triangle);
  CHECK_THROWS_AS(glue(d1, 1, 1, d2, 0), LabelMismatchError);
}

TEST_CASE("basepoint rotation only rotates the boundary word") {
  Diagram d = Diagram::polygon(parse_word("A0 X0 x1"), FaceType::triangle);
  BigInt area_before = d.area();
  d.set_basepoint(1);
  CHECK(d.boundary_word() == parse_word("X0 x1 A0"));
  CHECK(d.area() == area_before);
}

namespace {

// Canonical signature for label-preserving isomorphism with matched
// basepoints: breadth-first renumbering over (next, twin) from the
// basepoint dart.
std::string signature(const Diagram& d) {
  auto outer = d.outer_cycle();
  if (outer.empty()) return "";
  std::map<int, int> id;
  std::vector<int> order{outer[0]};
  id[outer[0]] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    int at = order[head];
    for (int nxt : {d.dart(at).next, d.dart(at).twin}) {
      if (nxt < 0 || id.count(nxt)) continue;
      id[nxt] = static_cast<int>(order.size());
      order.push_back(nxt);
    }
  }
  std::ostringstream os;
  for (int dart : order) {
    os << d.dart(dart).label.str() << ':' << (d.dart(dart).next >= 0 ? id[d.dart(dart).next] : -1)
       << ':' << id[d.dart(dart).twin] << ':' << (d.dart(dart).face >= 0 ? 1 : 0) << ';';
  }
  return os.str();
}

}  // namespace

TEST_CASE("glue is associative up to isomorphism") {
  // three commutator squares glued corner to corner, in both orders
  Word q = parse_word("x0 y1 X0 Y1");
  Diagram a = Diagram::polygon(q, FaceType::quadrilateral);
  Diagram b = Diagram::polygon(q, FaceType::quadrilateral);
  Diagram c = Diagram::polygon(q, FaceType::quadrilateral);

  // left association: (a + b) + c, chaining along the y edges
  Diagram left = glue(a, 1, 1, b, 3);  // a's y1 edge to b's Y1 edge
  left = glue(left, 4, 1, c, 3);       // b's y1 edge to c's Y1 edge
  // right association: a + (b + c)
  Diagram bc = glue(b, 1, 1, c, 3);
  Diagram right = glue(a, 1, 1, bc, 1);  // b's Y1 sits at position 1 of bc

  CHECK(left.area() == right.area());
  REQUIRE(left.boundary_word().size() == right.boundary_word().size());
  // isomorphic for some alignment of the basepoints
  std::string want = signature(left);
  bool isomorphic = false;
  for (std::size_t r = 0; r < right.boundary_word().size(); ++r) {
    right.set_basepoint(r == 0 ? 0 : 1);
    isomorphic = isomorphic || signature(right) == want;
  }
  CHECK(isomorphic);
}

TEST_CASE("json round trip") {
  SnowTree t = SnowTree::build({});
  Diagram d = canonical_diagram(parse_word("x0 y0 x0"), t);
  Diagram back = Diagram::from_json(d.to_json());
  CHECK(back.boundary_word() == d.boundary_word());
  CHECK(back.area() == d.area());
  CHECK(back.validate(presentation_VT(t)).ok());
}

TEST_CASE("svg and dot renderings produce output") {
  SnowTree t = SnowTree::build({});
  Diagram d = canonical_diagram(parse_word("x0"), t);
  CHECK(d.to_svg().find("<svg") == 0);
  CHECK(d.to_dot().find("digraph") == 0);
}
