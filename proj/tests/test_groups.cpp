#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "snowflake/groups.hpp"
#include "snowflake/normalform.hpp"

using namespace snowflake;

TEST_CASE("presentation of V") {
  Presentation p = presentation_V();
  CHECK(p.relators.size() == 18);
  int triangles = 0, quads = 0;
  for (const Relator& r : p.relators) {
    if (r.type == FaceType::triangle) ++triangles;
    if (r.type == FaceType::quadrilateral) ++quads;
  }
  CHECK(triangles == 12);
  CHECK(quads == 6);
  CHECK(p.generators.size() == 12);
  CHECK(p.standard_generators.size() == 12);
  CHECK(p.matches_relator(parse_word("A0 X0 x1")));      // a0 = x0^-1 x1
  CHECK(p.matches_relator(parse_word("x0 y1 X0 Y1")));   // commutator cell
  CHECK(!p.matches_relator(parse_word("x0 y1 x0 Y1")));
  CHECK(!p.matches_relator(parse_word("a0 b0")));
}

TEST_CASE("area convention") {
  CHECK(face_area(FaceType::triangle) == 1);
  CHECK(face_area(FaceType::quadrilateral) == 2);
  CHECK(face_area(FaceType::r_cell) == 1);
  CHECK(face_area(FaceType::s_cell) == 1);
}

TEST_CASE("presentation of V_T for two vertices") {
  SnowTree t = SnowTree::build({{0, 1}});
  Presentation p = presentation_VT(t);
  CHECK(p.relators.size() == 36);
  // aliasing: a5 is the same cell as a1, reversed
  CHECK(p.canonicalize(parse_word("a5")) == parse_word("A1"));
  // standard generators exclude the internal pair
  CHECK(p.is_standard(parse_word("a0")[0]));
  CHECK(!p.is_standard(parse_word("a1")[0]));
  CHECK(!p.is_standard(parse_word("a5")[0]));
  CHECK(p.is_standard(parse_word("x5")[0]));
  // relators at the second vertex are indexed into its triple
  CHECK(p.matches_relator(parse_word("A3 X3 x4")));
  CHECK_THROWS_AS(p.validate_word(parse_word("x9")), AlphabetError);
  CHECK_THROWS_AS(p.validate_word(parse_word("a1"), true), AlphabetError);
}

TEST_CASE("presentation of S") {
  SnowTree t = SnowTree::build({});
  Presentation p = presentation_S(t, 1, FreeAut::phi());
  CHECK(p.kind == GroupKind::S_Tn);
  int stables = 0;
  for (const auto& [kind, idx] : p.generators)
    if (kind == Kind::r) ++stables;
  CHECK(stables == t.m());
  CHECK(p.relators.size() == 18 + 2 * static_cast<std::size_t>(t.m()));
  // r1 a_nu0 r1^-1 = phi(a_nu1) = a1 b1 a1
  CHECK(p.matches_relator(parse_word("r1 a0 R1 A1 B1 A1")));
  CHECK(p.matches_relator(parse_word("r2 b0 R2 A2")));  // phi(y) = x

  Presentation p2 = presentation_S(t, 2, FreeAut::phi());
  // |phi^2(x)| = 7: the a-relator word has length 3 + 7
  bool found = false;
  for (const Relator& r : p2.relators)
    if (r.type == FaceType::r_cell && r.word.size() == 10) found = true;
  CHECK(found);
}

TEST_CASE("presentations of G in both coordinate systems") {
  SnowTree t = SnowTree::build({});
  FreeAut phi = FreeAut::phi();
  Presentation gs = presentation_G(t, 1, phi, StableCoords::s);
  Presentation gu = presentation_G(t, 1, phi, StableCoords::u);
  CHECK(gs.matches_relator(parse_word("s1 a0 S1 A1")));
  CHECK(gs.matches_relator(parse_word("s1 c0 S1 C1")));
  CHECK(gu.matches_relator(parse_word("u1 a0 U1 A1 B1 A1")));
  CHECK(gu.matches_relator(parse_word("u1 c0 U1 C1")));
  // vertex relator: t0 x0 t0^-1 = x0 y0 x0
  CHECK(gs.matches_relator(parse_word("t0 x0 T0 X0 Y0 X0")));
}

TEST_CASE("every relator is trivial under its own engine") {
  SnowTree t = SnowTree::build({{0, 1}});
  FreeAut phi = FreeAut::phi();
  std::vector<Presentation> ps;
  ps.push_back(presentation_VT(t));
  ps.push_back(presentation_S(t, 1, phi));
  ps.push_back(presentation_WT(t, 1, phi));
  ps.push_back(presentation_G(t, 1, phi, StableCoords::s));
  ps.push_back(presentation_G(t, 1, phi, StableCoords::u));
  for (const Presentation& p : ps) {
    NormalFormEngine eng(p);
    for (const Relator& r : p.relators) CHECK(eng.is_trivial(r.word));
  }
}

TEST_CASE("untwist round-trips on generators") {
  SnowTree t = SnowTree::build({});
  FreeAut phi = FreeAut::phi();
  Presentation gs = presentation_G(t, 1, phi, StableCoords::s);
  UntwistResult ut = untwist(gs);
  CHECK(ut.s_to_u.apply(parse_word("s1")) == parse_word("C1 u1"));
  CHECK(ut.u_to_s.apply(parse_word("u1")) == parse_word("c1 s1"));
  // identity on V_T generators
  CHECK(ut.s_to_u.apply(parse_word("x0 a2")) == parse_word("x0 a2"));

  NormalFormEngine eng_s(gs);
  NormalFormEngine eng_u(ut.u_coords);
  // each s-relator maps to a trivial word in u coordinates
  for (const Relator& r : gs.relators) CHECK(eng_u.is_trivial(ut.s_to_u.apply(r.word)));
  for (const Relator& r : ut.u_coords.relators) CHECK(eng_s.is_trivial(ut.u_to_s.apply(r.word)));
  // round trip is the identity up to relations
  for (const char* g : {"s1", "s2", "a0", "c0", "x1", "t2"}) {
    Word w = parse_word(g);
    Word round = ut.u_to_s.apply(ut.s_to_u.apply(w));
    CHECK(eng_s.equal(round, w));
  }
  CHECK_THROWS_AS(untwist(ut.u_coords), std::invalid_argument);
}

TEST_CASE("embedding map sends relators to trivial words") {
  SnowTree t = SnowTree::build({});
  FreeAut phi = FreeAut::phi();
  Presentation s_pres = presentation_S(t, 1, phi);
  Presentation gu = presentation_G(t, 1, phi, StableCoords::u);
  Presentation gs = presentation_G(t, 1, phi, StableCoords::s);
  GroupMap emb_u = embedding_map(s_pres, gu);
  GroupMap emb_s = embedding_map(s_pres, gs);
  CHECK(emb_u.apply(parse_word("a0")) == parse_word("a0"));
  CHECK(emb_u.apply(parse_word("r1")) == parse_word("u1"));
  CHECK(emb_s.apply(parse_word("r1")) == parse_word("c1 s1"));
  NormalFormEngine eng_u(gu), eng_s(gs);
  for (const Relator& r : s_pres.relators) {
    CHECK(eng_u.is_trivial(emb_u.apply(r.word)));
    CHECK(eng_s.is_trivial(emb_s.apply(r.word)));
  }
}

TEST_CASE("json and relator text exports") {
  SnowTree t = SnowTree::build({});
  Presentation p = presentation_S(t, 1, FreeAut::phi());
  std::string js = p.to_json();
  CHECK(js.find("\"generators\"") != std::string::npos);
  CHECK(js.find("\"relators\"") != std::string::npos);
  std::string txt = p.to_relator_text();
  CHECK(txt.find("# generators:") == 0);
}
