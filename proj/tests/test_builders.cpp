#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "snowflake/builders.hpp"
#include "snowflake/normalform.hpp"

using namespace snowflake;

namespace {

// No two faces sharing an edge may be mirror images of each other.
bool diagram_is_reduced(const Diagram& d) {
  for (std::size_t f = 0; f < d.face_count(); ++f) {
    for (int dart : d.face_cycle(static_cast<int>(f))) {
      int twin = d.dart(dart).twin;
      int g = d.dart(twin).face;
      if (g < 0 || g == static_cast<int>(f)) continue;
      auto cyc1 = d.face_cycle(static_cast<int>(f));
      auto cyc2 = d.face_cycle(g);
      // rotate so cyc1 starts at dart and cyc2 at twin
      auto rot = [](std::vector<int> v, int at) {
        auto it = std::find(v.begin(), v.end(), at);
        std::rotate(v.begin(), it, v.end());
        return v;
      };
      cyc1 = rot(cyc1, dart);
      cyc2 = rot(cyc2, twin);
      if (cyc1.size() != cyc2.size()) continue;
      bool mirror = true;
      std::size_t k = cyc1.size();
      for (std::size_t j = 1; j < k && mirror; ++j) {
        Letter l1 = d.dart(cyc1[k - j]).label;
        Letter l2 = d.dart(cyc2[j]).label;
        mirror = l2.is_inverse_of(l1);
      }
      if (mirror) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("triangle diagram of a single letter") {
  SnowTree t = SnowTree::build({});
  Diagram d = triangle_diagram(parse_word("x0"), 0, t);
  CHECK(d.area() == 1);
  CHECK(d.boundary_word() == parse_word("x0 a0 X1"));
  CHECK(d.validate(presentation_VT(t)).ok());

  Diagram dy = triangle_diagram(parse_word("Y0"), 1, t);
  CHECK(dy.area() == 1);
  CHECK(dy.boundary_word() == parse_word("Y1 B1 y2"));
  CHECK(dy.validate(presentation_VT(t)).ok());
}

TEST_CASE("triangle diagram area is the square of the length") {
  SnowTree t = SnowTree::build({});
  Presentation p = presentation_VT(t);
  for (const char* text : {"x0 y0 x0", "y0 x0 y0", "x0 x0 x0", "x0 Y0 x0", "X0 y0 y0 X0"}) {
    Word w = parse_word(text);
    for (int corner = 0; corner < 3; ++corner) {
      Diagram d = triangle_diagram(w, corner, t);
      CHECK(d.area() == BigInt(w.size() * w.size()));
      CHECK(d.validate(p).ok());
    }
  }
  CHECK(triangle_diagram(Word(), 0, t).area() == 0);
  CHECK_THROWS_AS(triangle_diagram(parse_word("x0 y0"), 0, t), NotPalindromicError);
}

TEST_CASE("canonical diagram formulas") {
  SnowTree t1 = SnowTree::build({});
  Diagram c1 = canonical_diagram(parse_word("x0"), t1);
  CHECK(c1.area() == 3);
  CHECK(c1.boundary_word() == parse_word("a0 a1 a2"));
  CHECK(c1.validate(presentation_VT(t1)).ok());

  Diagram c3 = canonical_diagram(parse_word("x0 y0 x0"), t1);
  CHECK(c3.area() == 27);
  CHECK(c3.boundary_word() ==
        parse_word("a0 b0 a0 a1 b1 a1 a2 b2 a2"));
  CHECK(c3.validate(presentation_VT(t1)).ok());

  SnowTree t2 = SnowTree::build({{0, 1}});
  Diagram c2 = canonical_diagram(parse_word("x0"), t2);
  CHECK(c2.area() == 6);
  CHECK(c2.boundary_word() == parse_word("a0 a3 a4 a2"));
  CHECK(c2.validate(presentation_VT(t2)).ok());
  CHECK(c2.boundary_length() == 4);
}

TEST_CASE("canonical diagrams over larger trees and words") {
  std::vector<SnowTree> trees;
  trees.push_back(SnowTree::build({}));
  trees.push_back(SnowTree::build({{0, 1}}));
  trees.push_back(SnowTree::build({{0, 1}, {1, 2}}));
  for (const SnowTree& t : trees) {
    Presentation p = presentation_VT(t);
    for (const char* text : {"x0", "y0", "x0 y0 x0", "Y0 X0 Y0", "x0 x0"}) {
      Word w = parse_word(text);
      if (!is_palindromic(w)) continue;
      Diagram c = canonical_diagram(w, t);
      CHECK(c.area() == BigInt(3 * t.size()) * BigInt(w.size() * w.size()));
      CHECK(c.validate(p).ok());
      CHECK(diagram_is_reduced(c));
    }
  }
}

TEST_CASE("doubled canonical diagrams") {
  SnowTree t = SnowTree::build({});
  Diagram d = doubled_canonical(parse_word("x0"), t);
  CHECK(d.area() == 6);
  CHECK(d.boundary_word() == parse_word("a1 a2 A1 A2"));
  CHECK(d.validate(presentation_VT(t)).ok());

  for (const char* text : {"x0", "x0 y0 x0", "y0 y0"}) {
    Word w = parse_word(text);
    Diagram c = canonical_diagram(w, t);
    Diagram dd = doubled_canonical(w, t);
    CHECK(dd.area() == c.area() * 2);
  }

  Diagram big = doubled_canonical(parse_word("x0 y0 x0"), t);
  CHECK(big.area() == 54);
}

TEST_CASE("canonical area formula is exhaustive over short monotone palindromes") {
  std::vector<SnowTree> trees;
  trees.push_back(SnowTree::build({}));
  trees.push_back(SnowTree::build({{0, 1}}));
  trees.push_back(SnowTree::build({{0, 1}, {1, 2}}));
  for (const SnowTree& t : trees) {
    for (int len = 1; len <= 8; ++len) {
      int half = (len + 1) / 2;
      for (int sign : {1, -1}) {
        for (int mask = 0; mask < (1 << half); ++mask) {
          std::vector<Letter> ls(static_cast<std::size_t>(len));
          for (int k = 0; k < half; ++k) {
            Kind kind = (mask >> k) & 1 ? Kind::y : Kind::x;
            ls[static_cast<std::size_t>(k)] = Letter(kind, 0, sign);
            ls[static_cast<std::size_t>(len - 1 - k)] = Letter(kind, 0, sign);
          }
          Word w(std::move(ls), true);
          CHECK(canonical_diagram(w, t).area() == BigInt(3 * t.size()) * BigInt(len * len));
        }
      }
    }
  }
}

TEST_CASE("snowflake sizes at depth zero match the doubled canonical") {
  SnowTree t = SnowTree::build({});
  FreeAut phi = FreeAut::phi();
  SnowflakeReport rep = snowflake_sizes(parse_word("x0"), 0, t, 1, phi);
  CHECK(rep.area == 6);
  CHECK(rep.perimeter == 4);
  CHECK(rep.r_count == 0);
}

TEST_CASE("snowflake at depth one has area seventy") {
  SnowTree t = SnowTree::build({});
  FreeAut phi = FreeAut::phi();
  SnowflakeResult res = snowflake_diagram(parse_word("x0"), 1, t, 1, phi, true);
  REQUIRE(res.diagram.has_value());
  CHECK(res.report.area == 70);
  CHECK(res.diagram->area() == 70);
  CHECK(res.report.perimeter == 16);
  CHECK(res.diagram->boundary_length() == 16);
  CHECK(res.report.r_count == 8);
  CHECK(res.diagram->validate(presentation_S(t, 1, phi)).ok());
  CHECK(diagram_is_reduced(*res.diagram));
}

TEST_CASE("snowflake sizes equal measured diagrams") {
  FreeAut phi = FreeAut::phi();
  for (auto edges : std::vector<std::vector<std::pair<int, int>>>{{}, {{0, 1}}}) {
    SnowTree t = SnowTree::build(edges);
    for (int n = 1; n <= 2; ++n) {
      Presentation p = presentation_S(t, n, phi);
      for (int d = 0; d <= 2; ++d) {
        SnowflakeResult res = snowflake_diagram(parse_word("x0"), d, t, n, phi, true);
        REQUIRE(res.diagram.has_value());
        CHECK(res.report.area == res.diagram->area());
        CHECK(res.report.perimeter == BigInt(res.diagram->boundary_length()));
        BigInt rcount = 0;
        for (int dart : res.diagram->outer_cycle())
          if (res.diagram->dart(dart).label.kind == Kind::r) rcount += 1;
        CHECK(res.report.r_count == rcount);
        CHECK(res.diagram->validate(p).ok());
      }
    }
  }
}

TEST_CASE("snowflake boundary is made of subword copies and stable letters") {
  SnowTree t = SnowTree::build({{0, 1}});
  FreeAut phi = FreeAut::phi();
  SnowflakeResult res = snowflake_diagram(parse_word("x0"), 2, t, 1, phi, true);
  REQUIRE(res.diagram.has_value());
  const auto& nu = t.nu();
  std::set<std::uint32_t> allowed;
  for (int i = 1; i <= t.m(); ++i) allowed.insert(static_cast<std::uint32_t>(nu[i]));
  for (int dart : res.diagram->outer_cycle()) {
    const Letter& l = res.diagram->dart(dart).label;
    if (l.kind == Kind::r) continue;
    CHECK((l.kind == Kind::a || l.kind == Kind::b));
    CHECK(allowed.count(l.index) == 1);
  }
}

TEST_CASE("snowflake growth rate approaches the squared eigenvalue") {
  SnowTree t = SnowTree::build({});
  FreeAut phi = FreeAut::phi();
  SnowflakeReport a = snowflake_sizes(parse_word("x0"), 11, t, 1, phi);
  SnowflakeReport b = snowflake_sizes(parse_word("x0"), 12, t, 1, phi);
  double ratio = static_cast<double>(b.area) / static_cast<double>(a.area);
  double lambda2 = (1.0 + std::sqrt(2.0)) * (1.0 + std::sqrt(2.0));
  CHECK(std::abs(ratio - lambda2) < 0.05);
}

TEST_CASE("perimeter lower bound from the stable letter count") {
  SnowTree t = SnowTree::build({{0, 1}});
  FreeAut phi = FreeAut::phi();
  double m = static_cast<double>(t.m());
  for (int d = 1; d <= 12; ++d) {
    SnowflakeReport rep = snowflake_sizes(parse_word("x0"), d, t, 1, phi);
    CHECK(static_cast<double>(rep.perimeter) >= 4.0 * std::pow(m, d - 1));
  }
}

TEST_CASE("materialization budget") {
  SnowTree t = SnowTree::build({});
  FreeAut phi = FreeAut::phi();
  SnowflakeResult res = snowflake_diagram(parse_word("x0"), 8, t, 1, phi, true, BigInt(1000));
  CHECK(!res.diagram.has_value());
  CHECK(res.report.too_large);
  CHECK(res.report.area > 1000);

  CHECK_THROWS_AS(snowflake_sizes(parse_word("x0 Y0 x0"), 1, t, 1, phi), NotMonotoneError);
  CHECK_THROWS_AS(snowflake_sizes(parse_word("x0 y0"), 1, t, 1, phi), NotPalindromicError);
}

TEST_CASE("level words") {
  FreeAut phi = FreeAut::phi();
  CHECK(snowflake_level_word(parse_word("x0"), 0, 1, phi) == parse_word("x0"));
  CHECK(snowflake_level_word(parse_word("x0"), 1, 1, phi) == parse_word("x0 y0 x0"));
  CHECK(snowflake_level_word(parse_word("x0"), 1, 2, phi) ==
        parse_word("x0 y0 x0 x0 x0 y0 x0"));
}
