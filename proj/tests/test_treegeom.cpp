#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "snowflake/groups.hpp"
#include "snowflake/treegeom.hpp"

using namespace snowflake;

namespace {

// Exhaustive zero-or-two check of a scheme against every relator cell.
bool scheme_valid(const CorridorScheme& s, const Presentation& p) {
  for (const Relator& rel : p.relators) {
    int hits = 0;
    for (const Letter& l : rel.word.letters())
      if (s.contains(l)) ++hits;
    if (hits != 0 && hits != 2) return false;
  }
  return true;
}

std::set<std::pair<Kind, std::uint32_t>> labels_of(std::initializer_list<const char*> names) {
  std::set<std::pair<Kind, std::uint32_t>> out;
  for (const char* name : names) {
    Word w = parse_word(name);
    out.insert({w[0].kind, w[0].index});
  }
  return out;
}

}  // namespace

TEST_CASE("single vertex tree") {
  SnowTree t = SnowTree::build({});
  CHECK(t.size() == 1);
  CHECK(t.m() == 2);
  CHECK(t.nu() == std::vector<int>{0, 1, 2});
  CHECK(t.is_peripheral(0));
  CHECK(t.is_peripheral(1));
  CHECK(t.is_peripheral(2));
}

TEST_CASE("two vertex tree pairs A1 with A5") {
  SnowTree t = SnowTree::build({{0, 1}});
  CHECK(t.m() == 3);
  REQUIRE(t.edges().size() == 1);
  CHECK(t.edges()[0].side_u == 1);
  CHECK(t.edges()[0].side_v == 5);
  CHECK(t.nu() == std::vector<int>{0, 3, 4, 2});
  std::set<int> peripherals;
  for (int j = 0; j < 6; ++j)
    if (t.is_peripheral(j)) peripherals.insert(j);
  CHECK(peripherals == std::set<int>{0, 2, 3, 4});
}

TEST_CASE("path of six vertices reproduces the documented pairings") {
  SnowTree t = SnowTree::build({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  CHECK(t.m() == 7);
  std::set<std::pair<int, int>> pairings;
  for (const TreeEdge& e : t.edges()) pairings.insert({e.side_u, e.side_v});
  CHECK(pairings.count({1, 5}) == 1);   // A1 = A5
  CHECK(pairings.count({4, 8}) == 1);   // A4 = A8
  CHECK(t.nu().size() == 8);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(SnowTree::build({{0, 1}, {1, 2}, {2, 0}}, 3), NotATreeError);
  CHECK_THROWS_AS(SnowTree::build({{0, 1}}, 3), NotATreeError);
  CHECK_THROWS_AS(SnowTree::build({{0, 1}, {0, 2}, {0, 3}, {0, 4}}), ValenceExceededError);
  CHECK_THROWS_AS(SnowTree::build({{0, 0}}, 1), NotATreeError);
}

TEST_CASE("json round trip") {
  SnowTree t = SnowTree::from_json(R"({"edges": [[0,1],[1,2]]})");
  CHECK(t.size() == 3);
  SnowTree t2 = SnowTree::from_json(t.to_json());
  CHECK(t2.nu() == t.nu());
  SnowTree single = SnowTree::from_json(R"({"vertices": 1, "edges": []})");
  CHECK(single.size() == 1);
}

TEST_CASE("canonical letters alias internal sides") {
  SnowTree t = SnowTree::build({{0, 1}});
  // A1 = A5 bar: a5 rewrites to a1^-1
  CHECK(t.canonical_letter(parse_word("a5")[0]) == parse_word("A1")[0]);
  CHECK(t.canonical_letter(parse_word("A5")[0]) == parse_word("a1")[0]);
  CHECK(t.canonical_letter(parse_word("a1")[0]) == parse_word("a1")[0]);
  CHECK(t.canonical_letter(parse_word("a0")[0]) == parse_word("a0")[0]);
  CHECK(t.canonical_letter(parse_word("x5")[0]) == parse_word("x5")[0]);
  // c letters identify without inversion
  CHECK(t.canonical_letter(parse_word("c5")[0]) == parse_word("c1")[0]);
}

TEST_CASE("extended tree has interior valence three") {
  SnowTree t = SnowTree::build({{0, 1}, {1, 2}});
  ExtTree ext(t);
  CHECK(ext.num_nodes() == 3 + 5);
  for (int v = 0; v < t.size(); ++v)
    CHECK(ext.adjacency()[static_cast<std::size_t>(v)].size() == 3);
  for (int rank = 0; rank <= t.m(); ++rank)
    CHECK(ext.adjacency()[static_cast<std::size_t>(ext.leaf_node(rank))].size() == 1);
}

TEST_CASE("scheme for the documented two-triangle segment") {
  SnowTree t = SnowTree::build({{0, 1}});
  ExtTree ext(t);
  // leaves: nu = (0, 3, 4, 2) => rank of A0 is 0, rank of A4 is 2
  Segment seg = make_segment(ext, 0, 2);
  CorridorScheme s = scheme_for_segment(ext, seg);
  CHECK(s.labels == labels_of({"a0", "b0", "x1", "y1", "a1", "b1", "a5", "b5", "x5", "y5",
                               "a4", "b4"}));
  CHECK(scheme_valid(s, presentation_VT(t)));
}

TEST_CASE("single vertex schemes satisfy zero-or-two exhaustively") {
  SnowTree t = SnowTree::build({});
  ExtTree ext(t);
  Presentation p = presentation_V();
  Segment seg = make_segment(ext, 0, 1);
  CorridorScheme s = scheme_for_segment(ext, seg);
  CHECK(s.labels == labels_of({"a0", "b0", "x1", "y1", "a1", "b1"}));
  for (const Segment& sg : all_segments(ext)) CHECK(scheme_valid(scheme_for_segment(ext, sg), p));
}

TEST_CASE("every scheme of small trees satisfies zero-or-two") {
  for (auto edges : std::vector<std::vector<std::pair<int, int>>>{
           {}, {{0, 1}}, {{0, 1}, {1, 2}}, {{0, 1}, {0, 2}}}) {
    SnowTree t = SnowTree::build(edges);
    ExtTree ext(t);
    Presentation p = presentation_VT(t);
    for (const Segment& sg : all_segments(ext)) {
      CorridorScheme s = scheme_for_segment(ext, sg);
      CHECK(scheme_valid(s, p));
      // splits into an x/a part and a y/b part
      CorridorScheme sx = s, sy = s;
      sx.labels.clear();
      sy.labels.clear();
      for (const auto& [kind, idx] : s.labels) {
        if (kind == Kind::x || kind == Kind::a) sx.labels.insert({kind, idx});
        else sy.labels.insert({kind, idx});
      }
      CHECK(scheme_valid(sx, p));
      CHECK(scheme_valid(sy, p));
    }
  }
}

TEST_CASE("disjoint segments have disjoint schemes") {
  SnowTree t = SnowTree::build({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  ExtTree ext(t);
  auto segs = all_segments(ext);
  for (const Segment& a : segs) {
    for (const Segment& b : segs) {
      std::set<int> ea(a.edge_path.begin(), a.edge_path.end());
      bool shares = false;
      for (int e : b.edge_path) shares = shares || ea.count(e);
      if (shares || (a == b)) continue;
      CorridorScheme sa = scheme_for_segment(ext, a);
      CorridorScheme sb = scheme_for_segment(ext, b);
      for (const auto& lab : sa.labels) CHECK(sb.labels.count(lab) == 0);
    }
  }
}

TEST_CASE("orientation bits are consistent") {
  SnowTree t = SnowTree::build({{0, 1}, {1, 2}});
  ExtTree ext(t);
  for (const Segment& sg : all_segments(ext)) {
    CorridorScheme s = scheme_for_segment(ext, sg);
    for (const auto& lab : s.labels) {
      REQUIRE(s.orientation.count(lab) == 1);
      CHECK((s.orientation.at(lab) == 1 || s.orientation.at(lab) == -1));
    }
  }
}

TEST_CASE("crossing pair for a peripheral edge diverges at the parent") {
  SnowTree t = SnowTree::build({});
  ExtTree ext(t);
  // hat edge 0 is the leaf edge at rank 0 (no tree edges)
  auto [se, sp] = crossing_pair_for_edge(ext, 0);
  CHECK(se.leaf_i == 0);
  CHECK(sp.leaf_i == 0);
  CHECK(se.leaf_j != sp.leaf_j);
}

TEST_CASE("crossing pair for an interior edge is linked") {
  SnowTree t = SnowTree::build({{0, 1}});
  ExtTree ext(t);
  // hat edge 0 is the tree edge
  auto [se, sp] = crossing_pair_for_edge(ext, 0);
  // both contain the tree edge, intersection exactly it, endpoints linked
  auto pos = [&](int rank) { return rank; };
  int a1 = pos(se.leaf_i), a2 = pos(se.leaf_j);
  int b1 = pos(sp.leaf_i), b2 = pos(sp.leaf_j);
  auto between = [&](int lo, int hi, int p) {
    if (lo < hi) return lo < p && p < hi;
    return p > lo || p < hi;
  };
  CHECK(between(a1, a2, b1) != between(a1, a2, b2));
}

TEST_CASE("one-factor schemes are valid over their subcomplex") {
  SnowTree t = SnowTree::build({});
  CorridorScheme s0 = scheme_s0(t, 0, 0);
  CorridorScheme s1 = scheme_s1(t, 0, 0);
  CHECK(s0.labels == labels_of({"x0", "y0", "a0", "b0"}));
  CHECK(s1.labels == labels_of({"x1", "y1", "a0", "b0"}));
  // zero-or-two over the six cells spanned by factors 0 and 1
  Presentation p = presentation_V();
  Presentation sub = p;
  sub.relators.clear();
  for (const Relator& rel : p.relators) {
    bool in01 = true;
    for (const Letter& l : rel.word.letters()) in01 = in01 && l.index <= 1;
    if (in01) sub.relators.push_back(rel);
  }
  CHECK(sub.relators.size() == 6);
  CHECK(scheme_valid(s0, sub));
  CHECK(scheme_valid(s1, sub));
}

TEST_CASE("no cell is a corridor cell for all four crossing schemes") {
  // distinct hat edges e, f: the pair (sigma_e, sigma'_e) never shares a
  // corridor cell with the pair (sigma_f, sigma'_f)
  for (auto edges : std::vector<std::vector<std::pair<int, int>>>{{}, {{0, 1}}, {{0, 1}, {1, 2}}}) {
    SnowTree t = SnowTree::build(edges);
    ExtTree ext(t);
    Presentation p = presentation_VT(t);
    auto corridor_cells = [&](const CorridorScheme& s) {
      std::set<std::size_t> out;
      for (std::size_t r = 0; r < p.relators.size(); ++r) {
        int hits = 0;
        for (const Letter& l : p.relators[r].word.letters())
          if (s.contains(l)) ++hits;
        if (hits == 2) out.insert(r);
      }
      return out;
    };
    for (std::size_t e = 0; e < ext.edges().size(); ++e) {
      for (std::size_t f = e + 1; f < ext.edges().size(); ++f) {
        auto [se, sep] = crossing_pair_for_edge(ext, static_cast<int>(e));
        auto [sf, sfp] = crossing_pair_for_edge(ext, static_cast<int>(f));
        auto a = corridor_cells(scheme_for_segment(ext, se));
        auto b = corridor_cells(scheme_for_segment(ext, sep));
        auto c = corridor_cells(scheme_for_segment(ext, sf));
        auto d = corridor_cells(scheme_for_segment(ext, sfp));
        for (std::size_t cell : a) {
          bool all = b.count(cell) && c.count(cell) && d.count(cell);
          CHECK(!all);
        }
      }
    }
  }
}

TEST_CASE("dot exports are nonempty") {
  SnowTree t = SnowTree::build({{0, 1}});
  CHECK(t.dot_tree().find("graph") == 0);
  ExtTree ext(t);
  CHECK(ext.dot().find("graph") == 0);
  Segment seg = make_segment(ext, 0, 2);
  std::string poly = dot_polygon(ext, &seg);
  CHECK(poly.find("graph D") == 0);
  CHECK(poly.find("color=red") != std::string::npos);
  CHECK(poly.find("A1=A5") != std::string::npos);
}
