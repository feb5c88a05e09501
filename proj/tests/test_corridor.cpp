#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "snowflake/builders.hpp"
#include "snowflake/corridor.hpp"
#include "snowflake/lab.hpp"

using namespace snowflake;

TEST_CASE("sigma corridors of canonical diagrams") {
  for (auto edges : std::vector<std::vector<std::pair<int, int>>>{{}, {{0, 1}}}) {
    SnowTree t = SnowTree::build(edges);
    ExtTree ext(t);
    for (const char* text : {"x0", "x0 y0 x0"}) {
      Word w = parse_word(text);
      Diagram c = canonical_diagram(w, t);
      for (const Segment& seg : all_segments(ext)) {
        CorridorScheme s = scheme_for_segment(ext, seg);
        auto corridors = trace(c, s);
        std::size_t bands = 0;
        for (const Corridor& cor : corridors) {
          CHECK(!cor.annulus);
          ++bands;
        }
        CHECK(bands == w.size());
        CHECK(orientation_check(c, s, corridors));
      }
    }
  }
}

TEST_CASE("sigma corridors of doubled diagrams join mirror copies") {
  SnowTree t = SnowTree::build({});
  ExtTree ext(t);
  Word w = parse_word("x0 y0 x0");
  Diagram d = doubled_canonical(w, t);
  for (const Segment& seg : all_segments(ext)) {
    CorridorScheme s = scheme_for_segment(ext, seg);
    auto corridors = trace(d, s);
    bool through_nu0 = seg.leaf_i == 0 || seg.leaf_j == 0;
    std::size_t expect = through_nu0 ? w.size() : 2 * w.size();
    std::size_t bands = 0;
    for (const Corridor& cor : corridors) {
      CHECK(!cor.annulus);
      ++bands;
    }
    CHECK(bands == expect);
    CHECK(orientation_check(d, s, corridors));
  }
}

TEST_CASE("corridors partition corridor cells disjointly") {
  SnowTree t = SnowTree::build({{0, 1}});
  ExtTree ext(t);
  Diagram c = canonical_diagram(parse_word("x0 y0 x0"), t);
  for (const Segment& seg : all_segments(ext)) {
    CorridorScheme s = scheme_for_segment(ext, seg);
    std::set<int> seen;
    for (const Corridor& cor : trace(c, s))
      for (int f : cor.cells) CHECK(seen.insert(f).second);
  }
}

TEST_CASE("empty scheme yields no corridors") {
  SnowTree t = SnowTree::build({});
  Diagram c = canonical_diagram(parse_word("x0"), t);
  CorridorScheme s = scheme_for_stable(1);
  CHECK(trace(c, s).empty());
}

TEST_CASE("orientation violations are detected") {
  // A fake square reading x1 y0 x1 Y0 (not a relator): both x1 edges are
  // traversed the same way, which an oriented scheme forbids.
  Diagram fake = Diagram::polygon(parse_word("x1 y0 x1 Y0"), FaceType::quadrilateral);
  SnowTree t = SnowTree::build({});
  ExtTree ext(t);
  Segment seg = make_segment(ext, 0, 1);
  CorridorScheme s = scheme_for_segment(ext, seg);
  auto corridors = trace(fake, s);
  CHECK(!orientation_check(fake, s, corridors));
}

TEST_CASE("crossing regions in canonical diagrams") {
  SnowTree t = SnowTree::build({{0, 1}});
  ExtTree ext(t);
  Word w = parse_word("x0 y0 x0");
  BigInt ell(w.size());
  Diagram c = canonical_diagram(w, t);
  for (std::size_t e = 0; e < ext.edges().size(); ++e) {
    CrossingCount cc = crossing_regions(c, ext, static_cast<int>(e));
    if (ext.edges()[e].peripheral) {
      CHECK(cc.triangles == ell);
      CHECK(cc.squares == ell * (ell - 1) / 2);
      CHECK(cc.area() == ell * ell);
    } else {
      CHECK(cc.triangles == 0);
      CHECK(cc.squares == ell * ell);
      CHECK(cc.area() == 2 * ell * ell);
    }
  }
}

TEST_CASE("least-area certificates match construction areas") {
  for (auto edges : std::vector<std::vector<std::pair<int, int>>>{{}, {{0, 1}}}) {
    SnowTree t = SnowTree::build(edges);
    ExtTree ext(t);
    for (const char* text : {"x0", "y0 x0 y0", "x0 x0"}) {
      Word w = parse_word(text);
      Diagram c = canonical_diagram(w, t);
      CHECK(lower_bound_certificate(c, ext) == c.area());
      Diagram d = doubled_canonical(w, t);
      CHECK(lower_bound_certificate(d, ext) == d.area());
    }
  }
}

TEST_CASE("snowflake diagrams have no annulus r-corridors") {
  SnowTree t = SnowTree::build({});
  FreeAut phi = FreeAut::phi();
  SnowflakeResult res = snowflake_diagram(parse_word("x0"), 2, t, 1, phi, true);
  REQUIRE(res.diagram.has_value());
  for (int i = 1; i <= t.m(); ++i) {
    CorridorScheme s = scheme_for_stable(i);
    for (const Corridor& c : trace(*res.diagram, s)) CHECK(!c.annulus);
  }
}

TEST_CASE("folded corridor of a single letter") {
  SnowTree t = SnowTree::build({});
  FreeAut phi = FreeAut::phi();
  FoldedCorridor fc = fold_corridor(parse_word("a0"), 1, t, 1, phi);
  CHECK(fc.cell_boundary.size() == 1);
  CHECK(fc.top_word == parse_word("a1 b1 a1"));
  CHECK(fc.fold_count == 0);
  CHECK(fc.check_seams().ok());
}

TEST_CASE("folded corridor with one fold") {
  SnowTree t = SnowTree::build({});
  FreeAut phi = FreeAut::phi();
  FoldedCorridor fc = fold_corridor(parse_word("a0 B0"), 1, t, 1, phi);
  CHECK(fc.top_word == parse_word("a1 b1"));
  CHECK(fc.fold_count == 1);
  CHECK(fc.check_seams().ok());
}

TEST_CASE("empty corridor") {
  SnowTree t = SnowTree::build({});
  FoldedCorridor fc = fold_corridor(Word(), 1, t, 1, FreeAut::phi());
  CHECK(fc.top_word.empty());
  CHECK(fc.bottom_word.empty());
}

TEST_CASE("folded tops equal the automorphism images") {
  SnowTree t = SnowTree::build({{0, 1}});
  FreeAut phi = FreeAut::phi();
  const auto& nu = t.nu();
  std::mt19937_64 rng(5150);
  std::vector<Letter> xy{Letter(Kind::x, 0), Letter(Kind::y, 0)};
  for (int n = 1; n <= 2; ++n) {
    FreeAut phin = power(phi, n);
    for (int trial = 0; trial < 100; ++trial) {
      Word w = random_reduced_word(xy, 1 + static_cast<int>(rng() % 50), rng);
      int stable = 1 + static_cast<int>(rng() % static_cast<unsigned long>(t.m()));
      FoldedCorridor fc = fold_corridor(w, stable, t, n, phi);
      Word expected = substitute_xy(apply(phin, w),
                                    Letter(Kind::a, static_cast<std::uint32_t>(
                                                        nu[static_cast<std::size_t>(stable)])),
                                    Letter(Kind::b, static_cast<std::uint32_t>(
                                                        nu[static_cast<std::size_t>(stable)])));
      CHECK(fc.top_word == expected);
      CHECK(fc.check_seams().ok());
    }
  }
}

TEST_CASE("nearly above basics on a one-cell corridor") {
  SnowTree t = SnowTree::build({});
  FreeAut phi = FreeAut::phi();
  FoldedCorridor fc = fold_corridor(parse_word("a0"), 1, t, 1, phi);
  // top endpoints are nearly above the respective bottom endpoints
  auto left = nearly_above(fc, 0);
  bool found_left = false;
  for (const auto& na : left) found_left = found_left || na.bottom_index == 0;
  CHECK(found_left);
  auto right = nearly_above(fc, static_cast<int>(fc.top_vertices.size()) - 1);
  bool found_right = false;
  for (const auto& na : right) found_right = found_right || na.bottom_index == 1;
  CHECK(found_right);
}

TEST_CASE("every top vertex is nearly above some bottom vertex") {
  SnowTree t = SnowTree::build({});
  FreeAut phi = FreeAut::phi();
  std::mt19937_64 rng(31);
  std::vector<Letter> xy{Letter(Kind::x, 0), Letter(Kind::y, 0)};
  for (int trial = 0; trial < 40; ++trial) {
    Word w = random_reduced_word(xy, 1 + static_cast<int>(rng() % 30), rng);
    FoldedCorridor fc = fold_corridor(w, 1, t, 1, phi);
    for (std::size_t p = 0; p < fc.top_vertices.size(); ++p)
      CHECK(!nearly_above(fc, static_cast<int>(p)).empty());
  }
}

TEST_CASE("segment length bound on the full corridor is exact") {
  SnowTree t = SnowTree::build({});
  FreeAut phi = FreeAut::phi();
  Word w = parse_word("a0 b0 A0");
  FoldedCorridor fc = fold_corridor(w, 1, t, 1, phi);
  SegmentBound b = segment_length_bound(fc, 0, static_cast<int>(fc.top_vertices.size()) - 1, 0,
                                        static_cast<int>(fc.bottom_vertices.size()) - 1, 1, phi);
  CHECK(b.defect == QuadNum(0));
  CHECK_THROWS_AS(segment_length_bound(fc, 1, 0, 0, 0, 1, phi), InvalidVerticesError);
}

TEST_CASE("corridor constants stabilize") {
  SnowTree t = SnowTree::build({});
  FreeAut phi = FreeAut::phi();
  ConstantsReport rep = measure_corridor_constants(t, 1, phi, 30, 20, 17);
  CHECK(rep.k0_observed >= 1);
  CHECK(rep.k0_stable);
  CHECK(rep.k1_observed > QuadNum(0));
  CHECK(rep.sample_size == 30 * 20);
}

TEST_CASE("balancing inequality checker") {
  SnowTree t = SnowTree::build({});
  // z trivial: inequality holds against anything
  CHECK(balancing_check(parse_word("x0"), Word(), t).ok);
  // the standard-word family gives |w| = m |z|
  Word w = parse_word("x0 y0 x0");
  Word z = substitute_xy(w, Letter(Kind::a, 0), Letter(Kind::b, 0));
  Word w1 = substitute_xy(w, Letter(Kind::a, 1), Letter(Kind::b, 1));
  Word w2 = substitute_xy(w, Letter(Kind::a, 2), Letter(Kind::b, 2));
  Word rep = (w1 * w2).inverse();
  CHECK(balancing_check(rep, z, t).ok);
  CHECK(rep.size() == static_cast<std::size_t>(t.m()) * z.size());
  // mechanical negative control: too few letters elsewhere
  CHECK(!balancing_check(parse_word("a1"), parse_word("a0 b0"), t).ok);
}
