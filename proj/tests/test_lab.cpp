#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "snowflake/lab.hpp"

using namespace snowflake;

TEST_CASE("dehn exponent fit for m=2, n=1") {
  SnowTree t = SnowTree::build({});
  FreeAut phi = FreeAut::phi();
  ExponentReport rep = dehn_fit(t, 1, phi, parse_word("x0"), 12);
  double expected = 2.0 * std::log(1.0 + std::sqrt(2.0)) / std::log(2.0);
  CHECK(rep.target == doctest::Approx(expected).epsilon(1e-12));
  CHECK(rep.target == doctest::Approx(2.5431).epsilon(1e-4));
  CHECK(rep.hypothesis_ok);
  CHECK(!rep.low_confidence);
  CHECK(rep.residual < 0.05);
}

TEST_CASE("dehn exponent fit for m=3, n=2") {
  SnowTree t = SnowTree::build({{0, 1}});
  FreeAut phi = FreeAut::phi();
  ExponentReport rep = dehn_fit(t, 2, phi, parse_word("x0"), 12);
  double expected = 4.0 * std::log(1.0 + std::sqrt(2.0)) / std::log(3.0);
  CHECK(rep.target == doctest::Approx(expected).epsilon(1e-12));
  CHECK(rep.target == doctest::Approx(3.2090).epsilon(1e-4));
  CHECK(rep.residual < 0.05);
}

TEST_CASE("degenerate fit is flagged") {
  SnowTree t = SnowTree::build({});
  ExponentReport rep = dehn_fit(t, 1, FreeAut::phi(), parse_word("x0"), 1);
  CHECK(rep.low_confidence);
  CHECK(rep.slopes.size() == 1);
}

TEST_CASE("exponent report serializes") {
  SnowTree t = SnowTree::build({});
  ExponentReport rep = dehn_fit(t, 1, FreeAut::phi(), parse_word("x0"), 3);
  CHECK(rep.to_json().find("\"alpha\"") != std::string::npos);
  CHECK(rep.to_csv().find("depth,perimeter,area,slope") == 0);
}

TEST_CASE("distortion witness words") {
  SnowTree t = SnowTree::build({});
  FreeAut phi = FreeAut::phi();
  auto [w0, g0] = distortion_witness(t, 1, phi, parse_word("x0"), 0);
  CHECK(w0 == parse_word("a0"));
  CHECK(g0 == parse_word("a0"));

  auto [w1, g1] = distortion_witness(t, 1, phi, parse_word("x0"), 1);
  CHECK(w1 == parse_word("r2 A0 R2 r1 A0 R1"));
  CHECK(g1 == parse_word("a0 b0 a0"));
  Presentation p = presentation_S(t, 1, phi);
  NormalFormEngine eng(p);
  CHECK(eng.equal(w1, g1));

  // |W_d| = m (|W_{d-1}| + 2)
  BigInt expect(1);
  for (int d = 1; d <= 4; ++d) {
    auto [wd, gd] = distortion_witness(t, 1, phi, parse_word("x0"), d);
    expect = BigInt(t.m()) * (expect + 2);
    CHECK(BigInt(wd.size()) == expect);
  }
}

TEST_CASE("distortion family report") {
  SnowTree t = SnowTree::build({});
  FreeAut phi = FreeAut::phi();
  DistortionReport rep = distortion_family(t, 1, phi, parse_word("x0"), 10, 3);
  CHECK(rep.certified_depth >= 3);
  CHECK(rep.band <= 10.0);
  CHECK(rep.ratios.size() == 11);
  for (double r : rep.ratios) CHECK(r > 0.0);
  // the witness length recurrence holds exactly in the report
  for (std::size_t d = 1; d < rep.witness_lengths.size(); ++d)
    CHECK(rep.witness_lengths[d] == BigInt(t.m()) * (rep.witness_lengths[d - 1] + 2));
  CHECK(rep.to_json().find("\"band\"") != std::string::npos);
  CHECK(rep.to_csv().find("depth,") == 0);
}

TEST_CASE("balancing fuzz finds no violations") {
  for (auto edges : std::vector<std::vector<std::pair<int, int>>>{{}, {{0, 1}}}) {
    SnowTree t = SnowTree::build(edges);
    BalancingFuzzReport rep = balancing_fuzz(t, 150, 97);
    CHECK(rep.samples == 150);
    CHECK(rep.engine_mismatches == 0);
    CHECK(rep.violations == 0);
  }
}

TEST_CASE("embedding fuzz") {
  SnowTree t = SnowTree::build({});
  EmbeddingFuzzReport rep = embedding_fuzz(t, 1, FreeAut::phi(), 60, 1234);
  CHECK(rep.relator_images_trivial);
  CHECK(rep.triviality_mismatches == 0);
  CHECK(rep.untwist_failures == 0);
  CHECK(rep.words_checked == 60);
  CHECK(rep.to_json().find("\"ok\"") != std::string::npos);
}

TEST_CASE("constants report") {
  SnowTree t = SnowTree::build({});
  ConstantsReport rep = constants_report(t, 1, FreeAut::phi(), 20, 10, 2024);
  CHECK(rep.k0_observed >= 1);
  CHECK(rep.k3_observed > 0.0);
  CHECK(rep.k4_observed > 0.0);
  CHECK(rep.k5_observed == doctest::Approx(1.5));  // 3*|T| / (m(m-1)) for one vertex
  CHECK(rep.k6_observed > 0.0);
  CHECK(rep.c_observed > 0.0);
  CHECK(rep.c_observed <= 1.0);
  CHECK(rep.lambda_inv_stretch > 1.0);
}

TEST_CASE("random reduced words are reduced") {
  std::mt19937_64 rng(1);
  std::vector<Letter> alpha{Letter(Kind::a, 0), Letter(Kind::b, 0)};
  for (int i = 0; i < 100; ++i) {
    Word w = random_reduced_word(alpha, static_cast<int>(rng() % 30), rng);
    CHECK(reduce(w) == w);
  }
}
