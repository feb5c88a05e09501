#pragma once

#include <random>
#include <string>
#include <vector>

#include "snowflake/builders.hpp"
#include "snowflake/corridor.hpp"
#include "snowflake/normalform.hpp"

// Experiment drivers: the isoperimetric exponent fit from exact snowflake
// data, the distortion witness family, and the balancing / embedding fuzz
// suites.

namespace snowflake {

struct ExponentReport {
  int m = 2;
  int n = 1;
  QuadNum lambda;        // exact when available
  double lambda_f = 0.0;
  double alpha = 0.0;    // n log_m(lambda)
  double target = 0.0;   // 2 alpha
  bool hypothesis_ok = true;   // alpha >= 1
  bool low_confidence = false; // fewer than two slopes
  std::vector<BigInt> perimeters;  // P_d, d = 0..d_max
  std::vector<BigInt> areas;       // A_d
  std::vector<double> slopes;      // s_d = log(A_{d+1}/A_d) / log(P_{d+1}/P_d)
  double estimate = 0.0;
  double residual = 0.0;

  std::string to_json() const;
  std::string to_csv() const;
};

/// Fits the isoperimetric exponent from the exact snowflake size data; the
/// diagrams are least-area, so the areas are true filling areas.
ExponentReport dehn_fit(const SnowTree& tree, int n, const FreeAut& phi, const Word& w,
                        int d_max);

/// The witness pair (W_d, g_d): W_d is the short ambient word
/// (prod_i r_i W_{d-1} r_i^-1)^-1 and g_d the peripheral word
/// phi^{dn}(w)(a_nu0, b_nu0) it represents.
std::pair<Word, Word> distortion_witness(const SnowTree& tree, int n, const FreeAut& phi,
                                         const Word& w, int d);

struct DistortionReport {
  double alpha = 0.0;
  std::vector<BigInt> witness_lengths;    // |W_d|
  std::vector<QuadNum> witness_weighted;  // <<W_d>>
  std::vector<QuadNum> element_weighted;  // <<g_d>>
  std::vector<double> ratios;             // <<g_d>> / <<W_d>>^alpha
  double band = 1.0;                      // max ratio / min ratio over d >= 1
  int certified_depth = 0;                // Britton-verified prefix of the family

  std::string to_json() const;
  std::string to_csv() const;
};

DistortionReport distortion_family(const SnowTree& tree, int n, const FreeAut& phi,
                                   const Word& w, int d_max, int certify_depth);

struct BalancingFuzzReport {
  int samples = 0;
  int violations = 0;
  int engine_mismatches = 0;  // scrambles whose element changed (must be 0)
  bool ok() const { return violations == 0 && engine_mismatches == 0; }

  std::string to_json() const;
};

/// Scrambles reduced peripheral words into equivalent standard-generator
/// words and asserts the balancing inequality on every sample.
BalancingFuzzReport balancing_fuzz(const SnowTree& tree, int samples, unsigned long seed,
                                   int scramble_depth = 20, int insertions = 10);

struct EmbeddingFuzzReport {
  bool relator_images_trivial = true;
  int words_checked = 0;
  int triviality_mismatches = 0;
  int untwist_checked = 0;
  int untwist_failures = 0;
  bool ok() const {
    return relator_images_trivial && triviality_mismatches == 0 && untwist_failures == 0;
  }

  std::string to_json() const;
};

/// Random words through the embedding in both stable-letter coordinate
/// systems: triviality must transfer exactly, and the untwist dictionaries
/// must round-trip.
EmbeddingFuzzReport embedding_fuzz(const SnowTree& tree, int n, const FreeAut& phi, int samples,
                                   unsigned long seed);

/// Corridor constants plus measured analogues of the derived constants,
/// taken on the certified least-area families.
ConstantsReport constants_report(const SnowTree& tree, int n, const FreeAut& phi, int max_len,
                                 int samples_per_len, unsigned long seed);

/// Random reduced word over an alphabet of letters, never creating an
/// adjacent inverse pair (deterministic in the rng).
Word random_reduced_word(const std::vector<Letter>& alphabet, int length,
                         std::mt19937_64& rng);

}  // namespace snowflake
