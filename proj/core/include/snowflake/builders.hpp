#pragma once

#include <optional>
#include <vector>

#include "snowflake/aut.hpp"
#include "snowflake/diagram.hpp"
#include "snowflake/groups.hpp"
#include "snowflake/treegeom.hpp"

// Constructors for the diagram families: triangle diagrams, canonical and
// doubled canonical diagrams, and the recursive snowflake family, together
// with exact closed-form size reports that work at any depth.

namespace snowflake {

struct NotPalindromicError : std::runtime_error {
  NotPalindromicError() : std::runtime_error("word must be palindromic") {}
};

/// The triangular diagram filling w(a_i, b_i) = w(x_i, y_i)^-1 w(x_j, y_j)
/// (j the next corner of the triple), of area |w|^2. Boundary from the
/// basepoint: w(x_i, y_i) . w(a_i, b_i) . w(x_j, y_j)^-1.
Diagram triangle_diagram(const Word& w, int corner_subgroup, const SnowTree& tree);

/// Canonical diagram of a palindromic reduced word; area 3|T||w|^2,
/// boundary w(a_nu0, b_nu0) w(a_nu1, b_nu1) ... w(a_num, b_num).
Diagram canonical_diagram(const Word& w, const SnowTree& tree);

/// Two canonical diagrams (of w and w^-1) joined along their nu_0 sides;
/// area 6|T||w|^2.
Diagram doubled_canonical(const Word& w, const SnowTree& tree);

/// Exact size data of the snowflake diagram family.
struct SnowflakeReport {
  int depth = 0;
  BigInt perimeter{0};
  QuadNum weighted_perimeter;
  BigInt area{0};
  BigInt r_count{0};
  BigInt boundary_subwords{0};              // number of level-0 subword copies
  std::vector<BigInt> subwords_per_level;   // S_k for k = 0..depth
  std::vector<BigInt> image_lengths;        // |phi^{kn}(w)| for k = 0..depth
  bool materialized = false;
  bool too_large = false;
};

struct SnowflakeResult {
  std::optional<Diagram> diagram;
  SnowflakeReport report;
};

/// Closed-form sizes via the transition matrix; exact at any depth.
SnowflakeReport snowflake_sizes(const Word& w, int depth, const SnowTree& tree, int n,
                                const FreeAut& phi);

/// Builds the snowflake diagram of the given depth. `w` must be monotone
/// palindromic. When materialize is set and the projected area exceeds
/// `face_budget`, no diagram is built and the report is flagged too_large.
SnowflakeResult snowflake_diagram(const Word& w, int depth, const SnowTree& tree, int n,
                          const FreeAut& phi, bool materialize,
                          const BigInt& face_budget = BigInt(1000000));

/// The word phi^{kn}(w) materialized (over abstract {x, y}).
Word snowflake_level_word(const Word& w, int k, int n, const FreeAut& phi);

}  // namespace snowflake
