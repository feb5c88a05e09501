#pragma once

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "snowflake/groups.hpp"

// Decidable word problems for every group of the artifact: direct-product
// projection in the vertex groups, syllable reduction over the tree
// amalgam, free-by-cyclic normal forms, and Britton reduction for the
// multiple HNN extensions.

namespace snowflake {

struct WrongVertexError : std::runtime_error {
  WrongVertexError() : std::runtime_error("peripheral index not in this vertex's triple") {}
};

/// Normal form t^k u of an element of G = F x|_phi^n <t>.
struct GNormalForm {
  long k = 0;
  Word u;  // reduced word over abstract {x, y}

  bool is_identity() const { return k == 0 && u.empty(); }
  bool operator==(const GNormalForm& o) const { return k == o.k && u == o.u; }
};

/// One coordinate of a vertex element: a reduced free word (V case) or a
/// free-by-cyclic normal form (W case).
struct CoordElem {
  bool is_g = false;
  long k = 0;
  Word u;  // reduced, abstract {x, y}

  bool is_identity() const { return k == 0 && u.empty(); }
  bool operator==(const CoordElem& o) const = default;
};

/// Element of one vertex group, as a coordinate triple over the local
/// corners (positions 0, 1, 2 of the vertex's index triple).
struct VertexElement {
  int vertex = 0;
  std::array<CoordElem, 3> coords;

  bool is_identity() const {
    return coords[0].is_identity() && coords[1].is_identity() && coords[2].is_identity();
  }
  bool operator==(const VertexElement& o) const = default;
};

/// Fully reduced alternating sequence of vertex elements along T.
struct AmalgamForm {
  std::vector<VertexElement> syllables;

  bool empty() const { return syllables.empty(); }
  std::size_t size() const { return syllables.size(); }
};

/// Britton form: v_0 r^e1 v_1 ... r^ek v_k with no pinch left.
struct BrittonForm {
  std::vector<Word> segments;   // size = stables.size() + 1
  std::vector<Letter> stables;

  bool pinch_free() const { return true; }  // by construction
  std::size_t stable_count() const { return stables.size(); }
  Word to_word() const;
};

/// Normal form in G = F x|_{phi^n} <t> for a word over {x, y, t}
/// (letter indices are ignored; the word lives in one abstract copy of G).
GNormalForm g_normalize(const Word& w, int n, const FreeAut& phi);

/// The word-problem engine for one presentation. Holds cached powers of phi
/// and the tree bookkeeping; all methods are const and the object is safe to
/// share between threads.
class NormalFormEngine {
 public:
  explicit NormalFormEngine(const Presentation& p);

  const Presentation& presentation() const { return *pres_; }

  /// Vertex element of a single generator letter of a vertex group.
  VertexElement letter_element(const Letter& l) const;

  /// Membership of a vertex element in the peripheral subgroup with global
  /// index `subgroup`: the opposite coordinate must vanish and the first
  /// coordinate must be the tau-image of the second. Returns the reduced
  /// word over a_i, b_i (prefixed by a c_i power in the W case).
  std::optional<Word> peripheral_membership(const VertexElement& v, int subgroup) const;

  /// Reduced amalgam form of a word over the standard generators of V_T
  /// (or W_T); empty iff the word is trivial.
  AmalgamForm vt_normalize(const Word& w) const;

  /// The reduced peripheral representative of w if w lies in the subgroup
  /// with global index `subgroup`.
  std::optional<Word> reduced_peripheral_word(const Word& w, int subgroup) const;

  /// Britton reduction over the stable letters of S_{T,n} or G_{T,n};
  /// for V_T/W_T words the form has a single segment.
  BrittonForm britton_normalize(const Word& w) const;

  /// True iff w represents the identity of the presented group.
  bool is_trivial(const Word& w) const;

  /// Elements are equal iff u v^-1 is trivial.
  bool equal(const Word& u, const Word& v) const;

  /// phi^(n*k) as an automorphism (cached).
  const FreeAut& phi_power(long k) const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
  const Presentation* pres_;

  std::optional<CoordElem> peripheral_param(const VertexElement& v, int subgroup) const;
  std::optional<CoordElem> segment_peripheral_param(const Word& w, int subgroup) const;
  VertexElement translate(const VertexElement& v, int from_subgroup) const;
  std::vector<std::pair<int, VertexElement>> reach_set(const VertexElement& v) const;
  Word stable_conjugate(const CoordElem& param, int out_subgroup, int direction) const;
};

/// Free-function spellings of the engine operations.
AmalgamForm vt_normalize(const Word& w, const Presentation& p);
std::optional<Word> reduced_peripheral_word(const Word& w, int subgroup, const Presentation& p);
BrittonForm britton_normalize(const Word& w, const Presentation& p);
bool is_trivial(const Word& w, const Presentation& p);

}  // namespace snowflake
