#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "snowflake/aut.hpp"
#include "snowflake/treegeom.hpp"
#include "snowflake/words.hpp"

// Finite presentations (equivalently, presentation 2-complexes with an area
// weight per face type) for V, V_T, S_{T,n}, W_T and G_{T,n} in both stable
// letter coordinate systems, plus the untwisting move and the embedding map.

namespace snowflake {

enum class FaceType : std::uint8_t { triangle, quadrilateral, r_cell, s_cell, u_cell, g_cell };

/// Area convention: triangles 1, quadrilaterals 2, stable-letter cells 1.
int face_area(FaceType t);

const char* face_type_name(FaceType t);
FaceType face_type_from_name(const std::string& name);

struct Relator {
  Word word;       // cyclically reduced, letters canonicalized
  FaceType type = FaceType::triangle;
};

enum class GroupKind : std::uint8_t { V_T, S_Tn, W_T, G_s, G_u };

struct Presentation {
  GroupKind kind = GroupKind::V_T;
  SnowTree tree;
  int n = 1;                 // exponent of phi in the monodromy
  FreeAut phi;
  std::vector<Relator> relators;
  std::set<std::pair<Kind, std::uint32_t>> generators;          // all labels
  std::set<std::pair<Kind, std::uint32_t>> standard_generators;  // internal a/b excluded

  bool has_generator(const Letter& l) const {
    return generators.count({l.kind, l.index}) > 0;
  }
  bool is_standard(const Letter& l) const {
    return standard_generators.count({l.kind, l.index}) > 0;
  }
  /// Throws AlphabetError unless every letter of w is a generator label.
  void validate_word(const Word& w, bool standard_only = false) const;

  /// Rewrites internal a/b/c labels to the canonical label of their 1-cell.
  Word canonicalize(const Word& w) const;

  /// True iff w equals one of the relators up to cyclic rotation and
  /// inversion (letters compared after canonicalization).
  bool matches_relator(const Word& w, FaceType* type_out = nullptr) const;

  std::string to_json() const;
  std::string to_relator_text() const;
};

/// The single vertex group V = F_0 x F_1 x F_2: 12 generators, 18 relators.
Presentation presentation_V();

/// V_T: one copy of the V relators per tree vertex, with internal peripheral
/// generators aliased in pairs across tree edges.
Presentation presentation_VT(const SnowTree& tree);

/// S_{T,n}: V_T plus stable letters r_1..r_m conjugating the nu_0 peripheral
/// subgroup to the nu_i one via phi^n.
Presentation presentation_S(const SnowTree& tree, int n, const FreeAut& phi);

/// W_T: copies of G x G x G (free-by-cyclic vertex factors) amalgamated
/// along the peripheral B subgroups.
Presentation presentation_WT(const SnowTree& tree, int n, const FreeAut& phi);

enum class StableCoords : std::uint8_t { s, u };

/// G_{T,n} over W_T, with stable letters s_i (untwisted monodromy) or u_i
/// (monodromy phi^n x id).
Presentation presentation_G(const SnowTree& tree, int n, const FreeAut& phi, StableCoords coords);

/// A homomorphism between presented groups, given on generators; letters
/// without an explicit image map to themselves.
struct GroupMap {
  GroupKind source_kind = GroupKind::V_T;
  GroupKind target_kind = GroupKind::V_T;
  std::map<std::pair<Kind, std::uint32_t>, Word> images;

  Word apply(const Word& w) const;
};

struct UntwistResult {
  Presentation u_coords;
  GroupMap s_to_u;  // s_i -> c_{nu_i}^-1 u_i
  GroupMap u_to_s;  // u_i -> c_{nu_i} s_i
};

/// Tietze move between the two stable letter coordinate systems.
/// `p` must be a presentation in s coordinates.
UntwistResult untwist(const Presentation& p);

/// The embedding S_{T,n} -> G_{T,n}: identity on V_T generators and
/// r_i -> u_i (u coordinates) or r_i -> c_{nu_i} s_i (s coordinates).
GroupMap embedding_map(const Presentation& s_pres, const Presentation& g_pres);

/// phi^n(x or y) substituted into the peripheral alphabet (a_j, b_j).
Word twisted_image(const FreeAut& phi, int n, Kind kind, int sign, int subgroup);

}  // namespace snowflake
