#pragma once

#include <optional>
#include <vector>

#include "snowflake/aut.hpp"
#include "snowflake/diagram.hpp"
#include "snowflake/treegeom.hpp"

// Corridor analysis: tracing corridors of a scheme through a diagram,
// orientability consequences, crossing regions and area certificates, and
// folded stable-letter corridors with their seam forests.

namespace snowflake {

struct InvalidVerticesError : std::runtime_error {
  InvalidVerticesError() : std::runtime_error("vertices do not satisfy the nearly-above relation") {}
};

struct Corridor {
  std::vector<int> cells;  // face ids, in dual-arc order
  bool annulus = false;
  int end_dart_a = -1;     // outer darts joined by a band corridor
  int end_dart_b = -1;
};

/// Partition of the corridor cells of `s` into corridors.
std::vector<Corridor> trace(const Diagram& d, const CorridorScheme& s);

/// Checks the two orientability consequences: along each corridor the
/// transverse directions agree cellwise, and a band corridor joining two
/// same-label boundary edges reads them with opposite boundary orientations.
bool orientation_check(const Diagram& d, const CorridorScheme& s,
                       const std::vector<Corridor>& corridors);

struct CrossingCount {
  BigInt squares{0};
  BigInt triangles{0};
  BigInt area() const { return 2 * squares + triangles; }
};

/// e-crossing squares and triangles: intersections of sigma_e corridors
/// with sigma'_e corridors.
CrossingCount crossing_regions(const Diagram& d, const ExtTree& ext, int hat_edge);

/// Sum of e-crossing areas over all edges of T-hat: a lower bound for the
/// area of any diagram with this boundary word; equals the diagram area on
/// canonical and doubled canonical instances.
BigInt lower_bound_certificate(const Diagram& d, const ExtTree& ext);

/// A folded stable-letter corridor: bottom reads a reduced word at nu_0,
/// top reads the reduced phi^n image at nu_i, interior seam edges plus the
/// r-edges form the seam forest.
class FoldedCorridor {
 public:
  enum class EdgeClass { bottom, top, rside, seam };

  struct Edge {
    int from = 0, to = 0;
    Letter label;
    EdgeClass cls = EdgeClass::top;
    bool alive = true;
  };

  int stable_index = 1;
  std::vector<Edge> edges;
  std::vector<std::vector<std::pair<int, int>>> cell_boundary;  // (edge, dir)
  std::vector<int> bottom_vertices;  // resolved ids, left to right (L+1)
  std::vector<int> bottom_edge_ids;
  std::vector<int> top_vertices;     // resolved ids along the folded top
  std::vector<std::pair<int, int>> top_refs;  // (edge, dir) along the top
  Word bottom_word;  // over a_nu0, b_nu0
  Word top_word;     // over a_nui, b_nui (reduced)
  int fold_count = 0;

  int find(int v) const;
  int vertex_count() const { return static_cast<int>(parent_.size()); }

  /// Seam forest membership: edge ids of all r-edges and interior seams.
  std::vector<int> seam_edges() const;
  /// Component id per resolved vertex (-1 if not on the seam forest).
  std::vector<int> seam_components() const;

  struct SeamChecks {
    bool every_component_tree = true;
    bool one_top_vertex_each = true;
    bool leaves_on_top_or_bottom = true;
    int component_count = 0;
    bool ok() const { return every_component_tree && one_top_vertex_each && leaves_on_top_or_bottom; }
  };
  SeamChecks check_seams() const;

  /// Max bottom-edge span below a single top vertex (bounded cancellation).
  int bounded_cancellation_span() const;

  /// Weighted perimeter of the largest corridor cell.
  QuadNum max_cell_perimeter() const;

  std::vector<int> parent_;  // union-find storage

  friend FoldedCorridor fold_corridor(const Word&, int, const SnowTree&, int, const FreeAut&);
};

/// Builds the folded corridor with the given reduced bottom word (over
/// a/b letters or abstract {x, y}); folding order is leftmost-innermost.
FoldedCorridor fold_corridor(const Word& w, int stable_index, const SnowTree& tree, int n,
                             const FreeAut& phi);

struct NearlyAbove {
  int bottom_index = 0;          // index into bottom_vertices
  QuadNum witness_length;        // path avoiding bottom edges
  std::vector<int> witness_path; // vertex ids
};

/// All bottom vertices the given top vertex (index into top_vertices) is
/// nearly above, with shortest witness paths avoiding bottom edges.
std::vector<NearlyAbove> nearly_above(const FoldedCorridor& fc, int top_index);

struct SegmentBound {
  QuadNum observed;   // weighted length of [q1, q2] along the bottom
  QuadNum predicted;  // weighted length of reduce(phi^-n(u)) for the top label u
  QuadNum defect;     // observed - predicted
};

/// Lengths of matched top/bottom segments; p1, p2 index top_vertices and
/// q1, q2 index bottom_vertices with p_j nearly above q_j.
SegmentBound segment_length_bound(const FoldedCorridor& fc, int p1, int p2, int q1, int q2,
                                  int n, const FreeAut& phi);

/// Empirically measured corridor constants (fixed-seed sampling protocol)
/// plus analogues of the derived constants measured on the certified
/// least-area families.
struct ConstantsReport {
  int k0_observed = 0;
  QuadNum k1_observed;  // (k0 + 1) * max cell perimeter
  QuadNum k2_observed;  // max |defect| over sampled matched segments
  int sample_size = 0;
  int max_word_length = 0;
  bool k0_stable = true;  // no growth over the trailing half of the sample
  double k3_observed = 0.0;
  double k4_observed = 0.0;
  double k5_observed = 0.0;
  double k6_observed = 0.0;
  double c_observed = 0.0;       // min |phi^k(v)| / (lambda^k |v|)
  double lambda_inv_stretch = 0.0;  // max weighted stretch of phi^-n
  double d_observed = 0.0;
};

ConstantsReport measure_corridor_constants(const SnowTree& tree, int n, const FreeAut& phi,
                                           int max_len, int samples_per_len,
                                           unsigned long seed);

/// The balancing inequality for a pair (w, z) representing the same element
/// of the nu_0 peripheral subgroup: for every i = 1..m,
/// |z| <= |w|_{nu_i} + |w|_{nu_0} + |w|_x + |w|_y, plain and weighted.
struct BalanceCheck {
  bool ok = true;
  int failing_index = -1;
};
BalanceCheck balancing_check(const Word& w, const Word& z, const SnowTree& tree);

/// SVG of the diagram with the scheme's dual arcs drawn through the
/// corridor cells.
std::string corridor_overlay_svg(const Diagram& d, const CorridorScheme& s);

}  // namespace snowflake
