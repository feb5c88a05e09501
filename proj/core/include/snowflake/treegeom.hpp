#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "snowflake/words.hpp"

// Combinatorial geometry underlying the amalgam: the tree T with index
// triples, the triangulated (|T|+2)-gon D, the extended tree T-hat, maximal
// leaf-to-leaf segments, and the corridor schemes they induce.

namespace snowflake {

struct NotATreeError : std::runtime_error {
  explicit NotATreeError(const std::string& what) : std::runtime_error(what) {}
};
struct ValenceExceededError : std::runtime_error {
  ValenceExceededError() : std::runtime_error("tree vertex valence exceeds 3") {}
};

/// Tree vertex index triples are (3v, 3v+1, 3v+2). A "side" of the triangle
/// for vertex v is identified with the subgroup index of its first corner:
/// side k (k = 0, 1, 2) joins corners 3v+k and 3v+((k+1) mod 3) and carries
/// the subgroup with index 3v+k.
struct TreeEdge {
  int u = 0, v = 0;        // tree vertices
  int side_u = 0, side_v = 0;  // global subgroup indices consumed at u and v
};

struct SideInfo {
  int vertex = 0;        // tree vertex owning this side
  int corner = 0;        // local corner position 0, 1, 2
  bool peripheral = true;
  int tree_edge = -1;    // edge id if internal
  int partner = -1;      // subgroup index glued to this one (internal only)
  int leaf = -1;         // leaf rank in the peripheral order (peripheral only)
};

class SnowTree {
 public:
  /// Builds the tree from an undirected edge list; vertex count defaults to
  /// max endpoint + 1 (or 1 for an empty list). Peripheral subgroups are
  /// assigned to edges deterministically (parent side S2, children in input
  /// order at S1 then S0, the root additionally using S2) and the boundary
  /// order nu is the boundary walk of D starting at the least peripheral
  /// index.
  static SnowTree build(const std::vector<std::pair<int, int>>& edges, int num_vertices = -1);

  static SnowTree from_json(const std::string& json_text);
  std::string to_json() const;

  int size() const { return num_vertices_; }                 // |T|
  int m() const { return num_vertices_ + 1; }                // stable letter count
  int num_subgroup_indices() const { return 3 * num_vertices_; }
  const std::vector<TreeEdge>& edges() const { return edges_; }
  const std::vector<int>& nu() const { return nu_; }         // nu_0 .. nu_m
  const SideInfo& side(int subgroup_index) const { return sides_.at(static_cast<std::size_t>(subgroup_index)); }

  /// Global subgroup index of side k at vertex v.
  static int side_index(int v, int k) { return 3 * v + k; }
  /// Vertex that owns subgroup index j.
  static int vertex_of(int j) { return j / 3; }
  /// Local corner of subgroup index j.
  static int corner_of(int j) { return j % 3; }

  /// Peripheral rank of subgroup index j (position in nu), or -1.
  int peripheral_rank(int j) const;
  bool is_peripheral(int j) const { return sides_[static_cast<std::size_t>(j)].peripheral; }

  /// Canonical letter for a (possibly internal) a/b letter: internal sides
  /// keep the lesser index of the glued pair, with the sign flipped when the
  /// greater label is rewritten. x/y/r/... letters pass through.
  Letter canonical_letter(const Letter& l) const;

  std::string dot_tree() const;

 private:
  int num_vertices_ = 1;
  std::vector<TreeEdge> edges_;
  std::vector<SideInfo> sides_;
  std::vector<int> nu_;
};

/// The extended tree: T plus one leaf per peripheral subgroup. Interior
/// nodes are tree vertices 0..|T|-1; leaf nodes are |T| + rank where rank
/// indexes nu. Every interior node has valence exactly three.
class ExtTree {
 public:
  explicit ExtTree(const SnowTree& tree);

  struct HatEdge {
    int node_a = 0, node_b = 0;
    bool peripheral = false;
    int tree_edge = -1;       // internal edge: id into tree.edges()
    int subgroup = -1;        // peripheral edge: peripheral subgroup index
  };

  const SnowTree& tree() const { return *tree_; }
  int num_nodes() const { return num_nodes_; }
  int leaf_node(int peripheral_rank) const { return tree_->size() + peripheral_rank; }
  bool is_leaf(int node) const { return node >= tree_->size(); }
  const std::vector<HatEdge>& edges() const { return hat_edges_; }
  const std::vector<std::vector<int>>& adjacency() const { return adj_; }  // node -> edge ids

  /// Side (subgroup index, possibly internal) crossed by a hat edge, as seen
  /// from tree vertex v incident to it.
  int side_at(int edge_id, int v) const;

  /// Node path between two nodes (unique in a tree).
  std::vector<int> node_path(int from, int to) const;

  std::string dot() const;

 private:
  const SnowTree* tree_;
  int num_nodes_ = 0;
  std::vector<HatEdge> hat_edges_;
  std::vector<std::vector<int>> adj_;
};

/// Maximal (leaf-to-leaf) segment in T-hat, determined by its endpoints,
/// stored as peripheral ranks with the edge path between the leaves.
struct Segment {
  int leaf_i = 0, leaf_j = 0;        // peripheral ranks into nu
  std::vector<int> edge_path;        // hat edge ids from leaf_i to leaf_j
  std::vector<int> node_path;        // node ids, leaf to leaf

  bool operator==(const Segment& o) const {
    return leaf_i == o.leaf_i && leaf_j == o.leaf_j;
  }
};

Segment make_segment(const ExtTree& ext, int leaf_rank_i, int leaf_rank_j);

/// All maximal segments, ordered lexicographically by endpoint ranks.
std::vector<Segment> all_segments(const ExtTree& ext);

enum class SchemeFamily { sigma, r_dual, s0, s1 };

/// A corridor scheme: a set of 1-cells of the target complex (named by
/// letters; internal cells carry both their labels), each with a chosen
/// direction, such that every 2-cell sees zero or two scheme edges.
struct CorridorScheme {
  SchemeFamily family = SchemeFamily::sigma;
  std::string tag;
  std::set<std::pair<Kind, std::uint32_t>> labels;
  // Orientation: +1 means the direction reading the label positively.
  std::map<std::pair<Kind, std::uint32_t>, int> orientation;

  bool contains(const Letter& l) const {
    return labels.count({l.kind, l.index}) > 0;
  }
  /// Transverse direction of a traversed letter: orientation times sign.
  int direction(const Letter& l) const {
    auto it = orientation.find({l.kind, l.index});
    return it == orientation.end() ? 0 : it->second * l.sign;
  }
};

/// The scheme S_sigma: for each triangle sigma crosses, the x/y pair of the
/// separated corner; for each crossed side, the a/b pair (all labels of the
/// glued cell). Orientations propagate triangle to triangle.
CorridorScheme scheme_for_segment(const ExtTree& ext, const Segment& seg);

/// Scheme dual to the stable letter r_i (single edge).
CorridorScheme scheme_for_stable(int i);

/// The two one-vertex-group schemes over the subcomplex spanned by factors
/// (corner, corner+1) of tree vertex v: s0 = {x_i, y_i, a_i, b_i} and
/// s1 = {x_{i+1}, y_{i+1}, a_i, b_i} where i is the subgroup index of the
/// side at `corner`. These are schemes for that subcomplex only.
CorridorScheme scheme_s0(const SnowTree& tree, int vertex, int corner);
CorridorScheme scheme_s1(const SnowTree& tree, int vertex, int corner);

/// sigma_e and sigma'_e: maximal segments whose intersection is exactly the
/// hat edge e; for an interior e their endpoints are linked on the boundary
/// of D. Deterministic: the lexicographically least valid pair.
std::pair<Segment, Segment> crossing_pair_for_edge(const ExtTree& ext, int hat_edge_id);

/// DOT rendering of the triangulated polygon D (corners as nodes, sides as
/// edges); sides crossed by the given segment are highlighted.
std::string dot_polygon(const ExtTree& ext, const Segment* overlay = nullptr);

}  // namespace snowflake
