#include "snowflake/treegeom.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "json.hpp"

namespace snowflake {

SnowTree SnowTree::build(const std::vector<std::pair<int, int>>& edges, int num_vertices) {
  int n = num_vertices;
  if (n < 0) {
    n = 1;
    for (auto [u, v] : edges) n = std::max({n, u + 1, v + 1});
  }
  if (static_cast<int>(edges.size()) != n - 1)
    throw NotATreeError("edge count must be vertex count - 1");

  std::vector<std::vector<int>> incident(static_cast<std::size_t>(n));  // vertex -> edge ids
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw NotATreeError("bad edge endpoints");
    incident[static_cast<std::size_t>(u)].push_back(static_cast<int>(e));
    incident[static_cast<std::size_t>(v)].push_back(static_cast<int>(e));
  }
  for (int v = 0; v < n; ++v)
    if (incident[static_cast<std::size_t>(v)].size() > 3) throw ValenceExceededError();

  SnowTree tree;
  tree.num_vertices_ = n;
  tree.edges_.resize(edges.size());
  tree.sides_.resize(static_cast<std::size_t>(3 * n));
  for (int j = 0; j < 3 * n; ++j) {
    tree.sides_[static_cast<std::size_t>(j)].vertex = vertex_of(j);
    tree.sides_[static_cast<std::size_t>(j)].corner = corner_of(j);
  }

  // BFS from vertex 0, checking connectivity and assigning a side to each
  // edge endpoint: the parent link takes side 2; children take sides 1 then
  // 0 in input-edge order (the root may use all of 1, 0, 2).
  std::vector<int> parent_edge(static_cast<std::size_t>(n), -2);
  parent_edge[0] = -1;
  std::deque<int> queue{0};
  int visited = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    ++visited;
    static constexpr int child_sides[3] = {1, 0, 2};
    int next_child = 0;
    for (int e : incident[static_cast<std::size_t>(v)]) {
      if (e == parent_edge[static_cast<std::size_t>(v)]) continue;
      auto [a, b] = edges[static_cast<std::size_t>(e)];
      int w = (a == v) ? b : a;
      if (parent_edge[static_cast<std::size_t>(w)] != -2) throw NotATreeError("cycle detected");
      parent_edge[static_cast<std::size_t>(w)] = e;
      int side_v = side_index(v, child_sides[next_child++]);
      int side_w = side_index(w, 2);
      tree.edges_[static_cast<std::size_t>(e)] = TreeEdge{v, w, side_v, side_w};
      auto& sv = tree.sides_[static_cast<std::size_t>(side_v)];
      auto& sw = tree.sides_[static_cast<std::size_t>(side_w)];
      sv.peripheral = false;
      sv.tree_edge = e;
      sv.partner = side_w;
      sw.peripheral = false;
      sw.tree_edge = e;
      sw.partner = side_v;
      queue.push_back(w);
    }
  }
  if (visited != n) throw NotATreeError("graph is not connected");

  // Boundary walk of D. State (v, k): about to traverse side k of the
  // triangle at v. Internal sides jump to the partner triangle.
  int start = -1;
  for (int j = 0; j < 3 * n && start < 0; ++j)
    if (tree.sides_[static_cast<std::size_t>(j)].peripheral) start = j;
  std::vector<int> walk;
  int v = vertex_of(start), k = corner_of(start);
  do {
    int j = side_index(v, k);
    const auto& side = tree.sides_[static_cast<std::size_t>(j)];
    if (side.peripheral) {
      walk.push_back(j);
      k = (k + 1) % 3;
    } else {
      int p = side.partner;
      v = vertex_of(p);
      k = (corner_of(p) + 1) % 3;
    }
  } while (side_index(v, k) != start);

  if (static_cast<int>(walk.size()) != n + 2)
    throw NotATreeError("boundary walk does not close up over all peripheral sides");
  auto least = std::min_element(walk.begin(), walk.end());
  std::rotate(walk.begin(), least, walk.end());
  tree.nu_ = walk;
  for (std::size_t rank = 0; rank < walk.size(); ++rank)
    tree.sides_[static_cast<std::size_t>(walk[rank])].leaf = static_cast<int>(rank);
  return tree;
}

int SnowTree::peripheral_rank(int j) const {
  const auto& s = sides_.at(static_cast<std::size_t>(j));
  return s.peripheral ? s.leaf : -1;
}

Letter SnowTree::canonical_letter(const Letter& l) const {
  if (l.kind != Kind::a && l.kind != Kind::b && l.kind != Kind::c) return l;
  const auto& s = sides_.at(l.index);
  if (s.peripheral || s.partner > static_cast<int>(l.index)) return l;
  // c letters are identified without inversion; a/b reverse.
  int sign = (l.kind == Kind::c) ? l.sign : -l.sign;
  return Letter(l.kind, static_cast<std::uint32_t>(s.partner), sign);
}

SnowTree SnowTree::from_json(const std::string& json_text) {
  auto j = nlohmann::json::parse(json_text);
  std::vector<std::pair<int, int>> edges;
  if (j.contains("edges"))
    for (const auto& e : j["edges"]) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  int n = j.value("vertices", -1);
  return build(edges, n);
}

std::string SnowTree::to_json() const {
  nlohmann::json j;
  j["vertices"] = num_vertices_;
  j["edges"] = nlohmann::json::array();
  for (const auto& e : edges_) j["edges"].push_back({e.u, e.v});
  j["pairings"] = nlohmann::json::array();
  for (const auto& e : edges_) j["pairings"].push_back({e.side_u, e.side_v});
  j["nu"] = nu_;
  return j.dump();
}

std::string SnowTree::dot_tree() const {
  std::ostringstream os;
  os << "graph T {\n";
  for (int v = 0; v < num_vertices_; ++v)
    os << "  v" << v << " [label=\"(" << 3 * v << "," << 3 * v + 1 << "," << 3 * v + 2 << ")\"];\n";
  for (const auto& e : edges_)
    os << "  v" << e.u << " -- v" << e.v << " [label=\"A" << e.side_u << "=A" << e.side_v << "\"];\n";
  os << "}\n";
  return os.str();
}

ExtTree::ExtTree(const SnowTree& tree) : tree_(&tree) {
  num_nodes_ = tree.size() + tree.m() + 1;
  adj_.resize(static_cast<std::size_t>(num_nodes_));
  for (std::size_t e = 0; e < tree.edges().size(); ++e) {
    const auto& te = tree.edges()[e];
    HatEdge he;
    he.node_a = te.u;
    he.node_b = te.v;
    he.peripheral = false;
    he.tree_edge = static_cast<int>(e);
    adj_[static_cast<std::size_t>(te.u)].push_back(static_cast<int>(hat_edges_.size()));
    adj_[static_cast<std::size_t>(te.v)].push_back(static_cast<int>(hat_edges_.size()));
    hat_edges_.push_back(he);
  }
  for (std::size_t rank = 0; rank < tree.nu().size(); ++rank) {
    int j = tree.nu()[rank];
    HatEdge he;
    he.node_a = SnowTree::vertex_of(j);
    he.node_b = leaf_node(static_cast<int>(rank));
    he.peripheral = true;
    he.subgroup = j;
    adj_[static_cast<std::size_t>(he.node_a)].push_back(static_cast<int>(hat_edges_.size()));
    adj_[static_cast<std::size_t>(he.node_b)].push_back(static_cast<int>(hat_edges_.size()));
    hat_edges_.push_back(he);
  }
}

int ExtTree::side_at(int edge_id, int v) const {
  const auto& he = hat_edges_.at(static_cast<std::size_t>(edge_id));
  if (he.peripheral) return he.subgroup;
  const auto& te = tree_->edges()[static_cast<std::size_t>(he.tree_edge)];
  if (te.u == v) return te.side_u;
  if (te.v == v) return te.side_v;
  throw std::logic_error("vertex not incident to hat edge");
}

std::vector<int> ExtTree::node_path(int from, int to) const {
  std::vector<int> prev(static_cast<std::size_t>(num_nodes_), -1);
  std::vector<bool> seen(static_cast<std::size_t>(num_nodes_), false);
  std::deque<int> queue{from};
  seen[static_cast<std::size_t>(from)] = true;
  while (!queue.empty()) {
    int at = queue.front();
    queue.pop_front();
    if (at == to) break;
    for (int e : adj_[static_cast<std::size_t>(at)]) {
      const auto& he = hat_edges_[static_cast<std::size_t>(e)];
      int nxt = he.node_a == at ? he.node_b : he.node_a;
      if (seen[static_cast<std::size_t>(nxt)]) continue;
      seen[static_cast<std::size_t>(nxt)] = true;
      prev[static_cast<std::size_t>(nxt)] = at;
      queue.push_back(nxt);
    }
  }
  std::vector<int> path;
  for (int at = to; at != -1; at = prev[static_cast<std::size_t>(at)]) path.push_back(at);
  std::reverse(path.begin(), path.end());
  return path;
}

std::string ExtTree::dot() const {
  std::ostringstream os;
  os << "graph That {\n";
  for (int v = 0; v < tree_->size(); ++v) os << "  v" << v << ";\n";
  for (std::size_t r = 0; r < tree_->nu().size(); ++r)
    os << "  leaf" << r << " [shape=point, xlabel=\"A" << tree_->nu()[r] << "\"];\n";
  for (const auto& he : hat_edges_) {
    auto name = [&](int node) {
      return is_leaf(node) ? "leaf" + std::to_string(node - tree_->size())
                           : "v" + std::to_string(node);
    };
    os << "  " << name(he.node_a) << " -- " << name(he.node_b) << ";\n";
  }
  os << "}\n";
  return os.str();
}

Segment make_segment(const ExtTree& ext, int leaf_rank_i, int leaf_rank_j) {
  Segment seg;
  seg.leaf_i = leaf_rank_i;
  seg.leaf_j = leaf_rank_j;
  seg.node_path = ext.node_path(ext.leaf_node(leaf_rank_i), ext.leaf_node(leaf_rank_j));
  for (std::size_t q = 0; q + 1 < seg.node_path.size(); ++q) {
    int a = seg.node_path[q], b = seg.node_path[q + 1];
    int found = -1;
    for (int e : ext.adjacency()[static_cast<std::size_t>(a)]) {
      const auto& he = ext.edges()[static_cast<std::size_t>(e)];
      if ((he.node_a == a && he.node_b == b) || (he.node_a == b && he.node_b == a)) found = e;
    }
    seg.edge_path.push_back(found);
  }
  return seg;
}

std::vector<Segment> all_segments(const ExtTree& ext) {
  std::vector<Segment> out;
  int leaves = ext.tree().m() + 1;
  for (int i = 0; i < leaves; ++i)
    for (int j = i + 1; j < leaves; ++j) out.push_back(make_segment(ext, i, j));
  return out;
}

namespace {

void add_side_labels(const SnowTree& tree, CorridorScheme& scheme, int subgroup, int orient) {
  auto put = [&](Kind k, int idx) {
    std::pair<Kind, std::uint32_t> key{k, static_cast<std::uint32_t>(idx)};
    scheme.labels.insert(key);
    auto [it, fresh] = scheme.orientation.emplace(key, orient);
    if (!fresh && it->second != orient)
      throw std::logic_error("conflicting orientation while building scheme");
  };
  put(Kind::a, subgroup);
  put(Kind::b, subgroup);
  const auto& info = tree.side(subgroup);
  if (!info.peripheral) {
    // Internal 1-cells carry both labels; the partner label reads the same
    // cell backwards, so it gets the opposite bit.
    put(Kind::a, info.partner);
    put(Kind::b, info.partner);
    auto fix = [&](Kind k) {
      scheme.orientation[{k, static_cast<std::uint32_t>(info.partner)}] = -orient;
    };
    fix(Kind::a);
    fix(Kind::b);
  }
}

}  // namespace

CorridorScheme scheme_for_segment(const ExtTree& ext, const Segment& seg) {
  const SnowTree& tree = ext.tree();
  CorridorScheme scheme;
  scheme.family = SchemeFamily::sigma;
  scheme.tag = "sigma(" + std::to_string(seg.leaf_i) + "," + std::to_string(seg.leaf_j) + ")";

  // Walk the interior vertices. At each triangle the in-side gets +1, the
  // separated corner +1, the out-side -1; internal partner labels flip.
  for (std::size_t q = 1; q + 1 < seg.node_path.size(); ++q) {
    int v = seg.node_path[q];
    int side_in = ext.side_at(seg.edge_path[q - 1], v);
    int side_out = ext.side_at(seg.edge_path[q], v);
    int k_in = SnowTree::corner_of(side_in);
    int k_out = SnowTree::corner_of(side_out);
    // Side k covers local corners {k, k+1}; the separated corner is the one
    // the two crossed sides share.
    int corner = -1;
    for (int c = 0; c < 3; ++c) {
      bool on_in = (c == k_in) || (c == (k_in + 1) % 3);
      bool on_out = (c == k_out) || (c == (k_out + 1) % 3);
      if (on_in && on_out) corner = c;
    }
    if (corner < 0) throw std::logic_error("crossed sides share no corner");
    int cx = SnowTree::side_index(v, corner);
    // The corner letters run parallel to the in-side when the corner is the
    // in-side's second endpoint, anti-parallel when it is the first.
    int corner_orient = corner == (k_in + 1) % 3 ? 1 : -1;
    scheme.labels.insert({Kind::x, static_cast<std::uint32_t>(cx)});
    scheme.labels.insert({Kind::y, static_cast<std::uint32_t>(cx)});
    scheme.orientation[{Kind::x, static_cast<std::uint32_t>(cx)}] = corner_orient;
    scheme.orientation[{Kind::y, static_cast<std::uint32_t>(cx)}] = corner_orient;

    if (q == 1) add_side_labels(tree, scheme, side_in, 1);
    add_side_labels(tree, scheme, side_out, -1);
  }
  return scheme;
}

CorridorScheme scheme_for_stable(int i) {
  CorridorScheme scheme;
  scheme.family = SchemeFamily::r_dual;
  scheme.tag = "r(" + std::to_string(i) + ")";
  scheme.labels.insert({Kind::r, static_cast<std::uint32_t>(i)});
  scheme.orientation[{Kind::r, static_cast<std::uint32_t>(i)}] = 1;
  return scheme;
}

namespace {

CorridorScheme one_factor_scheme(const SnowTree& tree, int vertex, int corner, bool upper) {
  int j = SnowTree::side_index(vertex, corner);
  int cx = upper ? SnowTree::side_index(vertex, (corner + 1) % 3) : j;
  CorridorScheme scheme;
  scheme.family = upper ? SchemeFamily::s1 : SchemeFamily::s0;
  scheme.tag = (upper ? "s1(" : "s0(") + std::to_string(j) + ")";
  int ab_orient = upper ? 1 : -1;
  scheme.labels.insert({Kind::x, static_cast<std::uint32_t>(cx)});
  scheme.labels.insert({Kind::y, static_cast<std::uint32_t>(cx)});
  scheme.orientation[{Kind::x, static_cast<std::uint32_t>(cx)}] = 1;
  scheme.orientation[{Kind::y, static_cast<std::uint32_t>(cx)}] = 1;
  scheme.labels.insert({Kind::a, static_cast<std::uint32_t>(j)});
  scheme.labels.insert({Kind::b, static_cast<std::uint32_t>(j)});
  scheme.orientation[{Kind::a, static_cast<std::uint32_t>(j)}] = ab_orient;
  scheme.orientation[{Kind::b, static_cast<std::uint32_t>(j)}] = ab_orient;
  (void)tree;
  return scheme;
}

// Cyclic linking of two leaf pairs on the boundary of D (ranks mod m+1).
bool linked(int m1, int a1, int a2, int b1, int b2) {
  auto between = [&](int lo, int hi, int p) {
    // p strictly inside the cyclic interval (lo, hi)
    if (lo < hi) return lo < p && p < hi;
    return p > lo || p < hi;
  };
  (void)m1;
  bool in1 = between(a1, a2, b1);
  bool in2 = between(a1, a2, b2);
  return in1 != in2;
}

}  // namespace

CorridorScheme scheme_s0(const SnowTree& tree, int vertex, int corner) {
  return one_factor_scheme(tree, vertex, corner, false);
}
CorridorScheme scheme_s1(const SnowTree& tree, int vertex, int corner) {
  return one_factor_scheme(tree, vertex, corner, true);
}

std::string dot_polygon(const ExtTree& ext, const Segment* overlay) {
  const SnowTree& tree = ext.tree();
  std::set<int> crossed;  // subgroup indices of sides the overlay passes
  if (overlay) {
    for (std::size_t q = 0; q + 1 < overlay->node_path.size(); ++q) {
      int node = overlay->node_path[q];
      int v = ext.is_leaf(node) ? overlay->node_path[q + 1] : node;
      crossed.insert(ext.side_at(overlay->edge_path[q], v));
      if (!ext.edges()[static_cast<std::size_t>(overlay->edge_path[q])].peripheral) {
        int s = ext.side_at(overlay->edge_path[q], v);
        crossed.insert(tree.side(s).partner);
      }
    }
  }
  // Corners of D: triangle corners modulo the side identifications
  // (side j glued to p identifies corner j with next(p) and next(j) with p).
  int nc = tree.num_subgroup_indices();
  std::vector<int> rep(static_cast<std::size_t>(nc));
  for (int j = 0; j < nc; ++j) rep[static_cast<std::size_t>(j)] = j;
  std::function<int(int)> find = [&](int v) {
    while (rep[static_cast<std::size_t>(v)] != v) v = rep[static_cast<std::size_t>(v)];
    return v;
  };
  auto next_corner = [&](int j) {
    return SnowTree::side_index(SnowTree::vertex_of(j), (SnowTree::corner_of(j) + 1) % 3);
  };
  for (const TreeEdge& e : tree.edges()) {
    for (auto [a, b] : {std::pair<int, int>{e.side_u, next_corner(e.side_v)},
                        std::pair<int, int>{next_corner(e.side_u), e.side_v}}) {
      int ra = find(a), rb = find(b);
      if (ra != rb) rep[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
    }
  }

  std::ostringstream os;
  os << "graph D {\n  layout=neato;\n";
  std::set<int> drawn;
  for (int j = 0; j < nc; ++j) {
    const SideInfo& side = tree.side(j);
    if (!side.peripheral && drawn.count(side.partner)) continue;
    drawn.insert(j);
    std::string label = "A" + std::to_string(j);
    if (!side.peripheral) label += "=A" + std::to_string(side.partner);
    os << "  c" << find(j) << " -- c" << find(next_corner(j)) << " [label=\"" << label << "\""
       << (crossed.count(j) ? ", color=red, penwidth=2" : "") << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::pair<Segment, Segment> crossing_pair_for_edge(const ExtTree& ext, int hat_edge_id) {
  auto segments = all_segments(ext);
  const bool interior = !ext.edges().at(static_cast<std::size_t>(hat_edge_id)).peripheral;
  int leaves = ext.tree().m() + 1;

  auto contains_edge = [&](const Segment& s) {
    return std::find(s.edge_path.begin(), s.edge_path.end(), hat_edge_id) != s.edge_path.end();
  };
  auto intersection_is_edge = [&](const Segment& s, const Segment& t) {
    int common = 0;
    for (int e : s.edge_path)
      if (std::find(t.edge_path.begin(), t.edge_path.end(), e) != t.edge_path.end()) {
        if (e != hat_edge_id) return false;
        ++common;
      }
    return common == 1;
  };

  for (const Segment& s : segments) {
    if (!contains_edge(s)) continue;
    for (const Segment& t : segments) {
      if (!contains_edge(t)) continue;
      if (s == t) continue;
      if (!intersection_is_edge(s, t)) continue;
      if (interior && !linked(leaves, s.leaf_i, s.leaf_j, t.leaf_i, t.leaf_j)) continue;
      return {s, t};
    }
  }
  throw std::logic_error("no crossing pair exists for hat edge");
}

}  // namespace snowflake
