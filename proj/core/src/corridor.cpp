#include "snowflake/corridor.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <set>

namespace snowflake {

namespace {

// Scheme darts in the boundary cycle of a face.
std::vector<int> scheme_darts(const Diagram& d, const CorridorScheme& s, int f) {
  std::vector<int> out;
  for (int dart : d.face_cycle(f))
    if (s.contains(d.dart(dart).label)) out.push_back(dart);
  return out;
}

}  // namespace

std::vector<Corridor> trace(const Diagram& d, const CorridorScheme& s) {
  std::vector<Corridor> out;
  std::vector<char> cell_done(d.face_count(), 0);
  std::vector<std::vector<int>> sdarts(d.face_count());
  for (std::size_t f = 0; f < d.face_count(); ++f) {
    sdarts[f] = scheme_darts(d, s, static_cast<int>(f));
    if (sdarts[f].size() != 0 && sdarts[f].size() != 2)
      throw std::logic_error("face has " + std::to_string(sdarts[f].size()) +
                             " scheme edges; scheme invalid for this diagram");
  }

  // Band corridors start at boundary scheme edges.
  for (int od : d.outer_cycle()) {
    if (!s.contains(d.dart(od).label)) continue;
    int into = d.dart(od).twin;
    int f = d.dart(into).face;
    if (f < 0) continue;  // isolated boundary edge pair
    if (cell_done[static_cast<std::size_t>(f)]) continue;
    Corridor c;
    c.end_dart_a = od;
    int enter = into;
    while (true) {
      c.cells.push_back(f);
      cell_done[static_cast<std::size_t>(f)] = 1;
      const auto& sd = sdarts[static_cast<std::size_t>(f)];
      int exit = sd[0] == enter ? sd[1] : sd[0];
      int across = d.dart(exit).twin;
      if (d.dart(across).face < 0) {
        c.end_dart_b = across;
        break;
      }
      enter = across;
      f = d.dart(across).face;
    }
    out.push_back(std::move(c));
  }

  // Remaining corridor cells belong to annulus corridors.
  for (std::size_t f0 = 0; f0 < d.face_count(); ++f0) {
    if (cell_done[f0] || sdarts[f0].empty()) continue;
    Corridor c;
    c.annulus = true;
    int f = static_cast<int>(f0);
    int enter = sdarts[f0][0];
    while (!cell_done[static_cast<std::size_t>(f)]) {
      c.cells.push_back(f);
      cell_done[static_cast<std::size_t>(f)] = 1;
      const auto& sd = sdarts[static_cast<std::size_t>(f)];
      int exit = sd[0] == enter ? sd[1] : sd[0];
      int across = d.dart(exit).twin;
      if (d.dart(across).face < 0)
        throw std::logic_error("annulus walk reached the boundary");
      enter = across;
      f = d.dart(across).face;
    }
    out.push_back(std::move(c));
  }
  return out;
}

bool orientation_check(const Diagram& d, const CorridorScheme& s,
                       const std::vector<Corridor>& corridors) {
  // Cellwise: the two scheme edges of each corridor cell have opposite
  // directions relative to the face boundary.
  for (const Corridor& c : corridors) {
    for (int f : c.cells) {
      auto sd = scheme_darts(d, s, f);
      if (sd.size() != 2) return false;
      int d1 = s.direction(d.dart(sd[0]).label);
      int d2 = s.direction(d.dart(sd[1]).label);
      if (d1 == 0 || d2 == 0 || d1 == d2) return false;
    }
    // Band ends carrying the same label must read with opposite boundary
    // orientations.
    if (!c.annulus && c.end_dart_a >= 0 && c.end_dart_b >= 0) {
      const Letter& la = d.dart(c.end_dart_a).label;
      const Letter& lb = d.dart(c.end_dart_b).label;
      if (la.kind == lb.kind && la.index == lb.index && la.sign == lb.sign) return false;
    }
  }
  return true;
}

CrossingCount crossing_regions(const Diagram& d, const ExtTree& ext, int hat_edge) {
  auto [se, se2] = crossing_pair_for_edge(ext, hat_edge);
  CorridorScheme s1 = scheme_for_segment(ext, se);
  CorridorScheme s2 = scheme_for_segment(ext, se2);

  std::vector<char> in1(d.face_count(), 0), in2(d.face_count(), 0);
  for (const Corridor& c : trace(d, s1))
    for (int f : c.cells) in1[static_cast<std::size_t>(f)] = 1;
  for (const Corridor& c : trace(d, s2))
    for (int f : c.cells) in2[static_cast<std::size_t>(f)] = 1;

  CrossingCount count;
  std::vector<char> paired(d.face_count(), 0);
  for (std::size_t f = 0; f < d.face_count(); ++f) {
    if (!in1[f] || !in2[f] || paired[f]) continue;
    if (d.face(static_cast<int>(f)).type == FaceType::quadrilateral) {
      count.squares += 1;
      continue;
    }
    // Triangle: its a/b side lies in both schemes.
    int ab_dart = -1;
    for (int dart : d.face_cycle(static_cast<int>(f))) {
      const Letter& l = d.dart(dart).label;
      if ((l.kind == Kind::a || l.kind == Kind::b) && s1.contains(l) && s2.contains(l))
        ab_dart = dart;
    }
    if (ab_dart < 0) throw std::logic_error("bi-corridor triangle without a shared a/b side");
    int across = d.dart(ab_dart).twin;
    if (d.dart(across).face < 0) {
      count.triangles += 1;
      continue;
    }
    int g = d.dart(across).face;
    if (!in1[static_cast<std::size_t>(g)] || !in2[static_cast<std::size_t>(g)])
      throw std::logic_error("crossing triangle pairs with a non-crossing cell");
    paired[f] = 1;
    paired[static_cast<std::size_t>(g)] = 1;
    count.squares += 1;
  }
  return count;
}

BigInt lower_bound_certificate(const Diagram& d, const ExtTree& ext) {
  BigInt total = 0;
  for (std::size_t e = 0; e < ext.edges().size(); ++e)
    total += crossing_regions(d, ext, static_cast<int>(e)).area();
  return total;
}

int FoldedCorridor::find(int v) const {
  while (parent_[static_cast<std::size_t>(v)] != v) v = parent_[static_cast<std::size_t>(v)];
  return v;
}

std::vector<int> FoldedCorridor::seam_edges() const {
  std::vector<int> out;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!edges[e].alive) continue;
    if (edges[e].cls == EdgeClass::rside || edges[e].cls == EdgeClass::seam)
      out.push_back(static_cast<int>(e));
  }
  return out;
}

std::vector<int> FoldedCorridor::seam_components() const {
  std::vector<int> comp(parent_.size(), -1);
  std::vector<int> uf(parent_.size());
  for (std::size_t i = 0; i < uf.size(); ++i) uf[i] = static_cast<int>(i);
  std::function<int(int)> find_c = [&](int v) {
    while (uf[static_cast<std::size_t>(v)] != v) v = uf[static_cast<std::size_t>(v)];
    return v;
  };
  for (int e : seam_edges()) {
    int a = find_c(find(edges[static_cast<std::size_t>(e)].from));
    int b = find_c(find(edges[static_cast<std::size_t>(e)].to));
    if (a != b) uf[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  int next_id = 0;
  std::map<int, int> ids;
  for (int e : seam_edges()) {
    for (int v : {find(edges[static_cast<std::size_t>(e)].from),
                  find(edges[static_cast<std::size_t>(e)].to)}) {
      int root = find_c(v);
      if (!ids.count(root)) ids[root] = next_id++;
      comp[static_cast<std::size_t>(v)] = ids[root];
    }
  }
  return comp;
}

FoldedCorridor::SeamChecks FoldedCorridor::check_seams() const {
  SeamChecks checks;
  auto comp = seam_components();
  std::set<int> top_set(top_vertices.begin(), top_vertices.end());
  std::set<int> bottom_set(bottom_vertices.begin(), bottom_vertices.end());

  std::map<int, int> edge_count, vertex_count, top_count;
  std::map<int, std::map<int, int>> valence;  // comp -> vertex -> valence
  std::set<std::pair<int, int>> counted_vertices;
  for (int e : seam_edges()) {
    int a = find(edges[static_cast<std::size_t>(e)].from);
    int b = find(edges[static_cast<std::size_t>(e)].to);
    int c = comp[static_cast<std::size_t>(a)];
    edge_count[c] += 1;
    valence[c][a] += 1;
    valence[c][b] += 1;
    for (int v : {a, b}) {
      if (counted_vertices.insert({c, v}).second) {
        vertex_count[c] += 1;
        if (top_set.count(v)) top_count[c] += 1;
      }
    }
  }
  checks.component_count = static_cast<int>(edge_count.size());
  for (const auto& [c, ec] : edge_count) {
    if (vertex_count[c] != ec + 1) checks.every_component_tree = false;
    if (top_count[c] != 1) checks.one_top_vertex_each = false;
    for (const auto& [v, val] : valence[c]) {
      if (val == 1 && !top_set.count(v) && !bottom_set.count(v))
        checks.leaves_on_top_or_bottom = false;
    }
  }
  return checks;
}

int FoldedCorridor::bounded_cancellation_span() const {
  auto comp = seam_components();
  std::map<int, std::pair<int, int>> bottom_span;  // comp -> (min, max index)
  for (std::size_t q = 0; q < bottom_vertices.size(); ++q) {
    int c = comp[static_cast<std::size_t>(bottom_vertices[q])];
    if (c < 0) continue;
    auto it = bottom_span.find(c);
    if (it == bottom_span.end())
      bottom_span[c] = {static_cast<int>(q), static_cast<int>(q)};
    else
      it->second.second = static_cast<int>(q);
  }
  int best = 0;
  for (int tv : top_vertices) {
    int c = comp[static_cast<std::size_t>(tv)];
    if (c < 0) continue;
    auto it = bottom_span.find(c);
    if (it == bottom_span.end()) continue;
    best = std::max(best, it->second.second - it->second.first);
  }
  return best;
}

QuadNum FoldedCorridor::max_cell_perimeter() const {
  QuadNum best;
  for (const auto& cycle : cell_boundary) {
    QuadNum p;
    for (const auto& [e, dir] : cycle) p += letter_weight(edges[static_cast<std::size_t>(e)].label);
    if (p > best) best = p;
  }
  return best;
}

FoldedCorridor fold_corridor(const Word& w, int stable_index, const SnowTree& tree, int n,
                             const FreeAut& phi) {
  // Accept the bottom over a/b letters or abstract x/y.
  Word wxy;
  {
    std::vector<Letter> ls;
    for (const Letter& l : w.letters()) {
      switch (l.kind) {
        case Kind::a: ls.emplace_back(Kind::x, 0, l.sign); break;
        case Kind::b: ls.emplace_back(Kind::y, 0, l.sign); break;
        case Kind::x:
        case Kind::y: ls.emplace_back(l.kind, 0, l.sign); break;
        default: throw AlphabetError("fold_corridor bottom must be an a/b word");
      }
    }
    wxy = Word(std::move(ls));
  }
  if (!(reduce(wxy) == wxy)) throw std::invalid_argument("fold_corridor expects a reduced bottom");

  const auto& nu = tree.nu();
  int nu0 = nu[0];
  int nui = nu[static_cast<std::size_t>(stable_index)];

  FoldedCorridor fc;
  fc.stable_index = stable_index;
  const std::size_t L = wxy.size();
  fc.bottom_word = substitute_xy(wxy, Letter(Kind::a, static_cast<std::uint32_t>(nu0)),
                                 Letter(Kind::b, static_cast<std::uint32_t>(nu0)));
  if (L == 0) return fc;

  FreeAut phin = power(phi, n);
  std::vector<Word> images(L);
  std::vector<std::size_t> off(L + 1, 0);
  for (std::size_t k = 0; k < L; ++k) {
    images[k] = substitute_xy(apply(phin, Word::one(wxy[k])),
                              Letter(Kind::a, static_cast<std::uint32_t>(nui)),
                              Letter(Kind::b, static_cast<std::uint32_t>(nui)));
    off[k + 1] = off[k] + images[k].size();
  }

  // Vertices: bottom 0..L, then the top chain.
  int nv = static_cast<int>(L + 1 + off[L] + 1);
  fc.parent_.resize(static_cast<std::size_t>(nv));
  for (int i = 0; i < nv; ++i) fc.parent_[static_cast<std::size_t>(i)] = i;
  auto bot = [&](std::size_t k) { return static_cast<int>(k); };
  auto topv = [&](std::size_t k) { return static_cast<int>(L + 1 + k); };

  // Edges.
  std::vector<int> bottom_edges(L), r_edges(L + 1);
  std::vector<std::vector<int>> top_edges(L);
  for (std::size_t k = 0; k < L; ++k) {
    fc.edges.push_back({bot(k), bot(k + 1), fc.bottom_word[k], FoldedCorridor::EdgeClass::bottom,
                        true});
    bottom_edges[k] = static_cast<int>(fc.edges.size()) - 1;
  }
  for (std::size_t k = 0; k <= L; ++k) {
    fc.edges.push_back({topv(off[k]), bot(k),
                        Letter(Kind::r, static_cast<std::uint32_t>(stable_index), 1),
                        FoldedCorridor::EdgeClass::rside, true});
    r_edges[k] = static_cast<int>(fc.edges.size()) - 1;
  }
  for (std::size_t k = 0; k < L; ++k) {
    for (std::size_t j = 0; j < images[k].size(); ++j) {
      fc.edges.push_back({topv(off[k] + j), topv(off[k] + j + 1), images[k][j],
                          FoldedCorridor::EdgeClass::top, true});
      top_edges[k].push_back(static_cast<int>(fc.edges.size()) - 1);
    }
  }

  // Cell boundaries: r_k^-1 up, image_k, r_{k+1} down, bottom_k^-1.
  fc.cell_boundary.resize(L);
  for (std::size_t k = 0; k < L; ++k) {
    auto& cyc = fc.cell_boundary[k];
    cyc.emplace_back(r_edges[k], -1);
    for (int e : top_edges[k]) cyc.emplace_back(e, 1);
    cyc.emplace_back(r_edges[k + 1], 1);
    cyc.emplace_back(bottom_edges[k], -1);
  }

  // Top path, then leftmost-innermost folding.
  std::vector<std::pair<int, int>> path;  // (edge, dir)
  for (std::size_t k = 0; k < L; ++k)
    for (int e : top_edges[k]) path.emplace_back(e, 1);

  auto read = [&](const std::pair<int, int>& ref) {
    const auto& e = fc.edges[static_cast<std::size_t>(ref.first)];
    return ref.second > 0 ? e.label : e.label.inverse();
  };
  std::size_t pos = 0;
  while (path.size() >= 2 && pos + 1 < path.size()) {
    if (read(path[pos]).is_inverse_of(read(path[pos + 1]))) {
      int keep = path[pos].first;
      int keep_dir = path[pos].second;
      int dead = path[pos + 1].first;
      int dead_dir = path[pos + 1].second;
      // far endpoints become identified
      auto& ke = fc.edges[static_cast<std::size_t>(keep)];
      auto& de = fc.edges[static_cast<std::size_t>(dead)];
      int far_keep = keep_dir > 0 ? ke.from : ke.to;
      int far_dead = dead_dir > 0 ? de.to : de.from;
      int a = fc.find(far_keep), b = fc.find(far_dead);
      if (a != b) fc.parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
      // the dead edge is merged into the kept edge, reversed
      de.alive = false;
      for (auto& cyc : fc.cell_boundary) {
        for (auto& ref : cyc) {
          if (ref.first == dead) {
            ref.first = keep;
            ref.second = (dead_dir == keep_dir ? -ref.second : ref.second);
            // dead traversed forward equals keep traversed backward when the
            // two path refs had the same direction flag
          }
        }
      }
      fc.edges[static_cast<std::size_t>(keep)].cls = FoldedCorridor::EdgeClass::seam;
      path.erase(path.begin() + static_cast<std::ptrdiff_t>(pos),
                 path.begin() + static_cast<std::ptrdiff_t>(pos + 2));
      ++fc.fold_count;
      if (pos > 0) --pos;
    } else {
      ++pos;
    }
  }

  fc.top_refs = path;
  std::vector<Letter> top_letters;
  for (const auto& ref : path) top_letters.push_back(read(ref));
  fc.top_word = Word(std::move(top_letters), true);

  fc.bottom_vertices.clear();
  for (std::size_t k = 0; k <= L; ++k) fc.bottom_vertices.push_back(fc.find(bot(k)));
  fc.bottom_edge_ids = bottom_edges;
  fc.top_vertices.clear();
  if (path.empty()) {
    fc.top_vertices.push_back(fc.find(topv(0)));
  } else {
    const auto& first = fc.edges[static_cast<std::size_t>(path[0].first)];
    fc.top_vertices.push_back(fc.find(path[0].second > 0 ? first.from : first.to));
    for (const auto& ref : path) {
      const auto& e = fc.edges[static_cast<std::size_t>(ref.first)];
      fc.top_vertices.push_back(fc.find(ref.second > 0 ? e.to : e.from));
    }
  }
  return fc;
}

namespace {

// Dijkstra over alive edges, excluding bottom edges, exact weights.
std::pair<std::vector<QuadNum>, std::vector<int>> shortest_paths_avoiding_bottom(
    const FoldedCorridor& fc, int source) {
  std::size_t n = fc.parent_.size();
  std::vector<QuadNum> dist(n);
  std::vector<char> known(n, 0);
  std::vector<int> prev(n, -1);
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge)
  for (std::size_t e = 0; e < fc.edges.size(); ++e) {
    const auto& ed = fc.edges[e];
    if (!ed.alive || ed.cls == FoldedCorridor::EdgeClass::bottom) continue;
    int a = fc.find(ed.from), b = fc.find(ed.to);
    adj[static_cast<std::size_t>(a)].emplace_back(b, static_cast<int>(e));
    adj[static_cast<std::size_t>(b)].emplace_back(a, static_cast<int>(e));
  }
  std::vector<char> reached(n, 0);
  dist[static_cast<std::size_t>(source)] = QuadNum(0);
  reached[static_cast<std::size_t>(source)] = 1;
  for (;;) {
    int best = -1;
    for (std::size_t v = 0; v < n; ++v) {
      if (!reached[v] || known[v]) continue;
      if (best < 0 || dist[v] < dist[static_cast<std::size_t>(best)]) best = static_cast<int>(v);
    }
    if (best < 0) break;
    known[static_cast<std::size_t>(best)] = 1;
    for (auto [nb, e] : adj[static_cast<std::size_t>(best)]) {
      QuadNum cand = dist[static_cast<std::size_t>(best)] +
                     letter_weight(fc.edges[static_cast<std::size_t>(e)].label);
      if (!reached[static_cast<std::size_t>(nb)] || cand < dist[static_cast<std::size_t>(nb)]) {
        reached[static_cast<std::size_t>(nb)] = 1;
        dist[static_cast<std::size_t>(nb)] = cand;
        prev[static_cast<std::size_t>(nb)] = best;
      }
    }
  }
  return {dist, prev};
}

}  // namespace

std::vector<NearlyAbove> nearly_above(const FoldedCorridor& fc, int top_index) {
  std::vector<NearlyAbove> out;
  if (top_index < 0 || top_index >= static_cast<int>(fc.top_vertices.size())) return out;
  int p = fc.top_vertices[static_cast<std::size_t>(top_index)];
  auto comp = fc.seam_components();

  // cells containing p on their boundary
  std::set<int> cells_with_p;
  for (std::size_t c = 0; c < fc.cell_boundary.size(); ++c) {
    for (const auto& [e, dir] : fc.cell_boundary[c]) {
      if (fc.find(fc.edges[static_cast<std::size_t>(e)].from) == p ||
          fc.find(fc.edges[static_cast<std::size_t>(e)].to) == p)
        cells_with_p.insert(static_cast<int>(c));
    }
  }
  // candidate components: those of top vertices sharing a cell with p
  std::set<int> comps;
  for (int tv : fc.top_vertices) {
    int c = comp[static_cast<std::size_t>(tv)];
    if (c < 0) continue;
    for (int cell : cells_with_p) {
      for (const auto& [e, dir] : fc.cell_boundary[static_cast<std::size_t>(cell)]) {
        if (fc.find(fc.edges[static_cast<std::size_t>(e)].from) == tv ||
            fc.find(fc.edges[static_cast<std::size_t>(e)].to) == tv)
          comps.insert(c);
      }
    }
  }
  auto [dist, prev] = shortest_paths_avoiding_bottom(fc, p);
  for (std::size_t q = 0; q < fc.bottom_vertices.size(); ++q) {
    int bv = fc.bottom_vertices[q];
    int c = comp[static_cast<std::size_t>(bv)];
    if (c < 0 || !comps.count(c)) continue;
    NearlyAbove na;
    na.bottom_index = static_cast<int>(q);
    na.witness_length = dist[static_cast<std::size_t>(bv)];
    for (int at = bv; at >= 0; at = prev[static_cast<std::size_t>(at)]) na.witness_path.push_back(at);
    out.push_back(std::move(na));
  }
  return out;
}

SegmentBound segment_length_bound(const FoldedCorridor& fc, int p1, int p2, int q1, int q2,
                                  int n, const FreeAut& phi) {
  auto valid = [&](int p, int q) {
    for (const auto& na : nearly_above(fc, p))
      if (na.bottom_index == q) return true;
    return false;
  };
  if (p1 > p2 || q1 > q2 || !valid(p1, q1) || !valid(p2, q2)) throw InvalidVerticesError();

  SegmentBound bound;
  for (int q = q1; q < q2; ++q)
    bound.observed += letter_weight(fc.bottom_word[static_cast<std::size_t>(q)]);
  std::vector<Letter> seg;
  for (int p = p1; p < p2; ++p) {
    const Letter& l = fc.top_word[static_cast<std::size_t>(p)];
    seg.emplace_back(l.kind == Kind::a ? Kind::x : Kind::y, 0, l.sign);
  }
  Word u(std::move(seg));
  Word pre = apply(power(phi, -n), u);
  bound.predicted = weighted_length(pre);
  bound.defect = bound.observed - bound.predicted;
  return bound;
}

ConstantsReport measure_corridor_constants(const SnowTree& tree, int n, const FreeAut& phi,
                                           int max_len, int samples_per_len,
                                           unsigned long seed) {
  ConstantsReport rep;
  rep.max_word_length = max_len;
  std::mt19937_64 rng(seed);
  QuadNum max_perim;
  int k0_first_half = 0;
  int total = 0, half_mark = 0;

  std::vector<int> k0_history;
  for (int len = 1; len <= max_len; ++len) {
    for (int s = 0; s < samples_per_len; ++s) {
      // random reduced word over abstract {x, y}
      std::vector<Letter> ls;
      while (static_cast<int>(ls.size()) < len) {
        Kind k = (rng() & 1) ? Kind::x : Kind::y;
        int sign = (rng() & 1) ? 1 : -1;
        Letter cand(k, 0, sign);
        if (!ls.empty() && ls.back().is_inverse_of(cand)) continue;
        ls.push_back(cand);
      }
      Word w(std::move(ls), true);
      int stable = 1 + static_cast<int>(rng() % static_cast<unsigned long>(tree.m()));
      FoldedCorridor fc = fold_corridor(w, stable, tree, n, phi);
      rep.k0_observed = std::max(rep.k0_observed, fc.bounded_cancellation_span());
      QuadNum perim = fc.max_cell_perimeter();
      if (perim > max_perim) max_perim = perim;
      k0_history.push_back(rep.k0_observed);

      // sample a matched segment pair for K2
      if (!fc.top_vertices.empty() && fc.top_word.size() >= 2) {
        int p1 = static_cast<int>(rng() % fc.top_word.size());
        int p2 = p1 + static_cast<int>(rng() % (fc.top_word.size() - static_cast<std::size_t>(p1))) + 0;
        auto na1 = nearly_above(fc, p1);
        auto na2 = nearly_above(fc, p2);
        if (!na1.empty() && !na2.empty()) {
          int q1 = na1[0].bottom_index;
          int q2 = na2[0].bottom_index;
          if (p1 <= p2 && q1 <= q2) {
            auto b = segment_length_bound(fc, p1, p2, q1, q2, n, phi);
            QuadNum a = b.defect.abs();
            if (a > rep.k2_observed) rep.k2_observed = a;
          }
        }
      }
      ++total;
    }
    if (len == max_len / 2) {
      half_mark = total;
      k0_first_half = rep.k0_observed;
    }
  }
  rep.sample_size = total;
  rep.k1_observed = QuadNum(static_cast<long>(rep.k0_observed + 1)) * max_perim;
  // stability: the max over the first half already equals the final max
  rep.k0_stable = (half_mark == 0) || (k0_first_half == rep.k0_observed);
  return rep;
}

std::string corridor_overlay_svg(const Diagram& d, const CorridorScheme& s) {
  auto pos = d.layout();
  auto X = [&](int v) {
    return 400.0 + 360.0 * pos[static_cast<std::size_t>(d.find_vertex(v))].first;
  };
  auto Y = [&](int v) {
    return 400.0 + 360.0 * pos[static_cast<std::size_t>(d.find_vertex(v))].second;
  };
  auto mid = [&](int dart) {
    return std::make_pair((X(d.tail(dart)) + X(d.head(dart))) / 2.0,
                          (Y(d.tail(dart)) + Y(d.head(dart))) / 2.0);
  };
  std::string base = d.to_svg();
  std::ostringstream os;
  os << base.substr(0, base.rfind("</svg>"));
  for (const Corridor& c : trace(d, s)) {
    os << "<polyline fill=\"none\" stroke=\"#cc2222\" stroke-width=\"2\" points=\"";
    for (int f : c.cells) {
      std::vector<int> sd = [&] {
        std::vector<int> out;
        for (int dart : d.face_cycle(f))
          if (s.contains(d.dart(dart).label)) out.push_back(dart);
        return out;
      }();
      auto [x1, y1] = mid(sd[0]);
      auto [x2, y2] = mid(sd[1]);
      os << x1 << ',' << y1 << ' ' << x2 << ',' << y2 << ' ';
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

BalanceCheck balancing_check(const Word& w, const Word& z, const SnowTree& tree) {
  BalanceCheck out;
  LengthReport mw = measure(w);
  LengthReport mz = measure(z);
  const auto& nu = tree.nu();
  BigInt z_total = mz.total;
  QuadNum z_weighted = mz.weighted_total;
  auto count_at = [&](int idx) -> BigInt {
    auto it = mw.per_peripheral.find(static_cast<std::uint32_t>(idx));
    return it == mw.per_peripheral.end() ? BigInt(0) : it->second;
  };
  auto weight_at = [&](int idx) -> QuadNum {
    auto it = mw.weighted_per_peripheral.find(static_cast<std::uint32_t>(idx));
    return it == mw.weighted_per_peripheral.end() ? QuadNum(0) : it->second;
  };
  for (int i = 1; i <= tree.m(); ++i) {
    BigInt rhs = count_at(nu[static_cast<std::size_t>(i)]) + count_at(nu[0]) + mw.x_count +
                 mw.y_count;
    QuadNum rhs_w = weight_at(nu[static_cast<std::size_t>(i)]) + weight_at(nu[0]) +
                    mw.weighted_x + mw.weighted_y;
    if (z_total > rhs || z_weighted > rhs_w) {
      out.ok = false;
      out.failing_index = i;
      return out;
    }
  }
  return out;
}

}  // namespace snowflake
