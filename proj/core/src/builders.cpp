#include "snowflake/builders.hpp"

#include <algorithm>
#include <map>

namespace snowflake {

namespace {

Letter map_letter(const Letter& l, Kind xk, Kind yk, int index) {
  Kind k = l.kind == Kind::x ? xk : yk;
  return Letter(k, static_cast<std::uint32_t>(index), l.sign);
}

// cyclic comparison of short words, up to rotation only
bool cyclic_eq(const std::vector<Letter>& a, const std::vector<Letter>& b) {
  if (a.size() != b.size()) return false;
  std::size_t n = a.size();
  for (std::size_t s = 0; s < n; ++s) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = a[(i + s) % n] == b[i];
    if (ok) return true;
  }
  return false;
}

bool is_vertex_triangle_relator(const Word& w, int i, int inext) {
  // a_i = x_i^-1 x_inext and a_i = x_inext x_i^-1, plus the b/y versions,
  // compared up to rotation and inversion.
  for (Kind ab : {Kind::a, Kind::b}) {
    Kind xy = ab == Kind::a ? Kind::x : Kind::y;
    std::vector<Letter> r1{Letter(ab, static_cast<std::uint32_t>(i), -1),
                           Letter(xy, static_cast<std::uint32_t>(i), -1),
                           Letter(xy, static_cast<std::uint32_t>(inext), 1)};
    std::vector<Letter> r2{Letter(ab, static_cast<std::uint32_t>(i), -1),
                           Letter(xy, static_cast<std::uint32_t>(inext), 1),
                           Letter(xy, static_cast<std::uint32_t>(i), -1)};
    Word w1(r1), w2(r2);
    if (cyclic_eq(w.letters(), w1.letters()) || cyclic_eq(w.letters(), w2.letters()) ||
        cyclic_eq(w.inverse().letters(), w1.letters()) ||
        cyclic_eq(w.inverse().letters(), w2.letters()))
      return true;
  }
  return false;
}

}  // namespace

Diagram triangle_diagram(const Word& w, int corner_subgroup, const SnowTree& tree) {
  if (!is_palindromic(w)) throw NotPalindromicError();
  Diagram d;
  const std::size_t ell = w.size();
  if (ell == 0) return d;

  const int i = corner_subgroup;
  const int v = SnowTree::vertex_of(i);
  const int inext = SnowTree::side_index(v, (SnowTree::corner_of(i) + 1) % 3);

  // Letters: rows carry alphabet i, columns alphabet inext, the long side
  // the peripheral pair of side i (canonicalized if internal).
  std::vector<Letter> row(ell), col(ell), diag(ell);
  for (std::size_t k = 0; k < ell; ++k) {
    row[k] = map_letter(w[k], Kind::x, Kind::y, i);
    col[k] = map_letter(w[k], Kind::x, Kind::y, inext);
    diag[k] = tree.canonical_letter(map_letter(w[k], Kind::a, Kind::b, i));
  }

  // Vertices (r, c) for 0 <= c <= r <= ell.
  auto vid = [&](std::size_t r, std::size_t c) {
    return static_cast<int>(r * (r + 1) / 2 + c);
  };
  for (std::size_t r = 0; r <= ell; ++r)
    for (std::size_t c = 0; c <= r; ++c) d.add_vertex();

  // Edge darts; vertical edges carry inverse row letters so the grid cells
  // close up into relators.
  std::map<std::pair<std::size_t, std::size_t>, int> V, H;
  std::vector<int> D(ell);
  for (std::size_t r = 0; r < ell; ++r)
    for (std::size_t c = 0; c <= r; ++c)
      V[{r, c}] = d.add_edge(vid(r, c), vid(r + 1, c), row[r].inverse());
  for (std::size_t r = 1; r <= ell; ++r)
    for (std::size_t c = 0; c < r; ++c)
      H[{r, c}] = d.add_edge(vid(r, c), vid(r, c + 1), col[c]);
  for (std::size_t r = 0; r < ell; ++r)
    D[r] = d.add_edge(vid(r, r), vid(r + 1, r + 1), diag[r]);

  auto twin = [&](int dart) { return d.dart(dart).twin; };

  // Diagonal cells.
  for (std::size_t r = 0; r < ell; ++r)
    d.add_face(FaceType::triangle, {V[{r, r}], H[{r + 1, r}], twin(D[r])});

  // Interior cells.
  for (std::size_t r = 1; r < ell; ++r) {
    for (std::size_t c = 0; c < r; ++c) {
      if (row[r].kind != col[c].kind) {
        d.add_face(FaceType::quadrilateral,
                   {V[{r, c}], H[{r + 1, c}], twin(V[{r, c + 1}]), twin(H[{r, c}])});
        continue;
      }
      // Same-kind pair: split into two triangles along an a/b diagonal.
      Kind ab = row[r].kind == Kind::x ? Kind::a : Kind::b;
      const Letter p = row[r];   // alphabet i letter, with sign
      const Letter q = col[c];   // alphabet inext letter
      struct Config { bool main; int sign; };
      std::optional<Config> chosen;
      for (bool main_diag : {true, false}) {
        for (int sign : {1, -1}) {
          Letter lab(ab, static_cast<std::uint32_t>(i), sign);
          Word t1, t2;
          if (main_diag) {
            t1 = Word({p.inverse(), q, lab.inverse()});
            t2 = Word({lab, p, q.inverse()});
          } else {
            t1 = Word({p.inverse(), lab, q.inverse()});
            t2 = Word({q, p, lab.inverse()});
          }
          if (is_vertex_triangle_relator(t1, i, inext) &&
              is_vertex_triangle_relator(t2, i, inext)) {
            chosen = Config{main_diag, sign};
            break;
          }
        }
        if (chosen) break;
      }
      if (!chosen) throw std::logic_error("no valid diagonal split for same-kind cell");
      Letter lab = tree.canonical_letter(Letter(ab, static_cast<std::uint32_t>(i), chosen->sign));
      if (chosen->main) {
        int dg = d.add_edge(vid(r, c), vid(r + 1, c + 1), lab);
        d.add_face(FaceType::triangle, {V[{r, c}], H[{r + 1, c}], twin(dg)});
        d.add_face(FaceType::triangle, {dg, twin(V[{r, c + 1}]), twin(H[{r, c}])});
      } else {
        int dg = d.add_edge(vid(r + 1, c), vid(r, c + 1), lab);
        d.add_face(FaceType::triangle, {V[{r, c}], dg, twin(H[{r, c}])});
        d.add_face(FaceType::triangle, {H[{r + 1, c}], twin(V[{r, c + 1}]), twin(dg)});
      }
    }
  }

  // Outer walk: up the left column (reads w(x_i, y_i), palindromic), down
  // the long side (reads w(a_i, b_i)), and leftward along the bottom
  // (reads w(x_j, y_j)^-1).
  std::vector<int> outer;
  for (std::size_t r = ell; r-- > 0;) outer.push_back(twin(V[{r, 0}]));
  for (std::size_t r = 0; r < ell; ++r) outer.push_back(D[r]);
  for (std::size_t c = ell; c-- > 0;) outer.push_back(twin(H[{ell, c}]));
  d.finish(outer);
  return d;
}

namespace {

Word peripheral_word(const Word& w, int subgroup, const SnowTree& tree, bool canonical = true) {
  Word out = substitute_xy(w, Letter(Kind::a, static_cast<std::uint32_t>(subgroup)),
                           Letter(Kind::b, static_cast<std::uint32_t>(subgroup)));
  if (!canonical) return out;
  std::vector<Letter> ls;
  for (const Letter& l : out.letters()) ls.push_back(tree.canonical_letter(l));
  return Word(std::move(ls));
}

// Position of the length-len arc reading `pattern` in the outer walk;
// requires the match to start at a multiple-free scan from the basepoint.
std::optional<std::size_t> find_arc(const Diagram& d, const Word& pattern) {
  auto outer = d.outer_cycle();
  std::size_t n = outer.size(), len = pattern.size();
  if (len == 0 || len > n) return std::nullopt;
  for (std::size_t start = 0; start < n; ++start) {
    bool ok = true;
    for (std::size_t k = 0; k < len && ok; ++k)
      ok = d.dart(outer[(start + k) % n]).label == pattern[k];
    if (ok) return start;
  }
  return std::nullopt;
}

}  // namespace

Diagram canonical_diagram(const Word& w, const SnowTree& tree) {
  if (!is_palindromic(w)) throw NotPalindromicError();
  const std::size_t ell = w.size();
  Diagram result;
  if (ell == 0) return result;

  // Per-vertex fan of three triangle diagrams.
  auto fan = [&](int v) {
    int p0 = SnowTree::side_index(v, 0);
    int p1 = SnowTree::side_index(v, 1);
    int p2 = SnowTree::side_index(v, 2);
    Diagram f = triangle_diagram(w, p0, tree);
    f.attach(triangle_diagram(w, p1, tree), 2 * ell, 0, ell);
    f.attach(triangle_diagram(w, p2, tree), 3 * ell, 0, ell);
    f.fold(4 * ell, 0, ell);
    return f;
  };

  // Assemble fans along the tree, mirroring the polygon D.
  result = fan(0);
  // BFS in the same order the tree was built.
  std::vector<int> order;
  std::vector<bool> seen(static_cast<std::size_t>(tree.size()), false);
  seen[0] = true;
  std::vector<int> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int at = queue[head];
    for (std::size_t e = 0; e < tree.edges().size(); ++e) {
      const TreeEdge& te = tree.edges()[e];
      int other = -1;
      if (te.u == at && !seen[static_cast<std::size_t>(te.v)]) other = te.v;
      if (te.v == at && !seen[static_cast<std::size_t>(te.u)]) other = te.u;
      if (other < 0) continue;
      seen[static_cast<std::size_t>(other)] = true;
      queue.push_back(other);
      int side_here = te.u == at ? te.side_u : te.side_v;
      int side_there = te.u == at ? te.side_v : te.side_u;
      Word pat = peripheral_word(w, side_here, tree);
      auto pos = find_arc(result, pat);
      if (!pos) throw std::logic_error("canonical assembly: side arc not found");
      Diagram f = fan(other);
      Word pat_other = peripheral_word(w, side_there, tree);
      auto pos_other = find_arc(f, pat_other);
      if (!pos_other) throw std::logic_error("canonical assembly: fan arc not found");
      result.attach(std::move(f), *pos, *pos_other, ell);
    }
  }

  // Basepoint at the start of the nu_0 subword.
  Word nu0 = peripheral_word(w, tree.nu()[0], tree);
  auto pos = find_arc(result, nu0);
  if (!pos) throw std::logic_error("canonical assembly: nu_0 arc not found");
  result.set_basepoint(*pos);
  return result;
}

Diagram doubled_canonical(const Word& w, const SnowTree& tree) {
  if (!is_palindromic(w)) throw NotPalindromicError();
  if (w.empty()) return {};
  Diagram a = canonical_diagram(w, tree);
  Diagram b = canonical_diagram(w.inverse(), tree);
  a.attach(std::move(b), 0, 0, w.size());
  return a;
}

Word snowflake_level_word(const Word& w, int k, int n, const FreeAut& phi) {
  return apply(power(phi, static_cast<long>(k) * n), w);
}

SnowflakeReport snowflake_sizes(const Word& w, int depth, const SnowTree& tree, int n,
                                const FreeAut& phi) {
  if (!is_palindromic(w)) throw NotPalindromicError();
  if (!is_monotone(w)) throw NotMonotoneError();
  SnowflakeReport rep;
  rep.depth = depth;
  const BigInt T = tree.size();
  const BigInt m = tree.m();
  if (w.empty()) {
    rep.subwords_per_level.assign(static_cast<std::size_t>(depth) + 1, BigInt(0));
    rep.image_lengths.assign(static_cast<std::size_t>(depth) + 1, BigInt(0));
    return rep;
  }

  EigenData eig = transition(phi);
  IntMatrix2 Mn = mat_pow(eig.matrix, static_cast<unsigned long>(n));
  std::array<BigInt, 2> counts = count_vector(w);
  // Weighted lengths use the global convention d1 = 1+sqrt(2), d2 = 1.
  QuadNum d1(Rational(1), Rational(1));
  QuadNum d2(1);

  // ell_k = |phi^{kn}(w)|; monotone words have cancellation-free images.
  std::vector<BigInt> ell(static_cast<std::size_t>(depth) + 1);
  std::array<BigInt, 2> ck = counts;
  for (int k = 0; k <= depth; ++k) {
    ell[static_cast<std::size_t>(k)] = ck[0] + ck[1];
    if (k < depth) ck = {Mn.m00 * ck[0] + Mn.m01 * ck[1], Mn.m10 * ck[0] + Mn.m11 * ck[1]};
  }
  rep.image_lengths = ell;

  // S_k = 2m * m^k boundary subwords, R_k = R_{k-1} + 2 S_{k-1} stable
  // letter occurrences.
  std::vector<BigInt> S(static_cast<std::size_t>(depth) + 1);
  BigInt R = 0;
  S[0] = 2 * m;
  for (int k = 1; k <= depth; ++k) S[static_cast<std::size_t>(k)] = m * S[static_cast<std::size_t>(k - 1)];
  for (int k = 1; k <= depth; ++k) R += 2 * S[static_cast<std::size_t>(depth - k)];
  rep.subwords_per_level = S;
  rep.r_count = R;
  rep.boundary_subwords = S[static_cast<std::size_t>(depth)];

  // Area: central doubled canonical plus, per attachment at level k, a strip
  // of ell_k cells and a canonical diagram of area 3|T| ell_k^2.
  BigInt area = 6 * T * ell[static_cast<std::size_t>(depth)] * ell[static_cast<std::size_t>(depth)];
  for (int k = 0; k < depth; ++k) {
    const BigInt& lk = ell[static_cast<std::size_t>(k)];
    area += S[static_cast<std::size_t>(depth - 1 - k)] * (lk + 3 * T * lk * lk);
  }
  rep.area = area;

  rep.perimeter = rep.boundary_subwords * ell[0] + R;
  // Weighted: subwords weigh like w itself; r letters weigh 1.
  QuadNum w_weighted = d1 * QuadNum::from_int(counts[0]) + d2 * QuadNum::from_int(counts[1]);
  QuadNum subtotal;
  // boundary_subwords * w_weighted + R
  subtotal = w_weighted * QuadNum::from_int(rep.boundary_subwords) + QuadNum::from_int(R);
  rep.weighted_perimeter = subtotal;
  return rep;
}

namespace {

// One r_i-strip: bottom reads B = (w at nu_0)^eps, top reads the phi^n
// image at nu_i. Outer walk from the basepoint: B, r_i^-1, image^-1, r_i.
Diagram build_strip(const Word& bottom_xy, int stable_index, int nu0, int nui, int n,
                    const FreeAut& phi) {
  Diagram d;
  const std::size_t L = bottom_xy.size();
  FreeAut phin = power(phi, n);
  Letter rl(Kind::r, static_cast<std::uint32_t>(stable_index), 1);

  std::vector<Word> images(L);
  std::vector<std::size_t> top_off(L + 1, 0);
  for (std::size_t k = 0; k < L; ++k) {
    images[k] = substitute_xy(apply(phin, Word::one(bottom_xy[k])),
                              Letter(Kind::a, static_cast<std::uint32_t>(nui)),
                              Letter(Kind::b, static_cast<std::uint32_t>(nui)));
    top_off[k + 1] = top_off[k] + images[k].size();
  }

  // bottom vertices u_0..u_L, then top chain vertices t_0 .. t_(total)
  std::vector<int> bot(L + 1), top(top_off[L] + 1);
  for (std::size_t k = 0; k <= L; ++k) bot[k] = d.add_vertex();
  for (std::size_t k = 0; k <= top_off[L]; ++k) top[k] = d.add_vertex();

  std::vector<int> bottom_darts(L), r_darts(L + 1);
  std::vector<std::vector<int>> top_darts(L);
  for (std::size_t k = 0; k < L; ++k) {
    Word bperiph = substitute_xy(Word::one(bottom_xy[k]),
                                 Letter(Kind::a, static_cast<std::uint32_t>(nu0)),
                                 Letter(Kind::b, static_cast<std::uint32_t>(nu0)));
    bottom_darts[k] = d.add_edge(bot[k], bot[k + 1], bperiph[0]);
  }
  for (std::size_t k = 0; k <= L; ++k) r_darts[k] = d.add_edge(top[top_off[k]], bot[k], rl);
  for (std::size_t k = 0; k < L; ++k) {
    for (std::size_t j = 0; j < images[k].size(); ++j) {
      top_darts[k].push_back(
          d.add_edge(top[top_off[k] + j], top[top_off[k] + j + 1], images[k][j]));
    }
  }

  auto twin = [&](int dart) { return d.dart(dart).twin; };
  // Cell k cycle: r_k^-1 (up), image_k (forward along the top), r_{k+1}
  // (down), bottom_k^-1 (backward).
  for (std::size_t k = 0; k < L; ++k) {
    std::vector<int> cycle{twin(r_darts[k])};
    for (int t : top_darts[k]) cycle.push_back(t);
    cycle.push_back(r_darts[k + 1]);
    cycle.push_back(twin(bottom_darts[k]));
    d.add_face(FaceType::r_cell, cycle);
  }

  // Outer: bottom forward, right r up (r^-1), top backward (image^-1),
  // left r down (r).
  std::vector<int> outer;
  for (std::size_t k = 0; k < L; ++k) outer.push_back(bottom_darts[k]);
  outer.push_back(twin(r_darts[L]));
  for (std::size_t k = L; k-- > 0;)
    for (std::size_t j = top_darts[k].size(); j-- > 0;) outer.push_back(twin(top_darts[k][j]));
  outer.push_back(r_darts[0]);
  d.finish(outer);
  return d;
}

}  // namespace

SnowflakeResult snowflake_diagram(const Word& w, int depth, const SnowTree& tree, int n,
                          const FreeAut& phi, bool materialize, const BigInt& face_budget) {
  SnowflakeResult res;
  res.report = snowflake_sizes(w, depth, tree, n, phi);
  if (!materialize) return res;
  if (res.report.area > face_budget) {
    res.report.too_large = true;
    return res;
  }
  if (w.empty()) {
    res.diagram = Diagram();
    res.report.materialized = true;
    return res;
  }

  const auto& nu = tree.nu();
  const int m = tree.m();

  // Level words phi^{kn}(w), k = 0..depth.
  std::vector<Word> level(static_cast<std::size_t>(depth) + 1);
  level[0] = reduce(w);
  FreeAut phin = power(phi, n);
  for (int k = 1; k <= depth; ++k)
    level[static_cast<std::size_t>(k)] = apply(phin, level[static_cast<std::size_t>(k - 1)]);

  Diagram delta = doubled_canonical(level[static_cast<std::size_t>(depth)], tree);

  for (int k = depth - 1; k >= 0; --k) {
    const Word& v = level[static_cast<std::size_t>(k)];
    const Word& V = level[static_cast<std::size_t>(k + 1)];
    // Patterns for the level-(k+1) subwords at each peripheral rank.
    std::vector<Word> pat(static_cast<std::size_t>(m) + 1), pat_inv(static_cast<std::size_t>(m) + 1);
    for (int i = 1; i <= m; ++i) {
      pat[static_cast<std::size_t>(i)] =
          peripheral_word(V, nu[static_cast<std::size_t>(i)], tree);
      pat_inv[static_cast<std::size_t>(i)] = pat[static_cast<std::size_t>(i)].inverse();
    }

    bool found = true;
    while (found) {
      found = false;
      auto outer = delta.outer_cycle();
      const std::size_t P = outer.size();
      std::size_t pos = 0;
      while (pos < P) {
        const Letter& l = delta.dart(outer[pos]).label;
        if (l.kind == Kind::r) {
          ++pos;
          continue;
        }
        int rank = tree.peripheral_rank(static_cast<int>(l.index));
        if (rank < 1) throw std::logic_error("snowflake parse: unexpected boundary letter");
        auto matches = [&](const Word& pattern) {
          if (pattern.size() > P) return false;
          for (std::size_t q = 0; q < pattern.size(); ++q)
            if (!(delta.dart(outer[(pos + q) % P]).label == pattern[q])) return false;
          return true;
        };
        int eps = 0;
        if (matches(pat[static_cast<std::size_t>(rank)])) eps = 1;
        else if (matches(pat_inv[static_cast<std::size_t>(rank)])) eps = -1;
        if (eps != 0) {
          // Attach the strip along this subword, then the canonical diagram
          // of v^-eps along the fresh nu_0 side.
          Word bottom_xy = eps > 0 ? v : v.inverse();
          Diagram strip = build_strip(bottom_xy, rank, nu[0],
                                      nu[static_cast<std::size_t>(rank)], n, phi);
          std::size_t Lb = bottom_xy.size();
          std::size_t top_len = V.size();
          delta.attach(std::move(strip), pos, Lb + 1, top_len);
          // locate the fresh nu_0 arc (the only nu_0 letters on the boundary)
          Word b_arc = peripheral_word(bottom_xy, nu[0], tree, /*canonical=*/false);
          auto bpos = find_arc(delta, b_arc);
          if (!bpos) throw std::logic_error("snowflake: bottom arc not found");
          Diagram cap = canonical_diagram(reduce(bottom_xy.inverse()), tree);
          delta.attach(std::move(cap), *bpos, 0, Lb);
          found = true;
          break;
        }
        // Otherwise this position starts a level-k subword or a processed
        // region; skip one whole subword.
        bool skipped = false;
        for (int i = 1; i <= m && !skipped; ++i) {
          Word sv = peripheral_word(v, nu[static_cast<std::size_t>(i)], tree);
          auto match_skip = [&](const Word& pattern) {
            if (pattern.empty()) return false;
            for (std::size_t q = 0; q < pattern.size(); ++q)
              if (!(delta.dart(outer[(pos + q) % P]).label == pattern[q])) return false;
            return true;
          };
          if (match_skip(sv) || match_skip(sv.inverse())) {
            pos += sv.size();
            skipped = true;
          }
        }
        if (!skipped) throw std::logic_error("snowflake parse: no pattern matches");
      }
    }
  }

  // Basepoint: start of the first subword after an r-letter, for a stable
  // canonical boundary description.
  res.diagram = std::move(delta);
  res.report.materialized = true;
  return res;
}

}  // namespace snowflake
