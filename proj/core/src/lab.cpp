#include "snowflake/lab.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace snowflake {

namespace {

double big_log(const BigInt& v) { return std::log(static_cast<double>(v)); }

Letter L(Kind k, int idx, int sign = 1) { return Letter(k, static_cast<std::uint32_t>(idx), sign); }

}  // namespace

Word random_reduced_word(const std::vector<Letter>& alphabet, int length, std::mt19937_64& rng) {
  std::vector<Letter> ls;
  int guard = 64 * (length + 1);
  while (static_cast<int>(ls.size()) < length && guard-- > 0) {
    const Letter& base = alphabet[rng() % alphabet.size()];
    Letter cand(base.kind, base.index, (rng() & 1) ? 1 : -1);
    if (!ls.empty() && ls.back().is_inverse_of(cand)) continue;
    ls.push_back(cand);
  }
  return Word(std::move(ls), true);
}

ExponentReport dehn_fit(const SnowTree& tree, int n, const FreeAut& phi, const Word& w,
                        int d_max) {
  ExponentReport rep;
  rep.m = tree.m();
  rep.n = n;
  EigenData eig = transition(phi);
  rep.lambda = eig.pf.exact ? eig.pf.lambda : QuadNum(0);
  rep.lambda_f = eig.pf.exact ? eig.pf.lambda.to_double() : eig.pf.lambda_f;
  rep.alpha = static_cast<double>(n) * std::log(rep.lambda_f) / std::log(static_cast<double>(rep.m));
  rep.target = 2.0 * rep.alpha;
  rep.hypothesis_ok = rep.alpha >= 1.0;

  for (int d = 0; d <= d_max; ++d) {
    SnowflakeReport sr = snowflake_sizes(w, d, tree, n, phi);
    rep.perimeters.push_back(sr.perimeter);
    rep.areas.push_back(sr.area);
  }
  for (int d = 0; d + 1 <= d_max; ++d) {
    double num = big_log(rep.areas[static_cast<std::size_t>(d + 1)]) -
                 big_log(rep.areas[static_cast<std::size_t>(d)]);
    double den = big_log(rep.perimeters[static_cast<std::size_t>(d + 1)]) -
                 big_log(rep.perimeters[static_cast<std::size_t>(d)]);
    rep.slopes.push_back(num / den);
  }
  rep.low_confidence = rep.slopes.size() < 2;
  rep.estimate = rep.slopes.empty() ? 0.0 : rep.slopes.back();
  rep.residual = std::abs(rep.estimate - rep.target);
  return rep;
}

std::pair<Word, Word> distortion_witness(const SnowTree& tree, int n, const FreeAut& phi,
                                         const Word& w, int d) {
  const auto& nu = tree.nu();
  Word wd = substitute_xy(w, L(Kind::a, nu[0]), L(Kind::b, nu[0]));
  for (int k = 1; k <= d; ++k) {
    Word prod;
    for (int i = 1; i <= tree.m(); ++i) {
      prod = prod * Word::one(L(Kind::r, i));
      prod = prod * wd;
      prod = prod * Word::one(L(Kind::r, i, -1));
    }
    wd = prod.inverse();
  }
  Word image = substitute_xy(snowflake_level_word(w, d, n, phi), L(Kind::a, nu[0]),
                             L(Kind::b, nu[0]));
  return {wd, image};
}

DistortionReport distortion_family(const SnowTree& tree, int n, const FreeAut& phi,
                                   const Word& w, int d_max, int certify_depth) {
  DistortionReport rep;
  EigenData eig = transition(phi);
  double lam = eig.pf.exact ? eig.pf.lambda.to_double() : eig.pf.lambda_f;
  double m = static_cast<double>(tree.m());
  rep.alpha = static_cast<double>(n) * std::log(lam) / std::log(m);

  // Exact recurrences: |W_d| = m(|W_{d-1}| + 2), <<W_d>> = m(<<W_{d-1}>> + 2),
  // <<g_d>> from the transition matrix.
  LengthReport mw = measure(w);
  BigInt len = mw.total;
  QuadNum wlen = mw.weighted_total;
  IntMatrix2 Mn = mat_pow(eig.matrix, static_cast<unsigned long>(n));
  std::array<BigInt, 2> counts = count_vector(w);
  const QuadNum d1(Rational(1), Rational(1));
  const QuadNum d2(1);

  double lo = 0.0, hi = 0.0;
  for (int d = 0; d <= d_max; ++d) {
    QuadNum g_weighted = d1 * QuadNum::from_int(counts[0]) + d2 * QuadNum::from_int(counts[1]);
    rep.witness_lengths.push_back(len);
    rep.witness_weighted.push_back(wlen);
    rep.element_weighted.push_back(g_weighted);
    double ratio = g_weighted.to_double() / std::pow(wlen.to_double(), rep.alpha);
    rep.ratios.push_back(ratio);
    if (d >= 1) {
      if (lo == 0.0 || ratio < lo) lo = ratio;
      if (ratio > hi) hi = ratio;
    }
    len = BigInt(tree.m()) * (len + 2);
    wlen = QuadNum(tree.m()) * (wlen + QuadNum(2));
    counts = {Mn.m00 * counts[0] + Mn.m01 * counts[1], Mn.m10 * counts[0] + Mn.m11 * counts[1]};
  }
  rep.band = (lo > 0.0) ? hi / lo : 1.0;

  // Britton certification for small depths.
  Presentation s_pres = presentation_S(tree, n, phi);
  NormalFormEngine eng(s_pres);
  for (int d = 0; d <= certify_depth; ++d) {
    auto [wd, gd] = distortion_witness(tree, n, phi, w, d);
    if (!eng.equal(wd, gd)) break;
    rep.certified_depth = d;
  }
  return rep;
}

namespace {

// Scramble a peripheral word into an equal standard-generator word. Every
// move preserves the group element.
Word scramble(const Word& z, const SnowTree& tree, const Presentation& pres, std::mt19937_64& rng,
              int depth, int insertions) {
  std::vector<Letter> w(z.letters().begin(), z.letters().end());

  // standard letters for insertions
  std::vector<Letter> standard;
  for (const auto& [kind, idx] : pres.standard_generators)
    standard.emplace_back(kind, idx, 1);

  // relators over standard letters only
  std::vector<Word> std_relators;
  for (const Relator& r : pres.relators) {
    bool ok = true;
    for (const Letter& l : r.word.letters()) ok = ok && pres.is_standard(l);
    if (ok) std_relators.push_back(r.word);
  }

  auto factor_support = [&](const Letter& l) -> std::pair<int, int> {
    int j = static_cast<int>(l.index);
    if (l.kind == Kind::x || l.kind == Kind::y) return {j, -1};
    int v = SnowTree::vertex_of(j);
    int next = SnowTree::side_index(v, (SnowTree::corner_of(j) + 1) % 3);
    return {j, next};
  };
  auto commute = [&](const Letter& a, const Letter& b) {
    if (SnowTree::vertex_of(static_cast<int>(a.index)) !=
        SnowTree::vertex_of(static_cast<int>(b.index)))
      return false;
    auto [a1, a2] = factor_support(a);
    auto [b1, b2] = factor_support(b);
    return a1 != b1 && a1 != b2 && a2 != b1 && (a2 < 0 || b2 < 0 || a2 != b2);
  };

  int ins_left = insertions;
  for (int step = 0; step < depth; ++step) {
    unsigned long pick = rng() % 4;
    std::size_t pos = w.empty() ? 0 : rng() % (w.size() + 1);
    switch (pick) {
      case 0: {  // insert u u^-1
        if (ins_left-- <= 0) break;
        Word u = random_reduced_word(standard, 1 + static_cast<int>(rng() % 3), rng);
        Word uu = u * u.inverse();
        w.insert(w.begin() + static_cast<std::ptrdiff_t>(pos), uu.letters().begin(),
                 uu.letters().end());
        break;
      }
      case 1: {  // insert a standard relator, possibly inverted
        if (ins_left-- <= 0 || std_relators.empty()) break;
        Word r = std_relators[rng() % std_relators.size()];
        if (rng() & 1) r = r.inverse();
        w.insert(w.begin() + static_cast<std::ptrdiff_t>(pos), r.letters().begin(),
                 r.letters().end());
        break;
      }
      case 2: {  // expand a peripheral letter via its triangle relation
        if (w.empty()) break;
        std::size_t at = rng() % w.size();
        const Letter l = w[at];
        if (l.kind != Kind::a && l.kind != Kind::b) break;
        int j = static_cast<int>(l.index);
        int v = SnowTree::vertex_of(j);
        int next = SnowTree::side_index(v, (SnowTree::corner_of(j) + 1) % 3);
        Kind xy = l.kind == Kind::a ? Kind::x : Kind::y;
        // a_j = x_j^-1 x_next
        Word expansion = l.sign > 0
                             ? Word({L(xy, j, -1), L(xy, next, 1)})
                             : Word({L(xy, next, -1), L(xy, j, 1)});
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(at));
        w.insert(w.begin() + static_cast<std::ptrdiff_t>(at), expansion.letters().begin(),
                 expansion.letters().end());
        break;
      }
      case 3: {  // swap adjacent commuting letters
        if (w.size() < 2) break;
        std::size_t at = rng() % (w.size() - 1);
        if (commute(w[at], w[at + 1])) std::swap(w[at], w[at + 1]);
        break;
      }
    }
  }
  return Word(std::move(w));
}

}  // namespace

BalancingFuzzReport balancing_fuzz(const SnowTree& tree, int samples, unsigned long seed,
                                   int scramble_depth, int insertions) {
  BalancingFuzzReport rep;
  std::mt19937_64 rng(seed);
  Presentation pres = presentation_VT(tree);
  NormalFormEngine eng(pres);
  const auto& nu = tree.nu();
  std::vector<Letter> ab{L(Kind::a, nu[0]), L(Kind::b, nu[0])};

  for (int s = 0; s < samples; ++s) {
    Word z = random_reduced_word(ab, static_cast<int>(rng() % 13), rng);
    Word w = scramble(z, tree, pres, rng, scramble_depth, insertions);
    rep.samples += 1;
    auto back = eng.reduced_peripheral_word(w, nu[0]);
    if (!back || !(*back == z)) {
      rep.engine_mismatches += 1;
      continue;
    }
    if (!balancing_check(w, z, tree).ok) rep.violations += 1;
  }
  return rep;
}

EmbeddingFuzzReport embedding_fuzz(const SnowTree& tree, int n, const FreeAut& phi, int samples,
                                   unsigned long seed) {
  EmbeddingFuzzReport rep;
  std::mt19937_64 rng(seed);
  Presentation s_pres = presentation_S(tree, n, phi);
  Presentation gs = presentation_G(tree, n, phi, StableCoords::s);
  UntwistResult ut = untwist(gs);
  const Presentation& gu = ut.u_coords;
  NormalFormEngine eng_s(s_pres), eng_gs(gs), eng_gu(gu);
  GroupMap emb_u = embedding_map(s_pres, gu);
  GroupMap emb_s = embedding_map(s_pres, gs);

  for (const Relator& r : s_pres.relators) {
    if (!eng_gu.is_trivial(emb_u.apply(r.word))) rep.relator_images_trivial = false;
    if (!eng_gs.is_trivial(emb_s.apply(r.word))) rep.relator_images_trivial = false;
  }

  std::vector<Letter> alphabet;
  for (const auto& [kind, idx] : s_pres.standard_generators) alphabet.emplace_back(kind, idx, 1);

  for (int s = 0; s < samples; ++s) {
    Word w = random_reduced_word(alphabet, 2 + static_cast<int>(rng() % 9), rng);
    if (rng() % 4 == 0) {
      // occasionally make a trivial word: product of conjugated relators
      Word t;
      int parts = 1 + static_cast<int>(rng() % 2);
      for (int p = 0; p < parts; ++p) {
        Word conj = random_reduced_word(alphabet, static_cast<int>(rng() % 4), rng);
        Word r = s_pres.relators[rng() % s_pres.relators.size()].word;
        if (rng() & 1) r = r.inverse();
        t = t * conj * r * conj.inverse();
      }
      w = t;
    }
    rep.words_checked += 1;
    bool triv_s = eng_s.is_trivial(w);
    bool triv_u = eng_gu.is_trivial(emb_u.apply(w));
    bool triv_gs = eng_gs.is_trivial(emb_s.apply(w));
    if (triv_s != triv_u || triv_s != triv_gs) rep.triviality_mismatches += 1;

    if (s < 100) {
      rep.untwist_checked += 1;
      // embed-then-untwist must agree with the direct s-coordinates image
      Word via_u = ut.u_to_s.apply(emb_u.apply(w));
      if (!eng_gs.equal(via_u, emb_s.apply(w))) rep.untwist_failures += 1;
      // dictionaries must round-trip
      Word gword = random_reduced_word(alphabet, 4, rng);
      Word gs_word = emb_s.apply(gword);
      Word round = ut.u_to_s.apply(ut.s_to_u.apply(gs_word));
      if (!eng_gs.equal(round, gs_word)) rep.untwist_failures += 1;
    }
  }
  return rep;
}

ConstantsReport constants_report(const SnowTree& tree, int n, const FreeAut& phi, int max_len,
                                 int samples_per_len, unsigned long seed) {
  ConstantsReport rep = measure_corridor_constants(tree, n, phi, max_len, samples_per_len, seed);
  EigenData eig = transition(phi);
  double lam = eig.pf.exact ? eig.pf.lambda.to_double() : eig.pf.lambda_f;
  double m = static_cast<double>(tree.m());
  double alpha = static_cast<double>(n) * std::log(lam) / std::log(m);
  Word seed_word = parse_word("x0");

  DistortionReport dist = distortion_family(tree, n, phi, seed_word, 10, -1);
  double k3 = 0.0, k4 = 0.0;
  BigInt len(1);
  IntMatrix2 Mn = mat_pow(eig.matrix, static_cast<unsigned long>(n));
  std::array<BigInt, 2> counts{1, 0};
  for (std::size_t d = 0; d < dist.ratios.size(); ++d) {
    k3 = std::max(k3, dist.ratios[d]);
    double glen = static_cast<double>(counts[0] + counts[1]);
    double wlen = static_cast<double>(dist.witness_lengths[d]);
    k4 = std::max(k4, glen / std::pow(wlen, alpha));
    counts = {Mn.m00 * counts[0] + Mn.m01 * counts[1], Mn.m10 * counts[0] + Mn.m11 * counts[1]};
  }
  (void)len;
  rep.k3_observed = k3;
  rep.k4_observed = k4;
  rep.k5_observed = 3.0 * static_cast<double>(tree.size()) / (m * (m - 1.0));

  double k6 = 0.0;
  for (int d = 1; d <= 10; ++d) {
    SnowflakeReport sr = snowflake_sizes(seed_word, d, tree, n, phi);
    k6 = std::max(k6, static_cast<double>(sr.area) /
                          std::pow(static_cast<double>(sr.perimeter), 2.0 * alpha));
  }
  rep.k6_observed = k6;

  // C with |phi^k(v)| >= C lambda^k |v| over the generators
  double c = 1.0;
  for (Kind k : {Kind::x, Kind::y}) {
    std::array<BigInt, 2> ck{k == Kind::x ? 1 : 0, k == Kind::y ? 1 : 0};
    for (int step = 1; step <= 12; ++step) {
      ck = {eig.matrix.m00 * ck[0] + eig.matrix.m01 * ck[1],
            eig.matrix.m10 * ck[0] + eig.matrix.m11 * ck[1]};
      double ratio = static_cast<double>(ck[0] + ck[1]) / std::pow(lam, step);
      c = std::min(c, ratio);
    }
  }
  rep.c_observed = c;

  // max weighted stretch of phi^-n over sampled reduced words
  std::mt19937_64 rng(seed + 1);
  FreeAut phin_inv = power(phi, -n);
  double stretch = 0.0;
  std::vector<Letter> xy{L(Kind::x, 0), L(Kind::y, 0)};
  for (int s = 0; s < 200; ++s) {
    Word w = random_reduced_word(xy, 1 + static_cast<int>(rng() % 20), rng);
    double num = weighted_length(apply(phin_inv, w)).to_double();
    double den = weighted_length(w).to_double();
    stretch = std::max(stretch, num / den);
  }
  rep.lambda_inv_stretch = stretch;

  double wl = 1.0;  // |x|
  rep.d_observed = 6.0 * static_cast<double>(tree.size()) * c * c * wl * wl *
                   std::pow(m / (4.0 * (m * wl + 1.0)), 2.0 * alpha);
  return rep;
}

std::string ExponentReport::to_json() const {
  nlohmann::json j;
  j["m"] = m;
  j["n"] = n;
  j["lambda"] = lambda_f;
  j["lambda_exact"] = lambda.str();
  j["alpha"] = alpha;
  j["target"] = target;
  j["hypothesis_ok"] = hypothesis_ok;
  j["low_confidence"] = low_confidence;
  j["estimate"] = estimate;
  j["residual"] = residual;
  auto rows = nlohmann::json::array();
  for (std::size_t d = 0; d < areas.size(); ++d) {
    rows.push_back({{"depth", d},
                    {"perimeter", perimeters[d].str()},
                    {"area", areas[d].str()},
                    {"slope", d < slopes.size() ? nlohmann::json(slopes[d]) : nlohmann::json()}});
  }
  j["data"] = rows;
  return j.dump(2);
}

std::string ExponentReport::to_csv() const {
  std::ostringstream os;
  os << "depth,perimeter,area,slope\n";
  for (std::size_t d = 0; d < areas.size(); ++d) {
    os << d << ',' << perimeters[d] << ',' << areas[d] << ',';
    if (d < slopes.size()) os << slopes[d];
    os << '\n';
  }
  return os.str();
}

std::string DistortionReport::to_json() const {
  nlohmann::json j;
  j["alpha"] = alpha;
  j["band"] = band;
  j["certified_depth"] = certified_depth;
  auto rows = nlohmann::json::array();
  for (std::size_t d = 0; d < ratios.size(); ++d) {
    rows.push_back({{"depth", d},
                    {"witness_length", witness_lengths[d].str()},
                    {"witness_weighted", witness_weighted[d].str()},
                    {"element_weighted", element_weighted[d].str()},
                    {"ratio", ratios[d]}});
  }
  j["data"] = rows;
  return j.dump(2);
}

std::string DistortionReport::to_csv() const {
  std::ostringstream os;
  os << "depth,witness_length,witness_weighted,element_weighted,ratio\n";
  for (std::size_t d = 0; d < ratios.size(); ++d) {
    os << d << ',' << witness_lengths[d] << ',' << witness_weighted[d].str() << ','
       << element_weighted[d].str() << ',' << ratios[d] << '\n';
  }
  return os.str();
}

std::string BalancingFuzzReport::to_json() const {
  nlohmann::json j;
  j["samples"] = samples;
  j["violations"] = violations;
  j["engine_mismatches"] = engine_mismatches;
  j["ok"] = ok();
  return j.dump(2);
}

std::string EmbeddingFuzzReport::to_json() const {
  nlohmann::json j;
  j["relator_images_trivial"] = relator_images_trivial;
  j["words_checked"] = words_checked;
  j["triviality_mismatches"] = triviality_mismatches;
  j["untwist_checked"] = untwist_checked;
  j["untwist_failures"] = untwist_failures;
  j["ok"] = ok();
  return j.dump(2);
}

}  // namespace snowflake
