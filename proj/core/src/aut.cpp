#include "snowflake/aut.hpp"

#include <deque>
#include <map>
#include <sstream>
#include <utility>

namespace snowflake {

namespace {

const Letter kX(Kind::x, 0, 1);
const Letter kY(Kind::y, 0, 1);

bool same_kind_monotone(const Word& u, const Word& v) {
  if (!is_monotone(u) || !is_monotone(v)) return false;
  if (u.empty() || v.empty()) return true;
  return (u[0].sign > 0) == (v[0].sign > 0);
}

// Exponent sums (abelianization image) of a word over {x, y}.
std::pair<long, long> exponent_sums(const Word& w) {
  long ex = 0, ey = 0;
  for (const Letter& l : w.letters()) {
    if (l.kind == Kind::x) ex += l.sign;
    else if (l.kind == Kind::y) ey += l.sign;
  }
  return {ex, ey};
}

}  // namespace

FreeAut::FreeAut() : FreeAut(Word::one(kX), Word::one(kY)) {}

FreeAut::FreeAut(Word image_x, Word image_y)
    : ix_(reduce(std::move(image_x))), iy_(reduce(std::move(image_y))) {
  palindromic_ = is_palindromic(ix_) && is_palindromic(iy_);
  monotone_ = same_kind_monotone(ix_, iy_);
}

FreeAut FreeAut::phi() {
  return FreeAut(parse_word("x0 y0 x0"), parse_word("x0"));
}

bool FreeAut::is_identity() const {
  return ix_ == Word::one(kX) && iy_ == Word::one(kY);
}

std::string FreeAut::str() const {
  std::ostringstream os;
  os << "x -> " << ix_ << ", y -> " << iy_;
  return os.str();
}

Word apply(const FreeAut& aut, const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size() * (aut.image_x().size() + 1));
  for (const Letter& l : w.letters()) {
    const Word* img = nullptr;
    if (l.kind == Kind::x) img = &aut.image_x();
    else if (l.kind == Kind::y) img = &aut.image_y();
    else throw AlphabetError("automorphism applied to letter " + l.str());
    if (l.sign > 0) {
      for (const Letter& m : img->letters()) out.push_back(m);
    } else {
      for (auto it = img->letters().rbegin(); it != img->letters().rend(); ++it)
        out.push_back(it->inverse());
    }
  }
  return reduce(Word(std::move(out)));
}

FreeAut compose(const FreeAut& f, const FreeAut& g) {
  return FreeAut(apply(f, g.image_x()), apply(f, g.image_y()));
}

namespace {

// Elementary Nielsen moves acting on an image pair (u, v). Each move is
// right-composition with the listed elementary automorphism.
struct NielsenMove {
  FreeAut elementary;
  Word (*act_u)(const Word&, const Word&);
  Word (*act_v)(const Word&, const Word&);
};

const std::vector<NielsenMove>& nielsen_moves() {
  static const std::vector<NielsenMove> moves = [] {
    auto X = Word::one(kX);
    auto Y = Word::one(kY);
    std::vector<NielsenMove> m;
    // x -> x y
    m.push_back({FreeAut(rmul(X, Y), Y), [](const Word& u, const Word& v) { return rmul(u, v); },
                 [](const Word&, const Word& v) { return v; }});
    // x -> x y^-1
    m.push_back({FreeAut(rmul(X, Y.inverse()), Y),
                 [](const Word& u, const Word& v) { return rmul(u, v.inverse()); },
                 [](const Word&, const Word& v) { return v; }});
    // x -> y x
    m.push_back({FreeAut(rmul(Y, X), Y), [](const Word& u, const Word& v) { return rmul(v, u); },
                 [](const Word&, const Word& v) { return v; }});
    // x -> y^-1 x
    m.push_back({FreeAut(rmul(Y.inverse(), X), Y),
                 [](const Word& u, const Word& v) { return rmul(v.inverse(), u); },
                 [](const Word&, const Word& v) { return v; }});
    // y -> y x
    m.push_back({FreeAut(X, rmul(Y, X)), [](const Word& u, const Word&) { return u; },
                 [](const Word& u, const Word& v) { return rmul(v, u); }});
    // y -> y x^-1
    m.push_back({FreeAut(X, rmul(Y, X.inverse())), [](const Word& u, const Word&) { return u; },
                 [](const Word& u, const Word& v) { return rmul(v, u.inverse()); }});
    // y -> x y
    m.push_back({FreeAut(X, rmul(X, Y)), [](const Word& u, const Word&) { return u; },
                 [](const Word& u, const Word& v) { return rmul(u, v); }});
    // y -> x^-1 y
    m.push_back({FreeAut(X, rmul(X.inverse(), Y)), [](const Word& u, const Word&) { return u; },
                 [](const Word& u, const Word& v) { return rmul(u.inverse(), v); }});
    // x -> x^-1
    m.push_back({FreeAut(X.inverse(), Y), [](const Word& u, const Word&) { return u.inverse(); },
                 [](const Word&, const Word& v) { return v; }});
    // y -> y^-1
    m.push_back({FreeAut(X, Y.inverse()), [](const Word& u, const Word&) { return u; },
                 [](const Word&, const Word& v) { return v.inverse(); }});
    // swap
    m.push_back({FreeAut(Y, X), [](const Word&, const Word& v) { return v; },
                 [](const Word& u, const Word&) { return u; }});
    return m;
  }();
  return moves;
}

}  // namespace

FreeAut inverse(const FreeAut& aut) {
  if (aut.is_identity()) return aut;

  // Necessary condition: the abelianized map must be in GL(2, Z).
  auto [exu, eyu] = exponent_sums(aut.image_x());
  auto [exv, eyv] = exponent_sums(aut.image_y());
  long det = exu * eyv - exv * eyu;
  if (det != 1 && det != -1) throw NotInvertibleError();

  const Word goal_u = Word::one(kX);
  const Word goal_v = Word::one(kY);
  const auto& moves = nielsen_moves();

  // BFS over image pairs, bounded in total length; parent pointers recover
  // the move sequence E_1 ... E_k with aut . E_1 ... E_k = id, whence
  // aut^-1 = E_1 . ... . E_k.
  struct Node {
    Word u, v;
    int parent;
    int move;
  };
  const std::size_t length_cap = aut.image_x().size() + aut.image_y().size() + 4;
  const std::size_t state_cap = 200000;

  std::deque<Node> nodes;
  std::map<std::pair<std::string, std::string>, bool> seen;
  nodes.push_back({aut.image_x(), aut.image_y(), -1, -1});
  seen[{print_word(aut.image_x()), print_word(aut.image_y())}] = true;

  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (nodes.size() > state_cap) break;
    Word u = nodes[head].u;
    Word v = nodes[head].v;
    if (u == goal_u && v == goal_v) {
      FreeAut inv;
      for (int at = static_cast<int>(head); nodes[at].parent >= 0; at = nodes[at].parent) {
        // moves are discovered from the outside in: inv := E_move . inv
        inv = compose(moves[static_cast<std::size_t>(nodes[at].move)].elementary, inv);
      }
      return inv;
    }
    for (std::size_t k = 0; k < moves.size(); ++k) {
      Word nu = moves[k].act_u(u, v);
      Word nv = moves[k].act_v(u, v);
      if (nu.empty() || nv.empty()) continue;
      if (nu.size() + nv.size() > length_cap) continue;
      auto key = std::make_pair(print_word(nu), print_word(nv));
      if (seen.count(key)) continue;
      seen[key] = true;
      nodes.push_back({std::move(nu), std::move(nv), static_cast<int>(head), static_cast<int>(k)});
    }
  }
  throw NotInvertibleError();
}

FreeAut power(const FreeAut& aut, long n) {
  FreeAut base = aut;
  if (n < 0) {
    base = inverse(aut);
    n = -n;
  }
  FreeAut result;
  for (long i = 0; i < n; ++i) result = compose(base, result);
  return result;
}

std::array<BigInt, 2> count_vector(const Word& w) {
  std::array<BigInt, 2> c{0, 0};
  for (const Letter& l : w.letters()) {
    if (l.kind == Kind::x) c[0] += 1;
    else if (l.kind == Kind::y) c[1] += 1;
    else throw AlphabetError("count_vector expects a word over {x, y}");
  }
  return c;
}

EigenData transition(const FreeAut& aut) {
  if (!aut.monotone()) throw NotMonotoneError();
  auto cx = count_vector(aut.image_x());
  auto cy = count_vector(aut.image_y());
  EigenData data;
  data.matrix = IntMatrix2{cx[0], cy[0], cx[1], cy[1]};
  data.pf = pf_eigendata(data.matrix);
  return data;
}

namespace {

QuadNum weighted_by(const Word& w, const QuadNum& d1, const QuadNum& d2) {
  QuadNum total;
  for (const Letter& l : w.letters()) {
    if (l.kind == Kind::x) total += d1;
    else if (l.kind == Kind::y) total += d2;
    else throw AlphabetError("weighted length over {x, y} only");
  }
  return total;
}

}  // namespace

StretchCheck stretch_check(const FreeAut& aut, const Word& w) {
  EigenData eig = transition(aut);
  if (!eig.pf.exact) throw NonExactEigenError();
  Word image = apply(aut, reduce(w));
  StretchCheck chk;
  chk.lhs = weighted_by(image, eig.pf.d1, eig.pf.d2);
  chk.rhs = eig.pf.lambda * weighted_by(reduce(w), eig.pf.d1, eig.pf.d2);
  chk.ok = chk.lhs <= chk.rhs;
  return chk;
}

}  // namespace snowflake
