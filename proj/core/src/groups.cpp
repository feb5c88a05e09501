#include "snowflake/groups.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace snowflake {

int face_area(FaceType t) {
  return t == FaceType::quadrilateral ? 2 : 1;
}

const char* face_type_name(FaceType t) {
  switch (t) {
    case FaceType::triangle: return "triangle";
    case FaceType::quadrilateral: return "quadrilateral";
    case FaceType::r_cell: return "r";
    case FaceType::s_cell: return "s";
    case FaceType::u_cell: return "u";
    case FaceType::g_cell: return "g";
  }
  return "?";
}

FaceType face_type_from_name(const std::string& name) {
  if (name == "triangle") return FaceType::triangle;
  if (name == "quadrilateral") return FaceType::quadrilateral;
  if (name == "r") return FaceType::r_cell;
  if (name == "s") return FaceType::s_cell;
  if (name == "u") return FaceType::u_cell;
  if (name == "g") return FaceType::g_cell;
  throw ParseError("unknown face type '" + name + "'");
}

void Presentation::validate_word(const Word& w, bool standard_only) const {
  for (const Letter& l : w.letters()) {
    if (!has_generator(l)) throw AlphabetError("letter " + l.str() + " is not a generator here");
    if (standard_only && !is_standard(l))
      throw AlphabetError("letter " + l.str() + " is not a standard generator");
  }
}

Word Presentation::canonicalize(const Word& w) const {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (const Letter& l : w.letters()) out.push_back(tree.canonical_letter(l));
  return Word(std::move(out), w.reduced_flag());
}

namespace {

bool cyclic_equal(const std::vector<Letter>& a, const std::vector<Letter>& b) {
  if (a.size() != b.size()) return false;
  std::size_t n = a.size();
  if (n == 0) return true;
  for (std::size_t shift = 0; shift < n; ++shift) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = a[(i + shift) % n] == b[i];
    if (ok) return true;
  }
  return false;
}

}  // namespace

bool Presentation::matches_relator(const Word& w, FaceType* type_out) const {
  Word cw = canonicalize(w);
  Word cwi = cw.inverse();
  for (const Relator& rel : relators) {
    if (cyclic_equal(cw.letters(), rel.word.letters()) ||
        cyclic_equal(cwi.letters(), rel.word.letters())) {
      if (type_out) *type_out = rel.type;
      return true;
    }
  }
  return false;
}

namespace {

Letter L(Kind k, int idx, int sign = 1) { return Letter(k, static_cast<std::uint32_t>(idx), sign); }

Word make_word(std::initializer_list<Letter> ls) { return Word(std::vector<Letter>(ls)); }

void add_relator(Presentation& p, std::initializer_list<Letter> ls, FaceType t) {
  p.relators.push_back({p.canonicalize(make_word(ls)), t});
}

// The eighteen relators of one vertex group copy with triple base 3v.
void add_vertex_relators(Presentation& p, int v) {
  for (int i = 0; i < 3; ++i) {
    int j = SnowTree::side_index(v, i);
    int jn = SnowTree::side_index(v, (i + 1) % 3);
    add_relator(p, {L(Kind::a, j, -1), L(Kind::x, j, -1), L(Kind::x, jn)}, FaceType::triangle);
    add_relator(p, {L(Kind::a, j, -1), L(Kind::x, jn), L(Kind::x, j, -1)}, FaceType::triangle);
    add_relator(p, {L(Kind::b, j, -1), L(Kind::y, j, -1), L(Kind::y, jn)}, FaceType::triangle);
    add_relator(p, {L(Kind::b, j, -1), L(Kind::y, jn), L(Kind::y, j, -1)}, FaceType::triangle);
    add_relator(p, {L(Kind::x, j), L(Kind::y, jn), L(Kind::x, j, -1), L(Kind::y, jn, -1)},
                FaceType::quadrilateral);
    add_relator(p, {L(Kind::x, jn), L(Kind::y, j), L(Kind::x, jn, -1), L(Kind::y, j, -1)},
                FaceType::quadrilateral);
  }
}

// Free-by-cyclic and product relators that enlarge a V vertex copy to a W
// vertex copy.
void add_vertex_relators_W(Presentation& p, int v) {
  const Word phin_x = apply(power(p.phi, p.n), Word::one(L(Kind::x, 0)));
  const Word phin_y = apply(power(p.phi, p.n), Word::one(L(Kind::y, 0)));
  for (int i = 0; i < 3; ++i) {
    int j = SnowTree::side_index(v, i);
    int jn = SnowTree::side_index(v, (i + 1) % 3);
    // t_j x_j t_j^-1 = phi^n(x)(x_j, y_j), same for y
    Word tx = Word({L(Kind::t, j), L(Kind::x, j), L(Kind::t, j, -1)}) *
              substitute_xy(phin_x, L(Kind::x, j), L(Kind::y, j)).inverse();
    Word ty = Word({L(Kind::t, j), L(Kind::y, j), L(Kind::t, j, -1)}) *
              substitute_xy(phin_y, L(Kind::x, j), L(Kind::y, j)).inverse();
    p.relators.push_back({p.canonicalize(tx), FaceType::g_cell});
    p.relators.push_back({p.canonicalize(ty), FaceType::g_cell});
    // c_j = t_j t_jn in both orders
    add_relator(p, {L(Kind::c, j, -1), L(Kind::t, j), L(Kind::t, jn)}, FaceType::g_cell);
    add_relator(p, {L(Kind::c, j, -1), L(Kind::t, jn), L(Kind::t, j)}, FaceType::g_cell);
    // cross-factor commutation of t with the next factor
    add_relator(p, {L(Kind::t, j), L(Kind::x, jn), L(Kind::t, j, -1), L(Kind::x, jn, -1)},
                FaceType::g_cell);
    add_relator(p, {L(Kind::t, j), L(Kind::y, jn), L(Kind::t, j, -1), L(Kind::y, jn, -1)},
                FaceType::g_cell);
    add_relator(p, {L(Kind::x, j), L(Kind::t, jn), L(Kind::x, j, -1), L(Kind::t, jn, -1)},
                FaceType::g_cell);
    add_relator(p, {L(Kind::y, j), L(Kind::t, jn), L(Kind::y, j, -1), L(Kind::t, jn, -1)},
                FaceType::g_cell);
  }
}

void add_generators(Presentation& p, bool with_t) {
  const SnowTree& tree = p.tree;
  for (int j = 0; j < tree.num_subgroup_indices(); ++j) {
    p.generators.insert({Kind::x, static_cast<std::uint32_t>(j)});
    p.generators.insert({Kind::y, static_cast<std::uint32_t>(j)});
    p.generators.insert({Kind::a, static_cast<std::uint32_t>(j)});
    p.generators.insert({Kind::b, static_cast<std::uint32_t>(j)});
    p.standard_generators.insert({Kind::x, static_cast<std::uint32_t>(j)});
    p.standard_generators.insert({Kind::y, static_cast<std::uint32_t>(j)});
    if (tree.is_peripheral(j)) {
      p.standard_generators.insert({Kind::a, static_cast<std::uint32_t>(j)});
      p.standard_generators.insert({Kind::b, static_cast<std::uint32_t>(j)});
    }
    if (with_t) {
      p.generators.insert({Kind::t, static_cast<std::uint32_t>(j)});
      p.generators.insert({Kind::c, static_cast<std::uint32_t>(j)});
      p.standard_generators.insert({Kind::t, static_cast<std::uint32_t>(j)});
      if (tree.is_peripheral(j))
        p.standard_generators.insert({Kind::c, static_cast<std::uint32_t>(j)});
    }
  }
}

}  // namespace

Word twisted_image(const FreeAut& phi, int n, Kind kind, int sign, int subgroup) {
  Word base = Word::one(L(kind == Kind::a || kind == Kind::x ? Kind::x : Kind::y, 0, sign));
  Word image = apply(power(phi, n), base);
  return substitute_xy(image, L(Kind::a, subgroup), L(Kind::b, subgroup));
}

Presentation presentation_V() { return presentation_VT(SnowTree::build({})); }

Presentation presentation_VT(const SnowTree& tree) {
  Presentation p;
  p.kind = GroupKind::V_T;
  p.tree = tree;
  add_generators(p, /*with_t=*/false);
  for (int v = 0; v < tree.size(); ++v) add_vertex_relators(p, v);
  return p;
}

Presentation presentation_S(const SnowTree& tree, int n, const FreeAut& phi) {
  Presentation p = presentation_VT(tree);
  p.kind = GroupKind::S_Tn;
  p.n = n;
  p.phi = phi;
  const auto& nu = tree.nu();
  for (int i = 1; i <= tree.m(); ++i) {
    p.generators.insert({Kind::r, static_cast<std::uint32_t>(i)});
    p.standard_generators.insert({Kind::r, static_cast<std::uint32_t>(i)});
    Word ra = Word({L(Kind::r, i), L(Kind::a, nu[0]), L(Kind::r, i, -1)}) *
              twisted_image(phi, n, Kind::a, 1, nu[static_cast<std::size_t>(i)]).inverse();
    Word rb = Word({L(Kind::r, i), L(Kind::b, nu[0]), L(Kind::r, i, -1)}) *
              twisted_image(phi, n, Kind::b, 1, nu[static_cast<std::size_t>(i)]).inverse();
    p.relators.push_back({p.canonicalize(ra), FaceType::r_cell});
    p.relators.push_back({p.canonicalize(rb), FaceType::r_cell});
  }
  return p;
}

Presentation presentation_WT(const SnowTree& tree, int n, const FreeAut& phi) {
  Presentation p;
  p.kind = GroupKind::W_T;
  p.tree = tree;
  p.n = n;
  p.phi = phi;
  add_generators(p, /*with_t=*/true);
  for (int v = 0; v < tree.size(); ++v) {
    add_vertex_relators(p, v);
    add_vertex_relators_W(p, v);
  }
  return p;
}

Presentation presentation_G(const SnowTree& tree, int n, const FreeAut& phi, StableCoords coords) {
  Presentation p = presentation_WT(tree, n, phi);
  p.kind = coords == StableCoords::s ? GroupKind::G_s : GroupKind::G_u;
  const auto& nu = tree.nu();
  Kind stable = coords == StableCoords::s ? Kind::s : Kind::u;
  FaceType cell = coords == StableCoords::s ? FaceType::s_cell : FaceType::u_cell;
  for (int i = 1; i <= tree.m(); ++i) {
    p.generators.insert({stable, static_cast<std::uint32_t>(i)});
    p.standard_generators.insert({stable, static_cast<std::uint32_t>(i)});
    int ni = nu[static_cast<std::size_t>(i)];
    auto conj = [&](Kind k) {
      return Word({L(stable, i), L(k, nu[0]), L(stable, i, -1)});
    };
    Word ra, rb, rc;
    if (coords == StableCoords::s) {
      ra = conj(Kind::a) * Word({L(Kind::a, ni, -1)});
      rb = conj(Kind::b) * Word({L(Kind::b, ni, -1)});
    } else {
      ra = conj(Kind::a) * twisted_image(phi, n, Kind::a, 1, ni).inverse();
      rb = conj(Kind::b) * twisted_image(phi, n, Kind::b, 1, ni).inverse();
    }
    rc = conj(Kind::c) * Word({L(Kind::c, ni, -1)});
    p.relators.push_back({p.canonicalize(ra), cell});
    p.relators.push_back({p.canonicalize(rb), cell});
    p.relators.push_back({p.canonicalize(rc), cell});
  }
  return p;
}

Word GroupMap::apply(const Word& w) const {
  std::vector<Letter> out;
  for (const Letter& l : w.letters()) {
    auto it = images.find({l.kind, l.index});
    if (it == images.end()) {
      out.push_back(l);
      continue;
    }
    const Word& img = l.sign > 0 ? it->second : it->second.inverse();
    for (const Letter& m : img.letters()) out.push_back(m);
  }
  return reduce(Word(std::move(out)));
}

UntwistResult untwist(const Presentation& p) {
  if (p.kind != GroupKind::G_s)
    throw std::invalid_argument("untwist expects a presentation in s coordinates");
  UntwistResult res;
  res.u_coords = presentation_G(p.tree, p.n, p.phi, StableCoords::u);
  res.s_to_u.source_kind = GroupKind::G_s;
  res.s_to_u.target_kind = GroupKind::G_u;
  res.u_to_s.source_kind = GroupKind::G_u;
  res.u_to_s.target_kind = GroupKind::G_s;
  const auto& nu = p.tree.nu();
  for (int i = 1; i <= p.tree.m(); ++i) {
    int ni = nu[static_cast<std::size_t>(i)];
    res.s_to_u.images[{Kind::s, static_cast<std::uint32_t>(i)}] =
        make_word({L(Kind::c, ni, -1), L(Kind::u, i)});
    res.u_to_s.images[{Kind::u, static_cast<std::uint32_t>(i)}] =
        make_word({L(Kind::c, ni), L(Kind::s, i)});
  }
  return res;
}

GroupMap embedding_map(const Presentation& s_pres, const Presentation& g_pres) {
  GroupMap map;
  map.source_kind = s_pres.kind;
  map.target_kind = g_pres.kind;
  const auto& nu = s_pres.tree.nu();
  for (int i = 1; i <= s_pres.tree.m(); ++i) {
    if (g_pres.kind == GroupKind::G_u) {
      map.images[{Kind::r, static_cast<std::uint32_t>(i)}] = make_word({L(Kind::u, i)});
    } else {
      int ni = nu[static_cast<std::size_t>(i)];
      map.images[{Kind::r, static_cast<std::uint32_t>(i)}] =
          make_word({L(Kind::c, ni), L(Kind::s, i)});
    }
  }
  return map;
}

std::string Presentation::to_json() const {
  nlohmann::json j;
  j["generators"] = nlohmann::json::array();
  for (const auto& [kind, idx] : generators)
    j["generators"].push_back(Letter(kind, idx).str());
  j["relators"] = nlohmann::json::array();
  for (const Relator& r : relators)
    j["relators"].push_back({{"word", print_word(r.word)}, {"type", face_type_name(r.type)}});
  j["meta"] = {{"tree", nlohmann::json::parse(tree.to_json())},
               {"n", n},
               {"phi", {{"x", print_word(phi.image_x())}, {"y", print_word(phi.image_y())}}}};
  return j.dump(2);
}

std::string Presentation::to_relator_text() const {
  std::ostringstream os;
  os << "# generators:";
  for (const auto& [kind, idx] : generators) os << ' ' << Letter(kind, idx).str();
  os << '\n';
  for (const Relator& r : relators) os << print_word(r.word) << '\n';
  return os.str();
}

}  // namespace snowflake
