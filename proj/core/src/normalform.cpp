#include "snowflake/normalform.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>

namespace snowflake {

namespace {

Word abstract_letter(Kind k, int sign) { return Word::one(Letter(k, 0, sign)); }

}  // namespace

Word BrittonForm::to_word() const {
  Word out;
  for (std::size_t i = 0; i < stables.size(); ++i) {
    out = out * segments[i];
    out = out * Word::one(stables[i]);
  }
  if (!segments.empty()) out = out * segments.back();
  return out;
}

GNormalForm g_normalize(const Word& w, int n, const FreeAut& phi) {
  GNormalForm nf;
  std::map<long, FreeAut> cache;
  auto phi_pow = [&](long e) -> const FreeAut& {
    auto it = cache.find(e);
    if (it == cache.end()) it = cache.emplace(e, power(phi, e)).first;
    return it->second;
  };
  for (const Letter& l : w.letters()) {
    switch (l.kind) {
      case Kind::x:
      case Kind::y:
        nf.u = rmul(nf.u, abstract_letter(l.kind, l.sign));
        break;
      case Kind::t:
        // t^k u t^s = t^(k+s) phi^(-n s)(u)
        nf.u = apply(phi_pow(-static_cast<long>(n) * l.sign), nf.u);
        nf.k += l.sign;
        break;
      default:
        throw AlphabetError("g_normalize expects a word over {x, y, t}");
    }
  }
  return nf;
}

struct NormalFormEngine::Impl {
  bool with_t = false;    // W-type coordinates
  Kind stable = Kind::r;  // stable letter kind, if any
  bool has_stables = false;
  bool twisted = true;    // stable conjugation applies phi^(+-n) to the free part
  mutable std::mutex mutex;
  mutable std::map<long, FreeAut> phi_cache;
};

NormalFormEngine::NormalFormEngine(const Presentation& p) : pres_(&p) {
  impl_ = std::make_shared<Impl>();
  switch (p.kind) {
    case GroupKind::V_T:
      break;
    case GroupKind::S_Tn:
      impl_->has_stables = true;
      impl_->stable = Kind::r;
      impl_->twisted = true;
      break;
    case GroupKind::W_T:
      impl_->with_t = true;
      break;
    case GroupKind::G_s:
      impl_->with_t = true;
      impl_->has_stables = true;
      impl_->stable = Kind::s;
      impl_->twisted = false;
      break;
    case GroupKind::G_u:
      impl_->with_t = true;
      impl_->has_stables = true;
      impl_->stable = Kind::u;
      impl_->twisted = true;
      break;
  }
}

const FreeAut& NormalFormEngine::phi_power(long k) const {
  std::lock_guard<std::mutex> lock(impl_->mutex);
  long e = static_cast<long>(pres_->n) * k;
  auto it = impl_->phi_cache.find(e);
  if (it == impl_->phi_cache.end()) it = impl_->phi_cache.emplace(e, power(pres_->phi, e)).first;
  return it->second;
}

namespace {

CoordElem coord_tau(const CoordElem& c) {
  CoordElem out = c;
  out.u = tau(c.u);
  return out;
}

}  // namespace

VertexElement NormalFormEngine::letter_element(const Letter& l) const {
  VertexElement el;
  for (auto& c : el.coords) c.is_g = impl_->with_t;
  int j = static_cast<int>(l.index);
  el.vertex = SnowTree::vertex_of(j);
  int pos = SnowTree::corner_of(j);
  switch (l.kind) {
    case Kind::x:
    case Kind::y:
      el.coords[static_cast<std::size_t>(pos)].u = abstract_letter(l.kind, l.sign);
      return el;
    case Kind::t:
      el.coords[static_cast<std::size_t>(pos)].k = l.sign;
      return el;
    case Kind::a:
    case Kind::b: {
      Kind base = l.kind == Kind::a ? Kind::x : Kind::y;
      el.coords[static_cast<std::size_t>(pos)].u = abstract_letter(base, -l.sign);
      el.coords[static_cast<std::size_t>((pos + 1) % 3)].u = abstract_letter(base, l.sign);
      return el;
    }
    case Kind::c:
      el.coords[static_cast<std::size_t>(pos)].k = l.sign;
      el.coords[static_cast<std::size_t>((pos + 1) % 3)].k = l.sign;
      return el;
    default:
      throw AlphabetError("letter " + l.str() + " is not a vertex group generator");
  }
}

namespace {

CoordElem coord_mul(const NormalFormEngine& eng, const CoordElem& a, const CoordElem& b) {
  CoordElem out;
  out.is_g = a.is_g || b.is_g;
  out.k = a.k + b.k;
  Word left = b.k == 0 ? a.u : apply(eng.phi_power(-b.k), a.u);
  out.u = rmul(left, b.u);
  return out;
}

VertexElement elem_mul(const NormalFormEngine& eng, const VertexElement& a,
                       const VertexElement& b) {
  VertexElement out;
  out.vertex = a.vertex;
  for (std::size_t i = 0; i < 3; ++i) out.coords[i] = coord_mul(eng, a.coords[i], b.coords[i]);
  return out;
}

}  // namespace

std::optional<CoordElem> NormalFormEngine::peripheral_param(const VertexElement& v,
                                                            int subgroup) const {
  if (SnowTree::vertex_of(subgroup) != v.vertex) throw WrongVertexError();
  std::size_t pos = static_cast<std::size_t>(SnowTree::corner_of(subgroup));
  const CoordElem& first = v.coords[pos];
  const CoordElem& second = v.coords[(pos + 1) % 3];
  const CoordElem& third = v.coords[(pos + 2) % 3];
  if (!third.is_identity()) return std::nullopt;
  if (!(first == coord_tau(second))) return std::nullopt;
  return second;
}

std::optional<Word> NormalFormEngine::peripheral_membership(const VertexElement& v,
                                                            int subgroup) const {
  auto param = peripheral_param(v, subgroup);
  if (!param) return std::nullopt;
  std::vector<Letter> letters;
  for (long i = 0; i < std::labs(param->k); ++i)
    letters.emplace_back(Kind::c, static_cast<std::uint32_t>(subgroup), param->k > 0 ? 1 : -1);
  Word ab = substitute_xy(param->u, Letter(Kind::a, static_cast<std::uint32_t>(subgroup)),
                          Letter(Kind::b, static_cast<std::uint32_t>(subgroup)));
  return Word(std::move(letters), true) * ab;
}

VertexElement NormalFormEngine::translate(const VertexElement& v, int from_subgroup) const {
  auto param = peripheral_param(v, from_subgroup);
  if (!param) throw std::logic_error("translate called without edge membership");
  const SideInfo& info = pres_->tree.side(from_subgroup);
  CoordElem q = coord_tau(*param);
  VertexElement out;
  for (auto& c : out.coords) c.is_g = impl_->with_t;
  out.vertex = SnowTree::vertex_of(info.partner);
  std::size_t pos = static_cast<std::size_t>(SnowTree::corner_of(info.partner));
  out.coords[pos] = coord_tau(q);
  out.coords[(pos + 1) % 3] = q;
  return out;
}

std::vector<std::pair<int, VertexElement>> NormalFormEngine::reach_set(
    const VertexElement& start) const {
  std::vector<std::pair<int, VertexElement>> out{{start.vertex, start}};
  const SnowTree& tree = pres_->tree;
  for (std::size_t head = 0; head < out.size(); ++head) {
    auto [v, el] = out[head];
    for (int corner = 0; corner < 3; ++corner) {
      int j = SnowTree::side_index(v, corner);
      const SideInfo& info = tree.side(j);
      if (info.peripheral) continue;
      int other = SnowTree::vertex_of(info.partner);
      bool seen = false;
      for (const auto& [ov, oe] : out) seen = seen || ov == other;
      if (seen) continue;
      if (peripheral_param(el, j)) out.emplace_back(other, translate(el, j));
    }
  }
  return out;
}

AmalgamForm NormalFormEngine::vt_normalize(const Word& w) const {
  std::vector<VertexElement> syl;
  for (const Letter& l : w.letters()) {
    VertexElement el = letter_element(l);
    if (!syl.empty() && syl.back().vertex == el.vertex) {
      syl.back() = elem_mul(*this, syl.back(), el);
      if (syl.back().is_identity()) syl.pop_back();
    } else {
      syl.push_back(el);
    }
  }

  std::size_t guard = 8 * (syl.size() + 4);
  bool changed = true;
  while (changed) {
    if (guard-- == 0) throw std::logic_error("amalgam reduction failed to stabilize");
    changed = false;

    // Merge same-vertex neighbors and drop identities.
    for (std::size_t i = 0; i < syl.size();) {
      if (syl[i].is_identity()) {
        syl.erase(syl.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        if (i > 0) --i;
        continue;
      }
      if (i + 1 < syl.size() && syl[i].vertex == syl[i + 1].vertex) {
        syl[i] = elem_mul(*this, syl[i], syl[i + 1]);
        syl.erase(syl.begin() + static_cast<std::ptrdiff_t>(i + 1));
        changed = true;
        continue;
      }
      ++i;
    }
    if (changed) continue;

    // Translate adjacent syllables to a common vertex whenever their
    // reachable vertex sets meet; the merge happens on the next pass.
    for (std::size_t i = 0; i + 1 < syl.size() && !changed; ++i) {
      auto ra = reach_set(syl[i]);
      auto rb = reach_set(syl[i + 1]);
      for (const auto& [va, ea] : ra) {
        for (const auto& [vb, eb] : rb) {
          if (va != vb) continue;
          syl[i] = ea;
          syl[i + 1] = eb;
          changed = true;
          break;
        }
        if (changed) break;
      }
    }
    if (changed) continue;

    // Canonical positioning: edge-group elements sit at the least vertex
    // of their reach path.
    for (std::size_t i = 0; i < syl.size(); ++i) {
      auto r = reach_set(syl[i]);
      auto best = std::min_element(
          r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      if (best->first != syl[i].vertex) {
        syl[i] = best->second;
        changed = true;
      }
    }
  }
  return AmalgamForm{std::move(syl)};
}

std::optional<CoordElem> NormalFormEngine::segment_peripheral_param(const Word& w,
                                                                    int subgroup) const {
  AmalgamForm form = vt_normalize(w);
  if (form.empty()) {
    CoordElem c;
    c.is_g = impl_->with_t;
    return c;
  }
  if (form.size() != 1) return std::nullopt;
  int target = SnowTree::vertex_of(subgroup);
  for (const auto& [v, el] : reach_set(form.syllables[0])) {
    if (v == target) return peripheral_param(el, subgroup);
  }
  return std::nullopt;
}

std::optional<Word> NormalFormEngine::reduced_peripheral_word(const Word& w, int subgroup) const {
  Word base = w;
  if (impl_->has_stables) {
    BrittonForm bf = britton_normalize(w);
    if (!bf.stables.empty()) return std::nullopt;
    base = bf.segments.empty() ? Word() : bf.segments[0];
  }
  auto param = segment_peripheral_param(base, subgroup);
  if (!param) return std::nullopt;
  std::vector<Letter> letters;
  for (long i = 0; i < std::labs(param->k); ++i)
    letters.emplace_back(Kind::c, static_cast<std::uint32_t>(subgroup), param->k > 0 ? 1 : -1);
  Word ab = substitute_xy(param->u, Letter(Kind::a, static_cast<std::uint32_t>(subgroup)),
                          Letter(Kind::b, static_cast<std::uint32_t>(subgroup)));
  return Word(std::move(letters), true) * ab;
}

Word NormalFormEngine::stable_conjugate(const CoordElem& param, int out_subgroup,
                                        int direction) const {
  // direction +1: s v s^-1 with v in the nu_0 subgroup, image at nu_i;
  // direction -1: s^-1 v s with v in the nu_i subgroup, image at nu_0.
  Word free_part = param.u;
  if (impl_->twisted) free_part = apply(phi_power(direction), free_part);
  Word ab = substitute_xy(free_part, Letter(Kind::a, static_cast<std::uint32_t>(out_subgroup)),
                          Letter(Kind::b, static_cast<std::uint32_t>(out_subgroup)));
  std::vector<Letter> letters;
  for (long i = 0; i < std::labs(param.k); ++i)
    letters.emplace_back(Kind::c, static_cast<std::uint32_t>(out_subgroup), param.k > 0 ? 1 : -1);
  return Word(std::move(letters), true) * ab;
}

BrittonForm NormalFormEngine::britton_normalize(const Word& w) const {
  pres_->validate_word(w);
  BrittonForm bf;
  bf.segments.emplace_back();
  if (impl_->has_stables) {
    const Word rw = reduce(w);
    for (const Letter& l : rw.letters()) {
      if (l.kind == impl_->stable) {
        bf.stables.push_back(l);
        bf.segments.emplace_back();
      } else {
        bf.segments.back().append(l);
      }
    }
  } else {
    bf.segments[0] = reduce(w);
    return bf;
  }

  const auto& nu = pres_->tree.nu();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < bf.stables.size(); ++i) {
      const Letter& s1 = bf.stables[i];
      const Letter& s2 = bf.stables[i + 1];
      if (s1.index != s2.index || s1.sign != -s2.sign) continue;
      int stable_idx = static_cast<int>(s1.index);
      int nu0 = nu[0];
      int nui = nu[static_cast<std::size_t>(stable_idx)];
      int test_subgroup = s1.sign > 0 ? nu0 : nui;
      int out_subgroup = s1.sign > 0 ? nui : nu0;
      auto param = segment_peripheral_param(bf.segments[i + 1], test_subgroup);
      if (!param) continue;
      Word repl = stable_conjugate(*param, out_subgroup, s1.sign);
      Word merged = bf.segments[i] * repl * bf.segments[i + 2];
      bf.segments[i] = reduce(merged);
      bf.segments.erase(bf.segments.begin() + static_cast<std::ptrdiff_t>(i + 1),
                        bf.segments.begin() + static_cast<std::ptrdiff_t>(i + 3));
      bf.stables.erase(bf.stables.begin() + static_cast<std::ptrdiff_t>(i),
                       bf.stables.begin() + static_cast<std::ptrdiff_t>(i + 2));
      changed = true;
      break;
    }
  }
  return bf;
}

bool NormalFormEngine::is_trivial(const Word& w) const {
  if (impl_->has_stables) {
    BrittonForm bf = britton_normalize(w);
    if (!bf.stables.empty()) return false;
    return vt_normalize(bf.segments[0]).empty();
  }
  return vt_normalize(w).empty();
}

bool NormalFormEngine::equal(const Word& u, const Word& v) const {
  return is_trivial(rmul(u, v.inverse()));
}

AmalgamForm vt_normalize(const Word& w, const Presentation& p) {
  return NormalFormEngine(p).vt_normalize(w);
}
std::optional<Word> reduced_peripheral_word(const Word& w, int subgroup, const Presentation& p) {
  return NormalFormEngine(p).reduced_peripheral_word(w, subgroup);
}
BrittonForm britton_normalize(const Word& w, const Presentation& p) {
  return NormalFormEngine(p).britton_normalize(w);
}
bool is_trivial(const Word& w, const Presentation& p) {
  return NormalFormEngine(p).is_trivial(w);
}

}  // namespace snowflake
