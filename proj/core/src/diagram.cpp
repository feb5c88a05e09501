#include "snowflake/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace snowflake {

int Diagram::add_vertex() {
  vertex_parent_.push_back(static_cast<int>(vertex_parent_.size()));
  return static_cast<int>(vertex_parent_.size()) - 1;
}

int Diagram::find_vertex(int v) const {
  int root = v;
  while (vertex_parent_[static_cast<std::size_t>(root)] != root)
    root = vertex_parent_[static_cast<std::size_t>(root)];
  while (vertex_parent_[static_cast<std::size_t>(v)] != root) {
    int next = vertex_parent_[static_cast<std::size_t>(v)];
    vertex_parent_[static_cast<std::size_t>(v)] = root;
    v = next;
  }
  return root;
}

void Diagram::unite(int a, int b) {
  a = find_vertex(a);
  b = find_vertex(b);
  if (a != b) vertex_parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
}

int Diagram::add_edge(int vfrom, int vto, const Letter& label) {
  int d = static_cast<int>(darts_.size());
  Dart fwd;
  fwd.origin = vfrom;
  fwd.label = label;
  fwd.twin = d + 1;
  Dart bwd;
  bwd.origin = vto;
  bwd.label = label.inverse();
  bwd.twin = d;
  darts_.push_back(fwd);
  darts_.push_back(bwd);
  return d;
}

int Diagram::add_face(FaceType type, const std::vector<int>& cycle) {
  int f = static_cast<int>(faces_.size());
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    Dart& d = darts_[static_cast<std::size_t>(cycle[i])];
    d.face = f;
    d.next = cycle[(i + 1) % cycle.size()];
  }
  faces_.push_back(FaceRec{type, cycle.empty() ? -1 : cycle[0]});
  return f;
}

void Diagram::finish(const std::vector<int>& outer) {
  for (std::size_t i = 0; i < outer.size(); ++i) {
    Dart& d = darts_[static_cast<std::size_t>(outer[i])];
    d.face = kOuterFace;
    d.next = outer[(i + 1) % outer.size()];
  }
  outer_start_ = outer.empty() ? -1 : outer[0];
}

Diagram Diagram::polygon(const Word& boundary, FaceType type) {
  Diagram d;
  std::size_t n = boundary.size();
  if (n == 0) return d;
  for (std::size_t i = 0; i < n; ++i) d.add_vertex();
  // Face reads boundary^-1 so the outer walk reads `boundary`.
  std::vector<int> face_cycle, outer;
  for (std::size_t i = 0; i < n; ++i) {
    // outer dart i runs vertex i -> i+1 reading boundary[i]
    int fwd = d.add_edge(static_cast<int>(i), static_cast<int>((i + 1) % n), boundary[i]);
    outer.push_back(fwd);
    face_cycle.push_back(fwd + 1);
  }
  std::reverse(face_cycle.begin(), face_cycle.end());
  d.add_face(type, face_cycle);
  d.finish(outer);
  return d;
}

std::vector<int> Diagram::face_cycle(int f) const {
  std::vector<int> out;
  int start = faces_[static_cast<std::size_t>(f)].dart;
  int at = start;
  do {
    out.push_back(at);
    at = darts_[static_cast<std::size_t>(at)].next;
  } while (at != start && out.size() <= darts_.size());
  return out;
}

Word Diagram::face_word(int f) const {
  std::vector<Letter> letters;
  for (int d : face_cycle(f)) letters.push_back(darts_[static_cast<std::size_t>(d)].label);
  return Word(std::move(letters));
}

std::vector<int> Diagram::outer_cycle() const {
  std::vector<int> out;
  if (outer_start_ < 0) return out;
  int at = outer_start_;
  do {
    out.push_back(at);
    at = darts_[static_cast<std::size_t>(at)].next;
  } while (at != outer_start_ && out.size() <= darts_.size());
  return out;
}

Word Diagram::boundary_word() const {
  std::vector<Letter> letters;
  for (int d : outer_cycle()) letters.push_back(darts_[static_cast<std::size_t>(d)].label);
  return Word(std::move(letters));
}

void Diagram::set_basepoint(std::size_t outer_position) {
  auto outer = outer_cycle();
  if (outer.empty()) return;
  outer_start_ = outer[outer_position % outer.size()];
}

BigInt Diagram::area() const {
  BigInt total = 0;
  for (const FaceRec& f : faces_) total += face_area(f.type);
  return total;
}

std::size_t Diagram::live_edge_count() const {
  std::size_t live = 0;
  for (const Dart& d : darts_)
    if (d.face != kDeadFace) ++live;
  return live / 2;
}

std::size_t Diagram::vertex_count() const {
  std::set<int> seen;
  for (std::size_t i = 0; i < darts_.size(); ++i)
    if (darts_[i].face != kDeadFace) seen.insert(find_vertex(darts_[i].origin));
  return seen.size();
}

void Diagram::attach(Diagram other, std::size_t my_arc_start, std::size_t other_arc_start,
                     std::size_t len) {
  std::vector<int> mine = outer_cycle();
  std::vector<int> theirs = other.outer_cycle();
  if (len == 0 || len > mine.size() || len >= theirs.size())
    throw std::invalid_argument("attach: bad arc length");

  // Import other's darts, faces and vertices.
  int dart_off = static_cast<int>(darts_.size());
  int face_off = static_cast<int>(faces_.size());
  int vert_off = static_cast<int>(vertex_parent_.size());
  for (const Dart& d : other.darts_) {
    Dart nd = d;
    nd.origin += vert_off;
    nd.twin += dart_off;
    if (nd.next >= 0) nd.next += dart_off;
    if (nd.face >= 0) nd.face += face_off;
    darts_.push_back(nd);
  }
  for (const FaceRec& f : other.faces_) faces_.push_back(FaceRec{f.type, f.dart + dart_off});
  for (std::size_t v = 0; v < other.vertex_parent_.size(); ++v)
    vertex_parent_.push_back(other.vertex_parent_[v] + vert_off);

  auto arc1 = [&](std::size_t k) { return mine[(my_arc_start + k) % mine.size()]; };
  auto arc2 = [&](std::size_t k) {
    return theirs[(other_arc_start + k) % theirs.size()] + dart_off;
  };

  // Zip: my_arc[k] is identified with other_arc[len-1-k].
  for (std::size_t k = 0; k < len; ++k) {
    int dm = arc1(k);
    int do_ = arc2(len - 1 - k);
    Dart& m = darts_[static_cast<std::size_t>(dm)];
    Dart& o = darts_[static_cast<std::size_t>(do_)];
    if (!m.label.is_inverse_of(o.label)) throw LabelMismatchError();
    unite(m.origin, darts_[static_cast<std::size_t>(o.twin)].origin);
    unite(darts_[static_cast<std::size_t>(m.twin)].origin, o.origin);
    int tm = m.twin, to = o.twin;
    darts_[static_cast<std::size_t>(tm)].twin = to;
    darts_[static_cast<std::size_t>(to)].twin = tm;
    m.face = kDeadFace;
    o.face = kDeadFace;
  }

  // Splice the outer walks: X -> (other's remainder) -> Y.
  int X = mine[(my_arc_start + mine.size() - 1) % mine.size()];
  int Y = mine[(my_arc_start + len) % mine.size()];
  int Q = theirs[(other_arc_start + len) % theirs.size()] + dart_off;
  int P = theirs[(other_arc_start + theirs.size() - 1) % theirs.size()] + dart_off;
  if (len == mine.size()) {
    // this diagram's entire boundary is consumed; the rest of other's walk
    // becomes the boundary
    outer_start_ = Q;
    darts_[static_cast<std::size_t>(P)].next = Q;
  } else {
    darts_[static_cast<std::size_t>(X)].next = Q;
    darts_[static_cast<std::size_t>(P)].next = Y;
    outer_start_ = Y;
  }
}

void Diagram::fold(std::size_t arc1_start, std::size_t arc2_start, std::size_t len) {
  std::vector<int> outer = outer_cycle();
  if ((arc1_start + len) % outer.size() != arc2_start % outer.size())
    throw std::invalid_argument("fold: arcs must be adjacent on the boundary");
  if (2 * len >= outer.size()) throw std::invalid_argument("fold: arcs too long");

  auto at = [&](std::size_t k) { return outer[k % outer.size()]; };
  for (std::size_t k = 0; k < len; ++k) {
    int d1 = at(arc1_start + k);
    int d2 = at(arc2_start + (len - 1 - k));
    Dart& a = darts_[static_cast<std::size_t>(d1)];
    Dart& b = darts_[static_cast<std::size_t>(d2)];
    if (!a.label.is_inverse_of(b.label)) throw LabelMismatchError();
    unite(a.origin, darts_[static_cast<std::size_t>(b.twin)].origin);
    unite(darts_[static_cast<std::size_t>(a.twin)].origin, b.origin);
    int ta = a.twin, tb = b.twin;
    darts_[static_cast<std::size_t>(ta)].twin = tb;
    darts_[static_cast<std::size_t>(tb)].twin = ta;
    a.face = kDeadFace;
    b.face = kDeadFace;
  }
  int X = at(arc1_start + outer.size() - 1);
  int Y = at(arc2_start + len);
  darts_[static_cast<std::size_t>(X)].next = Y;
  outer_start_ = Y;
}

Diagram glue(const Diagram& d1, std::size_t arc1_start, std::size_t len, const Diagram& d2,
             std::size_t arc2_start) {
  Diagram out = d1;
  out.attach(d2, arc1_start, arc2_start, len);
  return out;
}

ValidationReport Diagram::validate(const Presentation& p) const {
  ValidationReport rep;
  auto complain = [&](const std::string& msg) {
    if (rep.violations.size() < 32) rep.violations.push_back(msg);
  };

  // twin involution and labels
  for (std::size_t d = 0; d < darts_.size(); ++d) {
    if (darts_[d].face == kDeadFace) continue;
    const Dart& dd = darts_[d];
    if (dd.twin < 0 || darts_[static_cast<std::size_t>(dd.twin)].twin != static_cast<int>(d))
      complain("twin involution broken at dart " + std::to_string(d));
    else if (!dd.label.is_inverse_of(darts_[static_cast<std::size_t>(dd.twin)].label))
      complain("twin labels not inverse at dart " + std::to_string(d));
    if (darts_[static_cast<std::size_t>(dd.twin)].face == kDeadFace)
      complain("live dart twinned with dead dart " + std::to_string(d));
  }

  // face cycles read relators
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    auto cycle = face_cycle(static_cast<int>(f));
    for (int dct : cycle) {
      const Dart& dd = darts_[static_cast<std::size_t>(dct)];
      if (dd.face != static_cast<int>(f))
        complain("dart in face cycle does not point back to face " + std::to_string(f));
      if (find_vertex(darts_[static_cast<std::size_t>(dd.next)].origin) != head(dct))
        complain("face cycle not vertex-consistent in face " + std::to_string(f));
    }
    FaceType matched;
    if (!p.matches_relator(face_word(static_cast<int>(f)), &matched)) {
      complain("face " + std::to_string(f) + " reads a non-relator: " +
               print_word(face_word(static_cast<int>(f))));
    } else if (matched != faces_[f].type) {
      complain("face " + std::to_string(f) + " has the wrong type tag");
    }
  }

  // outer walk covers exactly the live outer darts
  std::size_t outer_count = 0;
  for (std::size_t d = 0; d < darts_.size(); ++d)
    if (darts_[d].face == kOuterFace) ++outer_count;
  auto outer = outer_cycle();
  if (outer.size() != outer_count) complain("outer walk does not cover all boundary darts");
  for (std::size_t i = 0; i < outer.size(); ++i) {
    int d = outer[i];
    int nxt = outer[(i + 1) % outer.size()];
    if (darts_[static_cast<std::size_t>(d)].face != kOuterFace)
      complain("outer walk passes through a non-boundary dart");
    if (head(d) != tail(nxt)) complain("outer walk not vertex-consistent");
  }

  // Euler characteristic of a disk: V - E + F = 1
  rep.vertices = vertex_count();
  rep.edges = live_edge_count();
  rep.faces = faces_.size();
  if (!faces_.empty() || !darts_.empty()) {
    long long chi = static_cast<long long>(rep.vertices) - static_cast<long long>(rep.edges) +
                    static_cast<long long>(rep.faces);
    if (chi != 1) complain("Euler characteristic is " + std::to_string(chi) + ", expected 1");
  }
  return rep;
}

std::string Diagram::to_json() const {
  nlohmann::json j;
  j["vertices"] = vertex_parent_.size();
  j["basepoint"] = outer_start_;
  auto darr = nlohmann::json::array();
  for (const Dart& d : darts_) {
    darr.push_back({{"origin", find_vertex(d.origin)},
                    {"label", d.label.str()},
                    {"twin", d.twin},
                    {"face", d.face},
                    {"next", d.next}});
  }
  j["darts"] = darr;
  auto farr = nlohmann::json::array();
  for (const FaceRec& f : faces_) farr.push_back({{"type", face_type_name(f.type)}, {"dart", f.dart}});
  j["faces"] = farr;
  return j.dump();
}

Diagram Diagram::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  Diagram d;
  std::size_t nv = j.at("vertices").get<std::size_t>();
  for (std::size_t i = 0; i < nv; ++i) d.add_vertex();
  for (const auto& jd : j.at("darts")) {
    Dart dart;
    dart.origin = jd.at("origin").get<int>();
    Word lw = parse_word(jd.at("label").get<std::string>());
    dart.label = lw[0];
    dart.twin = jd.at("twin").get<int>();
    dart.face = jd.at("face").get<int>();
    dart.next = jd.at("next").get<int>();
    d.darts_.push_back(dart);
  }
  for (const auto& jf : j.at("faces")) {
    d.faces_.push_back(FaceRec{face_type_from_name(jf.at("type").get<std::string>()),
                               jf.at("dart").get<int>()});
  }
  d.outer_start_ = j.at("basepoint").get<int>();
  return d;
}

std::vector<std::pair<double, double>> Diagram::layout(int iterations) const {
  std::vector<std::pair<double, double>> pos(vertex_parent_.size(), {0.0, 0.0});
  std::vector<char> fixed(vertex_parent_.size(), 0);
  auto outer = outer_cycle();
  if (outer.empty()) return pos;
  for (std::size_t i = 0; i < outer.size(); ++i) {
    double angle = 2.0 * 3.14159265358979323846 * static_cast<double>(i) /
                   static_cast<double>(outer.size());
    int v = tail(outer[i]);
    pos[static_cast<std::size_t>(v)] = {std::cos(angle), std::sin(angle)};
    fixed[static_cast<std::size_t>(v)] = 1;
  }
  // adjacency over live darts
  std::vector<std::vector<int>> adj(vertex_parent_.size());
  for (std::size_t d = 0; d < darts_.size(); ++d) {
    if (darts_[d].face == kDeadFace) continue;
    adj[static_cast<std::size_t>(tail(static_cast<int>(d)))].push_back(
        head(static_cast<int>(d)));
  }
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t v = 0; v < adj.size(); ++v) {
      if (fixed[v] || adj[v].empty()) continue;
      double sx = 0, sy = 0;
      for (int w : adj[v]) {
        sx += pos[static_cast<std::size_t>(w)].first;
        sy += pos[static_cast<std::size_t>(w)].second;
      }
      pos[v] = {sx / static_cast<double>(adj[v].size()), sy / static_cast<double>(adj[v].size())};
    }
  }
  return pos;
}

namespace {

const char* face_color(FaceType t) {
  switch (t) {
    case FaceType::triangle: return "#bcd9ea";
    case FaceType::quadrilateral: return "#cfe8cf";
    case FaceType::r_cell: return "#f2d0a4";
    case FaceType::s_cell: return "#e8c7e0";
    case FaceType::u_cell: return "#d8c7f0";
    case FaceType::g_cell: return "#e0e0e0";
  }
  return "#ffffff";
}

}  // namespace

std::string Diagram::to_svg() const {
  auto pos = layout();
  std::ostringstream os;
  double scale = 360.0;
  auto X = [&](int v) { return 400.0 + scale * pos[static_cast<std::size_t>(find_vertex(v))].first; };
  auto Y = [&](int v) { return 400.0 + scale * pos[static_cast<std::size_t>(find_vertex(v))].second; };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
        "viewBox=\"0 0 800 800\">\n";
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    os << "<polygon points=\"";
    for (int d : face_cycle(static_cast<int>(f))) os << X(tail(d)) << ',' << Y(tail(d)) << ' ';
    os << "\" fill=\"" << face_color(faces_[f].type) << "\" stroke=\"#555\" stroke-width=\"0.6\"/>\n";
  }
  for (int d : outer_cycle()) {
    os << "<line x1=\"" << X(tail(d)) << "\" y1=\"" << Y(tail(d)) << "\" x2=\"" << X(head(d))
       << "\" y2=\"" << Y(head(d)) << "\" stroke=\"#000\" stroke-width=\"1.4\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string Diagram::to_dot() const {
  std::ostringstream os;
  os << "digraph diagram {\n  node [shape=point];\n";
  for (std::size_t d = 0; d < darts_.size(); d += 2) {
    if (darts_[d].face == kDeadFace) continue;
    os << "  v" << tail(static_cast<int>(d)) << " -> v" << head(static_cast<int>(d))
       << " [label=\"" << darts_[d].label.str() << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

void Diagram::splice_check() const {}

}  // namespace snowflake
