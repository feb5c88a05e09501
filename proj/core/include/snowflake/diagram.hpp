#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "snowflake/groups.hpp"
#include "snowflake/words.hpp"

// Planar van Kampen diagrams as dart-based combinatorial maps: paired
// half-edges with letter labels, relator-typed faces, and a distinguished
// outer boundary walk. Diagrams are built by the direct grid constructors in
// builders.cpp and by gluing along boundary arcs.

namespace snowflake {

struct LabelMismatchError : std::runtime_error {
  LabelMismatchError() : std::runtime_error("arc labels are not mutually inverse") {}
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::size_t vertices = 0, edges = 0, faces = 0;
  bool ok() const { return violations.empty(); }
};

class Diagram {
 public:
  static constexpr int kOuterFace = -1;
  static constexpr int kDeadFace = -2;

  struct Dart {
    int origin = -1;   // vertex id (resolve through find_vertex)
    Letter label;      // letter read when traversing the dart
    int twin = -1;
    int face = kOuterFace;  // interior face id, kOuterFace, or kDeadFace
    int next = -1;          // successor in the face cycle / outer walk
  };

  struct FaceRec {
    FaceType type = FaceType::triangle;
    int dart = -1;  // one dart of the face cycle
  };

  Diagram() = default;

  /// Single-face diagram whose outer boundary reads `boundary`.
  static Diagram polygon(const Word& boundary, FaceType type);

  // ---- direct construction (used by the diagram family builders) ----
  int add_vertex();
  /// New edge between existing vertices; returns the dart from -> to
  /// reading `label` (its twin reads the inverse).
  int add_edge(int vfrom, int vto, const Letter& label);
  /// Claims the listed darts as the boundary cycle of a new face.
  int add_face(FaceType type, const std::vector<int>& cycle);
  /// Declares the outer walk (all unclaimed darts, in walk order starting
  /// at the basepoint).
  void finish(const std::vector<int>& outer_cycle);

  // ---- queries ----
  bool empty() const { return faces_.empty() && darts_.empty(); }
  const std::vector<Dart>& darts() const { return darts_; }
  const Dart& dart(int d) const { return darts_[static_cast<std::size_t>(d)]; }
  bool dart_alive(int d) const { return darts_[static_cast<std::size_t>(d)].face != kDeadFace; }
  std::size_t face_count() const { return faces_.size(); }
  const FaceRec& face(int f) const { return faces_[static_cast<std::size_t>(f)]; }
  std::vector<int> face_cycle(int f) const;
  Word face_word(int f) const;
  int head(int d) const { return find_vertex(dart(dart(d).twin).origin); }
  int tail(int d) const { return find_vertex(dart(d).origin); }

  /// Outer walk dart ids starting at the basepoint.
  std::vector<int> outer_cycle() const;
  Word boundary_word() const;
  std::size_t boundary_length() const { return outer_cycle().size(); }

  /// Rotates the basepoint to the given position of the current outer walk.
  void set_basepoint(std::size_t outer_position);

  BigInt area() const;
  std::size_t live_edge_count() const;
  std::size_t vertex_count() const;
  int find_vertex(int v) const;

  // ---- gluing ----
  /// Glues `other` onto this diagram: the arc of length `len` starting at
  /// position `my_arc_start` of this outer walk is identified with the arc
  /// starting at `other_arc_start` of other's outer walk. The arcs must
  /// carry mutually inverse labels: my_arc[k] == other_arc[len-1-k]^-1.
  void attach(Diagram other, std::size_t my_arc_start, std::size_t other_arc_start,
              std::size_t len);

  /// Folds two adjacent arcs of this diagram's own boundary together
  /// (arc2 must immediately follow arc1 on the outer walk).
  void fold(std::size_t arc1_start, std::size_t arc2_start, std::size_t len);

  ValidationReport validate(const Presentation& p) const;

  std::string to_json() const;
  static Diagram from_json(const std::string& text);

  /// Tutte-style layout: boundary on a circle, interior relaxed.
  /// Positions indexed by vertex id (resolved ids hold coordinates).
  std::vector<std::pair<double, double>> layout(int iterations = 120) const;
  std::string to_svg() const;
  std::string to_dot() const;

 private:
  std::vector<Dart> darts_;
  std::vector<FaceRec> faces_;
  mutable std::vector<int> vertex_parent_;  // union-find
  int outer_start_ = -1;

  void unite(int a, int b);
  void splice_check() const;
};

/// Glue as a value operation (spec surface); arcs addressed as positions
/// into the respective outer walks.
Diagram glue(const Diagram& d1, std::size_t arc1_start, std::size_t len, const Diagram& d2,
             std::size_t arc2_start);

}  // namespace snowflake
