#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace treegeo {

inline constexpr double kDefaultTol = 1e-9;

/// A location on a metric tree: either a vertex, or a point strictly inside
/// an edge. Interior offsets are measured from the canonical origin of the
/// edge (the endpoint with the lexicographically smaller id), so two equal
/// points always compare equal field by field.
struct TreePoint {
  int vertex = -1;     ///< >= 0 for vertex form
  int edge = -1;       ///< >= 0 for edge-interior form
  double offset = 0.0; ///< in (0, w), measured from the canonical origin

  bool is_vertex() const { return vertex >= 0; }
  friend bool operator==(const TreePoint&, const TreePoint&) = default;
};

struct TreeEdge {
  int a = -1;   ///< canonical origin (smaller vertex id)
  int b = -1;
  double w = 0.0;
};

/// Plain description used to build a MetricTree.
struct TreeSpec {
  struct Edge {
    std::string u, v;
    double w = 0.0;
  };
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  std::string root;  ///< empty: first vertex
};

/// Finitely generated metric tree: a connected acyclic weighted graph
/// carrying the geodesic (path-length) metric on vertices and edge
/// interiors. Immutable after build; every operation on it is a pure
/// function, so concurrent reads are safe.
class MetricTree {
 public:
  static MetricTree build(const TreeSpec& spec);

  int vertex_count() const { return static_cast<int>(ids_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::string& vertex_id(int v) const { return ids_[v]; }
  const TreeEdge& edge(int e) const { return edges_[e]; }
  int root() const { return root_; }
  double total_length() const { return total_len_; }

  /// -1 when the id / pair is not present.
  int find_vertex(const std::string& id) const;
  int find_edge(int u, int v) const;

  TreePoint vertex_point(int v) const;
  TreePoint vertex_point(const std::string& id) const;
  /// Point at distance `offset_from_u` from u along the edge {u, v}.
  /// Offsets at 0 or w canonicalize to vertex form.
  TreePoint point_on_edge(const std::string& u, const std::string& v,
                          double offset_from_u) const;
  /// Canonicalize an (edge, offset) pair, snapping boundary offsets to
  /// vertices. Throws when the offset is outside [0, w].
  TreePoint canonical_point(int edge, double offset) const;

  void validate_point(const TreePoint& p) const;

  /// Geodesic distance between two vertices, via the precomputed
  /// ancestor/depth tables (O(log n) per query).
  double vertex_distance(int u, int v) const;
  int lca(int u, int v) const;

  int parent(int v) const { return parent_[v]; }
  int parent_edge(int v) const { return parent_edge_[v]; }
  double depth(int v) const { return depth_len_[v]; }
  const std::vector<std::pair<int, int>>& neighbors(int v) const {
    return adj_[v];
  }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

 private:
  std::vector<std::string> ids_;
  std::vector<TreeEdge> edges_;
  std::vector<std::vector<std::pair<int, int>>> adj_;  // (neighbor, edge)
  std::vector<int> parent_;
  std::vector<int> parent_edge_;
  std::vector<double> depth_len_;
  std::vector<int> depth_int_;
  std::vector<std::vector<int>> up_;  // binary-lifting ancestor table
  int root_ = 0;
  double total_len_ = 0.0;
};

MetricTree build_tree(const TreeSpec& spec);

/// One maximal run of a geodesic inside a single edge, in canonical edge
/// coordinates. `from` and `to` record the traversal direction; consecutive
/// pieces meet at a shared vertex.
struct SegmentPiece {
  int edge = -1;
  double from = 0.0;
  double to = 0.0;
  double length() const { return from < to ? to - from : from - to; }
};

/// The unique geodesic segment [start, end], stored as ordered edge pieces.
struct Segment {
  TreePoint start, end;
  std::vector<SegmentPiece> pieces;
  double length = 0.0;
};

double distance(const MetricTree& t, const TreePoint& p, const TreePoint& q);
Segment segment(const MetricTree& t, const TreePoint& p, const TreePoint& q);
Segment reverse(const Segment& s);

/// The point of s at the given arclength from s.start; inverse of the
/// arclength parametrization of the segment.
TreePoint point_at(const MetricTree& t, const Segment& s, double arclength);

TreePoint midpoint(const MetricTree& t, const TreePoint& p, const TreePoint& q);

/// The unique median w of x, y, z: the point lying on all three pairwise
/// segments, so that [x,y] = [x,w] + [w,y] and likewise for the other pairs.
TreePoint median(const MetricTree& t, const TreePoint& x, const TreePoint& y,
                 const TreePoint& z);

/// True iff d(x,z) = d(x,y) + d(y,z) within tol.
bool is_between(const MetricTree& t, const TreePoint& x, const TreePoint& y,
                const TreePoint& z, double tol = kDefaultTol);

/// The degree-1 vertices of the underlying graph (the final points of the
/// metric tree), in vertex order.
std::vector<TreePoint> leaves(const MetricTree& t);

/// All vertices plus interior points spaced at most delta apart: each edge
/// of weight w is split into ceil(w/delta) equal parts. Every point of the
/// tree is within delta/2 of the result.
std::vector<TreePoint> skeleton(const MetricTree& t, double delta);

/// Distances from p to every vertex, in one pass (O(V)).
std::vector<double> vertex_distances(const MetricTree& t, const TreePoint& p);

// Generators. The spider has legs "1".."n" around center "o"; the binary
// tree of height h has vertices "r", "rL", "rR", ..., with unit edges, so
// vertex distances follow the hyperbolic formula k + l - 2s (s = length of
// the common prefix).
MetricTree gen_spider(const std::vector<double>& leg_lengths);
MetricTree gen_path(double length, int segments);
MetricTree gen_binary_tree(int height);
MetricTree gen_random_tree(int n, std::uint64_t seed, double wmin = 0.5,
                           double wmax = 2.0);

/// Point at radial distance t from the center of a spider built by
/// gen_spider ("o" when t = 0, the leaf when t equals the leg length).
TreePoint spider_point(const MetricTree& spider, int leg, double t);
/// Inverse of spider_point: (leg, radial distance) of a point on a spider.
std::pair<int, double> spider_coords(const MetricTree& spider,
                                     const TreePoint& p);

}  // namespace treegeo
