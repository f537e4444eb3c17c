#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "treegeo/tree.hpp"

namespace treegeo {

/// Closed interval of canonical offsets inside one edge; lo > hi means empty.
struct EdgeInterval {
  double lo = 1.0;
  double hi = 0.0;
  bool empty() const { return lo > hi; }
  double length() const { return empty() ? 0.0 : hi - lo; }
};

/// A closed metrically convex subset of a tree, stored as one closed offset
/// interval per edge plus vertex membership flags. Balls, hulls, and their
/// intersections in a finitely generated tree are exactly of this form.
/// The referenced tree must outlive the set.
class ConvexSubtree {
 public:
  static ConvexSubtree empty_set(const MetricTree& t);
  static ConvexSubtree whole_tree(const MetricTree& t);

  const MetricTree& tree() const { return *tree_; }
  bool empty() const;
  bool vertex_in(int v) const { return vertex_in_[v] != 0; }
  const EdgeInterval& interval(int e) const { return edge_iv_[e]; }

  bool contains(const TreePoint& p, double tol = kDefaultTol) const;
  /// Signed slack: how far p sits outside the set (0 when inside).
  double outside_distance_bound(const TreePoint& p) const;

  /// Total edge length of the represented set.
  double measure() const;

  /// Connectivity of the represented point set (diagnostic; true for every
  /// set produced by the operations here).
  bool is_connected(double tol = kDefaultTol) const;

  void set_vertex(int v, bool in) { vertex_in_[v] = in ? 1 : 0; }
  void set_interval(int e, EdgeInterval iv) { edge_iv_[e] = iv; }
  /// Clamp intervals into [0, w], drop slivers, and flag vertices touched
  /// by interval endpoints.
  void normalize(double tol = 1e-12);

  /// Flagged vertices and interval endpoints: every extreme point of the
  /// subtree is among these.
  std::vector<TreePoint> boundary_points() const;
  /// Points of the set spaced at most delta apart along every edge
  /// interval, plus flagged vertices and interval endpoints.
  std::vector<TreePoint> member_skeleton(double delta) const;

 private:
  explicit ConvexSubtree(const MetricTree& t);
  const MetricTree* tree_ = nullptr;
  std::vector<char> vertex_in_;
  std::vector<EdgeInterval> edge_iv_;
};

/// Closed ball {x : d(center, x) <= r}.
ConvexSubtree ball(const MetricTree& t, const TreePoint& center, double r);

ConvexSubtree intersect(std::span<const ConvexSubtree> sets);

/// Metric convex hull of pts: the subtree spanned by them (union of the
/// pairwise segments).
ConvexSubtree convex_hull(const MetricTree& t, std::span<const TreePoint> pts);

double diameter(const MetricTree& t, std::span<const TreePoint> pts);
/// Diameter of a convex subtree, computed over its extreme points.
double diameter(const ConvexSubtree& s);

/// Center and radius of a minimal enclosing ball: the midpoint of a
/// diametral pair, radius = diameter / 2 (trees are centered, so this is
/// exact). Ties between diametral pairs break to the smallest index pair.
std::pair<TreePoint, double> chebyshev_center(const MetricTree& t,
                                              std::span<const TreePoint> pts);
std::pair<TreePoint, double> chebyshev_center(const ConvexSubtree& s);

/// Nearest point of a nonempty convex subtree (the gate): for y outside,
/// every u in S satisfies d(y, u) = d(y, x') + d(x', u).
TreePoint project(const MetricTree& t, const TreePoint& y,
                  const ConvexSubtree& s);

/// Finitely many points with positive weights summing to 1.
struct WeightedPoints {
  std::vector<TreePoint> points;
  std::vector<double> weights;
};
WeightedPoints make_weighted(std::vector<TreePoint> pts,
                             std::vector<double> weights);
WeightedPoints uniform_weighted(std::vector<TreePoint> pts);

/// The barycenter set C*(q) = {x0 : d(x0, x) <= sum_k a_k d(x_k, x) for all
/// x}: computed as the intersection of the balls B(leaf, sum_k a_k
/// d(x_k, leaf)) over the leaves, which dominate all other constraints.
ConvexSubtree barycenter_set(const MetricTree& t, const WeightedPoints& wp);

/// Intersection of explicitly given balls; with radii r_i = ||x~ - U(x_i)||
/// taken from an embedding this reproduces the embedding-specific
/// barycenter candidates.
ConvexSubtree barycenter_set_from_radii(const MetricTree& t,
                                        std::span<const TreePoint> centers,
                                        std::span<const double> radii);

}  // namespace treegeo
