#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "treegeo/convexity.hpp"
#include "treegeo/tree.hpp"

namespace treegeo {

/// Certified covering / packing count. Exactly one of parts (diameter-2eps
/// partition) and centers (radius-eps ball centers) is filled, and it
/// certifies the count; exact is true only for provably optimal results.
struct CoverResult {
  double epsilon = 0.0;
  long count = 0;
  bool exact = true;
  std::vector<std::vector<int>> parts;
  std::vector<TreePoint> centers;
  std::vector<int> chosen;  ///< indices of a separated subset (packing runs)
};

/// Minimal number of parts of diameter <= 2 eps covering A (equals the
/// minimal ball-cover count on trees, by centeredness). Exact branch and
/// bound for |A| <= 15, farthest-point greedy upper bound above.
CoverResult cover_number_subset(const MetricTree& t,
                                std::span<const TreePoint> pts, double eps);

/// Minimal number of radius-eps balls (centers anywhere in the tree)
/// covering the points: deepest-point greedy, which is optimal on trees.
CoverResult ball_cover_subset(const MetricTree& t,
                              std::span<const TreePoint> pts, double eps);

/// Minimal number of radius-eps balls covering the whole tree (continuum):
/// place a center eps above the deepest uncovered point, prune, repeat.
CoverResult cover_number_tree(const MetricTree& t, double eps);

/// Maximal cardinality of a subset with pairwise distances >= eps. Exact
/// branch-and-bound independent set for |A| <= 30, deepest-first greedy
/// lower bound above.
CoverResult separated_max(const MetricTree& t, std::span<const TreePoint> pts,
                          double eps);

/// Greedy separated count over a skeleton of the whole tree.
CoverResult separated_max_tree(const MetricTree& t, double eps,
                               double skeleton_delta = 1e-3);

struct ProfileRow {
  double eps = 0.0;
  long n_cover = 0;  ///< partition route
  bool n_exact = true;
  long k_cover = 0;  ///< ball route (centers in the tree)
  long m_sep = 0;
  bool m_exact = true;
  long m_at_double = 0;  ///< M_{2 eps + 1e-9}, for the packing-covering chain
};

std::vector<ProfileRow> covering_profile(const MetricTree& t,
                                         std::span<const TreePoint> pts,
                                         std::span<const double> eps_grid);
std::vector<ProfileRow> covering_profile_tree(const MetricTree& t,
                                              std::span<const double> eps_grid,
                                              double skeleton_delta = 1e-3);

/// Covering bound for the convex hull:
/// N_{eps1+eps2}(conv S) <= N_{eps1}(S) * max(1, ceil(diam S / (4 eps2))).
struct HullCoverCheck {
  double eps1 = 0.0, eps2 = 0.0;
  double diam = 0.0;
  long lhs = 0;
  long n_eps1 = 0;
  long k_factor = 1;
  long rhs = 0;
  bool holds = true;
};
HullCoverCheck hull_cover_check(const MetricTree& t,
                                std::span<const TreePoint> pts, double eps1,
                                double eps2, double skeleton_delta = 0.0);

/// Bracket [c2/2, c1] for the n-th width of S, where
/// c1 = inf{eps : K_eps(S) <= n} (net centers within S for subsets) and
/// c2 = sup{eps : M_eps(S) >= n+1}. lower <= upper is expected on trees but
/// only flagged, not asserted, when breakpoint arithmetic disagrees.
struct WidthBounds {
  int n = 0;
  double c1 = 0.0;
  double c2 = 0.0;
  double lower = 0.0;  ///< c2 / 2
  double upper = 0.0;  ///< c1
  bool bracket_consistent = true;
};
WidthBounds width_bounds_tree(const MetricTree& t, int n,
                              double resolution = 1e-4,
                              double skeleton_delta = 1e-3);
WidthBounds width_bounds_subset(const MetricTree& t,
                                std::span<const TreePoint> pts, int n);

/// alpha_k = min over partitions into <= k parts of the max diameter;
/// beta_k = min radius of a <= k ball cover (centers in the tree). On trees
/// alpha_k = 2 beta_k exactly.
struct NoncompactRow {
  int k = 0;
  double alpha = 0.0;
  double beta = 0.0;
};
std::vector<NoncompactRow> noncompactness_profiles(
    const MetricTree& t, std::span<const TreePoint> pts, int k_max);

struct WidthLimitRow {
  int n = 0;
  double lower = 0.0, upper = 0.0;
  double alpha_half = 0.0;  ///< alpha_n / 2, interleaving the bracket
};
struct WidthLimitCheck {
  std::vector<WidthLimitRow> rows;
  bool upper_nonincreasing = true;
  bool alpha_interleaved = true;  ///< lower <= alpha_n/2 <= upper per row
};
WidthLimitCheck width_limit_check(const MetricTree& t,
                                  std::span<const TreePoint> pts, int n_max);

/// Best affine fit of a point cloud (rows of `points`): numerical rank of
/// the centered cloud and the largest Euclidean residual against the
/// rank-dimensional affine span.
struct AffineSpanFit {
  int rank = 0;
  double sup_residual = 0.0;
};
AffineSpanFit affine_span_fit(const Eigen::MatrixXd& points,
                              double rank_tol = 1e-9);

}  // namespace treegeo
