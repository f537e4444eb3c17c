#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treegeo/tree.hpp"

namespace treegeo {

class Rng;

/// Labeled finite metric space with a dense symmetric distance matrix.
struct FiniteMetric {
  std::vector<std::string> labels;
  Eigen::MatrixXd dist;

  int size() const { return static_cast<int>(labels.size()); }
};

/// dist[i][j] = geodesic distance between pts[i] and pts[j].
FiniteMetric distance_matrix(const MetricTree& t,
                             std::span<const TreePoint> pts);

/// Tuple of point indices with the two sides of the violated inequality.
struct Witness {
  std::vector<int> points;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Outcome of an inequality scan. worst_margin = max(lhs - rhs) over the
/// checked tuples; the inequality holds iff worst_margin <= tol, and a
/// witness is attached exactly when it fails.
struct InequalityReport {
  bool holds = true;
  double worst_margin = 0.0;
  std::optional<Witness> witness;
  long checked = 0;
  bool exhaustive = true;
};

/// Zero diagonal, symmetry, nonnegativity, triangle inequality.
InequalityReport check_metric_axioms(const FiniteMetric& m,
                                     double tol = kDefaultTol);

/// Four-point inequality (0-hyperbolicity):
/// d12 + d34 <= max(d13 + d24, d14 + d23) over quadruples with repetition.
/// Exhaustive for n <= 40, seeded sampling above.
InequalityReport check_four_point(const FiniteMetric& m,
                                  double tol = kDefaultTol,
                                  long sample_budget = 100000,
                                  std::uint64_t seed = 1);

/// Reshetnyak: d12^2 + d34^2 <= d13^2 + d24^2 + d14^2 + d23^2.
InequalityReport check_reshetnyak(const FiniteMetric& m,
                                  double tol = kDefaultTol,
                                  long sample_budget = 100000,
                                  std::uint64_t seed = 1);

/// CN (midpoint comparison) inequality at a single triple, with
/// y = midpoint(x1, x2):
/// d(x0,y)^2 <= d(x0,x1)^2/2 + d(x0,x2)^2/2 - d(x1,x2)^2/4.
InequalityReport check_cn_midpoint(const MetricTree& t, const TreePoint& x0,
                                   const TreePoint& x1, const TreePoint& x2,
                                   double tol = kDefaultTol);

/// Sampled lower estimate of the modulus of convexity at anchor a: the
/// minimum over admissible pairs (max dist from a <= R, pair distance
/// >= R*eps) of 1 - d(a, midpoint)/R. eps = 0 returns 1 by convention
/// (the admissibility constraint is empty).
struct ModulusProbe {
  double radius = 0.0;
  double eps = 0.0;
  long admissible = 0;
  std::optional<double> observed_min;  ///< absent when no admissible pair
};
ModulusProbe modulus_convexity_probe(const MetricTree& t, const TreePoint& a,
                                     double radius, double eps, int samples,
                                     std::uint64_t seed);

/// Conditional negative definiteness of (d_ij^p), decided by the maximum
/// eigenvalue of P C P where P = I - J/n projects onto the zero-sum
/// hyperplane. On failure the report carries a zero-sum witness with
/// positive quadratic form.
struct NegTypeReport {
  double p = 0.0;
  double max_projected_eigenvalue = 0.0;
  bool holds = true;
  std::optional<Eigen::VectorXd> witness_vector;
  std::optional<double> form_value;
};
NegTypeReport negative_type_test(const FiniteMetric& m, double p,
                                 double tol = kDefaultTol);

/// Uniform-witness scan over the spiders with n unit legs: evaluates
/// xi = (-n, 1, ..., 1) on the {center + endpoints} matrix with entries 1
/// and c = 2^p, so the form equals n(c(n-1) - 2n), positive exactly when
/// n > c/(c-2) (for c > 2). pair_form_shifted records the quadratic form of
/// (sqrt(2n), -sqrt(2n), 0, ..., 0) under -(C - cJ)/(c-1), which stays
/// positive for every n.
struct SpiderScanRow {
  int n = 0;
  double c = 0.0;
  double uniform_witness_form = 0.0;
  bool holds = true;
  double threshold = 0.0;  ///< c/(c-2); +inf when c <= 2
  double pair_form_shifted = 0.0;
};
std::vector<SpiderScanRow> spider_negative_type_scan(int max_n, double p,
                                                     double tol = kDefaultTol);

/// Hypercube type-2 inequality for a map f : {-1,1}^k -> points, encoded as
/// f[mask] with bit i of mask giving the sign of coordinate i:
/// sum_eps d(f(eps), f(-eps))^2 <= K k^{1/p-1/2} sum_eps sum_i
/// d(f(eps), f(eps^[i]))^2.
InequalityReport metric_type2_test(const FiniteMetric& m,
                                   const std::vector<int>& f, double K,
                                   double p, double tol = kDefaultTol);

/// Worst lhs/rhs ratio of the type-2 inequality (K = 1, p = 2) over maps
/// {-1,1}^k -> points; exhaustive when n^(2^k) <= budget, else seeded
/// random maps.
struct Type2Search {
  double worst_ratio = 0.0;
  std::vector<int> arg_map;
  long checked = 0;
  bool exhaustive = true;
};
Type2Search metric_type2_search(const FiniteMetric& m, int k,
                                long budget = 2000000,
                                std::uint64_t seed = 1);

/// n random points of the plane under the radial metric (same ray: |t-s|,
/// otherwise t+s). The sample reuses rays with positive probability so both
/// branches are exercised.
FiniteMetric gen_radial_sample(int n, std::uint64_t seed);

/// Metric from a seeded random tree configuration: pts random points of
/// gen_random_tree(tree_size, seed).
FiniteMetric random_tree_sample_metric(int tree_size, int pts,
                                       std::uint64_t seed);

/// Random symmetric nonnegative matrix repaired into a metric by
/// shortest-path completion.
FiniteMetric random_repaired_metric(int n, std::uint64_t seed);

/// Random points on t: edge chosen with probability proportional to length,
/// offset uniform; with probability vertex_prob a uniform vertex instead.
std::vector<TreePoint> random_points(const MetricTree& t, int count, Rng& rng,
                                     double vertex_prob = 0.25);
TreePoint random_point(const MetricTree& t, Rng& rng);

}  // namespace treegeo
