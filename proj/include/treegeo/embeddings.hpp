#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "treegeo/metric_checks.hpp"
#include "treegeo/tree.hpp"

namespace treegeo {

enum class NormTag { L1, Linf };

/// Distance in the tagged norm; weights apply to L1 only (sum w_i |x_i|)
/// and are ignored for Linf. An empty weight vector means unit weights.
double norm_distance(NormTag norm, const Eigen::Ref<const Eigen::VectorXd>& x,
                     const Eigen::Ref<const Eigen::VectorXd>& y,
                     const Eigen::VectorXd& weights = {});

/// Finite-dimensional coordinate image of a point set, together with the
/// norm it lives in and optional per-coordinate weights.
struct EmbeddedPointSet {
  NormTag norm = NormTag::L1;
  std::vector<std::string> coord_labels;
  Eigen::VectorXd weights;  ///< size 0: unweighted
  std::vector<std::string> point_labels;
  std::vector<TreePoint> sources;
  Eigen::MatrixXd coords;  ///< one row per point

  int dimension() const { return static_cast<int>(coords.cols()); }
  int point_count() const { return static_cast<int>(coords.rows()); }
  double pair_distance(int i, int j) const {
    return norm_distance(norm, coords.row(i), coords.row(j), weights);
  }
};

using PointMap = std::function<Eigen::VectorXd(const TreePoint&)>;

/// Semicanonical l1 embedding: coordinate per edge, U(x)_e = overlap length
/// of [root, x] with e. Exactly isometric: ||U(x) - U(y)||_1 = d(x, y).
class L1Embedding {
 public:
  L1Embedding(const MetricTree& t, const TreePoint& root);
  Eigen::VectorXd map(const TreePoint& x) const;
  int dimension() const { return tree_->edge_count(); }
  std::vector<std::string> coord_labels() const;
  const TreePoint& root() const { return root_; }

 private:
  const MetricTree* tree_;
  TreePoint root_;
};

/// Landmark embedding into l_inf: J(x)_m = d(x, m) - d(base, m). With the
/// leaves of a finitely generated tree as landmarks this is isometric: any
/// geodesic [y, x] extends past x to a leaf, where the coordinate difference
/// attains d(x, y).
class LinfEmbedding {
 public:
  LinfEmbedding(const MetricTree& t, const TreePoint& base,
                std::vector<TreePoint> landmarks = {});  // empty: leaves
  Eigen::VectorXd map(const TreePoint& x) const;
  int dimension() const { return static_cast<int>(landmarks_.size()); }
  const std::vector<TreePoint>& landmarks() const { return landmarks_; }
  std::vector<std::string> coord_labels() const;

 private:
  const MetricTree* tree_;
  TreePoint base_;
  std::vector<TreePoint> landmarks_;
  std::vector<double> base_dists_;
};

/// Isometric embedding of the spider with 2^N unit legs into l_inf^N:
/// (i, t) -> t * v_i where v_i runs over the sign vectors {-1, 1}^N.
class SpiderCubeEmbedding {
 public:
  SpiderCubeEmbedding(const MetricTree& spider, int n_dims);
  Eigen::VectorXd map(const TreePoint& x) const;
  int dimension() const { return n_; }
  const MetricTree& tree() const { return *tree_; }

 private:
  const MetricTree* tree_;
  int n_ = 0;
};

SpiderCubeEmbedding embed_spider_cube(const MetricTree& spider, int n_dims);

/// Spider with n unit legs embedded into L1(1, n+1) by (i, t) -> indicator
/// of (i, i+t): as coordinates, t in the atom of leg i. Pairwise distances
/// are exact; distance_to_endpoint_mean evaluates the function-space L1
/// distance to the average of the n leg-end images (value t(1 - 2/n) + 1 on
/// leg i), which stays >= 1 everywhere on the tree.
class SpiderIntervalEmbedding {
 public:
  explicit SpiderIntervalEmbedding(const MetricTree& spider);
  Eigen::VectorXd map(const TreePoint& x) const;
  double distance_to_endpoint_mean(const TreePoint& x) const;
  int legs() const { return legs_; }

 private:
  const MetricTree* tree_;
  int legs_ = 0;
};

SpiderIntervalEmbedding spider_interval_embedding(const MetricTree& spider);

/// Step functions on (0, 2] realizing the unit tripod in a weighted l1
/// space of 4 atoms, with mutually nonpositive products, together with
/// their average g and the distances d_i = ||f_i - g||. Requires
/// 0 <= alpha <= beta < 1/3; then d1 = 1 - alpha and d2 = d3 = 1 + beta.
struct TripodWitness {
  double alpha = 0.0, beta = 0.0;
  double c = 0.0, a = 0.0;
  Eigen::Vector4d atom_weights;
  Eigen::Vector4d f1, f2, f3, g;
  double d1 = 0.0, d2 = 0.0, d3 = 0.0;

  double norm(const Eigen::Vector4d& v) const {
    return (atom_weights.array() * v.array().abs()).sum();
  }
};
TripodWitness tripod_witness_l1(double alpha, double beta);

/// Worst-pair comparison between tree distances and embedded distances.
struct IsometryReport {
  double max_additive_error = 0.0;
  std::pair<TreePoint, TreePoint> worst_pair;
  double lipschitz_constant = 1.0;
  long pairs = 0;
};

IsometryReport verify_isometry(const MetricTree& t, const PointMap& map,
                               NormTag norm, const Eigen::VectorXd& weights,
                               std::span<const TreePoint> pts);
IsometryReport verify_isometry_sampled(const MetricTree& t,
                                       const PointMap& map, NormTag norm,
                                       const Eigen::VectorXd& weights,
                                       int sample_pairs, std::uint64_t seed);

/// Product of the expansion and contraction suprema over index-aligned
/// pairs; +inf when distinct points collapse in the target.
double lipschitz_constant(const FiniteMetric& source,
                          const FiniteMetric& target);

/// Evaluate a point map over pts into an EmbeddedPointSet.
EmbeddedPointSet embed_points(const MetricTree& t, const PointMap& map,
                              NormTag norm,
                              std::vector<std::string> coord_labels,
                              const Eigen::VectorXd& weights,
                              std::span<const TreePoint> pts);

}  // namespace treegeo
