#include "treegeo/embeddings.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "treegeo/random.hpp"

namespace treegeo {

double norm_distance(NormTag norm, const Eigen::Ref<const Eigen::VectorXd>& x,
                     const Eigen::Ref<const Eigen::VectorXd>& y,
                     const Eigen::VectorXd& weights) {
  if (x.size() != y.size())
    throw std::invalid_argument("norm_distance: dimension mismatch");
  if (norm == NormTag::Linf)
    return x.size() == 0 ? 0.0 : (x - y).cwiseAbs().maxCoeff();
  if (weights.size() == 0) return (x - y).cwiseAbs().sum();
  if (weights.size() != x.size())
    throw std::invalid_argument("norm_distance: weight dimension mismatch");
  return (weights.array() * (x - y).array().abs()).sum();
}

L1Embedding::L1Embedding(const MetricTree& t, const TreePoint& root)
    : tree_(&t), root_(root) {
  t.validate_point(root);
}

Eigen::VectorXd L1Embedding::map(const TreePoint& x) const {
  tree_->validate_point(x);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(tree_->edge_count());
  for (const SegmentPiece& piece : segment(*tree_, root_, x).pieces)
    u(piece.edge) += piece.length();
  return u;
}

std::vector<std::string> L1Embedding::coord_labels() const {
  std::vector<std::string> labels;
  labels.reserve(tree_->edge_count());
  for (int e = 0; e < tree_->edge_count(); ++e)
    labels.push_back(tree_->vertex_id(tree_->edge(e).a) + "-" +
                     tree_->vertex_id(tree_->edge(e).b));
  return labels;
}

LinfEmbedding::LinfEmbedding(const MetricTree& t, const TreePoint& base,
                             std::vector<TreePoint> landmarks)
    : tree_(&t), base_(base), landmarks_(std::move(landmarks)) {
  t.validate_point(base);
  if (landmarks_.empty()) landmarks_ = leaves(t);
  base_dists_.reserve(landmarks_.size());
  for (const TreePoint& m : landmarks_)
    base_dists_.push_back(distance(t, base_, m));
}

Eigen::VectorXd LinfEmbedding::map(const TreePoint& x) const {
  tree_->validate_point(x);
  Eigen::VectorXd j(landmarks_.size());
  for (std::size_t i = 0; i < landmarks_.size(); ++i)
    j(i) = distance(*tree_, x, landmarks_[i]) - base_dists_[i];
  return j;
}

std::vector<std::string> LinfEmbedding::coord_labels() const {
  std::vector<std::string> labels;
  labels.reserve(landmarks_.size());
  for (const TreePoint& m : landmarks_)
    labels.push_back(m.is_vertex() ? tree_->vertex_id(m.vertex)
                                   : "landmark" + std::to_string(labels.size()));
  return labels;
}

SpiderCubeEmbedding::SpiderCubeEmbedding(const MetricTree& spider, int n_dims)
    : tree_(&spider), n_(n_dims) {
  if (n_dims < 1) throw std::invalid_argument("dimension must be >= 1");
  const int legs = spider.edge_count();
  if (legs != (1 << n_dims))
    throw std::invalid_argument("spider must have 2^N legs");
  if (spider.find_vertex("o") < 0)
    throw std::invalid_argument("not a spider tree");
  for (int e = 0; e < legs; ++e)
    if (std::abs(spider.edge(e).w - 1.0) > 1e-12)
      throw std::invalid_argument("spider legs must have unit length");
}

Eigen::VectorXd SpiderCubeEmbedding::map(const TreePoint& x) const {
  const auto [leg, t] = spider_coords(*tree_, x);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n_);
  if (leg == 0) return v;
  for (int bit = 0; bit < n_; ++bit)
    v(bit) = (((leg - 1) >> bit) & 1) ? t : -t;
  return v;
}

SpiderCubeEmbedding embed_spider_cube(const MetricTree& spider, int n_dims) {
  return SpiderCubeEmbedding(spider, n_dims);
}

SpiderIntervalEmbedding::SpiderIntervalEmbedding(const MetricTree& spider)
    : tree_(&spider), legs_(spider.edge_count()) {
  if (legs_ < 1 || spider.find_vertex("o") < 0)
    throw std::invalid_argument("not a spider tree");
  for (int e = 0; e < legs_; ++e)
    if (std::abs(spider.edge(e).w - 1.0) > 1e-12)
      throw std::invalid_argument("spider legs must have unit length");
}

Eigen::VectorXd SpiderIntervalEmbedding::map(const TreePoint& x) const {
  const auto [leg, t] = spider_coords(*tree_, x);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(legs_);
  if (leg > 0) v(leg - 1) = t;
  return v;
}

double SpiderIntervalEmbedding::distance_to_endpoint_mean(
    const TreePoint& x) const {
  const auto [leg, t] = spider_coords(*tree_, x);
  const double n = legs_;
  // Indicator of (i, i+t) against the constant 1/n on every atom:
  // t(1 - 1/n) + (1 - t)/n on its own atom, 1/n on each of the others.
  if (leg == 0) return 1.0;
  return t * (1.0 - 1.0 / n) + (1.0 - t) / n + (n - 1.0) / n;
}

SpiderIntervalEmbedding spider_interval_embedding(const MetricTree& spider) {
  return SpiderIntervalEmbedding(spider);
}

TripodWitness tripod_witness_l1(double alpha, double beta) {
  if (!(0.0 <= alpha && alpha <= beta && beta < 1.0 / 3.0))
    throw std::invalid_argument(
        "tripod witness requires 0 <= alpha <= beta < 1/3");
  TripodWitness w;
  w.alpha = alpha;
  w.beta = beta;
  w.c = 1.0 - 3.0 * beta;
  w.a = (1.0 - 3.0 * alpha) / w.c;
  const double c = w.c, a = w.a;

  // Atoms [0, c/2], (c/2, 1-c/2], (1-c/2, 1], (1, 2] with their lengths as
  // weights; the f_i are constant on each atom.
  w.atom_weights << c / 2.0, 1.0 - c, c / 2.0, 1.0;
  w.f1 << 1.0, 1.0, 1.0, 0.0;
  w.f2 << -a, 0.0, 0.0, 1.0 - a * c / 2.0;
  w.f3 << 0.0, 0.0, -a, -(1.0 - a * c / 2.0);
  w.g = (w.f1 + w.f2 + w.f3) / 3.0;
  w.d1 = w.norm(w.f1 - w.g);
  w.d2 = w.norm(w.f2 - w.g);
  w.d3 = w.norm(w.f3 - w.g);
  return w;
}

IsometryReport verify_isometry(const MetricTree& t, const PointMap& map,
                               NormTag norm, const Eigen::VectorXd& weights,
                               std::span<const TreePoint> pts) {
  IsometryReport rep;
  const int n = static_cast<int>(pts.size());
  std::vector<Eigen::VectorXd> images;
  images.reserve(n);
  for (const TreePoint& p : pts) images.push_back(map(p));
  double expand = 0.0, contract = 0.0;
  bool collapsed = false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double ds = distance(t, pts[i], pts[j]);
      const double dt = norm_distance(norm, images[i], images[j], weights);
      ++rep.pairs;
      const double err = std::abs(dt - ds);
      if (err > rep.max_additive_error) {
        rep.max_additive_error = err;
        rep.worst_pair = {pts[i], pts[j]};
      }
      if (ds > 0.0) {
        expand = std::max(expand, dt / ds);
        if (dt > 0.0)
          contract = std::max(contract, ds / dt);
        else
          collapsed = true;
      }
    }
  rep.lipschitz_constant =
      collapsed ? std::numeric_limits<double>::infinity()
                : (rep.pairs > 0 && expand > 0.0 ? expand * contract : 1.0);
  return rep;
}

IsometryReport verify_isometry_sampled(const MetricTree& t,
                                       const PointMap& map, NormTag norm,
                                       const Eigen::VectorXd& weights,
                                       int sample_pairs, std::uint64_t seed) {
  Rng rng(seed);
  IsometryReport rep;
  double expand = 0.0, contract = 0.0;
  bool collapsed = false;
  for (int s = 0; s < sample_pairs; ++s) {
    const TreePoint p = random_points(t, 1, rng, 0.3)[0];
    const TreePoint q = random_points(t, 1, rng, 0.3)[0];
    const double ds = distance(t, p, q);
    const double dt = norm_distance(norm, map(p), map(q), weights);
    ++rep.pairs;
    const double err = std::abs(dt - ds);
    if (err > rep.max_additive_error) {
      rep.max_additive_error = err;
      rep.worst_pair = {p, q};
    }
    if (ds > 0.0) {
      expand = std::max(expand, dt / ds);
      if (dt > 0.0)
        contract = std::max(contract, ds / dt);
      else
        collapsed = true;
    }
  }
  rep.lipschitz_constant =
      collapsed ? std::numeric_limits<double>::infinity()
                : (expand > 0.0 ? expand * contract : 1.0);
  return rep;
}

double lipschitz_constant(const FiniteMetric& source,
                          const FiniteMetric& target) {
  const int n = source.size();
  if (n != target.size() || n < 2)
    throw std::invalid_argument("lipschitz: need aligned metrics, n >= 2");
  double expand = 0.0, contract = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double ds = source.dist(i, j), dt = target.dist(i, j);
      if (ds <= 0.0)
        throw std::invalid_argument(
            "lipschitz: zero source distance between distinct points");
      if (dt <= 0.0) return std::numeric_limits<double>::infinity();
      expand = std::max(expand, dt / ds);
      contract = std::max(contract, ds / dt);
    }
  return expand * contract;
}

EmbeddedPointSet embed_points(const MetricTree& t, const PointMap& map,
                              NormTag norm,
                              std::vector<std::string> coord_labels,
                              const Eigen::VectorXd& weights,
                              std::span<const TreePoint> pts) {
  EmbeddedPointSet set;
  set.norm = norm;
  set.coord_labels = std::move(coord_labels);
  set.weights = weights;
  const int n = static_cast<int>(pts.size());
  const int dim = static_cast<int>(set.coord_labels.size());
  set.coords = Eigen::MatrixXd::Zero(n, dim);
  for (int i = 0; i < n; ++i) {
    set.sources.push_back(pts[i]);
    set.point_labels.push_back("x" + std::to_string(i));
    Eigen::VectorXd v = map(pts[i]);
    if (v.size() != dim)
      throw std::invalid_argument("embed_points: label/dimension mismatch");
    set.coords.row(i) = v.transpose();
  }
  (void)t;
  return set;
}

}  // namespace treegeo
