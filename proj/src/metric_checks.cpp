#include "treegeo/metric_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "treegeo/random.hpp"

namespace treegeo {

FiniteMetric distance_matrix(const MetricTree& t,
                             std::span<const TreePoint> pts) {
  FiniteMetric m;
  const int n = static_cast<int>(pts.size());
  m.labels.reserve(n);
  for (int i = 0; i < n; ++i) m.labels.push_back("p" + std::to_string(i));
  m.dist = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d = distance(t, pts[i], pts[j]);
      m.dist(i, j) = d;
      m.dist(j, i) = d;
    }
  return m;
}

InequalityReport check_metric_axioms(const FiniteMetric& m, double tol) {
  const int n = m.size();
  if (m.dist.rows() != n || m.dist.cols() != n)
    throw std::invalid_argument("metric: labels/matrix size mismatch");
  InequalityReport rep;
  rep.worst_margin = -std::numeric_limits<double>::infinity();
  auto consider = [&](double lhs, double rhs, std::vector<int> pts) {
    ++rep.checked;
    const double margin = lhs - rhs;
    if (margin > rep.worst_margin) {
      rep.worst_margin = margin;
      if (margin > tol) rep.witness = Witness{std::move(pts), lhs, rhs};
    }
  };
  for (int i = 0; i < n; ++i) consider(std::abs(m.dist(i, i)), 0.0, {i});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      consider(std::abs(m.dist(i, j) - m.dist(j, i)), 0.0, {i, j});
      consider(-m.dist(i, j), 0.0, {i, j});
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        consider(m.dist(i, j), m.dist(i, k) + m.dist(k, j), {i, j, k});
  rep.holds = rep.worst_margin <= tol;
  if (rep.holds) rep.witness.reset();
  return rep;
}

namespace {

void require_symmetric(const FiniteMetric& m) {
  const int n = m.size();
  if (m.dist.rows() != n || m.dist.cols() != n)
    throw std::invalid_argument("metric: labels/matrix size mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (m.dist(i, j) != m.dist(j, i))
        throw std::invalid_argument("matrix asymmetric");
}

// Shared quadruple scan for the four-point and Reshetnyak inequalities.
template <typename Eval>
InequalityReport quadruple_scan(const FiniteMetric& m, double tol,
                                long sample_budget, std::uint64_t seed,
                                Eval eval) {
  require_symmetric(m);
  const int n = m.size();
  if (n < 1) throw std::invalid_argument("metric needs >= 1 point");
  InequalityReport rep;
  rep.worst_margin = -std::numeric_limits<double>::infinity();
  auto consider = [&](int i, int j, int k, int l) {
    ++rep.checked;
    const auto [lhs, rhs] = eval(i, j, k, l);
    const double margin = lhs - rhs;
    if (margin > rep.worst_margin) {
      rep.worst_margin = margin;
      if (margin > tol) rep.witness = Witness{{i, j, k, l}, lhs, rhs};
    }
  };
  if (n <= 40) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) consider(i, j, k, l);
  } else {
    rep.exhaustive = false;
    Rng rng(seed);
    for (long s = 0; s < sample_budget; ++s)
      consider(static_cast<int>(rng.uniform_int(0, n - 1)),
               static_cast<int>(rng.uniform_int(0, n - 1)),
               static_cast<int>(rng.uniform_int(0, n - 1)),
               static_cast<int>(rng.uniform_int(0, n - 1)));
  }
  rep.holds = rep.worst_margin <= tol;
  if (rep.holds) rep.witness.reset();
  return rep;
}

}  // namespace

InequalityReport check_four_point(const FiniteMetric& m, double tol,
                                  long sample_budget, std::uint64_t seed) {
  const auto& d = m.dist;
  return quadruple_scan(m, tol, sample_budget, seed,
                        [&](int i, int j, int k, int l) {
                          const double lhs = d(i, j) + d(k, l);
                          const double rhs = std::max(d(i, k) + d(j, l),
                                                      d(i, l) + d(j, k));
                          return std::pair{lhs, rhs};
                        });
}

InequalityReport check_reshetnyak(const FiniteMetric& m, double tol,
                                  long sample_budget, std::uint64_t seed) {
  const auto& d = m.dist;
  auto sq = [](double x) { return x * x; };
  return quadruple_scan(m, tol, sample_budget, seed,
                        [&](int i, int j, int k, int l) {
                          const double lhs = sq(d(i, j)) + sq(d(k, l));
                          const double rhs = sq(d(i, k)) + sq(d(j, l)) +
                                             sq(d(i, l)) + sq(d(j, k));
                          return std::pair{lhs, rhs};
                        });
}

InequalityReport check_cn_midpoint(const MetricTree& t, const TreePoint& x0,
                                   const TreePoint& x1, const TreePoint& x2,
                                   double tol) {
  const TreePoint y = midpoint(t, x1, x2);
  const double d0y = distance(t, x0, y);
  const double d01 = distance(t, x0, x1);
  const double d02 = distance(t, x0, x2);
  const double d12 = distance(t, x1, x2);
  InequalityReport rep;
  rep.checked = 1;
  const double lhs = d0y * d0y;
  const double rhs = d01 * d01 / 2.0 + d02 * d02 / 2.0 - d12 * d12 / 4.0;
  rep.worst_margin = lhs - rhs;
  rep.holds = rep.worst_margin <= tol;
  if (!rep.holds) rep.witness = Witness{{0, 1, 2}, lhs, rhs};
  return rep;
}

ModulusProbe modulus_convexity_probe(const MetricTree& t, const TreePoint& a,
                                     double radius, double eps, int samples,
                                     std::uint64_t seed) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be > 0");
  if (eps < 0.0 || eps > 2.0)
    throw std::invalid_argument("eps must lie in [0, 2]");
  t.validate_point(a);
  ModulusProbe probe;
  probe.radius = radius;
  probe.eps = eps;
  if (eps == 0.0) {
    // Empty admissibility constraint; the infimum convention is 1.
    probe.observed_min = 1.0;
    return probe;
  }
  Rng rng(seed);
  double best = std::numeric_limits<double>::infinity();
  auto draw = [&] {
    // Vertices get positive probability so exact boundary pairs (endpoints
    // at pair distance exactly R*eps) are reachable.
    if (rng.uniform() < 0.25)
      return t.vertex_point(
          static_cast<int>(rng.uniform_int(0, t.vertex_count() - 1)));
    return random_point(t, rng);
  };
  for (int s = 0; s < samples; ++s) {
    const TreePoint x1 = draw();
    const TreePoint x2 = draw();
    if (distance(t, a, x1) > radius || distance(t, a, x2) > radius) continue;
    if (distance(t, x1, x2) < radius * eps) continue;
    ++probe.admissible;
    const TreePoint mid = midpoint(t, x1, x2);
    best = std::min(best, 1.0 - distance(t, a, mid) / radius);
  }
  if (probe.admissible > 0) probe.observed_min = best;
  return probe;
}

NegTypeReport negative_type_test(const FiniteMetric& m, double p, double tol) {
  if (!(p > 0.0)) throw std::invalid_argument("exponent p must be > 0");
  require_symmetric(m);
  const int n = m.size();
  NegTypeReport rep;
  rep.p = p;
  if (n == 0) return rep;
  Eigen::MatrixXd c(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      c(i, j) = i == j ? 0.0 : std::pow(m.dist(i, j), p);
  const Eigen::MatrixXd proj =
      Eigen::MatrixXd::Identity(n, n) -
      Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  Eigen::MatrixXd pcp = proj * c * proj;
  pcp = ((pcp + pcp.transpose()) / 2.0).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pcp);
  Eigen::Index which = 0;
  rep.max_projected_eigenvalue = es.eigenvalues().maxCoeff(&which);
  rep.holds = rep.max_projected_eigenvalue <= tol;
  if (!rep.holds) {
    Eigen::VectorXd xi = proj * es.eigenvectors().col(which);
    xi.array() -= xi.mean();
    xi.normalize();
    rep.witness_vector = xi;
    rep.form_value = xi.dot(c * xi);
  }
  return rep;
}

std::vector<SpiderScanRow> spider_negative_type_scan(int max_n, double p,
                                                     double tol) {
  if (!(p > 0.0)) throw std::invalid_argument("exponent p must be > 0");
  if (max_n < 1) throw std::invalid_argument("max_n must be >= 1");
  const double c = std::pow(2.0, p);
  std::vector<SpiderScanRow> rows;
  rows.reserve(max_n);
  for (int n = 1; n <= max_n; ++n) {
    SpiderScanRow row;
    row.n = n;
    row.c = c;
    row.threshold = c > 2.0 ? c / (c - 2.0)
                            : std::numeric_limits<double>::infinity();

    // Distance matrix of {center, n endpoints} raised to p: first row/col 1,
    // off-diagonal c.
    Eigen::MatrixXd mat = Eigen::MatrixXd::Constant(n + 1, n + 1, c);
    mat.row(0).setOnes();
    mat.col(0).setOnes();
    mat.diagonal().setZero();

    Eigen::VectorXd xi = Eigen::VectorXd::Ones(n + 1);
    xi(0) = -n;
    row.uniform_witness_form = xi.dot(mat * xi);
    row.holds = row.uniform_witness_form <= tol;

    const Eigen::MatrixXd shifted =
        -(mat - Eigen::MatrixXd::Constant(n + 1, n + 1, c)) / (c - 1.0);
    Eigen::VectorXd eta = Eigen::VectorXd::Zero(n + 1);
    eta(0) = std::sqrt(2.0 * n);
    eta(1) = -std::sqrt(2.0 * n);
    row.pair_form_shifted = eta.dot(shifted * eta);
    rows.push_back(row);
  }
  return rows;
}

namespace {

// lhs and edge-sum of the hypercube inequality for f over {-1,1}^k.
std::pair<double, double> type2_sums(const Eigen::MatrixXd& d,
                                     const std::vector<int>& f, int k) {
  const int full = (1 << k) - 1;
  double lhs = 0.0, edges = 0.0;
  for (int mask = 0; mask <= full; ++mask) {
    const double diag = d(f[mask], f[mask ^ full]);
    lhs += diag * diag;
    for (int i = 0; i < k; ++i) {
      const double e = d(f[mask], f[mask ^ (1 << i)]);
      edges += e * e;
    }
  }
  return {lhs, edges};
}

int cube_dim(std::size_t map_size) {
  int k = 0;
  while ((std::size_t{1} << k) < map_size) ++k;
  if ((std::size_t{1} << k) != map_size || k < 1)
    throw std::invalid_argument("map size must be 2^k with k >= 1");
  return k;
}

}  // namespace

InequalityReport metric_type2_test(const FiniteMetric& m,
                                   const std::vector<int>& f, double K,
                                   double p, double tol) {
  require_symmetric(m);
  const int k = cube_dim(f.size());
  for (int idx : f)
    if (idx < 0 || idx >= m.size())
      throw std::invalid_argument("map target out of range");
  const auto [lhs, edges] = type2_sums(m.dist, f, k);
  const double rhs = K * std::pow(double(k), 1.0 / p - 0.5) * edges;
  InequalityReport rep;
  rep.checked = 1;
  rep.worst_margin = lhs - rhs;
  rep.holds = rep.worst_margin <= tol;
  if (!rep.holds) rep.witness = Witness{f, lhs, rhs};
  return rep;
}

Type2Search metric_type2_search(const FiniteMetric& m, int k, long budget,
                                std::uint64_t seed) {
  require_symmetric(m);
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const int n = m.size();
  const int cube = 1 << k;
  Type2Search out;
  if (n == 0) return out;
  std::vector<int> f(cube, 0);

  auto consider = [&](const std::vector<int>& map) {
    ++out.checked;
    const auto [lhs, edges] = type2_sums(m.dist, map, k);
    const double ratio = edges > 0.0 ? lhs / edges : 0.0;
    if (ratio > out.worst_ratio) {
      out.worst_ratio = ratio;
      out.arg_map = map;
    }
  };

  double total = 1.0;
  for (int i = 0; i < cube; ++i) total *= n;
  if (total <= static_cast<double>(budget)) {
    // odometer over all n^cube maps
    while (true) {
      consider(f);
      int pos = 0;
      while (pos < cube && ++f[pos] == n) f[pos++] = 0;
      if (pos == cube) break;
    }
  } else {
    out.exhaustive = false;
    Rng rng(seed);
    for (long s = 0; s < budget; ++s) {
      for (int i = 0; i < cube; ++i)
        f[i] = static_cast<int>(rng.uniform_int(0, n - 1));
      consider(f);
    }
  }
  if (out.arg_map.empty()) out.arg_map = f;
  return out;
}

FiniteMetric gen_radial_sample(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample needs >= 1 point");
  Rng rng(seed);
  std::vector<int> ray(n);
  std::vector<double> radius(n);
  int rays = 0;
  for (int i = 0; i < n; ++i) {
    if (i > 0 && rng.uniform() < 0.3)
      ray[i] = static_cast<int>(rng.uniform_int(0, rays - 1));
    else
      ray[i] = rays++;
    radius[i] = rng.uniform(0.0, 2.0);
  }
  FiniteMetric m;
  for (int i = 0; i < n; ++i) m.labels.push_back("p" + std::to_string(i));
  m.dist = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d = ray[i] == ray[j] ? std::abs(radius[i] - radius[j])
                                        : radius[i] + radius[j];
      m.dist(i, j) = d;
      m.dist(j, i) = d;
    }
  return m;
}

TreePoint random_point(const MetricTree& t, Rng& rng) {
  if (t.edge_count() == 0) return t.vertex_point(0);
  double target = rng.uniform(0.0, t.total_length());
  for (int ei = 0; ei < t.edge_count(); ++ei) {
    const double w = t.edge(ei).w;
    if (target <= w) return t.canonical_point(ei, target);
    target -= w;
  }
  return t.vertex_point(t.edge(t.edge_count() - 1).b);
}

std::vector<TreePoint> random_points(const MetricTree& t, int count, Rng& rng,
                                     double vertex_prob) {
  std::vector<TreePoint> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    if (rng.uniform() < vertex_prob)
      pts.push_back(t.vertex_point(
          static_cast<int>(rng.uniform_int(0, t.vertex_count() - 1))));
    else
      pts.push_back(random_point(t, rng));
  }
  return pts;
}

FiniteMetric random_tree_sample_metric(int tree_size, int pts,
                                       std::uint64_t seed) {
  MetricTree t = gen_random_tree(tree_size, seed);
  Rng rng(seed ^ 0xabcdef12345ULL);
  auto points = random_points(t, pts, rng);
  return distance_matrix(t, points);
}

FiniteMetric random_repaired_metric(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("metric needs >= 1 point");
  Rng rng(seed);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = rng.uniform(0.2, 2.0);
      d(i, j) = v;
      d(j, i) = v;
    }
  // Shortest-path completion restores the triangle inequality.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
  FiniteMetric m;
  for (int i = 0; i < n; ++i) m.labels.push_back("p" + std::to_string(i));
  m.dist = std::move(d);
  return m;
}

}  // namespace treegeo
