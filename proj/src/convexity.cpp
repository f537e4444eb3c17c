#include "treegeo/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace treegeo {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ConvexSubtree::ConvexSubtree(const MetricTree& t)
    : tree_(&t),
      vertex_in_(t.vertex_count(), 0),
      edge_iv_(t.edge_count(), EdgeInterval{}) {}

ConvexSubtree ConvexSubtree::empty_set(const MetricTree& t) {
  return ConvexSubtree(t);
}

ConvexSubtree ConvexSubtree::whole_tree(const MetricTree& t) {
  ConvexSubtree s(t);
  std::fill(s.vertex_in_.begin(), s.vertex_in_.end(), 1);
  for (int e = 0; e < t.edge_count(); ++e)
    s.edge_iv_[e] = EdgeInterval{0.0, t.edge(e).w};
  return s;
}

bool ConvexSubtree::empty() const {
  for (char f : vertex_in_)
    if (f) return false;
  for (const EdgeInterval& iv : edge_iv_)
    if (!iv.empty()) return false;
  return true;
}

bool ConvexSubtree::contains(const TreePoint& p, double tol) const {
  return outside_distance_bound(p) <= tol;
}

double ConvexSubtree::outside_distance_bound(const TreePoint& p) const {
  tree_->validate_point(p);
  if (p.is_vertex()) {
    if (vertex_in_[p.vertex]) return 0.0;
    double best = kInf;
    // nearest touching interval on an incident edge
    for (auto [nb, ei] : tree_->neighbors(p.vertex)) {
      const EdgeInterval& iv = edge_iv_[ei];
      if (iv.empty()) continue;
      const TreeEdge& e = tree_->edge(ei);
      const double off = (p.vertex == e.a) ? 0.0 : e.w;
      best = std::min(best, std::max({iv.lo - off, off - iv.hi, 0.0}));
    }
    return best;
  }
  const EdgeInterval& iv = edge_iv_[p.edge];
  if (!iv.empty())
    return std::max({iv.lo - p.offset, p.offset - iv.hi, 0.0});
  return kInf;
}

double ConvexSubtree::measure() const {
  double len = 0.0;
  for (const EdgeInterval& iv : edge_iv_) len += iv.length();
  return len;
}

void ConvexSubtree::normalize(double tol) {
  for (int e = 0; e < tree_->edge_count(); ++e) {
    EdgeInterval& iv = edge_iv_[e];
    if (iv.empty()) continue;
    const double w = tree_->edge(e).w;
    iv.lo = std::max(iv.lo, 0.0);
    iv.hi = std::min(iv.hi, w);
    if (iv.lo > iv.hi) {
      iv = EdgeInterval{};
      continue;
    }
    if (iv.lo <= tol) {
      iv.lo = 0.0;
      vertex_in_[tree_->edge(e).a] = 1;
    }
    if (iv.hi >= w - tol) {
      iv.hi = w;
      vertex_in_[tree_->edge(e).b] = 1;
    }
  }
}

bool ConvexSubtree::is_connected(double tol) const {
  // Active elements: flagged vertices and nonempty intervals. Elements are
  // linked when an interval touches a flagged endpoint.
  const int nv = tree_->vertex_count();
  const int ne = tree_->edge_count();
  std::vector<int> comp(nv + ne, -1);
  std::vector<int> stack;
  auto push = [&](int node, int c) {
    if (comp[node] < 0) {
      comp[node] = c;
      stack.push_back(node);
    }
  };
  int components = 0;
  for (int start = 0; start < nv + ne; ++start) {
    const bool active = start < nv ? vertex_in_[start] != 0
                                   : !edge_iv_[start - nv].empty();
    if (!active || comp[start] >= 0) continue;
    push(start, components);
    while (!stack.empty()) {
      const int node = stack.back();
      stack.pop_back();
      if (node < nv) {
        for (auto [nb, ei] : tree_->neighbors(node)) {
          const EdgeInterval& iv = edge_iv_[ei];
          if (iv.empty()) continue;
          const TreeEdge& e = tree_->edge(ei);
          const double off = (node == e.a) ? 0.0 : e.w;
          if (std::max(iv.lo - off, off - iv.hi) <= tol) push(nv + ei, comp[node]);
        }
      } else {
        const int ei = node - nv;
        const EdgeInterval& iv = edge_iv_[ei];
        const TreeEdge& e = tree_->edge(ei);
        if (iv.lo <= tol && vertex_in_[e.a]) push(e.a, comp[node]);
        if (iv.hi >= e.w - tol && vertex_in_[e.b]) push(e.b, comp[node]);
      }
    }
    ++components;
  }
  return components <= 1;
}

std::vector<TreePoint> ConvexSubtree::boundary_points() const {
  std::vector<TreePoint> out;
  std::vector<char> vertex_done(tree_->vertex_count(), 0);
  auto add_vertex = [&](int v) {
    if (!vertex_done[v]) {
      vertex_done[v] = 1;
      out.push_back(tree_->vertex_point(v));
    }
  };
  for (int e = 0; e < tree_->edge_count(); ++e) {
    const EdgeInterval& iv = edge_iv_[e];
    if (iv.empty()) continue;
    for (double off : {iv.lo, iv.hi}) {
      const TreePoint p = tree_->canonical_point(e, off);
      if (p.is_vertex())
        add_vertex(p.vertex);
      else
        out.push_back(p);
    }
  }
  for (int v = 0; v < tree_->vertex_count(); ++v)
    if (vertex_in_[v]) add_vertex(v);
  return out;
}

std::vector<TreePoint> ConvexSubtree::member_skeleton(double delta) const {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
  std::vector<TreePoint> out = boundary_points();
  for (int e = 0; e < tree_->edge_count(); ++e) {
    const EdgeInterval& iv = edge_iv_[e];
    if (iv.empty() || iv.length() == 0.0) continue;
    const int parts = static_cast<int>(std::ceil(iv.length() / delta - 1e-12));
    for (int k = 1; k < parts; ++k) {
      const TreePoint p =
          tree_->canonical_point(e, iv.lo + iv.length() * k / parts);
      if (!p.is_vertex()) out.push_back(p);
    }
  }
  return out;
}

ConvexSubtree ball(const MetricTree& t, const TreePoint& center, double r) {
  if (r < 0.0) throw std::invalid_argument("ball radius must be >= 0");
  t.validate_point(center);
  ConvexSubtree s = ConvexSubtree::empty_set(t);
  const std::vector<double> dv = vertex_distances(t, center);
  for (int v = 0; v < t.vertex_count(); ++v)
    if (dv[v] <= r) s.set_vertex(v, true);
  for (int e = 0; e < t.edge_count(); ++e) {
    const TreeEdge& ed = t.edge(e);
    EdgeInterval iv;
    if (!center.is_vertex() && center.edge == e) {
      iv = EdgeInterval{std::max(0.0, center.offset - r),
                        std::min(ed.w, center.offset + r)};
    } else {
      // the ball meets the edge in an interval anchored at the gate side
      double lo = kInf, hi = -kInf;
      if (dv[ed.a] <= r) {
        lo = 0.0;
        hi = std::min(ed.w, r - dv[ed.a]);
      }
      if (dv[ed.b] <= r) {
        lo = std::min(lo, std::max(0.0, ed.w - (r - dv[ed.b])));
        hi = ed.w;
      }
      if (lo > hi) {
        iv = EdgeInterval{};
      } else {
        iv = EdgeInterval{lo, hi};
      }
    }
    if (!iv.empty()) s.set_interval(e, iv);
  }
  s.normalize();
  // r = 0 at an interior point leaves a degenerate interval only
  if (!center.is_vertex() && r == 0.0)
    s.set_interval(center.edge, EdgeInterval{center.offset, center.offset});
  return s;
}

ConvexSubtree intersect(std::span<const ConvexSubtree> sets) {
  if (sets.empty()) throw std::invalid_argument("intersect: empty family");
  const MetricTree& t = sets.front().tree();
  for (const ConvexSubtree& s : sets)
    if (&s.tree() != &t)
      throw std::invalid_argument("intersect: sets on different trees");
  ConvexSubtree out = ConvexSubtree::whole_tree(t);
  for (int v = 0; v < t.vertex_count(); ++v) {
    bool in = true;
    for (const ConvexSubtree& s : sets) in = in && s.vertex_in(v);
    out.set_vertex(v, in);
  }
  for (int e = 0; e < t.edge_count(); ++e) {
    EdgeInterval iv{0.0, t.edge(e).w};
    for (const ConvexSubtree& s : sets) {
      const EdgeInterval& other = s.interval(e);
      iv.lo = std::max(iv.lo, other.lo);
      iv.hi = std::min(iv.hi, other.hi);
    }
    out.set_interval(e, iv.empty() ? EdgeInterval{} : iv);
  }
  return out;
}

namespace {

void include_point(ConvexSubtree& s, const MetricTree& t, const TreePoint& p) {
  if (p.is_vertex()) {
    s.set_vertex(p.vertex, true);
    return;
  }
  EdgeInterval iv = s.interval(p.edge);
  if (iv.empty())
    iv = EdgeInterval{p.offset, p.offset};
  else
    iv = EdgeInterval{std::min(iv.lo, p.offset), std::max(iv.hi, p.offset)};
  s.set_interval(p.edge, iv);
  (void)t;
}

}  // namespace

ConvexSubtree convex_hull(const MetricTree& t,
                          std::span<const TreePoint> pts) {
  ConvexSubtree s = ConvexSubtree::empty_set(t);
  if (pts.empty()) return s;
  include_point(s, t, pts.front());
  // The spanned subtree is the union of the segments from one anchor:
  // [x_i, x_j] lies inside [x_0, x_i] union [x_0, x_j].
  for (std::size_t i = 1; i < pts.size(); ++i) {
    include_point(s, t, pts[i]);
    for (const SegmentPiece& piece : segment(t, pts.front(), pts[i]).pieces) {
      EdgeInterval iv = s.interval(piece.edge);
      const double lo = std::min(piece.from, piece.to);
      const double hi = std::max(piece.from, piece.to);
      if (iv.empty())
        iv = EdgeInterval{lo, hi};
      else
        iv = EdgeInterval{std::min(iv.lo, lo), std::max(iv.hi, hi)};
      s.set_interval(piece.edge, iv);
    }
  }
  s.normalize();
  return s;
}

double diameter(const MetricTree& t, std::span<const TreePoint> pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      best = std::max(best, distance(t, pts[i], pts[j]));
  return best;
}

double diameter(const ConvexSubtree& s) {
  const auto pts = s.boundary_points();
  return diameter(s.tree(), pts);
}

std::pair<TreePoint, double> chebyshev_center(const MetricTree& t,
                                              std::span<const TreePoint> pts) {
  if (pts.empty()) throw std::invalid_argument("chebyshev_center: empty input");
  std::size_t bi = 0, bj = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double d = distance(t, pts[i], pts[j]);
      if (d > best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  if (best <= 0.0) return {pts.front(), 0.0};
  return {midpoint(t, pts[bi], pts[bj]), best / 2.0};
}

std::pair<TreePoint, double> chebyshev_center(const ConvexSubtree& s) {
  const auto pts = s.boundary_points();
  return chebyshev_center(s.tree(), pts);
}

TreePoint project(const MetricTree& t, const TreePoint& y,
                  const ConvexSubtree& s) {
  if (&s.tree() != &t)
    throw std::invalid_argument("project: set belongs to a different tree");
  if (s.empty()) throw std::invalid_argument("project: empty set");
  if (s.contains(y, 0.0)) return y;
  const std::vector<double> dv = vertex_distances(t, y);
  double best = kInf;
  TreePoint arg = y;
  auto consider = [&](double d, const TreePoint& p) {
    if (d < best) {
      best = d;
      arg = p;
    }
  };
  for (int v = 0; v < t.vertex_count(); ++v)
    if (s.vertex_in(v)) consider(dv[v], t.vertex_point(v));
  for (int e = 0; e < t.edge_count(); ++e) {
    const EdgeInterval& iv = s.interval(e);
    if (iv.empty()) continue;
    const TreeEdge& ed = t.edge(e);
    if (!y.is_vertex() && y.edge == e) {
      const double c = std::clamp(y.offset, iv.lo, iv.hi);
      consider(std::abs(y.offset - c), t.canonical_point(e, c));
    } else {
      consider(dv[ed.a] + iv.lo, t.canonical_point(e, iv.lo));
      consider(dv[ed.b] + (ed.w - iv.hi), t.canonical_point(e, iv.hi));
    }
  }
  return arg;
}

WeightedPoints make_weighted(std::vector<TreePoint> pts,
                             std::vector<double> weights) {
  if (pts.empty() || pts.size() != weights.size())
    throw std::invalid_argument("weighted points: size mismatch or empty");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("weights must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("weights must sum to 1");
  return WeightedPoints{std::move(pts), std::move(weights)};
}

WeightedPoints uniform_weighted(std::vector<TreePoint> pts) {
  if (pts.empty()) throw std::invalid_argument("weighted points: empty");
  const std::size_t n = pts.size();
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  return WeightedPoints{std::move(pts), std::move(w)};
}

ConvexSubtree barycenter_set(const MetricTree& t, const WeightedPoints& wp) {
  if (wp.points.empty())
    throw std::invalid_argument("barycenter_set: no points");
  double sum = 0.0;
  for (double w : wp.weights) sum += w;
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("barycenter_set: weights must sum to 1");
  const auto leaf_pts = leaves(t);
  if (leaf_pts.empty()) return ConvexSubtree::whole_tree(t);  // single vertex
  std::vector<TreePoint> centers;
  std::vector<double> radii;
  centers.reserve(leaf_pts.size());
  radii.reserve(leaf_pts.size());
  for (const TreePoint& leaf : leaf_pts) {
    double r = 0.0;
    for (std::size_t k = 0; k < wp.points.size(); ++k)
      r += wp.weights[k] * distance(t, wp.points[k], leaf);
    centers.push_back(leaf);
    radii.push_back(r);
  }
  return barycenter_set_from_radii(t, centers, radii);
}

ConvexSubtree barycenter_set_from_radii(const MetricTree& t,
                                        std::span<const TreePoint> centers,
                                        std::span<const double> radii) {
  if (centers.size() != radii.size() || centers.empty())
    throw std::invalid_argument("barycenter_set_from_radii: size mismatch");
  std::vector<ConvexSubtree> balls;
  balls.reserve(centers.size());
  for (std::size_t i = 0; i < centers.size(); ++i)
    balls.push_back(ball(t, centers[i], radii[i]));
  return intersect(balls);
}

}  // namespace treegeo
