#include "treegeo/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "treegeo/random.hpp"

namespace treegeo {

namespace {

// Snap tolerance for canonicalizing arclength arithmetic onto vertices.
constexpr double kSnap = 1e-12;

std::unordered_map<std::string, int> index_ids(
    const std::vector<std::string>& ids) {
  std::unordered_map<std::string, int> index;
  index.reserve(ids.size());
  for (int i = 0; i < static_cast<int>(ids.size()); ++i) {
    if (!index.emplace(ids[i], i).second)
      throw std::invalid_argument("duplicate vertex id: " + ids[i]);
  }
  return index;
}

}  // namespace

MetricTree MetricTree::build(const TreeSpec& spec) {
  if (spec.vertices.empty())
    throw std::invalid_argument("tree spec has no vertices");

  MetricTree t;
  t.ids_ = spec.vertices;
  auto index = index_ids(t.ids_);
  const int n = t.vertex_count();

  if (static_cast<int>(spec.edges.size()) != n - 1)
    throw std::invalid_argument(
        spec.edges.size() > static_cast<std::size_t>(n - 1)
            ? "cycle detected: edge count exceeds vertex count - 1"
            : "disconnected: edge count below vertex count - 1");

  t.adj_.resize(n);
  t.edges_.reserve(spec.edges.size());
  for (const auto& e : spec.edges) {
    auto iu = index.find(e.u), iv = index.find(e.v);
    if (iu == index.end() || iv == index.end())
      throw std::invalid_argument("edge references unknown vertex: " + e.u +
                                  "-" + e.v);
    if (iu == iv) throw std::invalid_argument("cycle detected: self loop");
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      throw std::invalid_argument("nonpositive weight on edge " + e.u + "-" +
                                  e.v);
    int a = iu->second, b = iv->second;
    if (t.ids_[b] < t.ids_[a]) std::swap(a, b);  // canonical orientation
    const int ei = static_cast<int>(t.edges_.size());
    t.edges_.push_back({a, b, e.w});
    t.adj_[a].emplace_back(b, ei);
    t.adj_[b].emplace_back(a, ei);
    t.total_len_ += e.w;
  }

  t.root_ = 0;
  if (!spec.root.empty()) {
    auto it = index.find(spec.root);
    if (it == index.end())
      throw std::invalid_argument("root is not a vertex: " + spec.root);
    t.root_ = it->second;
  }

  // Root the tree; a DFS that revisits a vertex or misses one means the
  // edge set is not a tree.
  t.parent_.assign(n, -1);
  t.parent_edge_.assign(n, -1);
  t.depth_len_.assign(n, 0.0);
  t.depth_int_.assign(n, 0);
  std::vector<int> stack{t.root_};
  std::vector<char> seen(n, 0);
  seen[t.root_] = 1;
  int visited = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    ++visited;
    for (auto [u, ei] : t.adj_[v]) {
      if (u == t.parent_[v] && ei == t.parent_edge_[v]) continue;
      if (seen[u]) throw std::invalid_argument("cycle detected");
      seen[u] = 1;
      t.parent_[u] = v;
      t.parent_edge_[u] = ei;
      t.depth_len_[u] = t.depth_len_[v] + t.edges_[ei].w;
      t.depth_int_[u] = t.depth_int_[v] + 1;
      stack.push_back(u);
    }
  }
  if (visited != n) throw std::invalid_argument("disconnected tree spec");

  int levels = 1;
  while ((1 << levels) < n) ++levels;
  t.up_.assign(levels, std::vector<int>(n));
  for (int v = 0; v < n; ++v)
    t.up_[0][v] = t.parent_[v] < 0 ? v : t.parent_[v];
  for (int k = 1; k < levels; ++k)
    for (int v = 0; v < n; ++v) t.up_[k][v] = t.up_[k - 1][t.up_[k - 1][v]];
  return t;
}

MetricTree build_tree(const TreeSpec& spec) { return MetricTree::build(spec); }

int MetricTree::find_vertex(const std::string& id) const {
  for (int i = 0; i < vertex_count(); ++i)
    if (ids_[i] == id) return i;
  return -1;
}

int MetricTree::find_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count()) return -1;
  for (auto [nb, ei] : adj_[u])
    if (nb == v) return ei;
  return -1;
}

TreePoint MetricTree::vertex_point(int v) const {
  if (v < 0 || v >= vertex_count())
    throw std::invalid_argument("vertex index out of range");
  return TreePoint{v, -1, 0.0};
}

TreePoint MetricTree::vertex_point(const std::string& id) const {
  const int v = find_vertex(id);
  if (v < 0) throw std::invalid_argument("unknown vertex id: " + id);
  return vertex_point(v);
}

TreePoint MetricTree::point_on_edge(const std::string& u, const std::string& v,
                                    double offset_from_u) const {
  const int iu = find_vertex(u), iv = find_vertex(v);
  if (iu < 0 || iv < 0)
    throw std::invalid_argument("unknown vertex id in edge " + u + "-" + v);
  const int ei = find_edge(iu, iv);
  if (ei < 0) throw std::invalid_argument("no edge between " + u + " and " + v);
  const TreeEdge& e = edges_[ei];
  const double off = (iu == e.a) ? offset_from_u : e.w - offset_from_u;
  return canonical_point(ei, off);
}

TreePoint MetricTree::canonical_point(int ei, double offset) const {
  if (ei < 0 || ei >= edge_count())
    throw std::invalid_argument("edge index out of range");
  const TreeEdge& e = edges_[ei];
  if (offset < -kSnap || offset > e.w + kSnap)
    throw std::invalid_argument("offset outside edge");
  if (offset <= kSnap) return TreePoint{e.a, -1, 0.0};
  if (offset >= e.w - kSnap) return TreePoint{e.b, -1, 0.0};
  return TreePoint{-1, ei, offset};
}

void MetricTree::validate_point(const TreePoint& p) const {
  if (p.is_vertex()) {
    if (p.vertex >= vertex_count() || p.edge >= 0)
      throw std::invalid_argument("point not on tree: bad vertex form");
    return;
  }
  if (p.edge < 0 || p.edge >= edge_count())
    throw std::invalid_argument("point not on tree: bad edge index");
  const TreeEdge& e = edges_[p.edge];
  if (!(p.offset > 0.0) || !(p.offset < e.w))
    throw std::invalid_argument("point not on tree: offset not interior");
}

int MetricTree::lca(int u, int v) const {
  if (depth_int_[u] < depth_int_[v]) std::swap(u, v);
  int diff = depth_int_[u] - depth_int_[v];
  for (int k = 0; diff; ++k, diff >>= 1)
    if (diff & 1) u = up_[k][u];
  if (u == v) return u;
  for (int k = static_cast<int>(up_.size()) - 1; k >= 0; --k)
    if (up_[k][u] != up_[k][v]) {
      u = up_[k][u];
      v = up_[k][v];
    }
  return up_[0][u];
}

double MetricTree::vertex_distance(int u, int v) const {
  const int w = lca(u, v);
  return depth_len_[u] + depth_len_[v] - 2.0 * depth_len_[w];
}

namespace {

// Exit anchors of a point: the vertices through which a geodesic leaving the
// point can pass, with the lead length to each.
struct Anchor {
  int vertex;
  double lead;
};

int anchors_of(const MetricTree& t, const TreePoint& p, Anchor out[2]) {
  if (p.is_vertex()) {
    out[0] = {p.vertex, 0.0};
    return 1;
  }
  const TreeEdge& e = t.edge(p.edge);
  out[0] = {e.a, p.offset};
  out[1] = {e.b, e.w - p.offset};
  return 2;
}

}  // namespace

double distance(const MetricTree& t, const TreePoint& p, const TreePoint& q) {
  t.validate_point(p);
  t.validate_point(q);
  if (p == q) return 0.0;
  if (!p.is_vertex() && !q.is_vertex() && p.edge == q.edge)
    return std::abs(p.offset - q.offset);
  Anchor ap[2], aq[2];
  const int np = anchors_of(t, p, ap), nq = anchors_of(t, q, aq);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < nq; ++j) {
      const double d =
          ap[i].lead + t.vertex_distance(ap[i].vertex, aq[j].vertex) +
          aq[j].lead;
      best = std::min(best, d);
    }
  return best;
}

namespace {

// Pieces of the vertex-to-vertex path u -> v, appended to out.
void vertex_path_pieces(const MetricTree& t, int u, int v,
                        std::vector<SegmentPiece>& out) {
  if (u == v) return;
  const int w = t.lca(u, v);
  std::vector<SegmentPiece> down;
  for (int x = u; x != w; x = t.parent(x)) {
    const int ei = t.parent_edge(x);
    const TreeEdge& e = t.edge(ei);
    const double from = (x == e.a) ? 0.0 : e.w;
    out.push_back({ei, from, e.w - from});
  }
  for (int x = v; x != w; x = t.parent(x)) {
    const int ei = t.parent_edge(x);
    const TreeEdge& e = t.edge(ei);
    const double to = (x == e.a) ? 0.0 : e.w;
    down.push_back({ei, e.w - to, to});
  }
  out.insert(out.end(), down.rbegin(), down.rend());
}

}  // namespace

Segment segment(const MetricTree& t, const TreePoint& p, const TreePoint& q) {
  t.validate_point(p);
  t.validate_point(q);
  Segment s;
  s.start = p;
  s.end = q;
  if (p == q) return s;
  if (!p.is_vertex() && !q.is_vertex() && p.edge == q.edge) {
    s.pieces.push_back({p.edge, p.offset, q.offset});
    s.length = std::abs(p.offset - q.offset);
    return s;
  }

  Anchor ap[2], aq[2];
  const int np = anchors_of(t, p, ap), nq = anchors_of(t, q, aq);
  double best = std::numeric_limits<double>::infinity();
  int bi = 0, bj = 0;
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < nq; ++j) {
      const double d =
          ap[i].lead + t.vertex_distance(ap[i].vertex, aq[j].vertex) +
          aq[j].lead;
      if (d < best) {
        best = d;
        bi = i;
        bj = j;
      }
    }

  if (!p.is_vertex()) {
    const TreeEdge& e = t.edge(p.edge);
    s.pieces.push_back({p.edge, p.offset, bi == 0 ? 0.0 : e.w});
  }
  vertex_path_pieces(t, ap[bi].vertex, aq[bj].vertex, s.pieces);
  if (!q.is_vertex()) {
    const TreeEdge& e = t.edge(q.edge);
    s.pieces.push_back({q.edge, bj == 0 ? 0.0 : e.w, q.offset});
  }
  s.length = 0.0;
  for (const auto& piece : s.pieces) s.length += piece.length();
  return s;
}

Segment reverse(const Segment& s) {
  Segment r;
  r.start = s.end;
  r.end = s.start;
  r.length = s.length;
  r.pieces.reserve(s.pieces.size());
  for (auto it = s.pieces.rbegin(); it != s.pieces.rend(); ++it)
    r.pieces.push_back({it->edge, it->to, it->from});
  return r;
}

TreePoint point_at(const MetricTree& t, const Segment& s, double arclength) {
  if (arclength < -kSnap || arclength > s.length + kSnap)
    throw std::invalid_argument("arclength out of range");
  arclength = std::clamp(arclength, 0.0, s.length);
  if (s.pieces.empty() || arclength <= kSnap) return s.start;
  double acc = 0.0;
  for (const auto& piece : s.pieces) {
    const double len = piece.length();
    if (arclength <= acc + len + kSnap) {
      const double local = std::clamp(arclength - acc, 0.0, len);
      const double dir = piece.to >= piece.from ? 1.0 : -1.0;
      return t.canonical_point(piece.edge, piece.from + dir * local);
    }
    acc += len;
  }
  return s.end;
}

TreePoint midpoint(const MetricTree& t, const TreePoint& p,
                   const TreePoint& q) {
  if (p == q) {
    t.validate_point(p);
    return p;
  }
  const Segment s = segment(t, p, q);
  return point_at(t, s, s.length / 2.0);
}

TreePoint median(const MetricTree& t, const TreePoint& x, const TreePoint& y,
                 const TreePoint& z) {
  const Segment sxy = segment(t, x, y);
  const double dxz = distance(t, x, z);
  const double dyz = distance(t, y, z);
  const double arc = std::clamp((sxy.length + dxz - dyz) / 2.0, 0.0,
                                sxy.length);
  return point_at(t, sxy, arc);
}

bool is_between(const MetricTree& t, const TreePoint& x, const TreePoint& y,
                const TreePoint& z, double tol) {
  return std::abs(distance(t, x, z) - distance(t, x, y) - distance(t, y, z)) <=
         tol;
}

std::vector<TreePoint> leaves(const MetricTree& t) {
  std::vector<TreePoint> out;
  for (int v = 0; v < t.vertex_count(); ++v)
    if (t.degree(v) == 1) out.push_back(t.vertex_point(v));
  return out;
}

std::vector<TreePoint> skeleton(const MetricTree& t, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("skeleton: delta must be > 0");
  std::vector<TreePoint> out;
  for (int v = 0; v < t.vertex_count(); ++v) out.push_back(t.vertex_point(v));
  for (int ei = 0; ei < t.edge_count(); ++ei) {
    const TreeEdge& e = t.edge(ei);
    const int parts = static_cast<int>(std::ceil(e.w / delta - kSnap));
    for (int k = 1; k < parts; ++k)
      out.push_back(TreePoint{-1, ei, e.w * k / parts});
  }
  return out;
}

std::vector<double> vertex_distances(const MetricTree& t, const TreePoint& p) {
  t.validate_point(p);
  const int n = t.vertex_count();
  std::vector<double> d(n, std::numeric_limits<double>::infinity());
  std::vector<int> stack;
  auto seed = [&](int v, double dv) {
    d[v] = dv;
    stack.push_back(v);
  };
  if (p.is_vertex()) {
    seed(p.vertex, 0.0);
  } else {
    const TreeEdge& e = t.edge(p.edge);
    seed(e.a, p.offset);
    seed(e.b, e.w - p.offset);
  }
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (auto [u, ei] : t.neighbors(v)) {
      const double cand = d[v] + t.edge(ei).w;
      if (cand < d[u]) {
        d[u] = cand;
        stack.push_back(u);
      }
    }
  }
  return d;
}

MetricTree gen_spider(const std::vector<double>& leg_lengths) {
  if (leg_lengths.empty())
    throw std::invalid_argument("spider needs at least one leg");
  TreeSpec spec;
  spec.vertices.push_back("o");
  for (std::size_t i = 0; i < leg_lengths.size(); ++i) {
    if (!(leg_lengths[i] > 0.0))
      throw std::invalid_argument("nonpositive leg length");
    spec.vertices.push_back(std::to_string(i + 1));
    spec.edges.push_back({"o", spec.vertices.back(), leg_lengths[i]});
  }
  spec.root = "o";
  return MetricTree::build(spec);
}

MetricTree gen_path(double length, int segments) {
  if (!(length > 0.0)) throw std::invalid_argument("nonpositive path length");
  if (segments < 1) throw std::invalid_argument("path needs >= 1 segment");
  TreeSpec spec;
  for (int i = 0; i <= segments; ++i)
    spec.vertices.push_back("v" + std::to_string(i));
  for (int i = 0; i < segments; ++i)
    spec.edges.push_back({spec.vertices[i], spec.vertices[i + 1],
                          length / segments});
  spec.root = "v0";
  return MetricTree::build(spec);
}

MetricTree gen_binary_tree(int height) {
  if (height < 0) throw std::invalid_argument("height must be >= 0");
  TreeSpec spec;
  spec.vertices.push_back("r");
  std::vector<std::string> level{"r"};
  for (int h = 0; h < height; ++h) {
    std::vector<std::string> next;
    for (const auto& id : level)
      for (char c : {'L', 'R'}) {
        std::string child = id + c;
        spec.vertices.push_back(child);
        spec.edges.push_back({id, child, 1.0});
        next.push_back(std::move(child));
      }
    level = std::move(next);
  }
  spec.root = "r";
  return MetricTree::build(spec);
}

MetricTree gen_random_tree(int n, std::uint64_t seed, double wmin,
                           double wmax) {
  if (n < 1) throw std::invalid_argument("tree needs >= 1 vertex");
  if (!(wmin > 0.0) || wmax < wmin)
    throw std::invalid_argument("bad weight range");
  Rng rng(seed);
  TreeSpec spec;
  for (int i = 0; i < n; ++i) spec.vertices.push_back("v" + std::to_string(i));
  for (int i = 1; i < n; ++i) {
    const int parent = static_cast<int>(rng.uniform_int(0, i - 1));
    spec.edges.push_back(
        {spec.vertices[parent], spec.vertices[i], rng.uniform(wmin, wmax)});
  }
  spec.root = "v0";
  return MetricTree::build(spec);
}

TreePoint spider_point(const MetricTree& spider, int leg, double t) {
  if (t == 0.0) return spider.vertex_point("o");
  return spider.point_on_edge("o", std::to_string(leg), t);
}

std::pair<int, double> spider_coords(const MetricTree& spider,
                                     const TreePoint& p) {
  spider.validate_point(p);
  const int o = spider.find_vertex("o");
  if (o < 0) throw std::invalid_argument("not a spider tree");
  if (p.is_vertex()) {
    if (p.vertex == o) return {0, 0.0};
    return {std::stoi(spider.vertex_id(p.vertex)),
            spider.vertex_distance(o, p.vertex)};
  }
  const TreeEdge& e = spider.edge(p.edge);
  const int leaf = (e.a == o) ? e.b : e.a;
  const double t = (e.a == o) ? p.offset : e.w - p.offset;
  return {std::stoi(spider.vertex_id(leaf)), t};
}

}  // namespace treegeo
