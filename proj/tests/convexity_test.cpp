#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "treegeo/convexity.hpp"
#include "treegeo/metric_checks.hpp"
#include "treegeo/random.hpp"
#include "treegeo/tree.hpp"

using namespace treegeo;

TEST_CASE("ball: radius zero, partial leg, whole tree") {
  MetricTree t = gen_spider({1.0, 1.0, 1.0});

  const TreePoint c = spider_point(t, 1, 0.5);
  ConvexSubtree zero = ball(t, c, 0.0);
  CHECK(zero.contains(c));
  CHECK(zero.measure() == 0.0);
  CHECK_FALSE(zero.contains(spider_point(t, 1, 0.6)));

  ConvexSubtree half = ball(t, c, 0.5);
  CHECK(half.contains(spider_point(t, 1, 0.999)));
  CHECK(half.contains(spider_point(t, 1, 1.0)));
  CHECK(half.contains(t.vertex_point("o")));
  CHECK_FALSE(half.contains(spider_point(t, 2, 0.01)));
  CHECK(half.measure() == doctest::Approx(1.0));

  ConvexSubtree all = ball(t, t.vertex_point("o"), 2.0);
  CHECK(all.measure() == doctest::Approx(t.total_length()));
  CHECK_THROWS_AS(ball(t, c, -1.0), std::invalid_argument);
}

TEST_CASE("intersect: touching, disjoint, helly families") {
  MetricTree t = gen_spider({1.0, 1.0, 1.0});
  const TreePoint e1 = spider_point(t, 1, 1.0), e2 = spider_point(t, 2, 1.0);

  std::vector<ConvexSubtree> touching{ball(t, e1, 1.0), ball(t, e2, 1.0)};
  ConvexSubtree gate = intersect(touching);
  CHECK_FALSE(gate.empty());
  CHECK(gate.contains(t.vertex_point("o")));
  CHECK(gate.measure() == doctest::Approx(0.0));

  std::vector<ConvexSubtree> disjoint{ball(t, e1, 0.4), ball(t, e2, 0.4)};
  CHECK(intersect(disjoint).empty());
}

TEST_CASE("helly property on random ball families") {
  Rng rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    MetricTree t = gen_random_tree(9, 5000 + trial % 37);
    const int k = static_cast<int>(rng.uniform_int(2, 5));
    auto centers = random_points(t, k, rng);
    std::vector<double> radii(k);
    for (double& r : radii) r = rng.uniform(0.0, 1.0);
    // lift all radii just enough for pairwise intersection
    double worst = 0.0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        worst = std::max(worst, distance(t, centers[i], centers[j]) -
                                    radii[i] - radii[j]);
    if (worst > 0.0)
      for (double& r : radii) r += worst / 2.0 + 1e-9;
    std::vector<ConvexSubtree> balls;
    for (int i = 0; i < k; ++i) balls.push_back(ball(t, centers[i], radii[i]));
    ConvexSubtree common = intersect(balls);
    CHECK_FALSE(common.empty());
    // certify: some boundary point is inside every ball
    bool ok = false;
    for (const TreePoint& p : common.boundary_points()) {
      bool inside = true;
      for (int i = 0; i < k; ++i)
        inside = inside &&
                 distance(t, centers[i], p) <= radii[i] + 1e-6;
      ok = ok || inside;
    }
    CHECK(ok);
  }
}

TEST_CASE("convex hull") {
  MetricTree t = gen_spider({1.0, 1.0, 1.0});
  const TreePoint e1 = spider_point(t, 1, 1.0), e2 = spider_point(t, 2, 1.0),
                  e3 = spider_point(t, 3, 1.0);

  std::vector<TreePoint> two{e1, e2};
  ConvexSubtree seg = convex_hull(t, two);
  CHECK(seg.measure() == doctest::Approx(2.0));
  CHECK(seg.contains(t.vertex_point("o")));
  CHECK_FALSE(seg.contains(spider_point(t, 3, 0.5)));

  std::vector<TreePoint> three{e1, e2, e3};
  ConvexSubtree whole = convex_hull(t, three);
  CHECK(whole.measure() == doctest::Approx(3.0));

  std::vector<TreePoint> one_leg{spider_point(t, 2, 0.2),
                                 spider_point(t, 2, 0.9),
                                 spider_point(t, 2, 0.5)};
  ConvexSubtree sub = convex_hull(t, one_leg);
  CHECK(sub.measure() == doctest::Approx(0.7));
  CHECK_FALSE(sub.contains(t.vertex_point("o")));
}

TEST_CASE("convexity closure property: produced sets contain member segments") {
  Rng rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    MetricTree t = gen_random_tree(10, 900 + trial);
    ConvexSubtree s = trial % 2 == 0
                          ? convex_hull(t, random_points(t, 4, rng))
                          : ball(t, random_point(t, rng), rng.uniform(0.2, 1.5));
    if (s.empty()) continue;
    CHECK(s.is_connected());
    auto members = s.member_skeleton(0.25);
    if (members.size() < 2) continue;
    for (int it = 0; it < 40; ++it) {
      const auto& p = members[rng.uniform_int(0, members.size() - 1)];
      const auto& q = members[rng.uniform_int(0, members.size() - 1)];
      Segment sg = segment(t, p, q);
      for (double f : {0.25, 0.5, 0.75})
        CHECK(s.contains(point_at(t, sg, f * sg.length), 1e-9));
    }
  }
}

TEST_CASE("diameter") {
  MetricTree t = gen_spider({1.0, 1.0, 1.0});
  std::vector<TreePoint> tips{spider_point(t, 1, 1.0), spider_point(t, 2, 1.0),
                              spider_point(t, 3, 1.0)};
  CHECK(diameter(t, tips) == doctest::Approx(2.0));
  std::vector<TreePoint> single{tips[0]};
  CHECK(diameter(t, single) == 0.0);
  CHECK(diameter(convex_hull(t, tips)) == doctest::Approx(2.0));
}

TEST_CASE("chebyshev center") {
  MetricTree t = gen_spider({1.0, 1.0, 1.0, 1.0});
  std::vector<TreePoint> two{spider_point(t, 1, 1.0), spider_point(t, 2, 1.0)};
  auto [c, r] = chebyshev_center(t, two);
  CHECK(c == t.vertex_point("o"));
  CHECK(r == doctest::Approx(1.0));

  std::vector<TreePoint> tips{spider_point(t, 1, 1.0), spider_point(t, 2, 1.0),
                              spider_point(t, 3, 1.0)};
  auto [c3, r3] = chebyshev_center(t, tips);
  CHECK(c3 == t.vertex_point("o"));
  CHECK(r3 == doctest::Approx(1.0));
  for (const auto& p : tips) CHECK(distance(t, c3, p) <= r3 + 1e-12);

  std::vector<TreePoint> lone{spider_point(t, 4, 0.3)};
  auto [cs, rs] = chebyshev_center(t, lone);
  CHECK(cs == lone[0]);
  CHECK(rs == 0.0);
  std::vector<TreePoint> none;
  CHECK_THROWS_AS(chebyshev_center(t, none), std::invalid_argument);
}

TEST_CASE("chebyshev center: radius = diameter/2 and enclosure (property)") {
  Rng rng(70);
  for (int trial = 0; trial < 100; ++trial) {
    MetricTree t = gen_random_tree(9, 7100 + trial, 0.3, 1.5);
    auto pts = random_points(t, 2 + trial % 7, rng);
    auto [c, r] = chebyshev_center(t, pts);
    CHECK(r == doctest::Approx(diameter(t, pts) / 2.0).epsilon(1e-12));
    for (const auto& p : pts) CHECK(distance(t, c, p) <= r + 1e-9);
  }
}

TEST_CASE("project: member, gate of a leg, additivity") {
  MetricTree t = gen_spider({1.0, 1.0, 1.0});
  std::vector<TreePoint> two{spider_point(t, 1, 1.0), spider_point(t, 2, 1.0)};
  ConvexSubtree s = convex_hull(t, two);

  const TreePoint inside = spider_point(t, 1, 0.4);
  CHECK(project(t, inside, s) == inside);

  const TreePoint y = spider_point(t, 3, 1.0);
  CHECK(project(t, y, s) == t.vertex_point("o"));

  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    MetricTree rt = gen_random_tree(10, 7200 + trial);
    auto hull_pts = random_points(rt, 3, rng);
    ConvexSubtree hull = convex_hull(rt, hull_pts);
    const TreePoint yy = random_point(rt, rng);
    const TreePoint gate = project(rt, yy, hull);
    auto members = hull.member_skeleton(0.3);
    for (const TreePoint& u : members)
      CHECK(distance(rt, yy, u) ==
            doctest::Approx(distance(rt, yy, gate) + distance(rt, gate, u))
                .epsilon(1e-9));
  }

  ConvexSubtree nothing = ConvexSubtree::empty_set(t);
  CHECK_THROWS_AS(project(t, y, nothing), std::invalid_argument);
}

TEST_CASE("barycenter set: big-set example on the 4-leg spider") {
  MetricTree t = gen_spider({1.0, 1.0, 1.0, 1.0});
  std::vector<TreePoint> pts{spider_point(t, 1, 1.0), spider_point(t, 2, 1.0),
                             spider_point(t, 3, 1.0)};
  ConvexSubtree c = barycenter_set(t, uniform_weighted(pts));

  CHECK(c.contains(t.vertex_point("o")));
  for (int leg = 1; leg <= 4; ++leg) {
    auto [lo, hi] = [&] {
      const int e = spider_point(t, leg, 0.5).edge;
      const EdgeInterval& iv = c.interval(e);
      // canonical origin of each spider edge is the leaf, so convert
      return std::pair{1.0 - iv.hi, 1.0 - iv.lo};
    }();
    CHECK(lo == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(hi == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  }
  CHECK(c.contains(spider_point(t, 4, 1.0 / 3.0)));
  CHECK_FALSE(c.contains(spider_point(t, 4, 0.34)));
}

TEST_CASE("barycenter set: two points give the midpoint") {
  MetricTree t = gen_spider({1.0, 1.0, 1.0});
  std::vector<TreePoint> pts{spider_point(t, 1, 1.0), spider_point(t, 2, 1.0)};
  ConvexSubtree c = barycenter_set(t, uniform_weighted(pts));
  CHECK(c.contains(t.vertex_point("o")));
  CHECK(c.measure() == doctest::Approx(0.0));
  CHECK_FALSE(c.contains(spider_point(t, 1, 0.01), 1e-12));
}

TEST_CASE("barycenter set: weight 1 on a single point") {
  MetricTree t = gen_spider({1.0, 1.0, 1.0});
  const TreePoint x = spider_point(t, 2, 0.6);
  ConvexSubtree c = barycenter_set(t, make_weighted({x}, {1.0}));
  CHECK(c.contains(x));
  CHECK(c.measure() == doctest::Approx(0.0));
}

TEST_CASE("barycenter set: single-vertex tree") {
  TreeSpec s;
  s.vertices = {"x"};
  MetricTree t = build_tree(s);
  ConvexSubtree c = barycenter_set(t, make_weighted({t.vertex_point("x")}, {1.0}));
  CHECK(c.contains(t.vertex_point("x")));
}

TEST_CASE("barycenter set membership oracle (property)") {
  Rng rng(44);
  for (int trial = 0; trial < 25; ++trial) {
    MetricTree t = gen_random_tree(8, 7300 + trial, 0.4, 1.2);
    const int k = static_cast<int>(rng.uniform_int(2, 4));
    auto pts = random_points(t, k, rng);
    std::vector<double> w(k);
    double sum = 0.0;
    for (double& x : w) sum += (x = rng.uniform(0.2, 1.0));
    for (double& x : w) x /= sum;
    ConvexSubtree c = barycenter_set(t, make_weighted(pts, w));

    auto sk = skeleton(t, 0.15);
    auto bound = [&](const TreePoint& x0, const TreePoint& x) {
      double r = 0.0;
      for (int i = 0; i < k; ++i) r += w[i] * distance(t, pts[i], x);
      return r - distance(t, x0, x);
    };
    const auto leaf_pts = leaves(t);
    for (const TreePoint& x0 : sk) {
      if (c.contains(x0, 1e-9)) {
        for (const TreePoint& x : sk) CHECK(bound(x0, x) >= -1e-9);
      } else {
        bool violated = false;
        for (const TreePoint& l : leaf_pts)
          violated = violated || bound(x0, l) < 1e-12;
        CHECK(violated);
      }
    }
  }
}

TEST_CASE("barycenter set from radii: tripod classification interval") {
  MetricTree t = gen_spider({1.0, 1.0, 1.0});
  const double alpha = 0.1, beta = 0.2;
  std::vector<TreePoint> centers{spider_point(t, 1, 1.0),
                                 spider_point(t, 2, 1.0),
                                 spider_point(t, 3, 1.0)};
  std::vector<double> radii{1.0 - alpha, 1.0 + beta, 1.0 + beta};
  ConvexSubtree s = barycenter_set_from_radii(t, centers, radii);

  const int leg1 = spider_point(t, 1, 0.5).edge;
  const EdgeInterval& iv = s.interval(leg1);
  REQUIRE_FALSE(iv.empty());
  CHECK(1.0 - iv.hi == doctest::Approx(alpha).epsilon(1e-9));
  CHECK(1.0 - iv.lo == doctest::Approx(beta).epsilon(1e-9));
  CHECK_FALSE(s.contains(t.vertex_point("o"), 1e-12));
  CHECK_FALSE(s.contains(spider_point(t, 2, 0.05), 1e-12));
  CHECK_FALSE(s.contains(spider_point(t, 3, 0.05), 1e-12));

  // radii >= diam: everything
  std::vector<double> big{2.0, 2.0, 2.0};
  CHECK(barycenter_set_from_radii(t, centers, big).measure() ==
        doctest::Approx(3.0));

  // radius 0 at x1 plus consistent distances: exactly {x1}
  std::vector<double> point_radii{0.0, 2.0, 2.0};
  ConvexSubtree only = barycenter_set_from_radii(t, centers, point_radii);
  CHECK(only.contains(centers[0]));
  CHECK(only.measure() == doctest::Approx(0.0));
}

TEST_CASE("projection stability of the barycenter set (property)") {
  Rng rng(51);
  for (int trial = 0; trial < 30; ++trial) {
    MetricTree t = gen_random_tree(8, 7400 + trial, 0.4, 1.2);
    const int k = static_cast<int>(rng.uniform_int(2, 4));
    auto pts = random_points(t, k, rng);
    std::vector<double> w(k);
    double sum = 0.0;
    for (double& x : w) sum += (x = rng.uniform(0.2, 1.0));
    for (double& x : w) x /= sum;
    ConvexSubtree c = barycenter_set(t, make_weighted(pts, w));
    ConvexSubtree hull = convex_hull(t, pts);
    for (const TreePoint& x0 : c.member_skeleton(0.2)) {
      const TreePoint p = project(t, x0, hull);
      CHECK(c.contains(p, 1e-9));
    }
  }
}
