#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "copos/demos.hpp"
#include "copos/raycone.hpp"
#include "copos/rng.hpp"

using copos::check_condition_i0;
using copos::demo_ray_cone;
using copos::ExtReal;
using copos::RayCone;
using copos::slice;
using copos::SliceReport;
using copos::SplitMix64;
using copos::TheoremMain0Report;
using copos::verify_theorem_main0;
using copos::zeta_convex;
using copos::zeta_nonconvex;

namespace {

const std::vector<double> kHa{0.5, 1.0};
const std::vector<double> kHb{0.0, 1.0};

bool contains_point(const std::vector<std::vector<double>>& pts, std::vector<double> p) {
  return std::find(pts.begin(), pts.end(), p) != pts.end();
}

}  // namespace

TEST_CASE("condition I0 on the planar fixture") {
  RayCone cone = demo_ray_cone();
  CHECK(check_condition_i0(cone, kHa));
  CHECK(check_condition_i0(cone, kHb));
  CHECK_FALSE(check_condition_i0(cone, std::vector<double>{-1.0, 0.0}));
  CHECK_FALSE(check_condition_i0(cone, std::vector<double>{0.0, 0.0}));
}

TEST_CASE("slices reproduce the published sets exactly") {
  RayCone cone = demo_ray_cone();

  SliceReport a1 = slice(cone, kHa, 1.0);
  REQUIRE(a1.slice_atoms.size() == 3);
  CHECK(contains_point(a1.slice_atoms, {-2.0, 2.0}));
  CHECK(contains_point(a1.slice_atoms, {1.0, 0.5}));
  CHECK(contains_point(a1.slice_atoms, {2.0, 0.0}));
  CHECK(a1.recession_atoms.empty());

  SliceReport b1 = slice(cone, kHb, 1.0);
  REQUIRE(b1.slice_atoms.size() == 2);
  CHECK(contains_point(b1.slice_atoms, {-1.0, 1.0}));
  CHECK(contains_point(b1.slice_atoms, {2.0, 1.0}));
  REQUIRE(b1.recession_atoms.size() == 1);
  CHECK(b1.recession_atoms[0] == std::vector<double>{4.0, 0.0});

  SliceReport a0 = slice(cone, kHa, 0.0);
  CHECK(a0.slice_atoms.empty());
  CHECK(a0.recession_atoms.empty());
}

TEST_CASE("nonconvex values") {
  RayCone cone = demo_ray_cone();

  ExtReal v = zeta_nonconvex(cone, kHa, std::vector<double>{1.0, 0.0}, 1.0);
  REQUIRE(v.is_finite());
  CHECK(v.value == -2.0);

  // Case (b), rho = 0: zero when the recession atom has nonnegative
  // objective, unbounded otherwise.
  ExtReal z0 = zeta_nonconvex(cone, kHb, std::vector<double>{2.0, -1.0}, 0.0);
  REQUIRE(z0.is_finite());
  CHECK(z0.value == 0.0);
  ExtReal zneg = zeta_nonconvex(cone, kHb, std::vector<double>{-1.0, 5.0}, 0.0);
  CHECK(zneg.is_neg_inf());
}

TEST_CASE("convex values through the exact LP") {
  RayCone cone = demo_ray_cone();

  // Case (b) with p1 >= 0: optimum -p1 + p2 at (-1,1).
  for (auto [p1, p2] : {std::pair{1.0, 1.0}, std::pair{0.0, 1.0}, std::pair{2.0, -1.0}}) {
    ExtReal v = zeta_convex(cone, kHb, std::vector<double>{p1, p2}, 1.0);
    REQUIRE(v.is_finite());
    CHECK(v.value == -p1 + p2);
  }
  // p1 < 0 runs off along the recession atom.
  CHECK(zeta_convex(cone, kHb, std::vector<double>{-1.0, 2.0}, 1.0).is_neg_inf());

  // Case (a): the convex value agrees with the minimum over the three
  // rescaled atoms, since the middle one is not extreme.
  SplitMix64 rng(6);
  for (int round = 0; round < 20; ++round) {
    std::vector<double> p{static_cast<double>(rng.uniform_int(-4, 4)),
                          static_cast<double>(rng.uniform_int(-4, 4))};
    ExtReal vc = zeta_convex(cone, kHa, p, 1.0);
    ExtReal vn = zeta_nonconvex(cone, kHa, p, 1.0);
    REQUIRE(vc.is_finite());
    REQUIRE(vn.is_finite());
    CHECK(vc.value == vn.value);
  }
}

TEST_CASE("theorem report on both fixture cases") {
  RayCone cone = demo_ray_cone();

  // Case (a): recession value 0 for every objective.
  SplitMix64 rng(12);
  for (int round = 0; round < 10; ++round) {
    std::vector<double> q{static_cast<double>(rng.uniform_int(-5, 5)),
                          static_cast<double>(rng.uniform_int(-5, 5))};
    TheoremMain0Report r = verify_theorem_main0(cone, kHa, q);
    CHECK(r.zeta_nonconvex_0.value == 0.0);
    CHECK(r.condition_ii0);
    CHECK(r.additive_identity);
    CHECK(r.equality);
    CHECK(r.iff_consistent);
    CHECK(r.recession_hull_match);
  }

  // Case (b), q = (-1, 0): convexification drops to -inf while the cone value
  // stays finite, and condition II0 fails.
  TheoremMain0Report rb = verify_theorem_main0(cone, kHb, std::vector<double>{-1.0, 0.0});
  CHECK(rb.zeta_convex_1.is_neg_inf());
  REQUIRE(rb.zeta_nonconvex_1.is_finite());
  CHECK(rb.zeta_nonconvex_1.value == -2.0);  // 2 p1 + p2 at (2,1)
  CHECK_FALSE(rb.condition_ii0);
  CHECK_FALSE(rb.equality);
  CHECK(rb.iff_consistent);

  // Case (b), q = (1, 1): both sides equal 0 = -p1 + p2.
  TheoremMain0Report rc = verify_theorem_main0(cone, kHb, std::vector<double>{1.0, 1.0});
  REQUIRE(rc.zeta_convex_1.is_finite());
  CHECK(rc.zeta_convex_1.value == 0.0);
  CHECK(rc.equality);
  CHECK(rc.iff_consistent);

  CHECK_THROWS_AS(verify_theorem_main0(cone, std::vector<double>{-1.0, 0.0},
                                       std::vector<double>{1.0, 0.0}),
                  copos::Error);
}

namespace {

RayCone random_cone(SplitMix64& rng) {
  RayCone cone;
  cone.dim = rng.uniform_int(2, 4);
  const int atoms = rng.uniform_int(1, 6);
  for (int a = 0; a < atoms; ++a) {
    std::vector<double> atom(cone.dim, 0.0);
    bool nonzero = false;
    for (double& v : atom) {
      v = rng.uniform_int(-3, 4);
      nonzero = nonzero || v != 0.0;
    }
    if (!nonzero) atom[0] = 1.0;
    cone.atoms.push_back(std::move(atom));
  }
  return cone;
}

// Rejection-sample H0 from the dual with a nonempty rho = 1 slice.
bool sample_dual_h0(SplitMix64& rng, const RayCone& cone, std::vector<double>& h0) {
  for (int tries = 0; tries < 200; ++tries) {
    std::vector<double> h(cone.dim);
    for (double& v : h) v = rng.uniform_int(-2, 3);
    bool nonzero = false;
    for (double v : h) nonzero = nonzero || v != 0.0;
    if (!nonzero) continue;
    bool in_dual = true;
    bool has_positive = false;
    for (const auto& atom : cone.atoms) {
      double dot = 0.0;
      for (int i = 0; i < cone.dim; ++i) dot += atom[i] * h[i];
      if (dot < 0.0) in_dual = false;
      if (dot > 0.0) has_positive = true;
    }
    if (in_dual && has_positive) {
      h0 = h;
      return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("randomized convexification identities: 200 cones") {
  SplitMix64 rng(987654321);
  int verified = 0;
  while (verified < 200) {
    RayCone cone = random_cone(rng);
    std::vector<double> h0;
    if (!sample_dual_h0(rng, cone, h0)) continue;
    std::vector<double> q0(cone.dim);
    for (double& v : q0) v = rng.uniform_int(-4, 4);

    TheoremMain0Report r = verify_theorem_main0(cone, h0, q0);
    CHECK(r.additive_identity);
    CHECK(r.iff_consistent);
    CHECK(r.recession_hull_match);
    ++verified;
  }
}

TEST_CASE("exposed-face closure under atom sums") {
  // For P in the dual, the zero slice of <P,.> is a face: whenever a sum of
  // atoms lands in it, every summand does.
  SplitMix64 rng(555);
  for (int round = 0; round < 50; ++round) {
    RayCone cone = random_cone(rng);
    std::vector<double> p;
    if (!sample_dual_h0(rng, cone, p)) continue;
    std::vector<double> dots(cone.atoms.size(), 0.0);
    for (std::size_t a = 0; a < cone.atoms.size(); ++a) {
      for (int i = 0; i < cone.dim; ++i) dots[a] += cone.atoms[a][i] * p[i];
    }
    // Random nonnegative combination.
    double total = 0.0;
    std::vector<double> lambda(cone.atoms.size());
    for (std::size_t a = 0; a < cone.atoms.size(); ++a) {
      lambda[a] = rng.uniform_int(0, 3);
      total += lambda[a] * dots[a];
    }
    if (total == 0.0) {
      for (std::size_t a = 0; a < cone.atoms.size(); ++a) {
        if (lambda[a] > 0.0) CHECK(dots[a] == 0.0);
      }
    }
  }
}
