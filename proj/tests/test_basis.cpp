#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "copos/basis.hpp"
#include "copos/gram.hpp"
#include "copos/rng.hpp"

using copos::BasisPtr;
using copos::consistency_classes;
using copos::covering_basis;
using copos::Exponents;
using copos::full_basis;
using copos::MonomialBasis;
using copos::SplitMix64;

namespace {

Exponents sum_of(const Exponents& a, const Exponents& b) {
  Exponents s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
  return s;
}

bool covers(const MonomialBasis& basis, const Exponents& gamma) {
  for (int i = 0; i < basis.size(); ++i) {
    for (int j = i; j < basis.size(); ++j) {
      if (sum_of(basis.alpha(i), basis.alpha(j)) == gamma) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("full basis enumeration") {
  BasisPtr b1 = full_basis(1, 1);
  REQUIRE(b1->size() == 2);
  CHECK(b1->alpha(0) == Exponents{1, 0});
  CHECK(b1->alpha(1) == Exponents{0, 1});

  BasisPtr b2 = full_basis(2, 1);
  REQUIRE(b2->size() == 3);
  CHECK(b2->alpha(0) == Exponents{1, 0, 0});
  CHECK(b2->alpha(1) == Exponents{0, 1, 0});
  CHECK(b2->alpha(2) == Exponents{0, 0, 1});

  BasisPtr b3 = full_basis(2, 2);
  REQUIRE(b3->size() == 6);  // C(4,2)
  CHECK(b3->alpha(0) == Exponents{2, 0, 0});
  CHECK(b3->index_of({0, 1, 1}) >= 0);
  CHECK(b3->index_of({3, 0, 0}) == -1);
}

TEST_CASE("covering basis greedy choices") {
  // (2,0) is covered by the leading monomial alone.
  BasisPtr a = covering_basis({{2, 0}}, 1, 1);
  REQUIRE(a->size() == 1);
  CHECK(a->alpha(0) == Exponents{1, 0});

  // (1,1) needs both degree-1 monomials.
  BasisPtr b = covering_basis({{1, 1}}, 1, 1);
  REQUIRE(b->size() == 2);
  CHECK(b->index_of({0, 1}) == 1);
}

TEST_CASE("covering the whole degree-2 layer needs the full basis") {
  // Exhaustive oracle: all six degree-2 monomials over three variables are
  // pairwise sums of the three degree-1 monomials.
  BasisPtr degree2 = full_basis(2, 2);
  std::vector<Exponents> layer = degree2->alphas();
  REQUIRE(layer.size() == 6);

  BasisPtr cover = covering_basis(layer, 2, 1);
  CHECK(cover->size() == 3);
  for (const Exponents& gamma : layer) CHECK(covers(*cover, gamma));
}

TEST_CASE("covering basis rejects wrong-degree targets") {
  CHECK_THROWS_AS(covering_basis({{1, 0}}, 1, 1), copos::Error);
}

TEST_CASE("consistency classes basics") {
  BasisPtr b1 = full_basis(1, 1);
  copos::ConsistencyClasses c1 = consistency_classes(*b1);
  // Pairs (0,0),(0,1),(1,1) all have distinct sums.
  CHECK(c1.classes.size() == 3);
  for (const auto& cls : c1.classes) CHECK(cls.size() == 1);

  BasisPtr b2 = full_basis(2, 1);
  copos::ConsistencyClasses c2 = consistency_classes(*b2);
  CHECK(c2.classes.size() == 6);

  // Degree-2 layer over one variable: (2,0)+(0,2) and (1,1)+(1,1) share the
  // sum (2,2), forming one class of size 2.
  BasisPtr b3 = full_basis(1, 2);
  copos::ConsistencyClasses c3 = consistency_classes(*b3);
  bool found = false;
  for (std::size_t k = 0; k < c3.classes.size(); ++k) {
    if (c3.sums[k] == Exponents{2, 2}) {
      found = true;
      CHECK(c3.classes[k].size() == 2);
    }
  }
  CHECK(found);
}

TEST_CASE("partition covers every upper-triangle pair exactly once") {
  for (auto [n, omega] : {std::pair{1, 2}, std::pair{2, 2}, std::pair{3, 1}}) {
    BasisPtr b = full_basis(n, omega);
    copos::ConsistencyClasses classes = consistency_classes(*b);
    std::set<std::pair<int, int>> seen;
    for (const auto& cls : classes.classes) {
      for (auto pr : cls) {
        CHECK(seen.insert(pr).second);
      }
    }
    CHECK(static_cast<int>(seen.size()) == b->size() * (b->size() + 1) / 2);
  }
}

TEST_CASE("moment matrices are constant on consistency classes") {
  SplitMix64 rng(11);
  for (int round = 0; round < 10; ++round) {
    const int n = rng.uniform_int(1, 3);
    const int omega = rng.uniform_int(1, 2);
    BasisPtr b = full_basis(n, omega);
    copos::ConsistencyClasses classes = consistency_classes(*b);
    std::vector<double> x(n + 1);
    for (double& v : x) v = rng.uniform(0.0, 2.0);
    copos::SymMatrix m = copos::moment_matrix(b, x);
    for (const auto& cls : classes.classes) {
      const double ref = m(cls.front().first, cls.front().second);
      for (auto [i, j] : cls) {
        CHECK(m(i, j) == doctest::Approx(ref).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("random covering bases reach every requested target") {
  SplitMix64 rng(2024);
  for (int round = 0; round < 20; ++round) {
    const int n = rng.uniform_int(1, 3);
    const int omega = rng.uniform_int(1, 2);
    BasisPtr layer = full_basis(n, 2 * omega);
    std::vector<Exponents> targets;
    for (const Exponents& g : layer->alphas()) {
      if (rng.uniform() < 0.4) targets.push_back(g);
    }
    BasisPtr cover = covering_basis(targets, n, omega);
    for (const Exponents& gamma : targets) CHECK(covers(*cover, gamma));
    CHECK(cover->alpha(0)[0] == omega);
    CHECK(cover->size() <= full_basis(n, omega)->size());
  }
}
