#include "lie/rootsys.hpp"

#include <algorithm>
#include <set>

#include "doctest.h"
#include "lie/errors.hpp"

using namespace lie;

namespace {

Weight w(std::initializer_list<long> xs) {
  Weight out;
  for (long x : xs) out.push_back(Rat(x));
  return out;
}

}  // namespace

TEST_CASE("system construction basics") {
  auto a1 = build_root_system(Family::A, 1);
  CHECK(a1.ambient_dim == 2);
  CHECK(a1.rho == parse_weight("1/2,-1/2"));

  auto b2 = build_root_system(Family::B, 2);
  std::set<Weight> pos(b2.positive_roots.begin(), b2.positive_roots.end());
  std::set<Weight> expected{w({1, -1}), w({1, 1}), w({1, 0}), w({0, 1})};
  CHECK(pos == expected);
  CHECK(b2.rho == parse_weight("3/2,1/2"));

  auto d2 = build_root_system(Family::D, 2);
  std::set<Weight> dpos(d2.positive_roots.begin(), d2.positive_roots.end());
  CHECK(dpos == std::set<Weight>{w({1, -1}), w({1, 1})});

  CHECK_THROWS_AS(build_root_system(Family::D, 1), UnsupportedRank);
  CHECK_THROWS_AS(build_root_system(Family::A, 0), UnsupportedRank);
}

TEST_CASE("fundamental weights pair to delta against simple coroots") {
  for (auto [f, rmax] : {std::pair{Family::A, 4}, {Family::B, 4}, {Family::C, 4}, {Family::D, 4}}) {
    for (int r = (f == Family::D ? 2 : 1); r <= rmax; ++r) {
      auto sys = build_root_system(f, r);
      REQUIRE(int(sys.fundamental_weights.size()) == r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
          Rat p = coroot_pairing(sys.fundamental_weights[i], sys.simple_roots[j]);
          CHECK(p == Rat(i == j ? 1 : 0));
        }
      for (int j = 0; j < r; ++j) CHECK(coroot_pairing(sys.rho, sys.simple_roots[j]) == Rat(1));
    }
  }
}

TEST_CASE("weyl_dim pinned values") {
  auto a2 = build_root_system(Family::A, 2);
  CHECK(weyl_dim({a2, a2.fundamental_weights[0]}) == 3);
  CHECK(weyl_dim({a2, vec_add(a2.fundamental_weights[0], a2.fundamental_weights[1])}) == 8);

  auto b2 = build_root_system(Family::B, 2);
  CHECK(weyl_dim({b2, b2.fundamental_weights[1]}) == 4);
  CHECK(weyl_dim({b2, b2.fundamental_weights[0]}) == 5);

  auto a1 = build_root_system(Family::A, 1);
  CHECK(weyl_dim({a1, Weight{Rat(0), Rat(0)}}) == 1);

  CHECK_THROWS_AS(weyl_dim({a1, parse_weight("-1,1")}), NonDominantWeight);
}

TEST_CASE("weyl_dim accepts unprojected type-A weights") {
  auto a2 = build_root_system(Family::A, 2);
  CHECK(weyl_dim({a2, w({2, 1, 0})}) == 8);
  CHECK(weyl_dim({a2, w({1, 0, 0})}) == 3);
  CHECK(weyl_dim({a2, w({3, 3, 3})}) == 1);
}

TEST_CASE("weight_multiplicity pinned values") {
  auto a2 = build_root_system(Family::A, 2);
  Weight adjoint = vec_add(a2.fundamental_weights[0], a2.fundamental_weights[1]);
  CHECK(weight_multiplicity({a2, adjoint}, Weight(3, Rat(0))) == 2);
  CHECK(weight_multiplicity({a2, adjoint}, adjoint) == 1);

  auto a1 = build_root_system(Family::A, 1);
  Weight two_omega = vec_scale(a1.fundamental_weights[0], Rat(2));
  CHECK(weight_multiplicity({a1, two_omega}, vec_scale(two_omega, Rat(-1))) == 1);

  CHECK_THROWS_AS(weight_multiplicity({a2, adjoint}, a2.fundamental_weights[0]), LatticeMismatch);
  CHECK(weight_multiplicity({a2, adjoint}, vec_scale(adjoint, Rat(2))) == 0);
}

TEST_CASE("weyl_orbit pinned values") {
  auto b2 = build_root_system(Family::B, 2);
  auto orbit = weyl_orbit(b2, w({1, 0}));
  std::set<Weight> got(orbit.begin(), orbit.end());
  CHECK(got == std::set<Weight>{w({1, 0}), w({-1, 0}), w({0, 1}), w({0, -1})});

  CHECK(weyl_orbit(b2, w({0, 0})) == std::vector<Weight>{w({0, 0})});

  auto a2 = build_root_system(Family::A, 2);
  CHECK(weyl_orbit(a2, a2.fundamental_weights[0]).size() == 3);
}

TEST_CASE("orbit invariants") {
  for (auto [f, r] : {std::pair{Family::A, 3}, {Family::B, 3}, {Family::C, 2}, {Family::D, 3}}) {
    auto sys = build_root_system(f, r);
    for (const auto& fw : sys.fundamental_weights) {
      auto orbit = weyl_orbit(sys, fw);
      int dominant_count = 0;
      for (const auto& v : orbit)
        if (is_dominant(sys, v)) ++dominant_count;
      CHECK(dominant_count == 1);
      Int order = weyl_order(sys);
      Int size(long(orbit.size()));
      CHECK(order % size == 0);
    }
  }
}

TEST_CASE("dimension equals orbit-sum of multiplicities") {
  for (auto [f, rmax] : {std::pair{Family::A, 3}, {Family::B, 3}, {Family::C, 3}, {Family::D, 3}}) {
    for (int r = (f == Family::D ? 2 : 1); r <= rmax; ++r) {
      auto sys = build_root_system(f, r);
      // Heights <= 2 here; the acceptance suite pushes this further.
      std::vector<Weight> lambdas;
      Weight zero(sys.ambient_dim, Rat(0));
      lambdas.push_back(zero);
      for (int i = 0; i < r; ++i) {
        lambdas.push_back(sys.fundamental_weights[i]);
        lambdas.push_back(vec_scale(sys.fundamental_weights[i], Rat(2)));
        for (int j = i + 1; j < r; ++j)
          lambdas.push_back(vec_add(sys.fundamental_weights[i], sys.fundamental_weights[j]));
      }
      for (const auto& lam : lambdas) {
        Irrep rep{sys, lam};
        Int dim = weyl_dim(rep);
        Int total(0);
        for (const auto& [mu, m] : dominant_weight_multiplicities(rep))
          total += m * Int(long(weyl_orbit(sys, mu).size()));
        CHECK(total == dim);
      }
    }
  }
}

TEST_CASE("dual representation has the same dimension") {
  for (auto [f, r] : {std::pair{Family::A, 3}, {Family::B, 2}, {Family::C, 3}, {Family::D, 3}}) {
    auto sys = build_root_system(f, r);
    for (const auto& fw : sys.fundamental_weights) {
      Weight lam = vec_add(fw, sys.fundamental_weights[0]);
      Weight dual = dominate(sys, vec_scale(lam, Rat(-1)));
      CHECK(weyl_dim({sys, lam}) == weyl_dim({sys, dual}));
    }
  }
}

TEST_CASE("multiplicities are Weyl invariant") {
  auto b2 = build_root_system(Family::B, 2);
  Weight lam = vec_add(b2.fundamental_weights[0], b2.fundamental_weights[1]);
  Irrep rep{b2, lam};
  for (const auto& [mu, m] : weight_system(rep))
    for (const auto& v : weyl_orbit(b2, mu)) CHECK(weight_multiplicity(rep, v) == m);
}

TEST_CASE("spherical highest weights") {
  auto a1 = build_root_system(Family::A, 1);
  CHECK(is_spherical_highest_weight(a1, vec_scale(a1.fundamental_weights[0], Rat(2))));
  CHECK_FALSE(is_spherical_highest_weight(a1, a1.fundamental_weights[0]));
  CHECK(is_spherical_highest_weight(a1, Weight{Rat(0), Rat(0)}));

  auto b2 = build_root_system(Family::B, 2);
  CHECK(is_spherical_highest_weight(b2, w({2, 0})));
  CHECK(is_spherical_highest_weight(b2, w({1, 1})));
  CHECK_FALSE(is_spherical_highest_weight(b2, w({1, 0})));
}

TEST_CASE("tensor multiplicity sanity") {
  auto a1 = build_root_system(Family::A, 1);
  Weight v1 = a1.fundamental_weights[0];
  // V_1 x V_1 = V_2 + V_0 for sl(2).
  CHECK(tensor_multiplicity(a1, v1, v1, vec_scale(v1, Rat(2))) == 1);
  CHECK(tensor_multiplicity(a1, v1, v1, Weight{Rat(0), Rat(0)}) == 1);
  CHECK(tensor_multiplicity(a1, v1, v1, v1) == 0);

  auto b1 = build_root_system(Family::B, 1);
  // so(3): F(1) x F(1) = F(2) + F(1) + F(0).
  for (long c : {0L, 1L, 2L})
    CHECK(tensor_multiplicity(b1, w({1}), w({1}), w({c})) == 1);
  CHECK(tensor_multiplicity(b1, w({1}), w({1}), w({3})) == 0);

  // Dimension bookkeeping for B2: F(1,0) x F(1,0).
  auto b2 = build_root_system(Family::B, 2);
  Int lhs = weyl_dim({b2, w({1, 0})}) * weyl_dim({b2, w({1, 0})});
  Int rhs(0);
  for (long x = 0; x <= 2; ++x)
    for (long y = 0; y <= x; ++y) {
      Int m = tensor_multiplicity(b2, w({1, 0}), w({1, 0}), w({x, y}));
      rhs += m * weyl_dim({b2, w({x, y})});
    }
  CHECK(lhs == rhs);
}

TEST_CASE("weight parsing round trip") {
  CHECK(weight_str(parse_weight("3/2,1,-1/2")) == "3/2,1,-1/2");
  CHECK(parse_system("B3").name() == "B3");
  CHECK_THROWS_AS(parse_system("E8"), UsageError);
}
