#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace modcato;

namespace {

TEST(Topology, LocalClosedness) {
  auto a1 = build_root_system("A1");
  EXPECT_TRUE(is_locally_closed(a1, {Weight{0}, Weight{2}}));
  EXPECT_FALSE(is_locally_closed(a1, {Weight{0}, Weight{4}}));
  EXPECT_TRUE(is_locally_closed(a1, {Weight{0}, Weight{1}}));  // incomparable
  auto a2 = build_root_system("A2");
  // (2,-1) and (-1,2) lie strictly between (0,0) and (1,1).
  EXPECT_FALSE(is_locally_closed(a2, {Weight{0, 0}, Weight{1, 1}}));
  EXPECT_TRUE(is_locally_closed(a2, {Weight{0, 0}, Weight{2, -1}}));
  EXPECT_THROW(LocallyClosedSet(a2, {Weight{0, 0}, Weight{1, 1}}), InvalidArgument);
}

TEST(Topology, OpenSetMembershipAndUpSet) {
  auto a1 = build_root_system("A1");
  OpenSet J({Weight{2}});
  EXPECT_TRUE(J.contains(a1, Weight{-4}));
  EXPECT_FALSE(J.contains(a1, Weight{4}));
  EXPECT_FALSE(J.contains(a1, Weight{1}));
  EXPECT_EQ(J.up_set(a1, Weight{-2}), (std::vector<Weight>{Weight{2}, Weight{0}, Weight{-2}}));
  EXPECT_TRUE(J.shifted(Weight{3}).contains(a1, Weight{5}));
}

TEST(Topology, CarveGivesJMinusK) {
  auto a2 = build_root_system("A2");
  LocallyClosedSet K(a2, {Weight{0, 0}, Weight{2, -1}});
  auto c = carve_J_Jprime(a2, K);
  EXPECT_EQ(c.J.ceiling(), (std::set<Weight>{Weight{2, -1}}));  // (2,-1) is alpha_1 > 0
  EXPECT_TRUE(c.Jprime.contains(a2, Weight{-2, 1}));
  EXPECT_FALSE(c.Jprime.contains(a2, Weight{2, -1}));
  EXPECT_FALSE(c.Jprime.contains(a2, Weight{0, 0}));
  for (const auto& w : oracle::box_weights(a2, Weight{2, -1}, 5))
    EXPECT_EQ(c.J.contains(a2, w) && !c.Jprime.contains(a2, w), K.contains(w));
}

/// Carving commutes with translation.
TEST(Topology, ShiftCommutesWithCarve) {
  auto b2 = build_root_system("B2");
  LocallyClosedSet K(b2, {Weight{0, 0}, Weight{2, -2}, Weight{-1, 2}});
  const Weight g{2, 2};
  auto c = carve_J_Jprime(b2, K);
  auto ct = carve_J_Jprime(b2, shift_set(b2, K, g));
  for (const auto& w : oracle::box_weights(b2, Weight{2, 2}, 6)) {
    EXPECT_EQ(c.J.contains(b2, w), ct.J.contains(b2, w + g));
    EXPECT_EQ(c.Jprime.contains(b2, w), ct.Jprime.contains(b2, w + g));
  }
}

TEST(Topology, PeriodicityConditionAndMinL) {
  auto a1 = build_root_system("A1");
  EXPECT_EQ(min_l(a1, {Weight{0}, Weight{2}}, 2), 1u);
  // 0 and 4 differ by 2 alpha: needs p^l not dividing 2.
  EXPECT_FALSE(periodicity_condition(a1, {Weight{0}, Weight{4}}, 2, 1));
  EXPECT_TRUE(periodicity_condition(a1, {Weight{0}, Weight{4}}, 2, 2));
  EXPECT_EQ(min_l(a1, {Weight{0}, Weight{2}, Weight{4}}, 2), 2u);
  EXPECT_EQ(min_l(a1, {Weight{0}, Weight{2}, Weight{4}}, 3), 1u);
  EXPECT_THROW(min_l(a1, {}, 2), InvalidArgument);
}

TEST(Topology, PeriodicityConditionMonotoneInL) {
  std::mt19937_64 rng(5);
  for (auto t : {CartanType::A1, CartanType::A2, CartanType::B2}) {
    auto rs = build_root_system(t);
    for (int trial = 0; trial < 50; ++trial) {
      std::set<Weight> K;
      for (int i = 0; i < 4; ++i) K.insert(oracle::random_weight(rng, rs.rank(), -4, 4));
      for (Coord p : {2, 3}) {
        bool seen = false;
        for (unsigned l = 1; l <= 5; ++l) {
          bool now = periodicity_condition(rs, K, p, l);
          if (seen) EXPECT_TRUE(now);
          seen = seen || now;
        }
        EXPECT_TRUE(periodicity_condition(rs, K, p, min_l(rs, K, p)));
      }
    }
  }
}

}  // namespace
