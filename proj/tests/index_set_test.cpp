#include <gtest/gtest.h>

#include <random>

#include "symcont/index_set.hpp"

using symcont::Congruence;
using symcont::IndexSet;

TEST(IndexSet, ExclusionCoveringAllowedIsEmpty) {
  IndexSet s = IndexSet::all().intersect(IndexSet::all().scaled_preimage(1)).exclude({1, 0});
  EXPECT_TRUE(s.is_empty());
  EXPECT_TRUE(IndexSet::all().exclude({2, 0}).exclude({2, 1}).is_empty());
  EXPECT_FALSE(IndexSet::all().exclude({2, 0}).exclude({3, 1}).is_empty());
}

TEST(IndexSet, ScaledPreimage) {
  // {k : 2k odd} is empty; {k : 2k even} is everything.
  IndexSet odd = IndexSet::all();
  odd = odd.intersect(IndexSet::all()).exclude({2, 0});
  EXPECT_TRUE(odd.scaled_preimage(2).is_empty());
  EXPECT_EQ(IndexSet::all().exclude({2, 1}).scaled_preimage(2), IndexSet::all());
}

TEST(IndexSet, FirstMembers) {
  IndexSet s = IndexSet::all(5).exclude({3, 0});
  EXPECT_EQ(s.first(4), (std::vector<std::int64_t>{5, 7, 8, 10}));
}

TEST(IndexSet, MembershipMatchesBruteForce) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> mod(1, 12), q(1, 6), minimum(1, 20);
  for (int trial = 0; trial < 500; ++trial) {
    IndexSet s = IndexSet::all(minimum(rng));
    std::vector<Congruence> excl;
    for (int i = 0; i < 3; ++i) {
      const int m = mod(rng);
      Congruence c{m, std::uniform_int_distribution<int>(0, m - 1)(rng)};
      excl.push_back(c);
      s = s.exclude(c);
    }
    const int k = q(rng);
    IndexSet pre = s.scaled_preimage(k);
    bool any = false;
    for (std::int64_t n = 1; n < 2000; ++n) {
      bool in = n >= s.min_index();
      for (const auto& c : excl) in = in && !c.contains(n);
      ASSERT_EQ(s.contains(n), in);
      any = any || in;
      ASSERT_EQ(pre.contains(n), s.contains(k * n));
    }
    EXPECT_EQ(s.is_empty(), !any);
  }
}

TEST(IndexSet, FactorOutModulus) {
  IndexSet multiples = IndexSet::all().exclude({2, 1});
  IndexSet rest;
  EXPECT_EQ(multiples.factor_out_modulus(&rest), 2);
  EXPECT_EQ(rest, IndexSet::all());
}
