#include <gtest/gtest.h>

#include "killform/counting.hpp"
#include "killform/error.hpp"
#include "support/properties.hpp"

using namespace killform;
using kftest::group_data;

TEST(TripleCount, InversePairsHitIdentity) {
  for (const auto& spec : kftest::small_groups()) {
    const auto& d = group_data(spec);
    for (const auto& c : d.t->classes) {
      const auto tc = triple_count(*d.g, *d.t, c.id, c.inverse_class, 0);
      EXPECT_EQ(tc.count, static_cast<unsigned long>(c.size)) << spec;
    }
  }
}

TEST(TripleCount, DivisibleByThirdClass) {
  const auto r = kftest::prop_triple_divisible(301);
  EXPECT_TRUE(r.ok) << r.failure;
}

TEST(TripleCount, InverseClassSymmetry) {
  kftest::Rng rng(9);
  for (int i = 0; i < 40; ++i) {
    const auto& d = group_data(rng.pick(kftest::small_groups()));
    const auto& t = *d.t;
    const auto n = t.size();
    const auto a = static_cast<std::uint32_t>(rng.below(n)), b = static_cast<std::uint32_t>(rng.below(n)),
               c = static_cast<std::uint32_t>(rng.below(n));
    EXPECT_EQ(triple_count(*d.g, t, a, b, c).count,
              triple_count(*d.g, t, t[b].inverse_class, t[a].inverse_class, t[c].inverse_class).count);
  }
}

TEST(TripleCount, HistogramSumsToPairCount) {
  const auto& d = group_data("alt:5");
  for (const auto& a : d.t->classes)
    for (const auto& b : d.t->classes) {
      const auto h = product_class_histogram(*d.g, *d.t, a.id, b.id);
      std::uint64_t sum = 0;
      for (auto v : h) sum += v;
      EXPECT_EQ(sum, a.size * b.size);
    }
}

TEST(TripleCount, ConsistentWithKillingEdges) {
  kftest::Rng rng(12);
  for (int i = 0; i < 30; ++i) {
    const auto& d = group_data(rng.pick(kftest::small_groups()));
    std::vector<std::uint32_t> nc;
    for (const auto& c : d.t->classes)
      if (!c.central()) nc.push_back(c.id);
    const auto id = rng.pick(nc);
    const auto fn = support_function(*d.g, *d.t, build_stable_set(*d.g, *d.t, {id}));
    const auto h = product_class_histogram(*d.g, *d.t, id, id);
    bool hit = false;
    for (std::uint32_t c = 0; c < d.t->size(); ++c) hit |= h[c] > 0 && fn.f[c] > 0;
    const auto rep = killing_graph_components(fn, true);
    EXPECT_EQ(nonzero_pair_count(fn) > 0, hit);
    if (rep.killing_edges > 0) EXPECT_TRUE(hit);
  }
}

TEST(TripleCount, BudgetGuard) {
  const auto& d = group_data("sym:6");
  EXPECT_THROW(triple_count(*d.g, *d.t, 1, 1, 1, 10), CapExceeded);
  EXPECT_THROW(triple_count(*d.g, *d.t, 99, 1, 1), UsageError);
}

TEST(PairCounts, RealClassesHaveAtLeastTheInversePairs) {
  for (const auto& spec : kftest::small_groups()) {
    const auto& d = group_data(spec);
    for (const auto& c : d.t->classes) {
      if (c.central() || !c.real()) continue;
      const auto fn = support_function(*d.g, *d.t, build_stable_set(*d.g, *d.t, {c.id}));
      EXPECT_GE(nonzero_pair_count(fn), static_cast<unsigned long>(c.size)) << spec;
    }
  }
}

TEST(PairCounts, Psl2EvenInvolutionsAreAllIntraSylow) {
  const auto& d = group_data("psl2:8");
  std::uint32_t inv = 0;
  for (const auto& c : d.t->classes)
    if (c.elt_order == 2) inv = c.id;
  const auto fn = support_function(*d.g, *d.t, build_stable_set(*d.g, *d.t, {inv}));
  const auto syl = sylow_structure(*d.g, 2);
  EXPECT_EQ(same_sylow_pair_count((*d.t)[inv], syl), 441);
  EXPECT_EQ(nonzero_pair_count(fn), 441);
}

TEST(PairCounts, NeedsSingleClassAndTI) {
  const auto& d = group_data("sym:5");
  const auto fn = support_function(*d.g, *d.t, build_stable_set(*d.g, *d.t, {1, 2}));
  EXPECT_THROW(nonzero_pair_count(fn), DomainError);
  EXPECT_THROW(same_sylow_pair_count((*d.t)[1], sylow_structure(*d.g, 2)), DomainError);
}

TEST(SuzukiClosedForms, ValuesAtEight) {
  EXPECT_EQ(suzuki_phi_yyx(8), 123760);
  EXPECT_EQ(suzuki_phi_yyy(8), 196560);
  EXPECT_EQ(suzuki_nonzero_pairs(8), 516880);
  EXPECT_EQ(suzuki_same_sylow_pairs(8), 50960);
  EXPECT_EQ(suzuki_cross_sylow_pairs(8), 465920);
  EXPECT_EQ(suzuki_nonzero_pairs(32) - suzuki_same_sylow_pairs(32), suzuki_cross_sylow_pairs(32));
}
