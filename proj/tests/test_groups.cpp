#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "killform/error.hpp"
#include "killform/groups.hpp"
#include "support/gen.hpp"

using namespace killform;
using kftest::Rng;

namespace {

std::string data_file(const std::string& name) { return std::string(KILLFORM_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST(GroupOrders, Examples) {
  EXPECT_EQ(make_group("dihedral:5")->order(), 10u);
  EXPECT_EQ(make_group("psl2:7")->order(), 168u);
  EXPECT_EQ(make_group("su3:3")->order(), 6048u);
  EXPECT_EQ(make_group("sz:8")->order(), 29120u);
}

TEST(GroupOrders, EnumerationMatchesClosedForm) {
  for (const std::string spec :
       {"cyclic:12", "dihedral:9", "sym:5", "alt:6", "sl2:4", "sl2:5", "gl2:3", "psl2:4", "psl2:5", "psl2:9",
        "psl2:11", "pgl2:5", "psl2:16", "su3:4", "gu3:2", "psu3:3", "psu3:4", "sz:8"}) {
    auto g = make_group(spec);
    const auto colon = spec.find(':');
    const auto expected = family_order(spec.substr(0, colon), std::stoull(spec.substr(colon + 1)));
    ASSERT_TRUE(expected) << spec;
    EXPECT_EQ(g->order(), *expected) << spec;
  }
}

TEST(GroupOrders, CentralQuotients) {
  EXPECT_EQ(quotient_by_center(*make_group("sl2:4"))->order(), 60u);
  EXPECT_EQ(quotient_by_center(*make_group("sl2:5"))->order(), 60u);
  EXPECT_EQ(make_group("psu3:5")->order(), 126000u);
}

TEST(GroupParsing, MalformedSpecsAreUsageErrors) {
  EXPECT_THROW(make_group("nosuch:7"), UsageError);
  EXPECT_THROW(make_group("psl2:6"), UsageError);
  EXPECT_THROW(make_group("psl2"), UsageError);
  EXPECT_THROW(make_group("sym:x"), UsageError);
  EXPECT_THROW(make_group("sz:4"), UsageError);
}

TEST(GroupParsing, CapIsEnforcedBeforeAndDuringEnumeration) {
  EXPECT_THROW(make_group("sym:9", 1000), CapExceeded);
  EXPECT_THROW(make_group("psl2:13", 100), CapExceeded);
}

TEST(GroupStructure, IdentityFirstAndInverses) {
  for (const auto& spec : kftest::small_groups()) {
    const auto& g = *kftest::group_data(spec).g;
    EXPECT_EQ(g.inv(0), 0u);
    for (Index a = 0; a < g.order(); ++a) {
      ASSERT_EQ(g.mul(a, g.inv(a)), 0u) << spec;
      ASSERT_EQ(g.mul(0, a), a);
    }
  }
}

TEST(GroupStructure, EncodingRoundTrips) {
  for (const auto& spec : kftest::small_groups()) {
    const auto& g = *kftest::group_data(spec).g;
    std::set<std::vector<Word>> seen;
    for (Index a = 0; a < g.order(); ++a) {
      ASSERT_EQ(g.index_of(g.element(a)), a);
      seen.emplace(g.word(a).begin(), g.word(a).end());
    }
    EXPECT_EQ(seen.size(), g.order()) << spec;
  }
}

TEST(GroupStructure, ClosureAgainstRealizationOnRandomPairs) {
  Rng rng(11);
  for (const auto& spec : kftest::small_groups()) {
    const auto& g = *kftest::group_data(spec).g;
    std::vector<Word> out(g.width());
    for (int i = 0; i < 200; ++i) {
      const Index a = static_cast<Index>(rng.below(g.order())), b = static_cast<Index>(rng.below(g.order()));
      g.realization().multiply(g.word(a).data(), g.word(b).data(), out.data());
      g.realization().canonicalize(out.data());
      const auto found = g.find(out);
      ASSERT_TRUE(found) << spec;
      ASSERT_EQ(*found, g.mul(a, b));
    }
  }
}

TEST(GroupStructure, EnumerationIsDeterministic) {
  auto a = make_group("psl2:7"), b = make_group("psl2:7");
  for (Index i = 0; i < a->order(); ++i) ASSERT_TRUE(std::ranges::equal(a->word(i), b->word(i)));
}

TEST(GroupStructure, ElementOrders) {
  auto d = make_group("dihedral:5");
  std::multiset<std::uint64_t> orders;
  for (Index i = 0; i < d->order(); ++i) orders.insert(d->element_order(i));
  EXPECT_EQ(orders.count(5), 4u);
  EXPECT_EQ(orders.count(2), 5u);
  auto g = make_group("psl2:7");
  const auto u = g->find(std::vector<Word>{1, 1, 0, 1});
  ASSERT_TRUE(u);
  EXPECT_EQ(g->element_order(*u), 7u);
  EXPECT_EQ(g->element_order(0), 1u);
}

TEST(GroupStructure, ElemOpMatchesIndexArithmetic) {
  const auto& g = *kftest::group_data("psl2:8").g;
  const auto a = g.element(17), b = g.element(101);
  EXPECT_EQ(std::get<GroupElement>(elem_op(g, a, b, ElemOp::mul)), g.element(g.mul(17, 101)));
  EXPECT_EQ(std::get<GroupElement>(elem_op(g, a, b, ElemOp::inv)), g.element(g.inv(17)));
  EXPECT_EQ(std::get<GroupElement>(elem_op(g, a, b, ElemOp::conj)), g.element(g.conj(17, 101)));
  EXPECT_EQ(std::get<std::uint64_t>(elem_op(g, a, b, ElemOp::order)), g.element_order(17));
}

TEST(GroupStructure, CentersOfLinearGroups) {
  EXPECT_EQ(make_group("sl2:5")->center().size(), 2u);
  EXPECT_EQ(make_group("sl2:4")->center().size(), 1u);
  EXPECT_EQ(make_group("su3:5")->center().size(), 3u);
  EXPECT_EQ(make_group("psl2:7")->center().size(), 1u);
  EXPECT_EQ(make_group("gl2:3")->center().size(), 2u);
}

TEST(Quotient, MapIsAHomomorphism) {
  Rng rng(5);
  for (const std::string spec : {"sl2:5", "sl2:7", "gl2:3", "su3:2"}) {
    auto up = make_group(spec);
    auto down = quotient_by_center(*up);
    EXPECT_EQ(down->order() * up->center().size(), up->order()) << spec;
    auto phi = [&](Index i) { return *down->find(up->word(i)); };
    for (int i = 0; i < 1000; ++i) {
      const Index a = static_cast<Index>(rng.below(up->order())), b = static_cast<Index>(rng.below(up->order()));
      ASSERT_EQ(down->mul(phi(a), phi(b)), phi(up->mul(a, b))) << spec;
    }
  }
}

TEST(Quotient, Psl2BuiltDirectlyMatchesQuotientOfSl2) {
  auto direct = make_group("psl2:7");
  auto quot = quotient_by_center(*make_group("sl2:7"));
  EXPECT_EQ(direct->order(), quot->order());
  for (Index i = 0; i < quot->order(); ++i) ASSERT_TRUE(direct->find(quot->word(i)));
}

TEST(Sylow, Examples) {
  const auto s8 = sylow_structure(*make_group("psl2:8"), 2);
  EXPECT_EQ(s8.subgroups.size(), 9u);
  EXPECT_EQ(s8.subgroups[0].size(), 8u);
  const auto sz = sylow_structure(*make_group("sz:8"), 2);
  EXPECT_EQ(sz.subgroups.size(), 65u);
  EXPECT_EQ(sz.subgroups[0].size(), 64u);
  const auto su = sylow_structure(*make_group("su3:3"), 3);
  EXPECT_EQ(su.subgroups.size(), 28u);
  EXPECT_EQ(su.subgroups[0].size(), 27u);
}

TEST(Sylow, RankOneFamiliesAreTI) {
  for (auto [spec, p] : std::vector<std::pair<std::string, std::uint32_t>>{
           {"psl2:7", 7}, {"psl2:8", 2}, {"psl2:9", 3}, {"sl2:5", 5}, {"su3:3", 3}, {"psu3:4", 2}, {"sz:8", 2}}) {
    const auto gp = make_group(spec);
    const Group& g = *gp;
    const auto s = sylow_structure(g, p);
    EXPECT_TRUE(s.ti) << spec;
    std::vector<int> hits(g.order(), 0);
    for (const auto& sub : s.subgroups) {
      EXPECT_EQ(sub.size(), s.subgroups[0].size());
      for (Index x : sub) ++hits[x];
    }
    // TI: every nonidentity p-element lies in exactly one subgroup.
    for (Index x = 1; x < g.order(); ++x) ASSERT_LE(hits[x], g.is_central(x) ? 1000 : 1) << spec;
  }
}

TEST(Unitary, EveryElementPreservesTheForm) {
  for (const std::string spec : {"su3:3", "gu3:2", "su3:4"}) {
    const auto g = make_group(spec);
    for (Index i = 0; i < g->order(); ++i) ASSERT_TRUE(is_unitary(g->field(), g->word(i), 3)) << spec;
  }
}

TEST(Generation, SubgroupClosure) {
  const auto& g = *kftest::group_data("sym:4").g;
  EXPECT_TRUE(generates_group(g, g.generators()));
  EXPECT_EQ(subgroup_closure(g, {0}).size(), 1u);
  EXPECT_EQ(subgroup_closure(g, {g.generators()[0]}).size(), g.element_order(g.generators()[0]));
}

TEST(PermIngestion, HeaderlessTwoCycle) {
  const auto path = temp_file("kf_two.gens", "2 1\n");
  EXPECT_EQ(ingest_perm_generators(path)->order(), 2u);
}

TEST(PermIngestion, S4FromTranspositionAndFourCycle) {
  const auto g = make_perm_group("s4", 4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
  EXPECT_EQ(g->order(), 24u);
  const auto path = temp_file("kf_s4.gens", "degree 4\n# comment\n2 1 3 4\n2 3 4 1\n");
  EXPECT_EQ(make_group("perm:" + path)->order(), 24u);
}

TEST(PermIngestion, MalformedFilesAreUsageErrors) {
  EXPECT_THROW(ingest_perm_generators(temp_file("kf_bad1.gens", "degree 3\n1 2\n")), UsageError);
  EXPECT_THROW(ingest_perm_generators(temp_file("kf_bad2.gens", "degree 3\n1 2 x\n")), UsageError);
  EXPECT_THROW(ingest_perm_generators(temp_file("kf_bad3.gens", "degree 3\n1 2 7\n")), UsageError);
  EXPECT_THROW(ingest_perm_generators(temp_file("kf_bad4.gens", "degree 3\n1 1 2\n")), UsageError);
  EXPECT_THROW(ingest_perm_generators("/nonexistent/file.gens"), UsageError);
}

TEST(PermIngestion, StandardGeneratorFiles) {
  if (!std::filesystem::exists(data_file("m11.gens")) || !std::filesystem::exists(data_file("psl3_4.gens")))
    GTEST_SKIP() << "generator files absent";
  EXPECT_EQ(ingest_perm_generators(data_file("m11.gens"))->order(), 7920u);
  EXPECT_EQ(ingest_perm_generators(data_file("psl3_4.gens"))->order(), 20160u);
}
