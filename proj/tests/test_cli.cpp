#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "killform/cli.hpp"

using killform::cli::run;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST(Cli, VerifyRankOneInvolutions) {
  const auto r = call({"verify", "rank1-involutions", "--q", "8", "--family", "psl2"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["theorem"], "rank1-involutions");
  EXPECT_TRUE(j["pass"].get<bool>());
  bool nine = false;
  for (const auto& e : j["evidence"])
    if (e["claim"] == "component count") nine = e["observed"] == "9";
  EXPECT_TRUE(nine);
}

TEST(Cli, KillingDihedral) {
  const auto r = call({"killing", "dihedral:5", "--class", "all-noncentral"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_FALSE(j["degenerate"].get<bool>());
  EXPECT_EQ(j["det"], "39453125");
  EXPECT_EQ(j["size"], 9);
}

TEST(Cli, UnknownFamilyIsUsageError) {
  const auto r = call({"info", "nosuch:7"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("nosuch"), std::string::npos);
}

TEST(Cli, ParseErrorsAreUsageErrors) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"frobnicate"}).code, 2);
  EXPECT_EQ(call({"killing", "psl2:7"}).code, 2);
  EXPECT_EQ(call({"count", "psl2:7", "--triple", "1,2"}).code, 2);
  EXPECT_EQ(call({"count", "psl2:7", "--triple", "1,x,2"}).code, 2);
  EXPECT_EQ(call({"killing", "psl2:7", "--class", "ord=11"}).code, 2);
  EXPECT_EQ(call({"verify", "nonsense"}).code, 2);
  EXPECT_EQ(call({"verify", "psl2-unipotent"}).code, 2);
  EXPECT_EQ(call({"info", "psl2:7", "--json", "--text"}).code, 2);
}

TEST(Cli, HelpExitsZero) {
  const auto r = call({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST(Cli, CapsGiveExitThree) {
  EXPECT_EQ(call({"info", "psl2:13", "--max-order", "100"}).code, 3);
  EXPECT_EQ(call({"killing", "psl2:8", "--class", "ord=2", "--max-class", "10"}).code, 3);
  EXPECT_EQ(call({"graph", "psl2:8", "--class", "ord=2", "--max-class", "10"}).code, 3);
}

TEST(Cli, FailingVerdictExitsOne) {
  const auto r = call({"verify", "sym-alt", "--n", "5"});
  EXPECT_EQ(r.code, 1);
  const auto j = json::parse(r.out);
  EXPECT_FALSE(j["pass"].get<bool>());
  EXPECT_FALSE(j["evidence"].empty());
}

TEST(Cli, InfoJsonAndText) {
  const auto r = call({"info", "psl2:7"});
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["order"], 168);
  EXPECT_EQ(j["class_count"], 6);
  const auto t = call({"info", "psl2:7", "--text"});
  EXPECT_NE(t.out.find("order: 168"), std::string::npos);
}

TEST(Cli, GraphWithDot) {
  const auto path = tmp("kf_graph.dot");
  const auto r = call({"graph", "psl2:8", "--class", "ord=2", "--dot", path});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["graph"]["components"], 9);
  EXPECT_EQ(j["graph"]["sizes"], json(std::vector<int>(9, 7)));
  EXPECT_TRUE(j["graph"]["equals_commuting_graph"].get<bool>());
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "graph killing {");
  std::stringstream rest;
  rest << in.rdbuf();
  EXPECT_NE(rest.str().find("component=8"), std::string::npos);
}

TEST(Cli, KillingCsv) {
  const auto path = tmp("kf_k.csv");
  const auto r = call({"killing", "psl2:7", "--class", "ord=2", "--csv", path});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "# killing-matrix group=psl2:7 class=ord=2 order=component-grouped");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, 21u);
}

TEST(Cli, CountTriple) {
  const auto r = call({"count", "psl2:7", "--triple", "1,1,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["count"], "21");
  EXPECT_TRUE(j["divisible"].get<bool>());
}

TEST(Cli, ScanAndThreads) {
  const auto r = call({"scan", "psl2:5", "--threads", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(json::parse(r.out)["pass"].get<bool>());
}

TEST(Cli, OutputIsByteIdentical) {
  const std::vector<std::string> args{"killing", "sym:5", "--class", "ord=2"};
  const auto a = call(args), b = call(args);
  EXPECT_EQ(a.out, b.out);
  const auto c = call({"verify", "psl2-unipotent", "--q", "7"});
  const auto d = call({"verify", "psl2-unipotent", "--q", "7"});
  EXPECT_EQ(c.out, d.out);
}

TEST(Cli, VerifyTagsDispatch) {
  EXPECT_EQ(call({"verify", "unipotent-irreducible", "--group", "psl2:9", "--p", "3"}).code, 0);
  EXPECT_EQ(call({"verify", "psu3-c2-odd", "--q", "3"}).code, 0);
  EXPECT_EQ(call({"verify", "dihedral-strong", "--n", "7"}).code, 0);
  EXPECT_EQ(call({"verify", "quotient-lifting", "--q", "5"}).code, 0);
  EXPECT_EQ(call({"verify", "rank1-involutions", "--q", "8"}).code, 2);
}
