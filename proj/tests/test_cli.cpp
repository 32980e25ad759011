#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "modcato_cli.hpp"

using namespace modcato;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "modcato");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, SimpleCharacterExample) {
  auto r = run({"char", "simple", "--type", "A1", "--p", "3", "--lambda", "3", "--depth", "6"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "weight  mult\n   (3)     1\n  (-3)     1\n");
}

TEST(Cli, MinL) {
  auto r = run({"topology", "minl", "--type", "A1", "--p", "2", "--set", "0,2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "l = 1\n");
}

TEST(Cli, PeriodicityFull) {
  auto r = run({"periodicity", "full", "--type", "A1", "--p", "2", "--l", "1", "--set", "0,2", "--gamma", "2",
                "--depth", "8"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("all identities hold"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"char", "simple", "--lambda", "3", "--depth", "2"}).code, 2);  // missing --p
  EXPECT_EQ(run({"char", "simple", "--p", "4", "--lambda", "3", "--depth", "2"}).code, 2);
  EXPECT_EQ(run({"char", "verma", "--type", "C3", "--lambda", "3", "--depth", "2"}).code, 2);
  EXPECT_EQ(run({"char", "verma", "--type", "A2", "--lambda", "3", "--depth", "2"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, FailuresPrintNothingOnStdout) {
  // K = {(0,0),(1,1)} in A2 is not locally closed.
  auto r = run({"periodicity", "updown", "--type", "A2", "--p", "2", "--set", "0,0;1,1", "--gamma", "2,2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("locally closed"), std::string::npos);
  auto depth = run({"periodicity", "full", "--type", "A1", "--p", "2", "--set", "0,2", "--gamma", "2", "--depth", "0"});
  EXPECT_EQ(depth.code, 2);
  EXPECT_TRUE(depth.out.empty());
}

TEST(Cli, JsonRoundTrips) {
  auto rs = build_root_system("A2");
  auto r = run({"char", "simple", "--type", "A2", "--p", "2", "--lambda", "1,1", "--depth", "4", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  auto chi = character_from_json(rs, json::parse(r.out));
  EXPECT_EQ(character_json(rs, chi).dump(2) + "\n", r.out);
  EXPECT_EQ(chi.total(), 8);

  auto d = run({"decomp", "--type", "A2", "--p", "2", "--mu", "1,1", "--depth", "3", "--format", "json"});
  ASSERT_EQ(d.code, 0);
  auto t = table_from_json(json::parse(d.out));
  EXPECT_EQ(table_json(t).dump(2) + "\n", d.out);

  auto p = run({"periodicity", "full", "--type", "A1", "--p", "3", "--set", "0,2,4", "--gamma", "3", "--depth", "6",
                "--format", "json"});
  ASSERT_EQ(p.code, 0);
  auto rep = report_from_json(json::parse(p.out));
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(report_json(rep).dump(2) + "\n", p.out);

  auto q = run({"qmult", "--type", "A1", "--lambda", "-2", "--ceiling", "2", "--format", "json"});
  ASSERT_EQ(q.code, 0);
  auto flag = flag_from_json(json::parse(q.out).at("flag"));
  EXPECT_EQ(flag, (FlagVector{{Weight{2}, 1}, {Weight{0}, 1}, {Weight{-2}, 1}}));
}

TEST(Cli, ColdAndWarmCacheGiveIdenticalBytes) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("modcato-cli-cache-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  const std::vector<std::vector<std::string>> commands{
      {"char", "simple", "--type", "B2", "--p", "2", "--lambda", "1,1", "--depth", "4"},
      {"decomp", "--type", "A2", "--p", "3", "--mu", "2,1", "--depth", "3"},
      {"projmult", "--type", "A1", "--p", "2", "--lambda", "-4", "--ceiling", "2"},
      {"steinberg", "--type", "A1", "--p", "2", "--lambda", "13", "--depth", "8"},
      {"periodicity", "full", "--type", "A2", "--p", "2", "--set", "0,0;2,-1", "--gamma", "2,2", "--depth", "4"},
  };
  for (auto cmd : commands) {
    auto plain = run(cmd);
    cmd.push_back("--cache-dir");
    cmd.push_back(dir.string());
    auto cold = run(cmd);
    auto warm = run(cmd);
    EXPECT_EQ(plain.code, 0);
    EXPECT_EQ(plain.out, cold.out);
    EXPECT_EQ(cold.out, warm.out);
  }
  EXPECT_FALSE(fs::is_empty(dir));
  fs::remove_all(dir);
}

TEST(Cli, TopologyCheck) {
  auto r = run({"topology", "check", "--type", "A2", "--set", "0,0;2,-1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("locally closed: yes"), std::string::npos);
  auto n = run({"topology", "check", "--type", "A2", "--set", "0,0;1,1"});
  EXPECT_EQ(n.code, 0);
  EXPECT_NE(n.out.find("locally closed: no"), std::string::npos);
}

}  // namespace
