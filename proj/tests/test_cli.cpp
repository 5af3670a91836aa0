#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace quasiline;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "quasiline-cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

Run structured(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "structured"});
  return run(std::move(args));
}

std::string sample(const std::string& name) { return std::string(QUASILINE_SAMPLES_DIR) + "/" + name; }

}  // namespace

TEST(Cli, HeaderCarriesSeedAndGenerator) {
  auto r = structured({"--seed", "17", "bundle", "elm", "0,1,4"});
  ASSERT_EQ(r.code, 0);
  auto j = r.json();
  EXPECT_EQ(j["command"], "bundle");
  EXPECT_EQ(j["seed"], 17);
  EXPECT_EQ(j["rng"], "mt19937_64");
}

TEST(Cli, AppendixTwo) {
  auto r = structured({"appendix", "--n", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.json();
  EXPECT_EQ(j["h0"], 1);
  EXPECT_EQ(j["lattice_points"], Json::parse("[[0,0]]"));
  EXPECT_EQ(j["cartier_on_n"]["cartier"], false);
  EXPECT_EQ(j["cartier_on_n"]["denominator"], 3);
  EXPECT_EQ(j["cartier_on_nprime"]["cartier"], true);
}

TEST(Cli, AppendixFour) {
  auto j = structured({"appendix", "--n", "4"}).json();
  EXPECT_EQ(j["h0"], 1);
  EXPECT_EQ(j["multiplicities_n"], Json::parse("[5,5,5,5,5]"));
}

TEST(Cli, AppendixBadDimension) {
  auto r = structured({"appendix", "--n", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.json()["error"], "BadDimension");
  EXPECT_EQ(structured({"appendix", "--n", "9"}).code, 1);
  EXPECT_EQ(structured({"appendix", "--n", "9", "--cap", "9"}).code, 0);
}

TEST(Cli, LemmaA2) {
  auto a = structured({"lemma-a2", "--n", "2", "--bound", "5", "--samples", "100"});
  ASSERT_EQ(a.code, 0) << a.err;
  auto j = a.json();
  EXPECT_EQ(j["cartier_extensions"], 100);
  EXPECT_TRUE(j["violations"].empty());
  for (const auto& [count, times] : j["count_histogram"].items()) EXPECT_LE(std::stoi(count), 1);

  auto b = structured({"lemma-a2", "--n", "3", "--bound", "3", "--samples", "50"});
  ASSERT_EQ(b.code, 0);
  EXPECT_TRUE(b.json()["violations"].empty());

  auto empty = structured({"lemma-a2", "--n", "2", "--samples", "0"});
  EXPECT_EQ(empty.code, 0);
  EXPECT_TRUE(empty.json()["count_histogram"].empty());

  EXPECT_EQ(structured({"lemma-a2", "--n", "4"}).code, 1);
}

TEST(Cli, BundleSubcommands) {
  EXPECT_EQ(structured({"bundle", "elm", "0,1,4"}).json()["result"], Json::parse("[0,1,3]"));
  auto plan = structured({"bundle", "plan", "--type", "2,3"}).json();
  EXPECT_EQ(plan["length"], 3);
  EXPECT_EQ(plan["final"], Json::parse("[1,1]"));
  EXPECT_EQ(plan["almost_line"], true);
  EXPECT_EQ(structured({"bundle", "cor17", "--type", "2,2", "--d", "2", "--dimD", "4"}).json()["rational_criterion"], true);
  EXPECT_EQ(structured({"bundle", "self-int", "1,2,3"}).json()["self_intersections"], Json::parse("[-3,0,3]"));
  EXPECT_EQ(structured({"bundle", "recover", "--targets", "-1,1", "--anchor", "1"}).json()["result"], Json::parse("[0,1]"));
  auto thm16 = structured({"bundle", "thm16", "2,2", "--d", "2", "--dimD", "2"}).json();
  EXPECT_EQ(thm16["reduced_type"], Json::parse("[1,1]"));
  EXPECT_EQ(thm16["fibration_target_dim"], 1);
  EXPECT_EQ(structured({"bundle", "thm41", "--d", "1", "--dimD", "3", "--n", "3", "--quasiline"}).json()["strongly_rational_criterion"], true);
}

TEST(Cli, BundleErrors) {
  auto parse = structured({"bundle", "elm", "1,x"});
  EXPECT_EQ(parse.code, 1);
  EXPECT_NE(parse.json()["message"].get<std::string>().find("position 2"), std::string::npos);
  EXPECT_EQ(structured({"bundle", "recover", "--targets", "1,2", "--anchor", "0"}).code, 2);
  EXPECT_EQ(structured({"bundle", "plan", "0,2"}).code, 2);
  EXPECT_EQ(structured({"bundle", "thm16", "1,2", "--d", "2", "--dimD", "5"}).code, 2);
  EXPECT_EQ(structured({"bundle", "frobnicate", "1,2"}).code, 1);
}

TEST(Cli, CubicSeeds) {
  for (const char* seed : {"0", "1", "19"}) {
    auto r = structured({"cubic", "--seed", seed});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = r.json();
    EXPECT_EQ(j["lines"]["count"], 6);
    EXPECT_EQ(j["lines"]["generic"], true);
    EXPECT_EQ(j["e_conic"], 6);
  }
  auto deg = structured({"cubic", "--reducible"});
  EXPECT_EQ(deg.code, 2);
  EXPECT_EQ(deg.json()["error"], "Degenerate");
}

TEST(Cli, SeedPositionDoesNotMatter) {
  EXPECT_EQ(structured({"--seed", "5", "cubic"}).out, structured({"cubic", "--seed", "5"}).out);
}

TEST(Cli, Models) {
  auto cubic = structured({"models", "--builtin", "cubic-conic"});
  ASSERT_EQ(cubic.code, 0) << cubic.err;
  auto rec = cubic.json()["records"][0]["result"];
  EXPECT_EQ(rec["b"], 1);
  EXPECT_EQ(rec["g3"], true);

  auto toric = structured({"models", "--builtin", "toric-quotient", "--n", "3"}).json()["records"][0]["result"];
  EXPECT_EQ(toric["etilde"], 1);
  EXPECT_EQ(toric["g3"], false);

  auto bad = structured({"models", sample("contradiction_record.json")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(bad.json()["records"][0]["contradiction"], "R2");

  auto all = structured({"models"});
  EXPECT_EQ(all.code, 0);
  EXPECT_EQ(all.json()["records"].size(), catalog().size());

  auto several = structured({"models", sample("records.json")});
  EXPECT_EQ(several.code, 2);
  auto recs = several.json()["records"];
  ASSERT_EQ(recs.size(), 3u);
  EXPECT_EQ(recs[0]["consistent"], true);
  EXPECT_EQ(recs[1]["consistent"], false);
  bool r3 = false;
  for (const auto& v : recs[2]["violations"]) r3 = r3 || v["rule"] == "R3";
  EXPECT_TRUE(r3);

  EXPECT_EQ(structured({"models", "--builtin", "nothing"}).code, 1);
  EXPECT_EQ(structured({"models", sample("missing.json")}).code, 1);
}

TEST(Cli, FanFiles) {
  auto v = structured({"fan", "validate", sample("p2_fan.json")}).json();
  EXPECT_EQ(v["valid"], true);
  EXPECT_EQ(v["smooth"], true);
  auto o = structured({"fan", "validate", sample("overlapping_fan.json")});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.json()["valid"], false);

  auto h = structured({"fan", "h0", sample("p2_hyperplane.json")}).json();
  EXPECT_EQ(h["h0"], 3);
  auto q = structured({"fan", "h0", sample("quotient_n2_divisor.json")}).json();
  EXPECT_EQ(q["h0"], 1);
  auto c = structured({"fan", "cartier", sample("quotient_n2_divisor.json")}).json();
  EXPECT_EQ(c["certificate"]["cartier"], false);
  EXPECT_EQ(c["certificate"]["rational_solution"], Json::parse(R"(["-2/3",-1])"));

  auto d = structured({"fan", "desingularize", sample("quotient_n2_fan.json")}).json();
  EXPECT_EQ(d["smooth"], true);
  for (const auto& idx : d["result"]["cone_indices"]) EXPECT_EQ(idx, 1);

  auto u = structured({"fan", "h0", sample("half_line.json")});
  EXPECT_EQ(u.code, 2);
  EXPECT_EQ(u.json()["error"], "Unbounded");
}

TEST(Cli, HumanFormatIsKeyValue) {
  auto r = run({"bundle", "elm", "0,1,4"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("result: [0, 1, 3]"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("rng: mt19937_64"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"nope"}).code, 1);
  EXPECT_EQ(run({"--format", "xml", "appendix"}).code, 1);
}

TEST(Cli, StructuredOutputIsDeterministic) {
  for (std::vector<std::string> args : {std::vector<std::string>{"appendix", "--n", "3"},
                                        std::vector<std::string>{"lemma-a2", "--n", "2", "--samples", "20", "--seed", "4"},
                                        std::vector<std::string>{"cubic", "--seed", "11"},
                                        std::vector<std::string>{"models"}}) {
    EXPECT_EQ(structured(args).out, structured(args).out);
  }
}

TEST(Cli, OutWritesTheReport) {
  auto path = std::filesystem::temp_directory_path() / "quasiline_cli_out.json";
  std::filesystem::remove(path);
  auto r = structured({"--out", path.string(), "bundle", "elm", "0,1,4"});
  ASSERT_EQ(r.code, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(Json::parse(ss.str())["result"], Json::parse("[0,1,3]"));
  std::filesystem::remove(path);
}

TEST(Cli, ProcessExitCodes) {
  const std::string cli = QUASILINE_CLI_PATH;
  auto status = [&](const std::string& args) {
    int s = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(status("appendix --n 2"), 0);
  EXPECT_EQ(status("appendix --n 1"), 1);
  EXPECT_EQ(status("fan h0 " + sample("half_line.json")), 2);
  EXPECT_EQ(status("models " + sample("contradiction_record.json")), 2);
}
