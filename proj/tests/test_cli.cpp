#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "amgm/cli.hpp"
#include "json.hpp"

using namespace amgm;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "amgm_lab");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return testing::TempDir() + "amgm_cli_" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

/// Everything after the "# config" header line.
std::string data_section(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string out;
  while (std::getline(in, line))
    if (line.rfind("# config: ", 0) != 0) out += line + "\n";
  return out;
}

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "--trials", "x"}).code, kExitUsage);
  EXPECT_EQ(run({"--format", "xml", "verify"}).code, kExitUsage);
  EXPECT_EQ(run({"--epsilon", "0", "verify"}).code, kExitUsage);
  EXPECT_EQ(run({"--config", temp_path("missing.json"), "verify"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, VerifyDefaultsPass) {
  const auto r = run({"verify"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("# config: {\"command\":\"verify\"", 0), 0u);
  EXPECT_NE(r.out.find("check,context,lhs,rhs,gap,rel_gap,pass,seed,params"), std::string::npos);
}

TEST(Cli, VerifyTightEpsilonFailsHonestly) {
  const auto r = run({"--epsilon", "1e-16", "verify", "--trials", "60"});
  EXPECT_EQ(r.code, kExitProvedFailure);
  EXPECT_NE(r.out.find(",false,"), std::string::npos);
}

TEST(Cli, InvalidNorm) {
  const auto r = run({"verify", "--norm", "schatten:0.5"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("schatten"), std::string::npos);
}

TEST(Cli, AmgmCommand) {
  const auto ok = run({"--seed", "7", "amgm", "--m", "3", "--n", "4", "--d", "3", "--norm", "op",
                       "--trials", "100"});
  EXPECT_EQ(ok.code, kExitOk) << ok.err;
  EXPECT_EQ(ok.out.find(",false,"), std::string::npos);

  const auto m1 = run({"--format", "json", "amgm", "--m", "1", "--trials", "10"});
  ASSERT_EQ(m1.code, kExitOk);
  for (const auto& rep : nlohmann::json::parse(m1.out)["reports"]) EXPECT_EQ(rep["gap"], 0.0);

  const auto guard = run({"amgm", "--m", "5", "--n", "3"});
  EXPECT_EQ(guard.code, kExitUsage);
  EXPECT_NE(guard.err.find("n=3, m=5"), std::string::npos);
  EXPECT_EQ(run({"amgm", "--m", "6", "--n", "40"}).code, kExitUsage);
}

TEST(Cli, SearchCommand) {
  const auto r = run({"search", "--m", "3", "--trials", "500", "--n", "3,4", "--d", "2,3"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["violation_found"], false);
  EXPECT_EQ(j["config"]["m"], 3);

  const auto a = run({"search", "--trials", "30", "--perturb_steps", "3"});
  const auto b = run({"--jobs", "3", "search", "--trials", "30", "--perturb_steps", "3"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);

  const auto half = run({"--format", "csv", "search", "--trials", "10", "--perturb_steps", "2"});
  const auto full = run({"--format", "csv", "search", "--trials", "20", "--perturb_steps", "2"});
  const std::string h = data_section(half.out);
  EXPECT_EQ(data_section(full.out).substr(0, h.size()), h);

  EXPECT_EQ(run({"search", "--m", "5", "--n", "4"}).code, kExitUsage);
}

TEST(Cli, SearchConfigFile) {
  const std::string cfg = temp_path("search.json");
  spit(cfg, R"({"m": 4, "n_values": [4], "d_values": [2], "norms": ["op"], "trials": 8,
               "perturb_steps": 2, "seed": 5, "epsilon": 1e-8})");
  const auto from_file = run({"--config", cfg, "search"});
  ASSERT_EQ(from_file.code, kExitOk) << from_file.err;
  const auto flags = run({"--seed", "5", "search", "--n", "4", "--d", "2", "--norm", "op",
                          "--trials", "8", "--perturb_steps", "2"});
  EXPECT_EQ(from_file.out, flags.out);
  // explicit flags override the file
  const auto over = run({"--config", cfg, "search", "--trials", "4"});
  EXPECT_EQ(nlohmann::json::parse(over.out)["trials"], 4);
  spit(cfg, R"({"m": 4, "colour": "red"})");
  EXPECT_EQ(run({"--config", cfg, "search"}).code, kExitUsage);
}

TEST(Cli, KaczmarzCommand) {
  const std::string out = temp_path("kz.csv");
  const auto r = run({"--seed", "11", "--out", out, "kaczmarz", "--trials", "40", "--steps", "60"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const std::string csv = slurp(out);
  EXPECT_NE(csv.find("\nwr,"), std::string::npos);
  EXPECT_NE(csv.find("\nwor,"), std::string::npos);
  EXPECT_NE(csv.find("\ncyclic,"), std::string::npos);
  const auto summary = nlohmann::json::parse(slurp(out + ".summary.json"));
  EXPECT_EQ(summary["config"]["seed"], 11);

  const auto u = run({"kaczmarz", "--rows", "2", "--cols", "4", "--trials", "5", "--steps", "20"});
  EXPECT_EQ(u.code, kExitOk) << u.err;
  EXPECT_NE(u.out.find("# note: underdetermined"), std::string::npos);

  const auto once = run({"kaczmarz", "--trials", "1"});
  EXPECT_EQ(once.out, run({"kaczmarz", "--trials", "1"}).out);

  const std::string sys = temp_path("sys.json");
  spit(sys, R"({"rows": [[1, 0], [0, 1]], "rhs": [1, 1], "solution": [1, 2]})");
  EXPECT_EQ(run({"kaczmarz", "--system", sys}).code, kExitUsage);
  spit(sys, R"({"rows": [[1, 0], [0, 1]], "rhs": [1, 1]})");
  EXPECT_EQ(run({"kaczmarz", "--system", sys}).code, kExitUsage);
  spit(sys, R"({"rows": [[1, 0], [1, 1], [0, 2]], "rhs": [1, 3, 4], "solution": [1, 2]})");
  EXPECT_EQ(run({"kaczmarz", "--system", sys, "--trials", "5"}).code, kExitOk);
  EXPECT_EQ(run({"kaczmarz", "--modes", "wr,shuffled"}).code, kExitUsage);
}

TEST(Cli, WedgeCommand) {
  const auto r = run({"wedge"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["ok"], true);
  bool saw_skip = false;
  for (const auto& t : j["reports"]) {
    if (t["kind"] == "singular-psd") {
      EXPECT_EQ(t["properties"][2]["status"], "skipped");
      saw_skip = true;
    }
  }
  EXPECT_TRUE(saw_skip);
  const auto guard = run({"wedge", "--d", "20", "--k", "10"});
  EXPECT_EQ(guard.code, kExitUsage);
  EXPECT_NE(guard.err.find("C(20,10)"), std::string::npos);
}

TEST(Cli, HeaderReproducibility) {
  const std::vector<std::vector<std::string>> commands{
      {"--seed", "3", "verify", "--trials", "15", "--d", "2,4"},
      {"--seed", "4", "amgm", "--m", "2", "--n", "3", "--trials", "7"},
      {"--seed", "5", "--format", "csv", "search", "--trials", "6", "--perturb_steps", "2"},
      {"--seed", "6", "kaczmarz", "--trials", "4", "--steps", "30", "--modes", "wor,cyclic"},
      {"--seed", "7", "--format", "csv", "wedge", "--trials", "12", "--d", "3,5", "--k", "2"},
  };
  for (const auto& args : commands) {
    const std::string first = temp_path("first.out");
    const std::string second = temp_path("second.out");
    std::vector<std::string> a{"--out", first};
    a.insert(a.end(), args.begin(), args.end());
    ASSERT_EQ(run(a).code, kExitOk) << args[2];
    const std::string command = args[2] == "--format" ? args[4] : args[2];
    const auto again = run({"--config", first, "--out", second, command});
    ASSERT_EQ(again.code, kExitOk) << again.err;
    EXPECT_EQ(slurp(first), slurp(second)) << command;
  }
}

TEST(Cli, JsonReportCarriesConfig) {
  const std::string first = temp_path("v.json");
  ASSERT_EQ(run({"--format", "json", "--out", first, "verify", "--trials", "5"}).code, kExitOk);
  const std::string second = temp_path("v2.json");
  ASSERT_EQ(run({"--config", first, "--out", second, "verify"}).code, kExitOk);
  EXPECT_EQ(slurp(first), slurp(second));
  EXPECT_EQ(run({"--config", first, "amgm"}).code, kExitUsage);
}
