#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

using Json = nlohmann::json;

struct Outcome {
  int code = -1;
  std::string out;
};

// stdout only unless `merge` folds stderr in.
Outcome run(const std::string& args, bool merge = false) {
  const std::string cmd = std::string(PQP_CLI) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  Outcome r;
  std::FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const std::string& name) { return std::string(PQP_FIXTURE_DIR) + "/" + name + ".pqp"; }

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

const Json* verdict(const Json& report, const std::string& id) {
  for (const auto& v : report["verdicts"])
    if (v["id"] == id) return &v;
  return nullptr;
}

} // namespace

TEST(Check, PrintsOrder) {
  const Outcome r = run("check " + fixture("paper_6561"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("order 6561"), std::string::npos);
  EXPECT_NE(r.out.find("consistent yes"), std::string::npos);
}

TEST(Check, JsonAndEnumeration) {
  const Outcome r = run("check " + fixture("paper_729") + " --json --enumerate");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["command"], "check");
  EXPECT_EQ(j["group"]["order"], 729);
  EXPECT_EQ(j["normal_forms_reached"], 729);
  EXPECT_EQ(j["input_digest"].get<std::string>().rfind("fnv1a64:", 0), 0u);
}

TEST(Check, InconsistentExitsTwo) {
  const auto path = temp_file("pqp_cli_inconsistent.pqp", "prime 3\ngen a 3\ngen b 3\nconj b a = b^2\n");
  const Outcome r = run("check " + path + " --json");
  EXPECT_EQ(r.code, 2);
  const Json j = Json::parse(r.out);
  EXPECT_FALSE(j["consistent"].get<bool>());
  EXPECT_EQ(j["first_failing_overlap"]["overlap"], "b (a^3)");
  std::filesystem::remove(path);
}

TEST(Errors, ParseErrorNamesFileLineColumn) {
  const auto path = temp_file("pqp_cli_bad.pqp", "prime 3\ngen a 3\ngen b 3\nconj b a = b q\n");
  const Outcome r = run("props " + path, true);
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.out, path + ": line 4, column 14: unknown generator 'q'\n");
  std::filesystem::remove(path);
}

TEST(Errors, UsageExitsTwo) {
  EXPECT_EQ(run("check --bogus " + fixture("paper_729")).code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("verify " + fixture("paper_729") + " --suite nope").code, 2);
  EXPECT_EQ(run("check /nonexistent/file.pqp").code, 2);
  EXPECT_EQ(run("make dihedral --p 3").code, 2);
  EXPECT_EQ(run("--version").code, 0);
}

TEST(Errors, ResourceLimitExitsTwo) {
  const Outcome made = run("make higman --p 5 --r 3");
  ASSERT_EQ(made.code, 0);
  const auto path = temp_file("pqp_cli_big.pqp", made.out);
  EXPECT_EQ(run("oracle " + path).code, 2);
  std::filesystem::remove(path);
}

TEST(Props, LargeFixture) {
  const Outcome r = run("props " + fixture("paper_6561") + " --json");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["group"]["nilpotency_class"], 3);
  EXPECT_EQ(j["group"]["exponent"], 27);
  EXPECT_EQ(j["group"]["min_generators"], 3);
  EXPECT_EQ(j["center_order"], 27);
  EXPECT_EQ(j["derived_order"], 27);
  const Json& props = j["report"]["properties"];
  EXPECT_FALSE(props["powerful"]["holds"].get<bool>());
  EXPECT_EQ(props["powerful"]["witness"]["commutator outside the power subgroup"], "b");
  EXPECT_TRUE(props["quasi_powerful"]["holds"].get<bool>());
  EXPECT_FALSE(props["potent"]["holds"].get<bool>());
  ASSERT_EQ(j["power_structure"].size(), 3u);
  EXPECT_EQ(j["power_structure"][0]["omega_order"], 81);
}

TEST(Props, HigmanFromMake) {
  const auto path = (std::filesystem::temp_directory_path() / "pqp_cli_h.pqp").string();
  ASSERT_EQ(run("make higman --p 3 --r 2 -o " + path).code, 0);
  const Outcome r = run("props " + path + " --json");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j["report"]["properties"]["quasi_powerful"]["holds"].get<bool>());
  EXPECT_EQ(j["min_generators_frattini"], 3);
  EXPECT_EQ(j["group"]["order"], 243);
  std::filesystem::remove(path);
}

TEST(Verify, TwoGroupRpsExitsOne) {
  const Outcome r = run("verify " + fixture("paper_256") + " --suite rps --json");
  EXPECT_EQ(r.code, 1);
  const Json j = Json::parse(r.out);
  EXPECT_FALSE(j["all_passed"].get<bool>());
  const Json* r1 = verdict(j, "rps-1");
  const Json* r2 = verdict(j, "rps-2");
  const Json* r3 = verdict(j, "rps-3");
  ASSERT_TRUE(r1 && r2 && r3);
  EXPECT_EQ((*r1)["witness"]["distinct p^i-th powers"], "8");
  EXPECT_EQ((*r1)["witness"]["|G^{p^i}|"], "16");
  EXPECT_EQ((*r2)["witness"]["exp Omega_i"], "4");
  EXPECT_EQ((*r2)["witness"]["element of Omega_i"], "b^2");
  EXPECT_EQ((*r3)["witness"]["|G:G^{p^i}|"], "16");
  EXPECT_EQ((*r3)["witness"]["|Omega_i(G)|"], "64");
  const Json* t = verdict(j, "thm-1.1-i");
  ASSERT_TRUE(t);
  EXPECT_FALSE((*t)["precondition_met"].get<bool>());
}

TEST(Verify, MediumFixturePasses) {
  const Outcome r = run("verify " + fixture("paper_729") + " --json");
  EXPECT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j["all_passed"].get<bool>());
  EXPECT_EQ(j["seed"], 0);
  EXPECT_EQ(j["suite"], "all");
  for (const char* id : {"thm-1.1-i", "thm-1.1-ii", "thm-1.1-iii", "thm-1.2", "thm-1.3", "thm-1.4", "thm-1.5",
                         "thm-1.6", "lem-3.4", "prop-3.5", "lem-4.1", "lem-4.2", "eq-4", "eq-5", "lem-2.4", "prop-8.1",
                         "witt"})
    EXPECT_TRUE(verdict(j, id)) << id;
  EXPECT_FALSE(j.contains("timing_seconds"));
}

TEST(Verify, DeterministicAcrossRunsAndWorkers) {
  const std::string base = "verify " + fixture("paper_729") + " --json --seed 5";
  const Outcome a = run(base);
  const Outcome b = run(base);
  const Outcome c = run(base + " --workers 3");
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  EXPECT_EQ(Json::parse(a.out)["seed"], 5);
}

TEST(Verify, TimingOnlyWhenAsked) {
  const Outcome r = run("verify " + fixture("paper_729") + " --suite rps --json --timing");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(Json::parse(r.out).contains("timing_seconds"));
}

TEST(Verify, HumanTableMatchesJson) {
  const Outcome r = run("verify " + fixture("paper_256") + " --suite rps");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("rps-1  FAILS"), std::string::npos);
  EXPECT_NE(r.out.find("thm-1.1-i  HYPOTHESIS FAILS"), std::string::npos);
  EXPECT_NE(r.out.find("distinct p^i-th powers = 8"), std::string::npos);
}

TEST(Subgroups, ExhaustiveHigman) {
  const auto path = (std::filesystem::temp_directory_path() / "pqp_cli_h2.pqp").string();
  ASSERT_EQ(run("make higman --p 3 --r 2 -o " + path).code, 0);
  const Outcome r = run("subgroups " + path + " --exhaustive --bound-check --json");
  EXPECT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j["verdict"]["holds"].get<bool>());
  EXPECT_EQ(j["verdict"]["data"]["subgroups"], 117);
  EXPECT_EQ(j["verdict"]["data"]["max_d"], 3);
  EXPECT_EQ(j["verdict"]["data"]["bound"], 5);
  std::filesystem::remove(path);
}

TEST(Subgroups, SampledLargeFixture) {
  const Outcome r = run("subgroups " + fixture("paper_6561") + " --sample 100 --gens 3 --seed 7 --json");
  EXPECT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["verdict"]["data"]["subgroups"], 100);
  EXPECT_EQ(j["verdict"]["data"]["r"], 3);
  EXPECT_EQ(j["seed"], 7);
}

TEST(Make, FixturesAndFamilies) {
  std::ifstream is(fixture("paper_729"), std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  EXPECT_EQ(run("make paper_729").out, ss.str());
  const Outcome ab = run("make abelian --p 2 --exps 2,1,1");
  EXPECT_EQ(ab.code, 0);
  EXPECT_EQ(ab.out, "# abelian_p2_2.1.1, order 16\nprime 2\ngen a1 4\ngen a2 2\ngen a3 2\n");
  EXPECT_EQ(run("make cyclic --p 5 --r 2").out, "# cyclic_p5_2, order 25\nprime 5\ngen a 25\n");
  EXPECT_EQ(run("make extraspecial --p 2").code, 2);
  EXPECT_EQ(run("make abelian --p 3 --exps 2,x").code, 2);
}

TEST(Oracle, EmptyDiffAndDump) {
  const auto dump = (std::filesystem::temp_directory_path() / "pqp_cli_dump.bin").string();
  const Outcome r = run("oracle " + fixture("paper_256") + " --full-assoc --json --dump " + dump);
  EXPECT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j["latin_square"].get<bool>());
  EXPECT_TRUE(j["associativity"]["holds"].get<bool>());
  EXPECT_TRUE(j["associativity"]["exhaustive"].get<bool>());
  EXPECT_EQ(j["associativity"]["triples"], 16777216);
  EXPECT_TRUE(j["diff"].empty());
  EXPECT_EQ(j["oracle_values"]["omega_1"], 64);
  EXPECT_EQ(std::filesystem::file_size(dump), 8u + 8u + 4u * 256u * 256u);
  std::filesystem::remove(dump);
}
