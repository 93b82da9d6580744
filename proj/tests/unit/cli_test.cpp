#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "homlts/cli.hpp"

namespace {
namespace fs = std::filesystem;

const std::string kSamples = HOMLTS_SAMPLES_DIR;

std::string sample(const std::string& name) { return kSamples + "/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "homlts");
  std::ostringstream out, err;
  const int code = homlts::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) { return homlts::io::read_file(path); }

fs::path temp_file(const std::string& name, const std::string& content) {
  const auto p = fs::temp_directory_path() / ("homlts_cli_test_" + name);
  std::ofstream(p) << content;
  return p;
}
}  // namespace

TEST(Cli, VerifyExitCodes) {
  EXPECT_EQ(run({"verify", sample("b2.json")}).code, 0);
  const auto broken = run({"verify", sample("broken.json")});
  EXPECT_EQ(broken.code, 1);
  EXPECT_NE(broken.out.find("hom-Nambu identity violated at ("), std::string::npos);
  EXPECT_EQ(run({"verify", sample("does_not_exist.json")}).code, 2);
  EXPECT_EQ(run({"verify", temp_file("trunc.json", "{\"field\": ").string()}).code, 2);
  EXPECT_EQ(run({"verify"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"verify", sample("b2.json"), "--format", "yaml"}).code, 2);
}

TEST(Cli, VerifyWithRepresentation) {
  const auto rep = temp_file("triv.json", R"({"mdim": 1, "A": [["1"]], "theta": []})");
  EXPECT_EQ(run({"verify", sample("b2.json"), "--rep", rep.string()}).code, 0);
  const auto bad = temp_file("badrep.json", R"({"mdim": 1, "A": [["1"]], "theta": [{"a": 0, "b": 1, "matrix": [["1"]]}]})");
  EXPECT_EQ(run({"verify", sample("b2.json"), "--rep", bad.string()}).code, 1);
}

TEST(Cli, CohomologyOfB2) {
  const auto r = run({"cohomology", sample("b2.json"), "--degrees", "1,3", "--rep", "trivial"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("H^1: dim 0"), std::string::npos);
  EXPECT_NE(r.out.find("H^3: dim 0"), std::string::npos);
  const auto j = run({"cohomology", sample("b2.json"), "--degrees", "1,3", "--format", "json"});
  const auto doc = homlts::io::parse_json(j.out, "report");
  EXPECT_EQ(doc["status"], "pass");
  EXPECT_EQ(doc["degrees"][0]["cochains"], 1);
  EXPECT_EQ(doc["degrees"][0]["cocycles"], 0);
  EXPECT_EQ(doc["degrees"][1]["cochains"], 1);
  EXPECT_EQ(doc["degrees"][1]["coboundaries"], 1);
  EXPECT_EQ(doc["degrees"][1]["dim"], 0);
}

TEST(Cli, CoefficientBudgetIsAPreconditionFailure) {
  ::setenv("HOMLTS_MAX_COEFFS", "10", 1);
  const auto r = run({"cohomology", sample("b2.json"), "--degrees", "5", "--format", "json"});
  ::unsetenv("HOMLTS_MAX_COEFFS");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("\"status\": \"error\""), std::string::npos);
  EXPECT_NE(r.err.find("HOMLTS_MAX_COEFFS"), std::string::npos);
}

TEST(Cli, GenIsByteStable) {
  const auto r = run({"gen", "bilinear", "--dim", "2", "--alpha", "diag:1,-1", "--lambda", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, slurp(sample("b2.json")));
  EXPECT_EQ(run({"gen", "random", "--dim", "3", "--seed", "9", "--field", "GF:101"}).out,
            run({"gen", "random", "--dim", "3", "--seed", "9", "--field", "GF:101"}).out);
  EXPECT_EQ(run({"gen", "matrix", "--m", "2", "--n", "2"}).out, slurp(sample("matrix22.json")));
  EXPECT_EQ(run({"gen", "bilinear", "--alpha", "diag:1,2"}).code, 3);
  EXPECT_EQ(run({"gen", "bilinear", "--alpha", "diag:1"}).code, 2);
  EXPECT_EQ(run({"gen", "matrix", "--m", "2", "--n", "2", "--conjugator", "diag:1,2"}).code, 3);
  EXPECT_EQ(run({"gen", "random", "--field", "GF:9"}).code, 3);
}

TEST(Cli, GenWritesOutputFile) {
  const auto p = fs::temp_directory_path() / "homlts_cli_test_gen.json";
  const auto r = run({"gen", "bilinear", "--alpha", "diag:1,-1", "-o", p.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(slurp(p.string()), slurp(sample("b2.json")));
  EXPECT_NE(r.out.find("generated bilinear"), std::string::npos);
}

TEST(Cli, ExtendAndEquiv) {
  const auto e = run({"extend", sample("b2.json"), "--cocycle", sample("b2_generator.json")});
  ASSERT_EQ(e.code, 0);
  const auto doc = homlts::io::parse_json(e.out, "extension");
  EXPECT_EQ(doc["algebra"]["dim"], 3);
  EXPECT_EQ(run({"extend", sample("b2.json"), "--cocycle", sample("b2_bracket.json")}).code, 2);
  const auto not_cocycle = temp_file("notcocycle.json", R"({"degree": 3, "values": [{"idx": [0, 1, 0], "v": ["1"]}]})");
  EXPECT_EQ(run({"extend", sample("b2.json"), "--cocycle", not_cocycle.string()}).code, 3);

  const auto q = run({"equiv", sample("b2.json"), sample("b2_generator.json"), sample("zero_cocycle.json"), "--format", "json"});
  EXPECT_EQ(q.code, 0);
  const auto qd = homlts::io::parse_json(q.out, "report");
  EXPECT_EQ(qd["equivalent"], true);
  EXPECT_EQ(qd["f"]["values"][0]["v"][0], "1");

  const auto ab = temp_file("abelian2.json", R"({"field": "Q", "dim": 2, "alpha": [["1", "0"], ["0", "1"]], "bracket": []})");
  const auto g1 = temp_file("g1.json", R"({"degree": 3, "values": [{"idx": [0, 1, 1], "v": ["1"]}, {"idx": [1, 0, 1], "v": ["-1"]}]})");
  EXPECT_EQ(run({"equiv", ab.string(), g1.string(), sample("zero_cocycle.json")}).code, 1);
}

TEST(Cli, Center) {
  const auto r = run({"center", sample("b2.json"), "--format", "json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(homlts::io::parse_json(r.out, "report")["dim"], 0);
}

TEST(Cli, DeformationVerbs) {
  EXPECT_EQ(run({"def-check", sample("b2.json"), sample("b2_scaling.json")}).code, 0);
  EXPECT_EQ(run({"def-check", sample("b2.json"), sample("b2_scaling.json"), "--against", sample("b2_null.json"), "--iso",
                 sample("half_identity.json")})
                .code,
            0);
  const auto wrong = temp_file("iso1.json", R"({"order": 1, "phis": [[["1", "0"], ["0", "1"]]]})");
  EXPECT_EQ(run({"def-check", sample("b2.json"), sample("b2_scaling.json"), "--against", sample("b2_null.json"), "--iso",
                 wrong.string()})
                .code,
            1);
  const auto integ = run({"def-integrate", sample("b2.json"), "--cocycle", sample("b2_bracket.json"), "--order", "3"});
  EXPECT_EQ(integ.code, 0);
  const auto doc = homlts::io::parse_json(integ.out, "deformation");
  EXPECT_EQ(doc["order"], 3);
  EXPECT_EQ(run({"def-integrate", sample("b2.json"), "--cocycle", sample("b2_scaling.json")}).code, 2);
  EXPECT_EQ(run({"def-integrate", sample("b2.json"), "--cocycle", sample("b2_bracket.json"), "--order", "0"}).code, 2);
}

TEST(Cli, IntegrationOnAbelianSystem) {
  // Zero bracket with alpha = id: every alternating cyclic cochain is a cocycle.
  const auto ab = temp_file("abelian2b.json", R"({"field": "Q", "dim": 2, "alpha": [["1", "0"], ["0", "1"]], "bracket": []})");
  const auto d1 = temp_file("d1.json", R"({"degree": 3, "values": [
    {"idx": [0, 1, 0], "v": ["1", "0"]}, {"idx": [0, 1, 1], "v": ["0", "1"]},
    {"idx": [1, 0, 0], "v": ["-1", "0"]}, {"idx": [1, 0, 1], "v": ["0", "-1"]}]})");
  const auto r = run({"def-integrate", ab.string(), "--cocycle", d1.string(), "--format", "json"});
  EXPECT_EQ(r.code, 1);
  const auto doc = homlts::io::parse_json(r.out, "report");
  EXPECT_EQ(doc["obstructed_at"], 2);
  EXPECT_EQ(doc["status"], "fail");

  // Rank-one jet: d1(d1(..)) vanishes, so the zero extension works at every order.
  const auto flat = temp_file("d1flat.json", R"({"degree": 3, "values": [
    {"idx": [0, 1, 1], "v": ["1", "0"]}, {"idx": [1, 0, 1], "v": ["-1", "0"]}]})");
  const auto ok = run({"def-integrate", ab.string(), "--cocycle", flat.string()});
  ASSERT_EQ(ok.code, 0);
  const auto D = homlts::io::parse_json(ok.out, "deformation");
  EXPECT_EQ(D["order"], 4);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_TRUE(D["jets"][i]["values"].empty());
}
