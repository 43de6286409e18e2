#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace plofc::cli {
namespace {

namespace fs = std::filesystem;

const std::string kSamples = PLOFC_SAMPLES_DIR;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("plofc_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write(const fs::path& path, const std::string& content) {
  std::ofstream(path) << content;
  return path;
}

TEST(Cli, DiagnoseBuggyAlongFirstPath) {
  const Result r = invoke({"diagnose", "--program", kSamples + "/ex1_buggy.mimp", "--inputs",
                           "a=3,b=4", "--path", "1", "--target", "z1", "--expect", "17",
                           "--format", "json"});
  EXPECT_EQ(r.code, kExitFault) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("od"), 2);
  EXPECT_EQ(j.at("plofc"), nlohmann::json::parse("[4, 8, 10]"));
  EXPECT_EQ(j.at("repairs").size(), 3u);
}

TEST(Cli, DiagnoseBuggyNaturally) {
  const Result r = invoke({"diagnose", "--program", kSamples + "/ex1_buggy.mimp", "--inputs",
                           "a=3,b=4", "--target", "z1", "--expect", "17", "--format", "json"});
  EXPECT_EQ(r.code, kExitFault) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("observed"), 12);
  EXPECT_EQ(j.at("od"), 5);
  EXPECT_EQ(j.at("plofc"), nlohmann::json::parse("[4, 9, 10]"));
}

TEST(Cli, DiagnoseCorrectProgram) {
  const Result r = invoke({"diagnose", "--program", kSamples + "/ex1.mimp", "--inputs", "a=3,b=4",
                           "--path", "1", "--target", "z1", "--expect", "17", "--format", "json"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(nlohmann::json::parse(r.out).at("plofc").empty());
}

TEST(Cli, UsageErrors) {
  const Result missing = invoke({"diagnose", "--program", kSamples + "/ex1.mimp", "--inputs",
                                 "a=3,b=4", "--expect", "17"});
  EXPECT_EQ(missing.code, kExitError);
  EXPECT_NE(missing.err.find("--target"), std::string::npos) << missing.err;

  EXPECT_EQ(invoke({}).code, kExitError);
  EXPECT_EQ(invoke({"trace", "--program", "/nonexistent.mimp"}).code, kExitError);
  EXPECT_EQ(invoke({"trace", "--program", kSamples + "/ex1.mimp", "--inputs", "a=3,b=4",
                    "--path", "9"})
                .code,
            kExitError);
  EXPECT_EQ(invoke({"blocks", "--program", kSamples + "/ex1.mimp", "--format", "xml"}).code,
            kExitError);
}

TEST(Cli, TraceValues) {
  const Result natural =
      invoke({"trace", "--program", kSamples + "/ex1.mimp", "--inputs", "a=3,b=4"});
  EXPECT_EQ(natural.code, kExitOk);
  EXPECT_NE(natural.out.find("z1=10"), std::string::npos) << natural.out;

  const Result first = invoke(
      {"trace", "--program", kSamples + "/ex1.mimp", "--inputs", "a=3,b=4", "--path", "1"});
  EXPECT_NE(first.out.find("z1=17"), std::string::npos) << first.out;
  const Result buggy = invoke({"trace", "--program", kSamples + "/ex1_buggy.mimp", "--inputs",
                               "a=3,b=4", "--path", "1"});
  EXPECT_NE(buggy.out.find("z1=19"), std::string::npos) << buggy.out;
}

TEST(Cli, TraceUnboundInput) {
  const Result r = invoke({"trace", "--program", kSamples + "/ex1.mimp", "--inputs", "a=3"});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("'b'"), std::string::npos) << r.err;
}

TEST(Cli, Blocks) {
  const Result r = invoke({"blocks", "--program", kSamples + "/ex1.mimp", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("blocks").size(), 7u);
  EXPECT_EQ(j.at("paths").size(), 4u);

  const fs::path dir = scratch("blocks");
  const Result one = invoke({"blocks", "--program", write(dir / "one.mimp", "x = 1\n").string(),
                             "--format", "json"});
  const auto k = nlohmann::json::parse(one.out);
  EXPECT_EQ(k.at("blocks").size(), 1u);
  EXPECT_EQ(k.at("paths").size(), 1u);

  std::string many;
  for (int i = 0; i < 21; ++i) many += "if (a > " + std::to_string(i) + ")\n then x = 1\n else x = 2\n";
  const Result boom = invoke({"blocks", "--program", write(dir / "many.mimp", many).string()});
  EXPECT_EQ(boom.code, kExitError);
  EXPECT_NE(boom.err.find("path explosion"), std::string::npos) << boom.err;
  EXPECT_EQ(invoke({"blocks", "--program", (dir / "many.mimp").string(), "--path-cap", "21"}).code,
            kExitOk);
}

TEST(Cli, EmitDot) {
  const fs::path dir = scratch("dot");
  const Result r = invoke({"diagnose", "--program", kSamples + "/ex1_buggy.mimp", "--inputs",
                           "a=3,b=4", "--path", "1", "--target", "z1", "--expect", "17",
                           "--emit-dot", dir.string()});
  EXPECT_EQ(r.code, kExitFault) << r.err;
  for (const char* name : {"graph1.dot", "graph2.dot", "graph3.dot"})
    EXPECT_TRUE(fs::exists(dir / name)) << name;
  std::ifstream in(dir / "graph2.dot");
  const std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_NE(text.find("color=green"), std::string::npos);
}

TEST(Cli, InputsFileWithInlineOverride) {
  const fs::path dir = scratch("inputs");
  const fs::path file = write(dir / "in.json", R"({"a": 3, "b": 100})");
  const Result r = invoke({"trace", "--program", kSamples + "/ex1.mimp", "--inputs-file",
                           file.string(), "--inputs", "b=4", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out).at("env").at("b"), 4);
}

TEST(Cli, ExtraCases) {
  const fs::path dir = scratch("cases");
  const fs::path program =
      write(dir / "p.mimp", "if (a > 0)\n then x = a + 4\n else x = a\nz = x + 1\n");
  const Result r = invoke({"diagnose", "--program", program.string(), "--inputs", "a=1",
                           "--target", "z", "--expect", "4", "--case", "a=-1:0", "--format",
                           "json"});
  EXPECT_EQ(r.code, kExitFault) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out).at("repairs").size(), 1u);
  EXPECT_EQ(invoke({"diagnose", "--program", program.string(), "--inputs", "a=1", "--target",
                    "z", "--expect", "4", "--case", "a=-1"})
                .code,
            kExitError);
}

TEST(Cli, DepsListsAllThreeSets) {
  const Result r = invoke(
      {"deps", "--program", kSamples + "/ex1.mimp", "--inputs", "a=3,b=4", "--path", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("set1: { (x1,a), (y1,b), (z1,x1), (z1,y1), (z1,z1) }"), std::string::npos)
      << r.out;
  EXPECT_NE(r.out.find("c2 = 5 (line 7, condition)"), std::string::npos);
  const auto j = nlohmann::json::parse(invoke({"deps", "--program", kSamples + "/ex1.mimp",
                                               "--inputs", "a=3,b=4", "--path", "1", "--format",
                                               "json"})
                                           .out);
  EXPECT_EQ(j.at("set1").size(), 5u);
  EXPECT_EQ(j.at("set2").size(), 8u);
  EXPECT_EQ(j.at("final").size(), 7u);
}

TEST(Cli, JsonIsRepeatable) {
  const std::vector<std::string> args{"diagnose", "--program", kSamples + "/ex1_buggy.mimp",
                                      "--inputs", "a=3,b=4", "--path", "1", "--target", "z1",
                                      "--expect", "17", "--format", "json", "--parallel"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
}

}  // namespace
}  // namespace plofc::cli
