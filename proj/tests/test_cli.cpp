#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <string>

namespace {

struct Run {
  std::string out;
  int code = -1;
};

Run run(const std::string& args) {
  const std::string cmd = std::string("\"") + TROPCONN_CLI + "\" " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Run piped(const std::string& first, const std::string& second) {
  const std::string cli = std::string("\"") + TROPCONN_CLI + "\" ";
  return run(first + " | " + cli + second);
}

/// Runs with doc on standard input.
Run fed(const std::string& args, const std::string& doc) {
  const std::string path = testing::TempDir() + "tropconn_cli_input.json";
  if (FILE* f = fopen(path.c_str(), "w")) {
    fputs(doc.c_str(), f);
    fclose(f);
  }
  return run(args + " - < \"" + path + "\"");
}

bool has(const Run& r, const std::string& s) { return r.out.find(s) != std::string::npos; }

}  // namespace

TEST(Cli, TwoSheetsExample) {
  auto r = run("example ex14");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r, "connected: true, connected-through-codim-1: false, intersection point: (0,0,1,2)"));
}

TEST(Cli, QuadraticRootsExample) {
  auto r = run("example ex13");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r, "root valuations: {0:1, 1:1}"));
  EXPECT_TRUE(has(r, "connected: false"));
}

TEST(Cli, BergmanPlaneIsConnectedThroughRidges) {
  auto r = piped("bergman 4 2", "connectivity");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r, "connected: true"));
  EXPECT_TRUE(has(r, "connected-through-codim-1: true"));
}

TEST(Cli, NormalizeIsIdempotent) {
  auto once = piped("bergman 3 2", "normalize");
  const std::string cli = std::string("\"") + TROPCONN_CLI + "\" ";
  auto twice = run("bergman 3 2 | " + cli + "normalize | " + cli + "normalize");
  EXPECT_EQ(once.code, 0);
  EXPECT_EQ(once.out, twice.out);
}

TEST(Cli, InputErrorsExitWithTwo) {
  auto bad = fed("connectivity", R"({"format_version":"1","ambient_dim":1,"cells":[{"vertices":[["1/0"]]}]})");
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(fed("validate", R"({"format_version":"1","ambient_dim":1,"cells":[{"vertices":[[0]],"extra":true}]})").code, 2);
  EXPECT_EQ(run("connectivity /nonexistent/file.json").code, 2);
  EXPECT_NE(run("no-such-command").code, 0);
}

TEST(Cli, InvalidComplexValidatesFalse) {
  const std::string doc = R"({"format_version":"1","ambient_dim":1,"cells":[{"vertices":[[0],[2]]},{"vertices":[[1],[3]]}]})";
  auto v = fed("validate", doc);
  EXPECT_EQ(v.code, 1);
  EXPECT_TRUE(has(v, "valid: false"));
  EXPECT_EQ(fed("connectivity", doc).code, 2);
}

TEST(Cli, TheoremWalkIsDeterministic) {
  auto a = piped("bergman 3 2", "theorem-walk 0 5 --seed 11");
  auto b = piped("bergman 3 2", "theorem-walk 0 5 --seed 11");
  EXPECT_EQ(a.code, 0);
  EXPECT_TRUE(has(a, "walk: 0"));
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, NewtonOnQuadratic) {
  auto r = fed("newton", R"({"ambient_dim":1,"terms":[{"exponent":[0],"valuation":"1"},{"exponent":[1],"valuation":"0"},{"exponent":[2],"valuation":"0"}]})");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r, "{0:1, 1:1}"));
}
