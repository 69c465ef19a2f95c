#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(TMTRACE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof(buf), pipe)) r.out.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("trace subcommand evaluates h_n") {
  RunResult r = run("trace --n 1 --lambda 0 --x 2 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "n,x,value_mid,value_rad"));
  CHECK(contains(r.out, "1,2,2,"));

  RunResult r3 = run("trace --n 3 --lambda 0 --x 1 --format csv");
  CHECK(r3.exit_code == 0);
  CHECK(contains(r3.out, "3,1,-1,"));

  RunResult rs = run("trace --n 1 --lambda 1 --x 1.7320508 --format csv");
  CHECK(rs.exit_code == 0);
  // near sqrt(3): value is about -2.6e-7
  CHECK(contains(rs.out, "-2.6"));
}

TEST_CASE("trace rejects invalid input with exit 2") {
  CHECK(run("trace --n 0 --lambda 0 --x 1").exit_code == 2);
  CHECK(run("trace --lambda 0 --x 1").exit_code == 2);
  CHECK(run("trace --n 1 --lambda abc --x 1").exit_code == 2);
}

TEST_CASE("germ subcommand emits a verified certificate for lambda = 1") {
  RunResult r = run("germ --lambda 1");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"schema_version\": 1"));
  CHECK(contains(r.out, "\"verdict\": \"verified\""));
  CHECK(contains(r.out, "\"factor_crosscheck\": true"));
  CHECK(contains(r.out, "\"rad\""));  // no bare floats: radii are present
}

TEST_CASE("germ for lambda = 0 verifies too") {
  RunResult r = run("germ --lambda 0");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"verdict\": \"verified\""));
}

TEST_CASE("germ rejects malformed lambda with exit 2") {
  CHECK(run("germ --lambda not-a-number").exit_code == 2);
}

TEST_CASE("converge emits the fixed CSV header and passing rows") {
  RunResult r = run("converge --lambda 1 --m 0 --k-lo 5 --k-hi 8 --grid 32");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("k,sup_delta,bound,pass", 0) == 0);
  int rows = 0;
  for (char c : r.out)
    if (c == '\n') ++rows;
  CHECK(rows == 5);  // header + k = 5..8
  CHECK(!contains(r.out, ",0\n"));  // every row passes
}

TEST_CASE("cantor depth 0 emits the single root interval") {
  RunResult r = run("cantor --lambda 1 --ksim 5 --depth 0");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "word,gen,a_mid,a_rad,b_mid,b_rad,a_level,b_level,ratio,ok"));
  CHECK(contains(r.out, "-,0,1.7320508"));
  CHECK(contains(r.out, "\"nodes\": 1"));
}

TEST_CASE("constants reports the paper table") {
  RunResult r = run("constants");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "delta0,0.01,0,"));
  CHECK(contains(r.out, "n_alpha,40,0,pass"));
  CHECK(contains(r.out, "ctilde_0,10.4845"));
  CHECK(contains(r.out, "\nK,"));
  CHECK(contains(r.out, "residual_tail,"));
}

TEST_CASE("sigma lists certified zeros") {
  RunResult r = run("sigma --lambda 1 --n-max 1 --lo 0 --hi 2");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "n,zero_mid,zero_rad,status"));
  CHECK(contains(r.out, "1,1.7320508"));
  CHECK(contains(r.out, "found"));
}

TEST_CASE("identical configuration produces byte-identical output") {
  std::string cmd = "converge --lambda 1 --m 0 --k-lo 5 --k-hi 7 --grid 16";
  RunResult a = run(cmd);
  RunResult b = run(cmd);
  CHECK(a.out == b.out);
  RunResult c = run("constants");
  RunResult d = run("constants");
  CHECK(c.out == d.out);
}
