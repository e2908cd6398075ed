#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(BRANEDT_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WEXITSTATUS(status);
  return r;
}

std::string data(const std::string& name) { return std::string(BRANEDT_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("builtins list") {
  RunResult r = run("builtins");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("c3 (1 vertices, 3 arrows, 2 faces)") != std::string::npos);
  CHECK(r.out.find("spp") != std::string::npos);
  CHECK(r.out.find("dp3") != std::string::npos);
}

TEST_CASE("validate a file and a broken file") {
  CHECK(run("validate --tiling " + data("hex.tiling")).exit_code == 0);
  RunResult bad = run("validate --tiling " + data("broken.tiling"));
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("violation") != std::string::npos);
  // downstream commands also report invalid input as a validation failure
  CHECK(run("partition --tiling " + data("broken.tiling") + " --max-size 2").exit_code == 1);
}

TEST_CASE("usage errors exit with 4") {
  CHECK(run("nonsense").exit_code == 4);
  CHECK(run("partition").exit_code == 4);  // no source given
  CHECK(run("partition --builtin c3 --vertex 7 --max-size 2").exit_code == 4);
  CHECK(run("partition --builtin nosuch").exit_code == 4);
}

TEST_CASE("partition output") {
  RunResult r = run("partition --builtin c3 --vertex 0 --max-size 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("alpha=4 count=13") != std::string::npos);
  CHECK(r.out.find("alpha=0 count=1") != std::string::npos);

  RunResult dt = run("dt --builtin c3 --vertex 0 --max-size 4");
  CHECK(dt.exit_code == 0);
  CHECK(dt.out.find("alpha=3 count=-6") != std::string::npos);
  CHECK(dt.out.find("signed=true") != std::string::npos);

  RunResult tsv = run("partition --builtin conifold --max-size 3 --format tsv");
  CHECK(tsv.exit_code == 0);
  CHECK(tsv.out.find("1,0\t1\n") != std::string::npos);
}

TEST_CASE("byte-identical output across runs and thread counts") {
  std::string base = "partition --builtin spp --vertex 1 --max-size 6";
  RunResult a = run(base);
  RunResult b = run(base);
  RunResult c = run(base + " --threads 3");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("consistency and matchings") {
  RunResult r = run("consistency --builtin spp --condition-c");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("certified: yes") != std::string::npos);

  RunResult m = run("matchings --builtin conifold");
  CHECK(m.exit_code == 0);
  CHECK(m.out.find("x0\n") != std::string::npos);
  CHECK(m.out.find("count: 4") != std::string::npos);
}

TEST_CASE("logz with golden comparison") {
  RunResult r = run(
      "logz --builtin c3 --vertex 0 --max-size 6 --golden \"x/(1-x)^2\" --rational");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("MATCH through degree 6") != std::string::npos);
  CHECK(r.out.find("rational guess") != std::string::npos);

  RunResult bad = run("logz --builtin c3 --vertex 0 --max-size 4 --golden \"x/(1-x)\"");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("MISMATCH") != std::string::npos);
}

TEST_CASE("correspond") {
  RunResult r = run("correspond --builtin conifold --vertex 0 --max-size 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("z-routes agree: yes") != std::string::npos);
  CHECK(r.out.find("roundtrips:") != std::string::npos);
}

TEST_CASE("uncertified tilings exit with 2 unless forced") {
  RunResult rep = run("consistency --tiling " + data("degenerate.tiling"));
  CHECK(rep.exit_code == 2);
  CHECK(rep.out.find("certified: no") != std::string::npos);

  RunResult refuse = run("partition --tiling " + data("degenerate.tiling") + " --max-size 2");
  CHECK(refuse.exit_code == 2);
  CHECK(refuse.out.find("not certified") != std::string::npos);

  // --force bypasses the gate with a banner; this particular tiling then
  // fails anyway, having no perfect matching at all
  RunResult forced =
      run("partition --tiling " + data("degenerate.tiling") + " --max-size 2 --force");
  CHECK(forced.out.find("WARNING") != std::string::npos);
  CHECK(forced.exit_code != 0);
}

TEST_CASE("spp golden formula through the CLI") {
  RunResult r = run(
      "logz --builtin spp --vertex 1 --max-size 12 --golden "
      "\"(x+2x^2+3x^3+2x^4+5x^5+6x^6+5x^7+2x^8+3x^9+2x^10+x^11)/(1-x^6)^2\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("MATCH through degree 12") != std::string::npos);
}

TEST_CASE("resource limits exit with 3") {
  RunResult r = run("partition --builtin c3 --max-size 8 --max-ideals 5");
  CHECK(r.exit_code == 3);
  CHECK(r.out.find("not authoritative") != std::string::npos);

  // an undersized window override is also a resource problem
  RunResult w = run("partition --builtin c3 --max-size 6 --radius 2");
  CHECK(w.exit_code == 3);
}

TEST_CASE("mu dump flag") {
  RunResult r = run("partition --builtin c3 --max-size 2 --dump-mu");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("# mu table") != std::string::npos);
  CHECK(r.out.find("0 0 0 0") != std::string::npos);  // base row: vertex dx dy mu
}
