#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cyclespan/cli.hpp"
#include "cyclespan/experiment.hpp"

namespace fs = std::filesystem;
using namespace cyclespan;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("cyclespan_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path / name) << text; }
  std::string read(const std::string& name) const {
    std::ifstream in(path / name);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }
};

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == kExitUsage);
  const Run bad = run({"decompose", "--no-such-flag"});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.rfind("error: usage: ", 0) == 0);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("gen then decompose") {
  TempDir dir;
  const Run gen = run({"gen", "--generator", "gnp", "--n", "31", "--p", "0.4", "--seed", "3", "--out", dir.file("g.txt")});
  REQUIRE(gen.code == kExitOk);
  const Run dec = run({"decompose", dir.file("g.txt"), "--out", dir.file("d.txt")});
  CHECK(dec.code == kExitOk);
  CHECK(dec.out.find("success: true") != std::string::npos);
  CHECK(dir.read("d.txt").rfind("# cyclespan-decomposition-v1\n", 0) == 0);
}

TEST_CASE("obstructed graphs exit 1") {
  TempDir dir;
  REQUIRE(run({"gen", "--generator", "complete", "--n", "4", "--out", dir.file("k4.txt")}).code == kExitOk);
  const Run dec = run({"decompose", dir.file("k4.txt")});
  CHECK(dec.code == kExitFalse);
  CHECK(dec.out.find("parity-obstruction") != std::string::npos);
  const Run span = run({"span-verify", dir.file("k4.txt")});
  CHECK(span.code == kExitFalse);
  CHECK(span.out == "spans=false rank=2 target_rank=3 cycles=3\n");
}

TEST_CASE("span-verify and express on K5") {
  TempDir dir;
  REQUIRE(run({"gen", "--generator", "complete", "--n", "5", "--out", dir.file("k5.txt")}).code == kExitOk);
  const Run span = run({"span-verify", dir.file("k5.txt")});
  CHECK(span.code == kExitOk);
  CHECK(span.out == "spans=true rank=6 target_rank=6 cycles=12\n");
  REQUIRE(run({"decompose", dir.file("k5.txt"), "--out", dir.file("basis.txt")}).code == kExitOk);
  dir.write("tri.txt", "0 1\n1 2\n0 2\n");
  const Run ex = run({"express", dir.file("k5.txt"), "--basis", dir.file("basis.txt"), "--target", dir.file("tri.txt")});
  CHECK(ex.code == kExitOk);
  CHECK(ex.out.rfind("combination:", 0) == 0);
  dir.write("edge.txt", "0 1\n");
  const Run no = run({"express", dir.file("k5.txt"), "--basis", dir.file("basis.txt"), "--target", dir.file("edge.txt")});
  CHECK(no.code == kExitFalse);
  CHECK(no.out.find("not in cycle space") != std::string::npos);
}

TEST_CASE("odd-ham") {
  TempDir dir;
  REQUIRE(run({"gen", "--generator", "complete", "--n", "5", "--out", dir.file("k5.txt")}).code == kExitOk);
  dir.write("tri.txt", "0 1\n1 2\n0 2\n");
  const Run ok = run({"odd-ham", dir.file("k5.txt"), "--r", dir.file("tri.txt")});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("dot: 1") != std::string::npos);
  dir.write("star.txt", "0 1\n0 2\n0 3\n0 4\n");
  const Run cut = run({"odd-ham", dir.file("k5.txt"), "--r", dir.file("star.txt")});
  CHECK(cut.code == kExitFalse);
  CHECK(cut.out.find("precondition: r is a cut") != std::string::npos);
}

TEST_CASE("io and parse errors") {
  TempDir dir;
  const Run missing = run({"decompose", dir.file("nope.txt")});
  CHECK(missing.code == kExitUsage);
  CHECK(missing.err.rfind("error: io: ", 0) == 0);
  dir.write("bad.txt", "3 1\n0 7\n");
  const Run bad = run({"decompose", dir.file("bad.txt")});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.rfind("error: parse: ", 0) == 0);
  CHECK(count_lines(bad.err) == 1);
}

TEST_CASE("config precedence") {
  TempDir dir;
  REQUIRE(run({"gen", "--generator", "complete", "--n", "9", "--out", dir.file("k9.txt")}).code == kExitOk);
  dir.write("a.ini", "[decompose]\nvariant = sparse\n");
  const Run from_file = run({"--config", dir.file("a.ini"), "decompose", dir.file("k9.txt")});
  CHECK(from_file.code == kExitOk);
  CHECK(from_file.out.find("variant: sparse") != std::string::npos);
  const Run flag = run({"--config", dir.file("a.ini"), "decompose", dir.file("k9.txt"), "--variant", "dense"});
  CHECK(flag.out.find("variant: dense") != std::string::npos);

  // Subcommand sections beat stage sections, which beat unsectioned keys.
  dir.write("b.ini", "variant = sparse\n[pipeline]\nvariant = dense\n");
  CHECK(run({"--config", dir.file("b.ini"), "decompose", dir.file("k9.txt")}).out.find("variant: dense") !=
        std::string::npos);
  dir.write("c.ini", "[pipeline]\nvariant = dense\n[decompose]\nvariant = sparse\n");
  CHECK(run({"--config", dir.file("c.ini"), "decompose", dir.file("k9.txt")}).out.find("variant: sparse") !=
        std::string::npos);
}

TEST_CASE("config errors") {
  TempDir dir;
  REQUIRE(run({"gen", "--generator", "complete", "--n", "5", "--out", dir.file("k5.txt")}).code == kExitOk);
  dir.write("bad.ini", "[decompose]\n\nbogus = 1\n");
  const Run r = run({"--config", dir.file("bad.ini"), "decompose", dir.file("k5.txt")});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("error: config: ") == 0);
  CHECK(r.err.find(":3: unknown key 'bogus'") != std::string::npos);
  dir.write("sec.ini", "[nowhere]\nseed = 1\n");
  CHECK(run({"--config", dir.file("sec.ini"), "decompose", dir.file("k5.txt")}).code == kExitUsage);
  CHECK(run({"--config", dir.file("missing.ini"), "decompose", dir.file("k5.txt")}).code == kExitUsage);
}

TEST_CASE("experiment grid") {
  TempDir dir;
  dir.write("spec.ini", "n = 11,13\np-rule = 0.6\nseeds = 3\n");
  const Run r = run({"experiment", dir.file("spec.ini"), "--out", dir.file("a.csv"), "--workers", "3"});
  REQUIRE(r.code == kExitOk);
  const std::string csv = dir.read("a.csv");
  CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(count_lines(csv) == 1 + 2 * 3);
  REQUIRE(run({"experiment", dir.file("spec.ini"), "--out", dir.file("b.csv"), "--workers", "1"}).code == kExitOk);
  CHECK(dir.read("b.csv") == csv);
  const Run even = run({"experiment", "--n", "12", "--p-rule", "0.5", "--seeds", "1", "--out", dir.file("c.csv")});
  CHECK(even.code == kExitUsage);
  CHECK(even.err.rfind("error: input: ", 0) == 0);
}

TEST_CASE("experiment svg") {
  TempDir dir;
  const Run r = run({"experiment", "--n", "11", "--p-rule", "0.6", "--seeds", "2", "--out", dir.file("a.csv"),
                     "--emit-svg", dir.file("a.svg")});
  REQUIRE(r.code == kExitOk);
  CHECK(dir.read("a.svg").find("<svg") != std::string::npos);
}

}  // TEST_SUITE
