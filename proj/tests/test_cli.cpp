#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "dser/io.hpp"

using namespace dser;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

struct ScratchDir {
  fs::path path = fs::temp_directory_path() / ("dser_cli_test_" + std::to_string(::getpid()));
  ScratchDir() { fs::create_directories(path); }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

fs::path scratch() {
  static ScratchDir dir;
  return dir.path;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the CLI with `args`, feeding `input` on standard input.
Run cli(const std::string& args, const std::string& input = "") {
  fs::path in = scratch() / "in.json", out = scratch() / "out.txt";
  std::ofstream(in) << input;
  std::string cmd = std::string(DSER_CLI) + " " + args + " < " + in.string() + " > " + out.string() + " 2>/dev/null";
  int raw = std::system(cmd.c_str());
  return Run{WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out)};
}

const char* kSpace11 = R"({"ring":"Q","gram":[[1]],"hyperbolic_rank":1})";

}  // namespace

TEST_CASE("verify exits 0 on a clean run and 1 on the corruption fixture") {
  Run ok = cli("verify --samples 2 --identities splitting,generation");
  CHECK(ok.status == 0);
  CHECK(ok.out.find("\"violations\":0") != std::string::npos);

  Run bad = cli("verify --samples 2 --identities membership --corrupt-fixture");
  CHECK(bad.status == 1);
  std::istringstream lines(bad.out);
  std::string line;
  bool witnessed = false;
  while (std::getline(lines, line)) {
    Json j = Json::parse(line);
    if (j.contains("verdict") && j["verdict"] == "violated") witnessed = j.contains("witness") && j["witness"].contains("row");
  }
  CHECK(witnessed);
}

TEST_CASE("verify output is byte-identical across runs and --out matches stdout") {
  Run a = cli("verify --samples 3 --seed 9 --identities commutators,telescope");
  Run b = cli("verify --samples 3 --seed 9 --identities commutators,telescope");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  fs::path file = scratch() / "reports.jsonl";
  Run c = cli("verify --samples 3 --seed 9 --identities commutators,telescope --out " + file.string());
  CHECK(c.status == 0);
  CHECK(slurp(file) == a.out);
  // Every line re-parses to a report that serializes identically.
  std::istringstream lines(a.out);
  std::string line;
  while (std::getline(lines, line)) {
    Json j = Json::parse(line);
    if (j.contains("summary")) continue;
    CHECK(to_json(report_from_json(j)).dump() == line);
  }
}

TEST_CASE("verify with a fixed gram file") {
  fs::path gram = scratch() / "gram.json";
  std::ofstream(gram) << R"([["2","1"],["1","3"]])";
  Run r = cli("verify --samples 2 --identities generation,bridges --gram " + gram.string() + " --hyperbolic-rank 2");
  CHECK(r.status == 0);
  CHECK(r.out.find("n=2,m=2") != std::string::npos);
  CHECK(cli("verify --gram " + gram.string()).status == 2);
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli("").status == 2);
  CHECK(cli("verify --identities nonsense").status == 2);
  CHECK(cli("verify --ring R --samples 1").status == 2);
  CHECK(cli("eval", "not json").status == 2);
  CHECK(cli("eval", R"({"word":[]})").status == 2);
  CHECK(cli("eval", std::string(R"({"space":)") + kSpace11 + R"(,"word":[{"kind":"CoordAlpha","i":3,"j":1,"y":"1"}]})").status == 2);
}

TEST_CASE("eval of the empty word is the identity") {
  Run r = cli("eval", std::string(R"({"space":)") + kSpace11 + R"(,"word":[]})");
  CHECK(r.status == 0);
  Json j = Json::parse(r.out);
  CHECK(j["matrix"] == Json::parse(R"([["1","0","0"],["0","1","0"],["0","0","1"]])"));
}

TEST_CASE("factor of a 2x2 hom is the 7-factor palindrome and round-trips through eval") {
  std::string space = R"({"ring":"Q","gram":[[1,0],[0,1]],"hyperbolic_rank":2})";
  Run r = cli("factor", R"({"space":)" + space + R"(,"hom":{"dir":"alpha","entries":[["1","2"],["3","4"]]}})");
  REQUIRE(r.status == 0);
  Json j = Json::parse(r.out);
  CHECK(j["factors"] == 7);
  CHECK(j["verified"] == true);
  const Json& w = j["word"];
  REQUIRE(w.size() == 7);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(w[k]["i"] == w[6 - k]["i"]);
    CHECK(w[k]["j"] == w[6 - k]["j"]);
    CHECK(w[k]["y"] == w[6 - k]["y"]);
  }
  SpacePtr s = space_from_json(j["space"]);
  CHECK(to_json(word_from_json(s, w)) == w);

  Run e = cli("eval", Json{{"space", j["space"]}, {"word", w}}.dump());
  REQUIRE(e.status == 0);
  Matrix m = matrix_from_json(s->ring(), Json::parse(e.out)["matrix"]);
  CHECK(m == gen_full(s, HomMatrix{Direction::ToP, matrix_from_json(s->ring(), Json::parse(R"([[1,2],[3,4]])"))}).matrix());
}

TEST_CASE("dilate emits re-parseable witnesses") {
  std::string space = R"({"ring":"Q[s,x][1/s]","gram":[[1]],"hyperbolic_rank":2})";
  std::string input = R"({"a":"x","r":1,"kind_x":"alpha","i":1,"j":1,"kind_y":"alpha","k":2,"l":1,"x":"1/2","d":3})";
  Run r = cli("dilate", R"({"space":)" + space + R"(,"input":)" + input + "}");
  REQUIRE(r.status == 0);
  Json j = Json::parse(r.out);
  CHECK(j["case"] == "1a");
  CHECK(j["verified"] == true);
  CHECK(j["min_s_order"].get<int>() >= 1);
  SpacePtr s = space_from_json(Json::parse(space));
  CHECK(to_json(witness_from_json(s, j)) == j);

  // Budget below d_min is a usage error.
  std::string low = R"({"a":"x","r":1,"kind_x":"alpha","i":1,"j":1,"kind_y":"alpha","k":2,"l":1,"x":"1","d":2})";
  CHECK(cli("dilate", R"({"space":)" + space + R"(,"input":)" + low + "}").status == 2);

  std::string loc = R"({"ring":"Q[s,x,X][1/s]","gram":[[1]],"hyperbolic_rank":2})";
  Run t = cli("dilate", R"({"space":)" + loc + R"(,"theta":[{"kind":"CoordAlpha","i":1,"j":1,"y":"x*X/s"}]})");
  REQUIRE(t.status == 0);
  Json tj = Json::parse(t.out);
  CHECK(tj["d"] == 2);
  CHECK(tj["base_ring"] == "Q[s,x,X]");
  CHECK(tj["verified"] == true);
}

TEST_CASE("telescope splits theta along shares") {
  std::string space = R"({"ring":"Q[x,X]","gram":[[1]],"hyperbolic_rank":1})";
  std::string theta = R"([{"kind":"CoordAlpha","i":1,"j":1,"y":"X"},{"kind":"CoordBetaStar","i":1,"j":1,"y":"x*X"}])";
  Run r = cli("telescope", R"({"space":)" + space + R"(,"theta":)" + theta + R"(,"shares":[{"d":"1/2","b":"1"},{"d":"1","b":"1/2"}]})");
  REQUIRE(r.status == 0);
  Json j = Json::parse(r.out);
  CHECK(j["factors"].size() == 2);
  CHECK(j["verified"] == true);
  Run bad = cli("telescope", R"({"space":)" + space + R"(,"theta":)" + theta + R"(,"shares":[{"d":"1","b":"2"}]})");
  CHECK(bad.status == 2);
}
