#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "padesr/cli.hpp"
#include "padesr/report.hpp"

using namespace padesr;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::map<std::string, std::string> kv(const std::string& text) {
  std::istringstream in(text);
  return parse_report(in);
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("padesr_test_" + name);
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("diff command") {
  CHECK(first_line(cli({"diff", "--expr", "sin x", "--notation", "prefix", "--wrt", "x"}).out) == "cos x");
  CHECK(first_line(cli({"diff", "--expr", "I", "--wrt", "t"}).out) == "0");
  CHECK(first_line(cli({"diff", "--expr", "x y *", "--notation", "postfix", "--wrt", "y"}).out) == "x");
  const Run r = cli({"diff", "--expr", "^ x 2", "--wrt", "x", "--order", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("infix=") != std::string::npos);

  const Run bad = cli({"diff", "--expr", "I_x", "--wrt", "x", "--order", "2"});
  CHECK(bad.code == 2);
  CHECK_FALSE(bad.err.empty());
  CHECK(cli({"diff", "--expr", "x", "--wrt", "x", "--order", "3"}).code == 2);
  CHECK(cli({"diff", "--expr", "x", "--wrt", "z"}).code == 2);
}

TEST_CASE("evaluate command") {
  const Run one = cli({"evaluate", "--case", "case1", "--notation", "prefix", "--expr", "1"});
  CHECK(one.code == 0);
  auto m = kv(one.out);
  CHECK(m["mse_total"] == "inf");
  CHECK(m["gate_rejected"] == "true");
  CHECK(m["mse_interior"] == "0");

  m = kv(cli({"evaluate", "--case", "case1", "--notation", "prefix", "--expr", "I"}).out);
  CHECK(m["mse_initial"] == "0");
  CHECK(m.count("mse_boundary.periodic_T_x") == 1);

  m = kv(cli({"evaluate", "--case", "case1", "--notation", "prefix", "--expr", "1", "--threshold", "0"}).out);
  CHECK(m["mse_total"] != "inf");
  CHECK(m["gate_rejected"] == "false");

  const Run parse = cli({"evaluate", "--case", "case1", "--notation", "prefix", "--expr", "+ x foo"});
  CHECK(parse.code == 2);
  CHECK(parse.err.find("token 2") != std::string::npos);
  CHECK(cli({"evaluate", "--case", "case1", "--notation", "prefix", "--expr", "+ x"}).code == 2);
  CHECK(cli({"evaluate", "--case", "case1", "--notation", "prefix", "--expr", "^ y_0 2"}).code == 2);
  m = kv(cli({"evaluate", "--case", "case1", "--notation", "prefix", "--expr", "^ y_0 2", "--bind", "y_0=y_min",
              "--threshold", "0"})
             .out);
  CHECK(m["expr"] == "^ y_min 2");
  CHECK(cli({"evaluate", "--case", "case9", "--notation", "prefix", "--expr", "x"}).code == 2);
  CHECK(cli({"evaluate", "--case", "case1", "--notation", "prefix", "--expr", "* C x"}).code == 2);
  CHECK(cli({"evaluate", "--case", "case1", "--notation", "prefix", "--expr", "* C x", "--consts", "2"}).code == 0);
}

TEST_CASE("usage errors") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"search", "--case", "case1"}).code == 2);
  CHECK(cli({"search", "--case", "case1", "--algo", "gp", "--depth", "2", "--notation", "prefix", "--tokens", "vars",
             "--time", "1", "--seed-expr", "x"})
            .code == 2);
  CHECK(cli({"search", "--case", "case1", "--algo", "rs", "--depth", "2", "--notation", "prefix", "--tokens", "vars",
             "--threads", "0"})
            .code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("search report re-evaluates to the reported score") {
  const auto path = temp_file("report.txt");
  const Run r = cli({"search", "--case", "case2", "--algo", "gp", "--depth", "3", "--notation", "postfix", "--tokens",
                     "vars+const+opt", "--threads", "1", "--time", "60", "--max-evals", "150", "--seed", "3", "--out",
                     path.string()});
  REQUIRE(r.code == 0);
  std::ifstream f(path);
  auto m = parse_report(f);
  CHECK(m["config.algo"] == "gp");
  CHECK(m["result.evaluations"] == "150");
  REQUIRE(m["result.empty"] == "false");
  const Run e = cli({"evaluate", "--case", "case2", "--notation", "postfix", "--expr", m["result.expr"], "--consts",
                     m["result.consts"]});
  CHECK(kv(e.out)["mse_total"] == m["result.mse_total"]);

  const Run again = cli({"search", "--case", "case2", "--algo", "gp", "--depth", "3", "--notation", "postfix",
                         "--tokens", "vars+const+opt", "--threads", "1", "--time", "60", "--max-evals", "150",
                         "--seed", "3"});
  CHECK(kv(again.out)["result.expr"] == m["result.expr"]);
  std::filesystem::remove(path);
}

TEST_CASE("depth 0 search reports a leaf") {
  const Run r = cli({"search", "--case", "case1", "--algo", "rs", "--depth", "0", "--notation", "prefix", "--tokens",
                     "vars", "--threshold", "0", "--time", "30", "--max-evals", "40", "--seed", "1"});
  REQUIRE(r.code == 0);
  auto m = kv(r.out);
  CHECK(m["result.expr"].find(' ') == std::string::npos);
  CHECK(m["result.depth"] == "0");
}

TEST_CASE("sweep command") {
  const Run r = cli({"sweep", "--case", "case1", "--time-per-config", "0.05", "--depths", "1..2", "--algos", "rs",
                     "--notations", "postfix", "--token-sets", "vars"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "#,Algorithm,Depth,Notation,MSE,Non-Optimizable Tokens,Optimizable Token");
  CHECK(rows[1].rfind("1,Random Search,", 0) == 0);
  CHECK(rows[2].rfind("2,Random Search,", 0) == 0);
  CHECK(rows[1].find(",postfix,") != std::string::npos);
  CHECK(rows[1].substr(rows[1].size() - 12) == ",False,False");

  const auto path = temp_file("sweep.csv");
  const std::vector<std::string> args{"sweep",     "--case",  "case2", "--time-per-config", "30",   "--max-evals",
                                      "20",        "--depths", "2..3", "--algos",           "gp,sa", "--token-sets",
                                      "vars+const", "--out",   path.string()};
  const Run a = cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out.find("rows=8") != std::string::npos);
  std::stringstream first;
  first << std::ifstream(path).rdbuf();
  REQUIRE(cli(args).code == 0);
  std::stringstream second;
  second << std::ifstream(path).rdbuf();
  CHECK(first.str() == second.str());
  CHECK(lines(first.str()).size() == 9);
  std::filesystem::remove(path);

  CHECK(cli({"sweep", "--case", "case1", "--depths", "3..1"}).code == 2);
  CHECK(cli({"sweep", "--case", "case1", "--algos", "bfs"}).code == 2);
}

TEST_CASE("config file supplies defaults and flags override it") {
  const auto path = temp_file("config.txt");
  {
    std::ofstream f(path);
    f << "# defaults\ncase=case2\nthreshold=0\nmesh=4,4,4\n";
  }
  auto m = kv(cli({"evaluate", "--config", path.string(), "--notation", "prefix", "--expr", "1"}).out);
  CHECK(m["case"] == "case2");
  CHECK(m["mesh"] == "4,4,4");
  CHECK(m["gate_rejected"] == "false");
  m = kv(cli({"evaluate", "--config", path.string(), "--mesh", "5", "--notation", "prefix", "--expr", "1"}).out);
  CHECK(m["mesh"] == "5,5,5");
  std::filesystem::remove(path);
  CHECK(cli({"evaluate", "--config", "/nonexistent/padesr.cfg", "--notation", "prefix", "--expr", "1"}).code == 2);
}
