#include <doctest.h>

#include "tiv/cli.hpp"
#include "tiv/tensor_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

using namespace tiv;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

std::string diagonal_json(const std::vector<std::string>& x, const std::vector<std::string>& y) {
  const auto n = std::to_string(x.size());
  std::string entries;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto idx = std::to_string(i + 1);
    entries += (i ? "," : "") + std::string("\"T[") + idx + "," + idx + ",1]\":\"" + x[i] + "\",\"T[" + idx + "," +
               idx + ",2]\":\"" + y[i] + "\"";
  }
  return "{\"m\":" + n + ",\"n\":" + n + ",\"entries\":{" + entries + "}}";
}

}  // namespace

TEST_CASE("pencil command") {
  auto r = run({"pencil", "--n", "1", "--symbolic"});
  CHECK(r.code == 0);
  CHECK(r.out == "f_{0,1} = T[1,1,2]\nf_{1,0} = T[1,1,1]\n");

  auto file = write_temp("tiv_identity2.json", diagonal_json({"1", "1"}, {"1", "1"}));
  r = run({"pencil", "--n", "2", "--input", file});
  CHECK(r.code == 0);
  CHECK(r.out == "f_{0,2} = 1\nf_{1,1} = 2\nf_{2,0} = 1\n");

  r = run({"pencil", "--n", "3", "--method", "both"});
  CHECK(r.code == 0);
  CHECK(r.out.find("methods agree") != std::string::npos);

  r = run({"pencil", "--n", "2", "--pretty"});
  CHECK(r.out.find("f_{1,1} = \nT[1,1,1]*T[2,2,2]\n- ") != std::string::npos);

  CHECK(run({"pencil", "--m", "2", "--n", "3"}).code == 2);
  CHECK(run({"pencil", "--n", "3", "--input", file}).code == 2);
  CHECK(run({"pencil", "--n", "2", "--method", "nope"}).code == 2);
}

TEST_CASE("blockdet command") {
  auto r = run({"blockdet", "--m", "1", "--n", "2", "--symbolic"});
  CHECK(r.code == 0);
  CHECK(r.out.find("T[1,1,1]*T[1,2,2] - T[1,2,1]*T[1,1,2]\n") != std::string::npos);
  CHECK(r.out.find("ring generated by one element") != std::string::npos);

  r = run({"blockdet", "--m", "2", "--n", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("trivial: K", 0) == 0);
  CHECK(r.out.find("invariant ring is K") != std::string::npos);

  r = run({"blockdet", "--m", "3", "--n", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("trivial: K", 0) == 0);

  auto file = write_temp("tiv_blockdet23.json", R"({"m":2,"n":3,"entries":{
    "T[1,1,1]":"1","T[2,2,1]":"1","T[1,2,2]":"1","T[2,3,2]":"1","T[1,3,1]":"1/2"}})");
  r = run({"blockdet", "--m", "2", "--n", "3", "--input", file});
  CHECK(r.code == 0);
  CHECK(r.out.find("value = ") != std::string::npos);

  CHECK(run({"blockdet", "--m", "3", "--n", "2"}).code == 2);
  CHECK(run({"blockdet", "--m", "2", "--n", "2"}).code == 2);
  CHECK(run({"blockdet", "--n", "2"}).code == 2);
}

TEST_CASE("blockdet value matches evaluation") {
  // X = [[1,0,0],[0,1,0]], Y = [[0,1,0],[0,0,1]]: the block matrix is a permutation of the identity
  auto file = write_temp("tiv_blockdet_perm.json", R"({"m":2,"n":3,"entries":{
    "T[1,1,1]":"1","T[2,2,1]":"1","T[1,2,2]":"1","T[2,3,2]":"1"}})");
  auto r = run({"blockdet", "--m", "2", "--n", "3", "--input", file});
  CHECK((r.out.find("value = 1\n") != std::string::npos || r.out.find("value = -1\n") != std::string::npos));
}

TEST_CASE("check command") {
  auto r = run({"check", "--n", "2", "--group", "slslsl", "--samples", "25"});
  CHECK(r.code == 0);
  CHECK(r.out == "U1^2 - 4*U0*U2: pass (25 samples)\n");

  r = run({"check", "--poly", "T[1,1,1]"});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
  CHECK(r.out.find("P = ") != std::string::npos);

  r = run({"check", "--m", "2", "--n", "3", "--group", "slslsl"});
  CHECK(r.code == 0);
  CHECK(r.out.find("block_det: pass") != std::string::npos);

  r = run({"check", "--n", "3", "--group", "slsl", "--samples", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("f_{2,1}: pass") != std::string::npos);

  r = run({"check", "--n", "2", "--poly", "f[1,1]^2 - 4*f[0,2]*f[2,0]"});
  CHECK(r.code == 0);

  // deterministic under a fixed seed
  CHECK(run({"check", "--poly", "T[1,1,1]", "--seed", "4"}).out == run({"check", "--poly", "T[1,1,1]", "--seed", "4"}).out);

  CHECK(run({"check", "--n", "2", "--group", "gl"}).code == 2);
  CHECK(run({"check", "--n", "2", "--poly", "T[1,1,"}).code == 2);
}

TEST_CASE("subduct command") {
  auto r = run({"subduct", "--n", "2", "--poly", "T[1,1,1]*T[2,2,1] - T[2,1,1]*T[1,2,1]"});
  CHECK(r.code == 0);
  CHECK(r.out == "U2, remainder 0\n");

  auto file = write_temp("tiv_disc.txt", "f_{1,1}^2 - 4*f_{0,2}*f_{2,0}\n");
  r = run({"subduct", "--n", "2", "--poly-file", file});
  CHECK(r.code == 0);
  CHECK(r.out == "U1^2 - 4*U0*U2, remainder 0\n");

  r = run({"subduct", "--n", "2", "--poly", "T[1,1,1]"});
  CHECK(r.code == 1);
  CHECK(r.out.find("remainder 0") == std::string::npos);

  CHECK(run({"subduct", "--n", "2"}).code == 2);
}

TEST_CASE("hyperdet command") {
  auto degenerate = write_temp("tiv_deg4.json", diagonal_json({"1", "1", "1", "1"}, {"1", "1", "2", "3"}));
  auto r = run({"hyperdet", "--n", "4", "--input", degenerate});
  CHECK(r.code == 0);
  CHECK(r.out.find("value = 0\n") != std::string::npos);
  CHECK(r.out.find("\ndegenerate") != std::string::npos);

  auto distinct = write_temp("tiv_dist4.json", diagonal_json({"1", "1", "1", "1"}, {"1", "2", "3", "4"}));
  r = run({"hyperdet", "--n", "4", "--input", distinct});
  CHECK(r.code == 0);
  CHECK(r.out.find("value = 0\n") == std::string::npos);
  CHECK(r.out.find("non-degenerate") != std::string::npos);

  auto generic = write_temp("tiv_gen2.json", R"({"m":2,"n":2,"entries":{
    "T[1,1,1]":"1","T[2,1,1]":"2","T[1,2,1]":"-1","T[2,2,1]":"3",
    "T[1,1,2]":"4","T[2,1,2]":"0","T[1,2,2]":"5","T[2,2,2]":"-2"}})");
  r = run({"hyperdet", "--n", "2", "--input", generic});
  CHECK(r.code == 0);
  CHECK(r.out.find("(agrees)") != std::string::npos);
  CHECK(r.out.find("value = 0\n") == std::string::npos);

  CHECK(run({"hyperdet", "--n", "5"}).code == 2);
}

TEST_CASE("lie-kernel command") {
  auto r = run({"lie-kernel", "--m", "2", "--n", "2", "--degree", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("dimension: 3\n", 0) == 0);

  r = run({"lie-kernel", "--m", "2", "--n", "5", "--degree", "3", "--quiet"});
  CHECK(r.out == "dimension: 0\n");

  CHECK(run({"lie-kernel", "--m", "2", "--n", "2", "--degree", "2", "--parts", "slx"}).code == 2);
  CHECK(run({"lie-kernel", "--m", "4", "--n", "4", "--degree", "6"}).code == 2);
}

TEST_CASE("usage errors and help") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("pencil") != std::string::npos);
}

TEST_CASE("installed binary exit codes") {
  auto file = write_temp("tiv_bin_disc.txt", "T[1,1,1]");
  CHECK(std::system((std::string(TIV_BINARY) + " pencil --n 1 > /dev/null").c_str()) == 0);
  int status = std::system((std::string(TIV_BINARY) + " subduct --n 2 --poly-file " + file + " > /dev/null").c_str());
  CHECK(WEXITSTATUS(status) == 1);
  status = std::system((std::string(TIV_BINARY) + " pencil --m 2 --n 3 2> /dev/null").c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
