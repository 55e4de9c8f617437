#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "../tools/cli.hpp"
#include "deb/json_io.hpp"

using doctest::Approx;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = deb::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

deb::Json parse(const Run& r) {
  REQUIRE_MESSAGE(r.code == 0, r.err);
  return deb::Json::parse(r.out);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("bound strip collapses for n=3, N=5, tau=2") {
    const auto j = parse(run({"bound", "--n", "3", "--N", "5", "--tau", "2", "--potential", "riesz:s=2", "--side", "strip"}));
    CHECK(j["lower"]["best"].get<double>() == Approx(8.5).epsilon(1e-12));
    CHECK(j["upper"]["best"].get<double>() == Approx(8.5).epsilon(1e-12));
    for (const auto& r : j["lower"]["reports"]) CHECK(r["accepted"].get<bool>());
    for (const auto& r : j["lower"]["reports"]) REQUIRE(r.contains("certificate"));
  }

  TEST_CASE("bound strip for the octahedron") {
    const auto j = parse(run({"bound", "--n", "3", "--N", "6", "--tau", "3", "--potential", "riesz:s=2", "--u", "0"}));
    CHECK(j["lower"]["best"].get<double>() == Approx(13.5).epsilon(1e-10));
    CHECK(j["upper"]["best"].get<double>() == Approx(13.5).epsilon(1e-10));
  }

  TEST_CASE("exit codes") {
    const Run range = run({"bound", "--n", "3", "--N", "99", "--tau", "2"});
    CHECK(range.code == 2);
    CHECK(range.err.find("[4, 6]") != std::string::npos);
    CHECK(run({"bound", "--n", "3", "--N", "5", "--tau", "2", "--potential", "bogus"}).code == 1);
    CHECK(run({"bound", "--n", "3", "--tau", "2"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"bound", "--n", "3", "--N", "5", "--tau", "2", "--method", "nope"}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"sweep", "--n", "3", "--tau", "2", "--format", "xml"}).code == 1);
  }

  TEST_CASE("single method and side selection") {
    const auto j = parse(run({"bound", "--n", "3", "--N", "5", "--tau", "2", "--potential", "riesz:s=2", "--side",
                              "lower", "--method", "ulb"}));
    REQUIRE(j["lower"]["reports"].size() == 1);
    CHECK(j["lower"]["reports"][0]["value"].get<double>() == Approx(8.375).epsilon(1e-12));
    CHECK_FALSE(j.contains("upper"));
  }

  TEST_CASE("verify flag and tolerance override") {
    CHECK(run({"bound", "--n", "4", "--N", "7", "--tau", "2", "--potential", "gauss:c=1", "--verify"}).code == 0);
    CHECK(run({"bound", "--n", "3", "--N", "10", "--tau", "4", "--potential", "log", "--verify"}).code == 0);
  }

  TEST_CASE("quadrature output") {
    const auto j = parse(run({"quadrature", "--n", "3", "--tau", "2", "--N", "5"}));
    REQUIRE(j["nodes"].size() == 2);
    CHECK(j["nodes"][0].get<double>() == Approx(-1.0).epsilon(1e-12));
    CHECK(j["nodes"][1].get<double>() == Approx(-1.0 / 9).epsilon(1e-12));
    CHECK(j["weights"][0].get<double>() == Approx(0.125).epsilon(1e-12));
    CHECK(j["weights"][1].get<double>() == Approx(0.675).epsilon(1e-12));
  }

  TEST_CASE("test function output") {
    const auto j = parse(run({"testfn", "--n", "3", "--tau", "1", "--N", "4", "--jmax", "3"}));
    CHECK(std::abs(j["Q"]["2"].get<double>()) <= 1e-12);
    CHECK(j["Q"]["3"].get<double>() == Approx(5.0 / 9).epsilon(1e-12));
  }

  TEST_CASE("code output") {
    const auto j = parse(run({"code", "--builder", "kerdock", "--l", "2", "--potential", "riesz:s=2"}));
    CHECK(j["strength"].get<int>() == 3);
    CHECK(j["distribution"]["N"].get<int>() == 256);
    const double closed = 256.0 * (30 * 0.5 + 112 / 1.5 + 112 / 2.5 + 0.25);
    CHECK(j["energy"].get<double>() == Approx(closed).epsilon(1e-12));

    const auto m = parse(run({"code", "--builder", "mimura", "--a", "3", "--potential", "riesz:s=2"}));
    CHECK(m["energy"].get<double>() == Approx(13.0).epsilon(1e-12));
    CHECK(m["strength"].get<int>() == 2);

    const std::string path = "deb_cli_points_test.csv";
    {
      std::ofstream f(path);
      f << "1,0,0\n-1,0,0\n0,1,0\n0,-1,0\n0,0,1\n0,0,-1\n";
    }
    const auto p = parse(run({"code", "--builder", "points", "--file", path, "--potential", "riesz:s=2"}));
    std::remove(path.c_str());
    CHECK(p["energy"].get<double>() == Approx(13.5).epsilon(1e-12));
    CHECK(p["strength"].get<int>() == 3);
    CHECK(run({"code", "--builder", "points", "--file", "/nonexistent/file.csv"}).code == 1);
  }

  TEST_CASE("identical inputs give byte-identical output") {
    const std::vector<std::string> args{"bound", "--n", "5", "--N", "12", "--tau", "3", "--potential", "gauss:c=2", "--u",
                                        "0.2"};
    const Run a = run(args);
    const Run b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const Run s1 = run({"sweep", "--n", "3:5", "--tau", "2,3", "--format", "json", "--threads", "1"});
    const Run s2 = run({"sweep", "--n", "3:5", "--tau", "2,3", "--format", "json", "--threads", "7"});
    CHECK(s1.code == 0);
    CHECK(s1.out == s2.out);
  }

  TEST_CASE("sweep CSV rows follow the grid order") {
    const Run r = run({"sweep", "--n", "3:4", "--tau", "2", "--potential", "riesz:s=2", "--format", "csv", "--threads", "4"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,N,tau,s,lower_best,upper_best,lower_method,upper_method,lower_margin,upper_margin,status");
    std::vector<std::string> keys;
    while (std::getline(in, line)) keys.push_back(line.substr(0, line.find(',', line.find(',') + 1)));
    CHECK(keys == std::vector<std::string>{"3,4", "3,5", "3,6", "4,5", "4,6", "4,7", "4,8"});
    CHECK(r.out.find("3,5,2,-0.11111111111111112,8.5") != std::string::npos);
    CHECK(r.out.find("\"ok\"") != std::string::npos);
  }

  TEST_CASE("indent zero gives one line") {
    const Run r = run({"--indent", "0", "quadrature", "--n", "3", "--tau", "2", "--N", "5"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find('\n') == r.out.size() - 1);
  }
}
