#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "einlab/cli.hpp"

using json = nlohmann::json;

namespace {

struct RunResult {
  int status = 0;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult r;
  r.status = einlab::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

json out_json(const RunResult& r) { return json::parse(r.out); }
json err_json(const RunResult& r) { return json::parse(r.err); }

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream f(path);
  f << content;
  return path;
}

const std::string kSphereChart3 =
    "n = 3\n"
    "g[1][1] = 4/(1+x1^2+x2^2+x3^2)^2\n"
    "g[2][2] = 4/(1+x1^2+x2^2+x3^2)^2\n"
    "g[3][3] = 4/(1+x1^2+x2^2+x3^2)^2\n"
    "g[1][2] = 0\n"
    "g[1][3] = 0\n"
    "g[2][3] = 0\n"
    "points = (0.1, -0.2, 0.3)\n"
    "points = (0, 0, 0)\n";

const std::string kFlatChart4 =
    "n = 4\n"
    "g[1][1] = 1\n"
    "g[2][2] = 1\n"
    "g[3][3] = 1\n"
    "g[4][4] = 1\n"
    "g[1][2] = 0\n"
    "g[1][3] = 0\n"
    "g[1][4] = 0\n"
    "g[2][3] = 0\n"
    "g[2][4] = 0\n"
    "g[3][4] = 0\n"
    "points = (0.1, 0.2, 0.3, 0.4)\n";

}  // namespace

TEST_CASE("spaces-list emits the report envelope") {
  const RunResult r = run_cli({"spaces-list"});
  REQUIRE(r.status == 0);
  CHECK(r.err.empty());
  const json j = out_json(r);
  CHECK(j["version"] == "0.1.0");
  CHECK(j["command"] == "spaces-list");
  CHECK(j["config"]["format"] == "json");
  CHECK(j["conventions"]["neg_infinity"] == "-inf");
  CHECK(j["tolerances"]["positivity"].get<double>() == doctest::Approx(1e-9));
  CHECK(j["result"]["catalog"].is_array());
  CHECK(j["result"]["catalog"].size() == 5);
}

TEST_CASE("compute profiles a catalog space given kind flags") {
  const RunResult r = run_cli({"compute", "--space", "sphere-hyperbolic", "--n", "9", "--d", "2"});
  REQUIRE(r.status == 0);
  const json j = out_json(r);
  CHECK(j["config"]["space"] == "sphere-hyperbolic(9, 2)");
  const json& p = j["result"]["profile"];
  CHECK(p["n"] == 9);
  CHECK(p["Ein"].get<double>() == doctest::Approx(4.8).epsilon(1e-12));
  CHECK(p["ein"].get<double>() == doctest::Approx(-12.0).epsilon(1e-12));
  CHECK(p["convention_zero"] == false);
  REQUIRE(p["per_point"].size() == 1);
  CHECK(p["per_point"][0]["point"] == 0);
  CHECK(p["per_point"][0]["einstein"] == false);

  REQUIRE(j["result"]["analysis"].size() == 1);
  const json& a = j["result"]["analysis"][0];
  CHECK(a["scal"].get<double>() == doctest::Approx(24.0).epsilon(1e-12));
  REQUIRE(a["ricci_spectrum"].size() == 9);
  CHECK(a["ricci_spectrum"][0].get<double>() == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(a["ricci_spectrum"][8].get<double>() == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(a["sigma1"].get<double>() == doctest::Approx(1.5).epsilon(1e-11).scale(1.0));
  CHECK(a["sigma2"].get<double>() == doctest::Approx(0.0).epsilon(1e-11).scale(1.0));
}

TEST_CASE("compute accepts compact expressions and reports the zero convention") {
  const RunResult r =
      run_cli({"compute", "--space", "product(space-form(2,1),space-form(3,-1))"});
  REQUIRE(r.status == 0);
  const json j = out_json(r);
  CHECK(j["config"]["space"] == "product(space-form(2, 1), space-form(3, -1))");
  const json& p = j["result"]["profile"];
  CHECK(p["convention_zero"] == true);
  CHECK(p["Ein"].get<double>() == 0.0);
  CHECK(p["ein"].get<double>() == 0.0);
}

TEST_CASE("compute on the round 4-sphere reports Q and the Einstein flag") {
  const RunResult r = run_cli({"compute", "--space", "sphere", "--n", "4"});
  REQUIRE(r.status == 0);
  const json j = out_json(r);
  const json& p = j["result"]["profile"];
  CHECK(p["Ein"].get<double>() == 4.0);
  CHECK(p["ein"] == "-inf");
  CHECK(p["per_point"][0]["einstein"] == true);
  const json& a = j["result"]["analysis"][0];
  CHECK(a["sigma1"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(a["sigma2"].get<double>() == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(a["q_curvature"].get<double>() == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("cylinder profile stays exact through the report layer") {
  const RunResult r = run_cli({"compute", "--space", "cylinder", "--n", "5"});
  REQUIRE(r.status == 0);
  const json j = out_json(r);
  CHECK(j["result"]["profile"]["Ein"].get<double>() == 4.0);
  CHECK(j["result"]["profile"]["ein"] == "-inf");
}

TEST_CASE("identical invocations emit identical bytes") {
  const std::vector<std::string> args = {"compute", "--space", "sphere-hyperbolic",
                                         "--n", "9", "--d", "2"};
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.status == 0);
  CHECK(a.status == b.status);
  CHECK(a.out == b.out);
}

TEST_CASE("global flags work before and after the subcommand") {
  const RunResult pre = run_cli({"--format", "table", "compute", "--space", "sphere", "--n", "4"});
  const RunResult post = run_cli({"compute", "--space", "sphere", "--n", "4", "--format", "table"});
  REQUIRE(pre.status == 0);
  REQUIRE(post.status == 0);
  CHECK(pre.out == post.out);
  CHECK(pre.out.find("space: space-form(4, 1)") != std::string::npos);
  CHECK(pre.out.find("Ein: 4\n") != std::string::npos);
  CHECK(pre.out.find("ein: -inf") != std::string::npos);
  CHECK(pre.out.find("Q: 3") != std::string::npos);
}

TEST_CASE("--output writes the report to a file") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "einlab_cli_out.json";
  std::error_code ec;
  fs::remove(path, ec);
  const RunResult r = run_cli({"compute", "--space", "sphere", "--n", "3",
                               "--output", path.string()});
  REQUIRE(r.status == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  REQUIRE(f.good());
  const json j = json::parse(f);
  CHECK(j["command"] == "compute");
  CHECK(j["result"]["profile"]["Ein"].get<double>() == 3.0);
  fs::remove(path, ec);
}

TEST_CASE("EINLAB_TOL is echoed in the tolerance block") {
  ::setenv("EINLAB_TOL", "1e-3", 1);
  const json loose = out_json(run_cli({"spaces-list"}));
  ::unsetenv("EINLAB_TOL");
  const json tight = out_json(run_cli({"spaces-list"}));
  CHECK(loose["tolerances"]["positivity"].get<double>() == doctest::Approx(1e-3));
  CHECK(tight["tolerances"]["positivity"].get<double>() == doctest::Approx(1e-9));
}

TEST_CASE("failures exit 1 with a json error object on stderr") {
  SUBCASE("unknown subcommand") {
    const RunResult r = run_cli({"bogus"});
    CHECK(r.status == 1);
    CHECK(r.out.empty());
    const json e = err_json(r);
    CHECK(e["error"]["message"].get<std::string>().find("argument error") != std::string::npos);
  }
  SUBCASE("missing space") {
    const RunResult r = run_cli({"compute"});
    CHECK(r.status == 1);
    const json e = err_json(r);
    CHECK(e["error"]["message"].get<std::string>().find("a space is required") !=
          std::string::npos);
  }
  SUBCASE("unknown space kind") {
    const RunResult r = run_cli({"compute", "--space", "nope", "--n", "3"});
    CHECK(r.status == 1);
    CHECK(err_json(r)["error"]["message"].get<std::string>().find("unknown space kind") !=
          std::string::npos);
  }
  SUBCASE("broken compact expression") {
    const RunResult r = run_cli({"compute", "--space", "sphere("});
    CHECK(r.status == 1);
    CHECK(err_json(r)["error"]["message"].get<std::string>().find(
              "bad space expression at position") != std::string::npos);
  }
  SUBCASE("space and chart together") {
    const RunResult r =
        run_cli({"compute", "--space", "sphere", "--n", "4", "--chart", "whatever"});
    CHECK(r.status == 1);
    CHECK(err_json(r)["error"]["message"].get<std::string>().find(
              "either --space or --chart") != std::string::npos);
  }
  SUBCASE("missing required option") {
    const RunResult r = run_cli({"thresholds"});
    CHECK(r.status == 1);
    CHECK(err_json(r)["error"]["message"].get<std::string>().find("argument error") !=
          std::string::npos);
  }
}

TEST_CASE("help exits zero and lists the subcommands") {
  const RunResult r = run_cli({"--help"});
  CHECK(r.status == 0);
  CHECK(r.out.find("thresholds") != std::string::npos);
  CHECK(r.out.find("weitzenbock") != std::string::npos);
  CHECK(r.out.find("validate-chart") != std::string::npos);
}

TEST_CASE("thresholds tables carry exact rationals") {
  SUBCASE("single degree") {
    const json j = out_json(run_cli({"thresholds", "--n", "6", "--p", "2"}));
    REQUIRE(j["result"]["table"].size() == 1);
    const json& row = j["result"]["table"][0];
    CHECK(row["p"] == 2);
    CHECK(row["k1"]["exact"] == "-10");
    CHECK(row["k1"]["value"].get<double>() == -10.0);
    CHECK(row["k2"]["exact"] == "10/3");
    CHECK(row["k2"]["value"].get<double>() == doctest::Approx(10.0 / 3.0).epsilon(1e-11));
  }
  SUBCASE("full table omits k2 at the top degree") {
    const json j = out_json(run_cli({"thresholds", "--n", "5"}));
    REQUIRE(j["result"]["table"].size() == 3);
    CHECK(j["result"]["table"][0]["p"] == 2);
    CHECK(j["result"]["table"][2]["p"] == 4);
    CHECK(j["result"]["table"][2]["k1"]["exact"] == "4");
    CHECK(!j["result"]["table"][2].contains("k2"));
  }
}

TEST_CASE("the vanishing report flags declared Betti contradictions") {
  const json j = out_json(run_cli({"thresholds", "--n", "9", "--Ein", "5", "--betti",
                                   "1,0,0,1,0,0,1,0,0,1"}));
  CHECK(j["result"]["forced_zero"] == json::array({3, 4, 5, 6}));
  REQUIRE(j["result"]["declared_betti"].size() == 10);
  CHECK(j["result"]["contradictions"] == json::array({3, 6}));

  const json mid = out_json(run_cli({"thresholds", "--n", "6", "--Ein", "3.4"}));
  CHECK(mid["result"]["forced_zero"] == json::array({2, 3, 4}));

  const RunResult bad = run_cli({"thresholds", "--n", "9", "--betti", "1,2,3"});
  CHECK(bad.status == 1);
  CHECK(err_json(bad)["error"]["message"].get<std::string>().find(
            "--betti needs exactly n+1 = 10") != std::string::npos);
}

TEST_CASE("theorem-c reports the case split with the alpha-scan oracle") {
  SUBCASE("negative integral with oracle agreement") {
    const json j = out_json(run_cli({"theorem-c", "--yamabe", "10", "--sigma2-integral", "-1",
                                     "--oracle", "1e-4"}));
    const json& res = j["result"];
    CHECK(res["case"] == "negative");
    CHECK(res["Ein_bound"].get<double>() == doctest::Approx(5.0 / 3.0).epsilon(1e-11));
    CHECK(res["strict"] == false);
    CHECK(res["ein_bound"].get<double>() == -10.0);
    CHECK(res["c"].get<double>() == doctest::Approx(0.24).epsilon(1e-12));
    REQUIRE(res.contains("oracle"));
    CHECK(res["oracle"]["agrees"] == true);
  }
  SUBCASE("positive integral skips the oracle") {
    const json j = out_json(run_cli({"theorem-c", "--yamabe", "5", "--sigma2-integral", "2",
                                     "--oracle", "1e-3"}));
    CHECK(j["result"]["case"] == "positive");
    CHECK(j["result"]["strict"] == true);
    CHECK(j["result"]["Ein_bound"].get<double>() == 2.0);
    CHECK(j["result"]["ein_bound"] == "-inf");
    CHECK(!j["result"].contains("oracle"));
    CHECK(j["result"].contains("oracle_note"));
  }
  SUBCASE("zero integral is the non-strict boundary") {
    const json j = out_json(run_cli({"theorem-c", "--yamabe", "7", "--sigma2-integral", "0"}));
    CHECK(j["result"]["case"] == "zero");
    CHECK(j["result"]["strict"] == false);
    CHECK(j["result"]["Ein_bound"].get<double>() == 2.0);
  }
  SUBCASE("nonpositive Yamabe constant is rejected") {
    const RunResult r = run_cli({"theorem-c", "--yamabe", "-1", "--sigma2-integral", "-1"});
    CHECK(r.status == 1);
    CHECK(!err_json(r)["error"]["message"].get<std::string>().empty());
  }
}

TEST_CASE("validate-chart compares finite differences with the catalog") {
  namespace fs = std::filesystem;
  const fs::path chart = write_temp("einlab_cli_sphere.chart", kSphereChart3);

  SUBCASE("matching space passes with exit 0") {
    const RunResult r =
        run_cli({"validate-chart", "--file", chart.string(), "--against", "sphere(3)"});
    REQUIRE(r.status == 0);
    const json j = out_json(r);
    CHECK(j["result"]["all_ok"] == true);
    REQUIRE(j["result"]["points"].size() == 2);
    CHECK(j["result"]["points"][0]["ok"] == true);
    CHECK(j["result"]["points"][1]["ok"] == true);
    CHECK(j["result"]["reference_spectrum"] == json::array({2.0, 2.0, 2.0}));
  }
  SUBCASE("wrong curvature reports deviations with exit 2") {
    const RunResult r = run_cli(
        {"validate-chart", "--file", chart.string(), "--against", "space-form(3, 1.1)"});
    CHECK(r.status == 2);
    const json j = out_json(r);
    CHECK(j["result"]["all_ok"] == false);
    CHECK(j["result"]["points"][0]["ok"] == false);
  }
  SUBCASE("dimension mismatch is an error, not a deviation") {
    const RunResult r =
        run_cli({"validate-chart", "--file", chart.string(), "--against", "sphere(4)"});
    CHECK(r.status == 1);
    CHECK(err_json(r)["error"]["message"].get<std::string>().find("dimension mismatch") !=
          std::string::npos);
  }
  SUBCASE("charts without sample points are rejected") {
    const std::string no_points = kSphereChart3.substr(0, kSphereChart3.find("points ="));
    const fs::path bare = write_temp("einlab_cli_nopoints.chart", no_points);
    const RunResult r =
        run_cli({"validate-chart", "--file", bare.string(), "--against", "sphere(3)"});
    CHECK(r.status == 1);
    CHECK(err_json(r)["error"]["message"].get<std::string>().find("no sample points") !=
          std::string::npos);
  }
}

TEST_CASE("weitzenbock reports spectra, thresholds, and the reduction") {
  const RunResult r = run_cli({"weitzenbock", "--space", "sphere", "--n", "5", "--p", "2"});
  REQUIRE(r.status == 0);
  const json j = out_json(r);
  const json& res = j["result"];
  CHECK(res["deg"] == 2);
  REQUIRE(res["general_spectrum"].size() == 10);
  for (const auto& v : res["general_spectrum"])
    CHECK(v.get<double>() == doctest::Approx(6.0).epsilon(1e-10));
  CHECK(res["min_eigenvalue"].get<double>() == doctest::Approx(6.0).epsilon(1e-10));
  CHECK(res["positive_definite"] == true);
  CHECK(res["weyl_residual"].get<double>() <= 1e-9);
  CHECK(res["k1"]["exact"] == "-4");
  CHECK(res["k2"]["exact"] == "2");
  REQUIRE(res.contains("cflat_spectrum"));
  CHECK(res["reduction_residual"].get<double>() <= 1e-9);
  CHECK(res["sum_lowest_ein_k1"].get<double>() == doctest::Approx(72.0).epsilon(1e-10));
}

TEST_CASE("weitzenbock reports when the conformally flat path does not apply") {
  const RunResult r =
      run_cli({"weitzenbock", "--space", "product(sphere(2),sphere(2))", "--p", "2"});
  REQUIRE(r.status == 0);
  const json j = out_json(r);
  CHECK(j["result"]["general_spectrum"].size() == 6);
  REQUIRE(j["result"].contains("cflat_error"));
  CHECK(j["result"]["cflat_error"].get<std::string>().find("Weyl part nonzero") !=
        std::string::npos);
  CHECK(!j["result"].contains("cflat_spectrum"));
}

TEST_CASE("chart Q-curvature needs the scalar Laplacian") {
  namespace fs = std::filesystem;
  const fs::path chart = write_temp("einlab_cli_flat4.chart", kFlatChart4);

  const json plain = out_json(run_cli({"compute", "--chart", chart.string()}));
  REQUIRE(plain["result"]["analysis"].size() == 1);
  CHECK(plain["result"]["analysis"][0].contains("q_curvature_note"));
  CHECK(!plain["result"]["analysis"][0].contains("q_curvature"));
  CHECK(plain["result"]["profile"]["per_point"][0]["coords"].size() == 4);
  CHECK(plain["result"]["profile"]["convention_zero"] == true);

  const json with = out_json(
      run_cli({"compute", "--chart", chart.string(), "--laplacian-scal", "0"}));
  REQUIRE(with["result"]["analysis"][0].contains("q_curvature"));
  CHECK(with["result"]["analysis"][0]["q_curvature"].get<double>() ==
        doctest::Approx(0.0).epsilon(1e-9).scale(1.0));
}
