#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "eland/cli.hpp"
#include "eland/io.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = eland::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("eland_cli_" + name);
  std::filesystem::remove_all(p);
  return p.string();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("profile writes csv and D' with its tolerance") {
    const auto dir = tmp_dir("profile");
    const auto r = call({"profile", "--eps", "0.1", "--out", dir});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["Dprime"]["value"].get<double>() == doctest::Approx(2.0820327689585856));
    CHECK(j["Dprime"].contains("tolerance"));
    CHECK(std::filesystem::exists(dir + "/profile.csv"));
    // keys come out sorted
    CHECK(r.out.find("\"Dprime\"") < r.out.find("\"command\""));
  }

  TEST_CASE("identical runs give identical csv") {
    const auto a = tmp_dir("det_a"), b = tmp_dir("det_b");
    REQUIRE(call({"radial", "--n", "2", "--R", "12", "--out", a}).code == 0);
    REQUIRE(call({"radial", "--n", "2", "--R", "12", "--out", b}).code == 0);
    CHECK(eland::read_text_file(a + "/radial.csv") == eland::read_text_file(b + "/radial.csv"));
  }

  TEST_CASE("usage errors exit with 2 and json on stderr") {
    auto r = call({"radial", "--R"});
    CHECK(r.code == 2);
    CHECK(nlohmann::json::parse(r.err)["error"]["kind"] == "usage");
    CHECK(call({"nonsense"}).code == 2);
    CHECK(call({"radial", "--potential", "{\"kind\": "}).code == 2);
    CHECK(call({"radial", "--R", "-3"}).code == 2);
    CHECK(call({"solve2d", "--domain", "{\"shape\": \"rectangle\", \"params\": {\"width\": 1, \"height\": 1}, \"h\": 0.3}"}).code == 2);
  }

  TEST_CASE("config file ingestion") {
    const auto dir = tmp_dir("config");
    std::filesystem::create_directories(dir);
    eland::write_text_file(dir + "/ok.json", R"({"command": "critical-radius", "n": 1, "R-lo": 1.0, "R-hi": 2.0})");
    eland::write_text_file(dir + "/bad.json", R"({"command": "radial", )");
    const auto ok = call({"--config", dir + "/ok.json"});
    CHECK(ok.code == 0);
    CHECK(nlohmann::json::parse(ok.out)["numeric"].get<double>() == doctest::Approx(1.5708).epsilon(5e-3));
    CHECK(call({"--config", dir + "/bad.json"}).code == 2);
  }

  TEST_CASE("invariant failures exit with 1") {
    // a single-criterion verify that is known to stay red
    const auto r = call({"verify", "--only", "8"});
    CHECK(r.code == 1);
    CHECK(nlohmann::json::parse(r.out)["all_pass"] == false);
  }

  TEST_CASE("help") { CHECK(call({"--help"}).code == 0); }
}
