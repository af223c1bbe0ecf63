#include "doctest.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "frobsplit/cli.hpp"
#include "frobsplit/frobenius.hpp"

using namespace frobsplit;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("bott text output") {
    Result r = invoke({"bott", "--n", "2", "--p", "1", "--k", "0"});
    CHECK(r.code == 0);
    CHECK(r.out == "(0,1,0)\n");
}

TEST_CASE("thomsen text output") {
    Result r = invoke({"thomsen", "--n", "2", "--m", "2", "--d", "0"});
    CHECK(r.code == 0);
    CHECK(r.out == "{0:1,-1:3}\n");
}

TEST_CASE("pushforward json output reproduces the pinned decomposition") {
    Result r = invoke({"pushforward", "--n", "5", "--m", "2", "--bundle",
                       R"({"n":5,"summands":[{"omega":3,"twist":3,"mult":1}]})", "--format",
                       "json"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["n"] == 5);
    CHECK(j["middle"].empty());
    CHECK(j["lines"] == nlohmann::json::array({{{"twist", -1}, {"mult", 84}},
                                               {{"twist", -2}, {"mult", 216}},
                                               {{"twist", -3}, {"mult", 20}}}));
    CHECK(j["checks"]["rank"] == true);
    CHECK(j["checks"]["chi"] == true);
    CHECK(j["checks"]["reconstruction"] == true);
}

TEST_CASE("cech agrees with bott through the CLI") {
    Result bott = invoke({"bott", "--n", "2", "--p", "1", "--k", "-2"});
    Result cech = invoke({"cech", "--n", "2", "--p", "1", "--k", "-2"});
    CHECK(bott.code == 0);
    CHECK(cech.code == 0);
    CHECK(bott.out == cech.out);
    CHECK(bott.out == "(0,0,3)\n");
}

TEST_CASE("table csv matches the library contract byte for byte") {
    const std::string bundle = R"({"n":2,"summands":[{"omega":1,"twist":0,"mult":1}]})";
    Result r = invoke({"table", "--bundle", bundle, "--window", "-2:2", "--format", "csv"});
    CHECK(r.code == 0);
    FormalBundle E(2);
    E.add(1, 0);
    CHECK(r.out == table_serial(E, Window{-2, 2}).to_csv());
}

TEST_CASE("identical invocations produce identical bytes") {
    std::vector<std::string> args = {"beilinson", "--bundle",
                                     R"({"n":2,"summands":[{"omega":0,"twist":-6,"mult":1}]})"};
    Result a = invoke(args);
    Result b = invoke(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("dagger reports violations without refusing") {
    Result r = invoke({"dagger", "--bundle",
                       R"({"n":3,"summands":[{"omega":2,"twist":0,"mult":1},{"omega":1,"twist":-2,"mult":1}]})",
                       "--format", "json"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["pass"] == false);
    CHECK(j["violations"] ==
          nlohmann::json::array({{{"from", {0, 2}}, {"to", {2, 1}}}}));
}

TEST_CASE("decompose refusal is a machine-readable exit 2") {
    Result r = invoke({"decompose", "--bundle",
                       R"({"n":3,"summands":[{"omega":2,"twist":0,"mult":1},{"omega":1,"twist":-2,"mult":1}]})"});
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    auto j = nlohmann::json::parse(r.err);
    CHECK(j["error"] == "dagger_violated");
    CHECK(j["data"]["violations"] ==
          nlohmann::json::array({{{"from", {0, 2}}, {"to", {2, 1}}}}));
}

TEST_CASE("usage errors exit 1") {
    CHECK(invoke({"bott", "--n", "2", "--p", "1"}).code == 1);  // missing --k
    CHECK(invoke({"nonsense"}).code == 1);
    CHECK(invoke({"table"}).code == 1);  // no bundle
    CHECK(invoke({"table", "--bundle", "{not json"}).code == 1);
    CHECK(invoke({"decompose", "--bundle",
                  R"({"n":2,"summands":[{"omega":0,"twist":0,"mult":1}]})", "--format",
                  "csv"})
              .code == 1);
    CHECK(invoke({"table", "--n", "3", "--bundle",
                  R"({"n":2,"summands":[{"omega":0,"twist":0,"mult":1}]})"})
              .code == 1);
}

TEST_CASE("decompose accepts a raw table with its own window") {
    FormalBundle E(2);
    E.add(0, 1);
    E.add(0, -2, 2);
    const std::string csv = table_serial(E, auto_window(E)).to_csv();
    const std::string path = "cli_test_table.csv";
    {
        std::ofstream f(path);
        f << csv;
    }
    Result r = invoke({"decompose", "--table", path, "--format", "json"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["lines"] == nlohmann::json::array({{{"twist", 1}, {"mult", 1}},
                                               {{"twist", -2}, {"mult", 2}}}));
    std::remove(path.c_str());

    // explicit windows are mandatory for raw tables; --window is rejected
    {
        std::ofstream f(path);
        f << csv;
    }
    Result bad = invoke({"decompose", "--table", path, "--window", "0:4"});
    CHECK(bad.code == 1);
    std::remove(path.c_str());
}

TEST_CASE("thomsen skips the enumeration cross-check over budget") {
    Result r = invoke({"thomsen", "--n", "3", "--m", "9", "--d", "0", "--budget", "100"});
    CHECK(r.code == 0);  // closed form alone; 9^4 tuples exceed the budget
    Result full = invoke({"thomsen", "--n", "3", "--m", "9", "--d", "0"});
    CHECK(full.code == 0);
    CHECK(r.out == full.out);
}

TEST_CASE("window refusals surface as exit 2 with the offending data") {
    FormalBundle E(2);
    E.add(1, 0);
    const std::string csv = table_serial(E, Window{0, 3}).to_csv();
    const std::string path = "cli_test_clipped.csv";
    {
        std::ofstream f(path);
        f << csv;
    }
    Result r = invoke({"decompose", "--table", path});
    CHECK(r.code == 2);
    auto j = nlohmann::json::parse(r.err);
    CHECK(j["error"] == "window_insufficient");
    std::remove(path.c_str());
}

TEST_CASE("mthreshold and klyachko text output") {
    Result m = invoke({"mthreshold", "--bundle",
                       R"({"n":5,"summands":[{"omega":3,"twist":3,"mult":1}]})"});
    CHECK(m.code == 0);
    CHECK(m.out == "4\n");

    Result k = invoke({"klyachko", "--n", "5", "--rank", "9"});
    CHECK(k.code == 0);
    CHECK(k.out == "{2,3}\n");
}

TEST_CASE("hset outputs") {
    Result r = invoke({"hset", "--bundle",
                       R"({"n":3,"summands":[{"omega":2,"twist":0,"mult":1},{"omega":1,"twist":-2,"mult":1}]})"});
    CHECK(r.code == 0);
    CHECK(r.out == "{(0,2),(2,1)}\n");
}

TEST_CASE("frobenius table equals the library output") {
    Result r = invoke({"frobenius", "--bundle",
                       R"({"n":1,"summands":[{"omega":0,"twist":0,"mult":1}]})", "--m", "2",
                       "--window", "0:2", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "twist,h0,h1\n"
          "0,1,0\n"
          "1,3,0\n"
          "2,5,0\n");
}

TEST_CASE("help exits 0") {
    CHECK(invoke({"--help"}).code == 0);
}

}  // TEST_SUITE
