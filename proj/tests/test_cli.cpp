#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "pvi/cli.hpp"

using namespace pvi;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

Json json_of(const Run& r) { return Json::parse(r.out); }

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == exit_code::usage);
    CHECK(run({"count"}).code == exit_code::usage);
    CHECK(run({"count", "--N", "0"}).code == exit_code::usage);
    CHECK(run({"frobnicate"}).code == exit_code::usage);
    CHECK(run({"count", "--N", "2", "--space", "torus"}).code == exit_code::usage);
    CHECK(run({"params", "--kappa", "1/3,2/7"}).code == exit_code::usage);
    CHECK(run({"--output", "xml", "zeta"}).code == exit_code::usage);
}

TEST_CASE("count and count-kappa") {
    Run r = run({"count", "--N", "2"});
    REQUIRE(r.code == exit_code::ok);
    CHECK(json_of(r).at("count") == "22");
    CHECK(json_of(r).at("lefschetz") == "24");
    r = run({"count", "--N", "3", "--space", "projective"});
    CHECK(json_of(r).at("count") == "73");
    r = run({"count-kappa", "--N", "1"});
    CHECK(json_of(r).at("count") == "22");
    CHECK(json_of(r).at("matches_period_2n") == true);
}

TEST_CASE("lattice subcommand") {
    Run r = run({"lattice", "--charpoly", "--spectral", "--trace", "30"});
    REQUIRE(r.code == exit_code::ok);
    const Json j = json_of(r);
    CHECK(j.at("charpoly").at("factored") == "x(x + 1)^4(x^2 - 4x - 1)");
    CHECK(j.at("trace").at("value") == "6440026026380244502");
    CHECK(j.at("spectral_radius").at("error").get<double>() < 1e-12);
    r = run({"lattice", "--eigen"});
    CHECK(json_of(r).at("eigenvectors").at("ok") == true);
}

TEST_CASE("params and disc") {
    Run r = run({"params", "--kappa", "1/3,2/7,1/5,1/11"});
    REQUIRE(r.code == exit_code::ok);
    Json j = json_of(r);
    CHECK(j.at("wall").at("on_wall") == false);
    CHECK(j.at("exact") == Json::array({"1/3", "2/7", "1/5", "1/11"}));
    r = run({"params", "--kappa", "[\"1/2\", \"1/2\", 0, \"1/3\"]"});
    REQUIRE(r.code == exit_code::ok);
    CHECK(json_of(r).at("wall").at("on_wall") == true);
    r = run({"disc", "--b", "2,3,5,7"});
    REQUIRE(r.code == exit_code::ok);
    CHECK(json_of(r).at("min_factor").get<double>() == doctest::Approx(1.0 / 15.0));
}

TEST_CASE("lines subcommand") {
    const Run r = run({"lines", "--kappa", "3/17,-5/23,7/29,2/31"});
    REQUIRE(r.code == exit_code::ok);
    const Json j = json_of(r);
    CHECK(j.at("lines").size() == 27);
}

TEST_CASE("orbit subcommand") {
    const Run r = run({"orbit", "--x", "0.3+0.1i,-0.7+0.2i,1.1-0.4i", "--theta", "0.5,-1.2+0.3i,0.8,2-0.5i", "--steps",
                       "2"});
    REQUIRE(r.code == exit_code::ok);
    CHECK(json_of(r).at("steps").size() == 3);
}

TEST_CASE("zeta and verify, all formats") {
    Run r = run({"zeta", "--order", "3"});
    REQUIRE(r.code == exit_code::ok);
    CHECK(json_of(r).at("coefficients") == Json::array({"1", "22", "405", "7288"}));
    r = run({"--output", "csv", "zeta", "--order", "2"});
    REQUIRE(r.code == exit_code::ok);
    // columns come out in key order
    CHECK(r.out.find("coefficient,n\n") == 0);
    CHECK(r.out.find("405,2") != std::string::npos);
    r = run({"--output", "pretty", "verify", "--nmax", "5"});
    CHECK(r.code == exit_code::ok);
    CHECK(r.out.find("ok: true") != std::string::npos);
}

TEST_CASE("solve: exit codes") {
    Run r = run({"solve", "--kappa", "3/17,-5/23,7/29,2/31", "--N", "2", "--seeds", "20000"});
    CHECK(r.code == exit_code::ok);
    const Json j = json_of(r);
    CHECK(j.at("found") == 22);
    CHECK(j.at("status") == "complete");
    // on a wall: refused
    r = run({"solve", "--kappa", "1/2,1/3,0,1/5", "--N", "2", "--seeds", "100"});
    CHECK(r.code == exit_code::failure);
    CHECK(r.err.find("nongeneric parameters: the surface is singular") != std::string::npos);
    CHECK(run({"solve", "--N", "2"}).code == exit_code::usage);
    CHECK(run({"solve", "--kappa", "3/17,-5/23,7/29,2/31", "--N", "2", "--dedup", "0"}).code == exit_code::usage);
}

TEST_CASE("config files") {
    const std::string path = "pvi_test_config.txt";
    {
        std::ofstream f(path);
        f << "# defaults\nN = 3\nspace=projective\nseeds=5\n";
    }
    Run r = run({"--config", path, "count"});
    REQUIRE(r.code == exit_code::ok);
    CHECK(json_of(r).at("count") == "73");
    // explicit flags override the file
    r = run({"--config", path, "count", "--N", "2"});
    CHECK(json_of(r).at("count") == "23");
    {
        std::ofstream f(path);
        f << "colour=blue\n";
    }
    CHECK(run({"--config", path, "count", "--N", "2"}).code == exit_code::usage);
    CHECK(run({"--config", "no_such_file.txt", "count", "--N", "2"}).code == exit_code::usage);
    std::remove(path.c_str());
}
