#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() / ("llab_cli_" + std::to_string(std::rand()));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }

    std::string write(const std::string& name, const std::string& text) const {
        const auto path = (dir / name).string();
        std::ofstream(path) << text;
        return path;
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = llab::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kUnit = R"({"domain": "half_line", "segments": [], "tail": {"coef": 1, "exp": 0}})";

}  // namespace

TEST_CASE("verdict on the L^2 case") {
    Scratch s;
    const auto unit = s.write("unit.json", kUnit);
    const auto r = run({"verdict", "--p", "2", "--u", unit, "--w", unit});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["alpha"].get<double>() == doctest::Approx(0.5));
    CHECK(j["beta"].get<double>() == doctest::Approx(0.5));
    CHECK(j["hilbert"] == "bounded");
    CHECK(j["maximal"] == "bounded");
    CHECK(j["maximal_detail"].contains("q"));
    CHECK(r.err.find("verdict:") != std::string::npos);
}

TEST_CASE("extremal summary") {
    Scratch s;
    const auto out = s.path("ext.csv");
    const auto r = run({"extremal", "--interval", "0", "4", "--set", "1,2", "--output", out});
    REQUIRE(r.code == 0);
    const auto summary = nlohmann::json::parse(slurp(out + ".summary.json"));
    CHECK(summary["mean"].get<double>() == doctest::Approx((1.0 + std::log(4.0)) / 4.0).epsilon(1e-12));
    CHECK(summary["mean_formula"].get<double>() == doctest::Approx(summary["mean"].get<double>()));
    CHECK(summary["max_identity_error"].get<double>() < 1e-9);
    CHECK(slurp(out).rfind("lambda,k,lo,hi,measure_check\n", 0) == 0);
}

TEST_CASE("exit codes") {
    Scratch s;
    const auto bad = s.write("bad.json", "{\"domain\": \"half_line\", \"tail\": ");
    CHECK(run({"classes", "--w", bad}).code == 2);
    const auto neg = s.write("neg.json", R"({"domain": "half_line", "segments": [{"from": 0, "to": 1, "coef": 1, "exp": -2}], "tail": {"coef": 1, "exp": 0}})");
    const auto r = run({"classes", "--w", neg});
    CHECK(r.code == 2);
    CHECK(r.err.find("locally integrable") != std::string::npos);
    CHECK(run({"classes", "--w", s.path("missing.json")}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"extremal", "--interval", "0", "4", "--set", "3,5"}).code == 3);
    const auto unit = s.write("unit.json", kUnit);
    CHECK(run({"certify", "--w", unit, "--interval", "0", "1", "--set", "0,1"}).code == 3);
}

TEST_CASE("classes and certify emit JSON") {
    Scratch s;
    const auto unit = s.write("unit.json", kUnit);
    const auto c = run({"classes", "--w", unit, "--p", "2"});
    REQUIRE(c.code == 0);
    const auto j = nlohmann::json::parse(c.out);
    CHECK(j["bp"]["holds"] == true);
    CHECK(j["bp"]["constant"].get<double>() == doctest::Approx(1.0));
    const auto cert = run({"certify", "--w", unit, "--p", "2", "--interval", "0", "2.718281828459045", "--set", "0,1"});
    REQUIRE(cert.code == 0);
    CHECK(nlohmann::json::parse(cert.out)["lower_bound"].get<double>() == doctest::Approx(0.4748).epsilon(1e-3));
}

TEST_CASE("indices and opnorm are deterministic under a seed") {
    Scratch s;
    const auto unit = s.write("unit.json", kUnit);
    const auto root = s.write("root.json", R"({"domain": "half_line", "segments": [{"from": 0, "to": 1, "coef": 1, "exp": 0.5}], "tail": {"coef": 1, "exp": 0}})");
    const std::vector<std::string> args{"indices", "--w", root, "--p", "2", "--seed", "9", "--budget", "2"};
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.code == 0);
    CHECK(std::hash<std::string>{}(a.out) == std::hash<std::string>{}(b.out));
    CHECK(a.out.rfind("t,wbar_u,underline_wu,direction,budget,seed\n", 0) == 0);
    const std::vector<std::string> op{"opnorm", "--operator", "maximal", "--w", unit, "--family", "random:4", "--seed", "5"};
    const auto x = run(op);
    const auto y = run(op);
    REQUIRE(x.code == 0);
    CHECK(x.out == y.out);
    CHECK(x.out.rfind("test_id,input_norm,output_norm,ratio\n", 0) == 0);
}

TEST_CASE("LLAB_SEED overrides the seed flag") {
    Scratch s;
    const auto unit = s.write("unit.json", kUnit);
    ::setenv("LLAB_SEED", "77", 1);
    const auto a = run({"indices", "--w", unit, "--seed", "3"});
    ::unsetenv("LLAB_SEED");
    REQUIRE(a.code == 0);
    CHECK(a.out.find(",77\n") != std::string::npos);
}
