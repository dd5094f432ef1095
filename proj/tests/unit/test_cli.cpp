// test_cli.cpp: config parsing, output schema and exit codes

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "dressed/cli.hpp"
#include "dressed/error.hpp"

using namespace dressed;
using namespace dressed::cli;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "dressed");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / ("dressed_test_" + name);
    std::ofstream(path) << text;
    return path.string();
}

// Data rows of a rendered file, split on commas; row 0 is the column line.
std::vector<std::vector<std::string>> table(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

const char* kDesk = "bar_omega=1\ng=0.1\ncavity_L=1\nlight_speed=1\nn_modes=8\n";
const char* kRed = "# red visible\nbar_omega=4e14\nbeta=0.0072992700729927\ndelta=0.005\n";

} // namespace

TEST_CASE("config parsing") {
    const auto kv = parse_config_text("# comment\n\nbar_omega = 2\n g=0.5 \n");
    CHECK(kv.at("bar_omega") == "2");
    CHECK(kv.at("g") == "0.5");
    CHECK_THROWS_AS(parse_config_text("bar_omega=1\nbar_omega=2\n"), InputError);
    CHECK_THROWS_AS(parse_config_text("colour=red\n"), InputError);
    CHECK_THROWS_AS(parse_config_text("bar_omega\n"), InputError);
    CHECK_THROWS_AS(parse_config_text("g=\n"), InputError);
    CHECK_THROWS_AS(config_from_map({{"g", "abc"}}), InputError);
    CHECK_THROWS_AS(config_from_map({{"n_modes", "-3"}}), InputError);
    CHECK_THROWS_AS(load_config_file("/nonexistent/dressed.cfg"), InputError);
}

TEST_CASE("parameter resolution") {
    CHECK_THROWS_AS(resolve_spec(config_from_map({{"g", "1"}, {"cavity_L", "1"}})), InputError);
    CHECK_THROWS_AS(resolve_spec(config_from_map({{"bar_omega", "1"}, {"g", "1"}, {"beta", "1"}, {"cavity_L", "1"}})),
                    InputError);
    CHECK_THROWS_AS(resolve_spec(config_from_map({{"bar_omega", "1"}, {"g", "1"}, {"cavity_L", "1"}, {"delta", "1"}})),
                    InputError);
    CHECK_THROWS_AS(resolve_spec(config_from_map({{"bar_omega", "1"}, {"g", "-1"}, {"cavity_L", "1"}})),
                    ParameterError);
    const auto s = resolve_spec(config_from_map(parse_config_text(kRed)));
    CHECK(s.g == doctest::Approx(4e14 / 137.0).epsilon(1e-12));
    CHECK(derive_parameters(s).delta == doctest::Approx(0.005).epsilon(1e-12));
}

TEST_CASE("number formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300}) {
        CHECK(std::stod(format_number(v)) == v);
    }
}

TEST_CASE("header round-trip rebuilds the system parameters") {
    const auto cfg = config_from_map(parse_config_text(kRed));
    const std::string text = cmd_spectrum(cfg).render();
    const auto header = parse_header(text);
    CHECK(header.at("command") == "spectrum");
    CHECK(header.at("code_version") == kVersion);
    const auto a = resolve_spec(cfg);
    const auto b = spec_from_header(header);
    CHECK(a.bar_omega == b.bar_omega);
    CHECK(a.g == b.g);
    CHECK(a.cavity_L == b.cavity_L);
    CHECK(a.light_speed == b.light_speed);
    CHECK(a.n_modes == b.n_modes);
    CHECK_THROWS_AS(spec_from_header({{"g", "1"}}), InputError);
}

TEST_CASE("spectrum command") {
    const auto cfg_path = write_temp("desk.cfg", kDesk);
    const auto r = invoke({"spectrum", "--config", cfg_path});
    CHECK(r.code == kExitOk);
    const auto t = table(r.out);
    REQUIRE(t.size() == 10);
    CHECK(t[0] == std::vector<std::string>{"r", "omega", "weight"});
    double sum = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) sum += std::stod(t[i][2]);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

    const auto red = write_temp("red.cfg", kRed);
    const auto c = invoke({"spectrum", "--config", red, "--route", "cavity", "--k-max", "100"});
    CHECK(c.code == kExitOk);
    CHECK(table(c.out).size() == 102);

    const auto sl = invoke({"spectrum", "--config", red, "--route", "small-l", "--k-max", "10"});
    REQUIRE(sl.code == kExitOk);
    CHECK(std::stod(table(sl.out)[1][1]) / 4e14 == doctest::Approx(0.9922).epsilon(1e-4));
}

TEST_CASE("decay command") {
    const auto cfg_path = write_temp("desk.cfg", kDesk);
    const auto r = invoke({"decay", "--config", cfg_path, "--t-max", "10", "--samples", "11"});
    REQUIRE(r.code == kExitOk);
    const auto t = table(r.out);
    REQUIRE(t.size() == 12);
    CHECK(t[0] == std::vector<std::string>{"t", "re_f00", "im_f00", "prob"});
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double re = std::stod(t[i][1]);
        const double im = std::stod(t[i][2]);
        CHECK(std::stod(t[i][3]) == doctest::Approx(re * re + im * im).epsilon(1e-14));
    }
    CHECK(std::stod(t[1][3]) == doctest::Approx(1.0).epsilon(1e-12));

    const auto q = invoke({"decay", "--config", cfg_path, "--method", "quadrature", "--samples", "5"});
    CHECK(q.code == kExitOk);
    const auto d = invoke({"decay", "--config", cfg_path, "--method", "discrete", "--samples", "5"});
    CHECK(d.code == kExitOk);
}

TEST_CASE("brownian and cavity commands") {
    const auto cfg_path = write_temp("desk.cfg", kDesk);
    const auto b = invoke({"brownian", "--config", cfg_path, "--n-bar", "2", "--theta", "0.5", "--samples", "21"});
    REQUIRE(b.code == kExitOk);
    CHECK(table(b.out).size() == 22);
    CHECK(parse_header(b.out).at("n_bar") == format_number(2.0));

    const auto red = write_temp("red.cfg", kRed);
    const auto c = invoke({"cavity", "--config", red, "--k-max", "500", "--samples", "201"});
    REQUIRE(c.code == kExitOk);
    const auto h = parse_header(c.out);
    CHECK(std::stod(h.at("min_bound")) == doctest::Approx(0.974204).epsilon(1e-6));
    CHECK(std::stod(h.at("min_probability_grid")) > 0.9);
    CHECK(table(c.out).size() == 202);

    const auto strong = write_temp("strong.cfg", "bar_omega=2e10\nbeta=10\ndelta=0.5\n");
    const auto s = invoke({"cavity", "--config", strong, "--regime", "strong", "--k-max", "50", "--samples", "11"});
    REQUIRE(s.code == kExitOk);
    CHECK(parse_header(s.out).at("status") == "unphysical: exceeds delta_max");
}

TEST_CASE("output file") {
    const auto cfg_path = write_temp("desk.cfg", kDesk);
    const auto out_path = (std::filesystem::temp_directory_path() / "dressed_test_out.csv").string();
    std::remove(out_path.c_str());
    const auto r = invoke({"spectrum", "--config", cfg_path, "--out", out_path});
    CHECK(r.code == kExitOk);
    CHECK(r.out.empty());
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(table(ss.str()).size() == 10);
}

TEST_CASE("exit codes") {
    const auto cfg_path = write_temp("desk.cfg", kDesk);
    CHECK(invoke({}).code == kExitInput);
    CHECK(invoke({"bogus"}).code == kExitInput);
    CHECK(invoke({"spectrum", "--route", "nowhere", "--config", cfg_path}).code == kExitInput);
    CHECK(invoke({"spectrum", "--config", "/nonexistent.cfg"}).code == kExitInput);
    const auto over = write_temp("over.cfg", "bar_omega=1\ng=1\nbeta=1\ncavity_L=1\n");
    const auto r = invoke({"decay", "--config", over});
    CHECK(r.code == kExitInput);
    CHECK(r.err.find("over-specified") != std::string::npos);
    CHECK(invoke({"decay", "--config", cfg_path, "--samples", "1"}).code == kExitInput);
    CHECK(invoke({"--version"}).code == kExitOk);

    const auto v = invoke({"validate", "--config", cfg_path});
    CHECK(v.code == kExitOk);
    CHECK(v.out.find("status=pass") != std::string::npos);
}
