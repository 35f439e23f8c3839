#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpsld/montecarlo.hpp"
#include "lpsld/sld.hpp"

namespace {

std::string g_cli;  // path to the CLI binary, from argv[1]

int run(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::vector<std::string> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(cell);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

TEST_CASE("sld-cone record matches the library") {
    REQUIRE(run("sld-cone --p 2 --q 1 --n 100 --z 0.9 --output cli_cone.json") == 0);
    const auto arr = nlohmann::json::parse(slurp("cli_cone.json"));
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 1);
    const auto& r = arr[0];
    const lpsld::SldEstimate est = lpsld::tail_cone(100, 0.9, lpsld::PqParams(2.0, 1.0));
    CHECK(r["rate"].get<double>() == est.rate);
    CHECK(r["probability"].get<double>() == est.probability);
    CHECK(r["prefactor"].get<double>() == est.prefactor);
    CHECK(r["xi"].get<double>() == lpsld::xi(0.9, lpsld::PqParams(2.0, 1.0)));
    CHECK(r["kappa"].get<double>() == lpsld::kappa(0.9, lpsld::PqParams(2.0, 1.0)));
    CHECK(r["regime"] == "valid-asymptotic");
}

TEST_CASE("sld-ball record matches the library") {
    REQUIRE(run("sld-ball --p 2 --q 1 --n 100 --z 0.9 --output cli_ball.json") == 0);
    const auto arr = nlohmann::json::parse(slurp("cli_ball.json"));
    const lpsld::SldEstimate est = lpsld::tail_ball(100, 0.9, lpsld::PqParams(2.0, 1.0));
    CHECK(arr[0]["probability"].get<double>() == est.probability);
    CHECK(arr[0]["gamma"].get<double>() == lpsld::gamma_term(0.9, lpsld::PqParams(2.0, 1.0)));
}

TEST_CASE("rate-curve: row count and strictly increasing rate") {
    REQUIRE(run("rate-curve --p 2 --q 1 --z-grid 0.85:0.98:50 --format csv --output cli_rate.csv") == 0);
    const auto rows = parse_csv(slurp("cli_rate.csv"));
    REQUIRE(rows.size() == 51);  // header + 50 grid points
    int rate_col = -1;
    for (size_t i = 0; i < rows[0].size(); ++i)
        if (rows[0][i] == "rate") rate_col = static_cast<int>(i);
    REQUIRE(rate_col >= 0);
    double prev = -1.0;
    for (size_t i = 1; i < rows.size(); ++i) {
        const double r = std::stod(rows[i][rate_col]);
        CHECK(r > prev);
        prev = r;
    }
}

TEST_CASE("CSV and JSON encodings carry identical values") {
    REQUIRE(run("rate-curve --p 2 --q 1 --z-grid 0.88:0.98:5 --format json --output cli_rt.json") == 0);
    REQUIRE(run("rate-curve --p 2 --q 1 --z-grid 0.88:0.98:5 --format csv --output cli_rt.csv") == 0);
    const auto arr = nlohmann::json::parse(slurp("cli_rt.json"));
    const auto rows = parse_csv(slurp("cli_rt.csv"));
    REQUIRE(rows.size() == arr.size() + 1);
    // column order may differ from JSON key order; match by header name
    std::map<std::string, size_t> col;
    for (size_t i = 0; i < rows[0].size(); ++i) col[rows[0][i]] = i;
    for (size_t i = 0; i < arr.size(); ++i) {
        for (auto& [k, v] : arr[i].items()) {
            REQUIRE(col.count(k) == 1);
            if (v.is_number_float())
                CHECK(std::stod(rows[i + 1][col[k]]) == v.get<double>());  // 17-digit round trip
        }
    }
}

TEST_CASE("determinism: same flags and seed give byte-identical files") {
    const std::string flags =
        "compare --p 2 --q 1 --n 50 --z 0.9 --samples 200000 --seed 7 --output ";
    REQUIRE(run(flags + "cli_det_a.json") == 0);
    REQUIRE(run(flags + "cli_det_b.json") == 0);
    const std::string a = slurp("cli_det_a.json");
    CHECK(!a.empty());
    CHECK(a == slurp("cli_det_b.json"));

    REQUIRE(run("mc --p 2 --q 1 --n 50 --z 0.9 --measure ball --samples 100000 --seed 3 "
                "--output cli_mc_a.json") == 0);
    REQUIRE(run("mc --p 2 --q 1 --n 50 --z 0.9 --measure ball --samples 100000 --seed 3 "
                "--output cli_mc_b.json") == 0);
    CHECK(slurp("cli_mc_a.json") == slurp("cli_mc_b.json"));
}

TEST_CASE("mc record matches the library estimator") {
    REQUIRE(run("mc --p 2 --q 1 --n 60 --z 0.9 --samples 100000 --seed 5 --output cli_mc.json") == 0);
    const auto arr = nlohmann::json::parse(slurp("cli_mc.json"));
    const lpsld::McEstimate e =
        lpsld::mc_tail_cone(60, 0.9, lpsld::PqParams(2.0, 1.0), 100000, 5);
    CHECK(arr[0]["mc_p_hat"].get<double>() == e.p_hat);
    CHECK(arr[0]["mc_samples"].get<long long>() == e.n_samples);
}

TEST_CASE("grids fan out over n and z") {
    REQUIRE(run("sld-cone --p 2 --q 1 --n 50 --n 100 --z-grid 0.88:0.96:3 --output cli_grid.json") == 0);
    const auto arr = nlohmann::json::parse(slurp("cli_grid.json"));
    CHECK(arr.size() == 6);
}

TEST_CASE("error exit codes") {
    CHECK(run("sld-cone --p 1 --q 2 --n 100 --z 0.9") == 2);          // bad exponents
    CHECK(run("sld-cone --p 2 --q 1 --n 100 --z 0.5") == 2);          // z below the mean
    CHECK(run("sld-cone --p 2 --q 1 --z 0.9") == 2);                  // missing --n
    CHECK(run("intersect --p 2 --q 1 --n 100 --t 0.01") == 4);        // shrinking regime
    CHECK(run("project --q-proj 1.5 --n 100 --z 2.5") == 2);          // q_proj <= 2
    CHECK(run("rate-curve --p 2 --q 1 --z-grid nonsense") == 2);      // bad grid spec
    CHECK(run("sld-cone --p 2 --q 1 --n 100 --z 1.2") == 3);          // beyond the sup of the statistic
    CHECK(run("sld-cone --p 2 --q 1 --n 100 --z 0.9 --format xml") == 2);
}

TEST_CASE("constants output") {
    REQUIRE(run("constants --p 2 --q 1 --n 2 --output cli_const.json") == 0);
    const auto arr = nlohmann::json::parse(slurp("cli_const.json"));
    CHECK(std::exp(arr[0]["log_vol_p"].get<double>()) == doctest::Approx(M_PI).epsilon(1e-12));
}

int main(int argc, char** argv) {
    if (argc > 1) g_cli = argv[1];
    if (g_cli.empty()) {
        std::fprintf(stderr, "usage: test_cli <path-to-cli-binary>\n");
        return 1;
    }
    doctest::Context ctx;
    return ctx.run();
}
