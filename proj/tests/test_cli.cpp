#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "crawlerlab/bifurcation.hpp"
#include "crawlerlab/cli.hpp"
#include "crawlerlab/config.hpp"
#include "crawlerlab/describing.hpp"
#include "crawlerlab/errors.hpp"
#include "crawlerlab/report.hpp"
#include "support.hpp"

using namespace crawler;
using Catch::Approx;
using crawler::testing::fixture;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("crawlerlab_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string write_text(const fs::path& path, const std::string& text) {
    std::ofstream(path) << text;
    return path.string();
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const fs::path& path) { return json::parse(slurp(path)); }

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
    std::vector<std::vector<std::string>> rows;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

// Fixture text with the groups object replaced.
std::string groups_config(const Groups& g, const std::string& extra = "") {
    json j;
    j["groups"] = {{"zeta", g.zeta}, {"pi_f", g.pi_f}, {"pi_V", g.pi_V},   {"pi_eps", g.pi_eps}, {"n_f", g.n_f},
                   {"pi_c", g.pi_c}, {"pi_l", g.pi_l}, {"pi_s", g.pi_s}, {"eps", g.eps}};
    std::string text = j.dump();
    if (!extra.empty()) text = text.substr(0, text.size() - 1) + "," + extra + "}";
    return text;
}

}  // namespace

TEST_CASE("floats use seventeen significant digits", "[cli][report]") {
    CHECK(format_float(0.1) == "0.10000000000000001");
    CHECK(format_float(2.0) == "2");
    CHECK(format_float(std::nan("")) == "nan");
    JsonValue v = JsonValue::object();
    v.set("x", 1.0 / 3.0).set("bad", std::numeric_limits<double>::infinity());
    CHECK(v.dump().find("0.33333333333333331") != std::string::npos);
    CHECK(json::parse(v.dump())["bad"].is_null());
}

TEST_CASE("malformed configuration exits with code 2", "[cli]") {
    const auto dir = scratch("malformed");
    const auto cfg = write_text(dir / "bad.json", "{ \"groups\": { \"zeta\": 1.0, ");
    const auto r = run({"simulate", "--config", cfg, "--out", (dir / "o").string()});
    CHECK(r.code == kExitConfig);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("configuration errors exit with code 2", "[cli]") {
    const auto dir = scratch("config_errors");
    const Groups g = crawler::testing::fig3_groups();
    const auto unknown = write_text(dir / "unknown.json", groups_config(g, "\"colour\": 3"));
    CHECK(run({"bifurcate", "--config", unknown, "--out", dir.string()}).code == kExitConfig);
    CHECK(run({"bifurcate", "--config", (dir / "missing.json").string(), "--out", dir.string()}).code == kExitConfig);
    CHECK(run({"bifurcate", "--out", dir.string()}).code == kExitConfig);
    CHECK(run({"teleport", "--config", unknown, "--out", dir.string()}).code == kExitConfig);
    const auto fine = write_text(dir / "fine.json", groups_config(g));
    CHECK(run({"bifurcate", "--config", fine, "--out", dir.string(), "--tol-abs", "-1"}).code == kExitConfig);
    CHECK_THROWS_AS(parse_config(R"({"groups": {}, "dimensional": {}})"), ConfigError);
}

TEST_CASE("bifurcation report at the analytic Hopf point", "[cli]") {
    const auto dir = scratch("bif_gamma2");
    const auto r = run({"bifurcate", "--config", fixture("hopf_gamma2.json"), "--out", dir.string()});
    REQUIRE(r.code == kExitOk);
    const auto j = read_json(dir / "bifurcation.json");
    CHECK(j["gamma"].get<double>() == Approx(2.0).epsilon(1e-14));
    CHECK(j["pi_s_H"].get<double>() == Approx(2.0).epsilon(1e-13));
    CHECK(j["omega_H"].get<double>() == Approx(1.0).epsilon(1e-13));
    CHECK(j["transversality"].get<double>() == Approx(2.6).epsilon(1e-13));
    CHECK(j["pi_s_P"].get<double>() == Approx(3.0).epsilon(1e-14));
    for (const auto& [key, value] : j["oracle_deltas"].items()) {
        INFO(key);
        CHECK(std::abs(value.get<double>()) < 1e-9);
    }
}

TEST_CASE("bifurcation report for the desk-scale configuration", "[cli]") {
    const auto dir = scratch("bif_fig3");
    REQUIRE(run({"bifurcate", "--config", fixture("fig3.json"), "--out", dir.string()}).code == kExitOk);
    const auto j = read_json(dir / "bifurcation.json");
    CHECK(j["pi_s_P"].get<double>() == Approx(2e4).epsilon(1e-15));
    CHECK(j["pitchfork"]["subcritical"].get<bool>());
}

TEST_CASE("assumption violations are flagged and fail in strict mode", "[cli]") {
    const auto dir = scratch("bif_violation");
    const Groups g = crawler::testing::with_gain(1.0, 3.0, 1.0, 0.5, 1.0, 1.0, 0.25);
    const auto cfg = write_text(dir / "low_gain.json", groups_config(g));
    REQUIRE(run({"bifurcate", "--config", cfg, "--out", dir.string()}).code == kExitOk);
    const auto j = read_json(dir / "bifurcation.json");
    const auto violations = j["assumption_flags"]["violations"].get<std::vector<std::string>>();
    CHECK(std::find(violations.begin(), violations.end(), "gamma_out_of_range") != violations.end());
    CHECK(run({"bifurcate", "--config", cfg, "--out", dir.string(), "--strict"}).code == kExitNumerical);
}

TEST_CASE("simulation below the Hopf gain reports the resting fixed point", "[cli]") {
    const auto dir = scratch("sim_rest");
    Groups g = crawler::testing::strong_gain_groups();
    g.pi_s = 0.95 * hopf_gain(g);
    const auto cfg = write_text(
        dir / "rest.json",
        groups_config(g, R"("simulate": {"t_end": 200, "transient": 100, "sample_dt": 0.05,
                          "x0_offset_from_fixed_point": [0.001, 0, 0.001, 0]})"));
    const auto r = run({"simulate", "--config", cfg, "--out", dir.string()});
    REQUIRE(r.code == kExitOk);
    const auto j = read_json(dir / "metrics.json");
    CHECK(j["regime"] == "resting");
    REQUIRE(j.contains("terminal_fixed_point"));
    CHECK(j["terminal_distance"].get<double>() < 1e-6);
    const auto rows = read_csv(dir / "trajectory.csv");
    REQUIRE(rows.size() > 10);
    CHECK(rows[0] == std::vector<std::string>{"t", "V", "v_com", "s", "v_s", "u_com", "u1", "u2"});
}

TEST_CASE("desk-scale simulation crawls", "[cli]") {
    const auto dir = scratch("sim_fig3");
    REQUIRE(run({"simulate", "--config", fixture("fig3.json"), "--out", dir.string()}).code == kExitOk);
    const auto j = read_json(dir / "metrics.json");
    CHECK(j["regime"] == "crawling");
    CHECK(j["v_com_bar"].get<double>() > 0.0);
    CHECK(j["period"].get<double>() > 0.0);
    CHECK(j["omega"].get<double>() == Approx(2.0 * std::numbers::pi / j["period"].get<double>()).epsilon(1e-12));
}

TEST_CASE("fold report", "[cli]") {
    const auto dir = scratch("gsp");
    REQUIRE(run({"gsp", "--config", fixture("fig3.json"), "--out", dir.string()}).code == kExitOk);
    const auto j = read_json(dir / "gsp.json");
    CHECK(j["V_F_plus"].get<double>() == Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
    CHECK(j["s_F_plus"].get<double>() == Approx(0.5443).epsilon(1e-4));
    CHECK(j["classification"] == "non-saddle");
}

TEST_CASE("harmonic balance sweep and optimum", "[cli]") {
    const auto dir = scratch("hb_fig5");
    REQUIRE(run({"hb", "--config", fixture("fig5.json"), "--out", dir.string()}).code == kExitOk);
    const auto opt = read_json(dir / "optimum.json");
    CHECK(opt["S_star"].get<double>() == Approx(0.5125).margin(1e-3));
    CHECK(opt["Z_star"].get<double>() == 1.0);
    CHECK(opt["omega_star"].get<double>() == 1.0);
    CHECK(opt["beta_star"].get<double>() == opt["S_star"].get<double>());

    const auto rows = read_csv(dir / "hb_sweep.csv");
    REQUIRE(rows.size() > 2);
    CHECK(rows[0] == std::vector<std::string>{"Z", "omega", "S", "v_com_bar", "P_bar", "phi_rel"});
    const Groups g = load_config(fixture("fig5.json")).groups;
    const auto ae = alpha_eta(g, 2.0);
    double prev_speed = -1.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double Z = std::stod(rows[i][0]);
        const double speed = std::stod(rows[i][3]);
        const double P = std::stod(rows[i][4]);
        CHECK(std::abs(P - 2.0 / (g.zeta * std::numbers::pi) * Z * (ae.alpha * Z - ae.eta)) <= 1e-10 * std::abs(P));
        if (i + 1 < rows.size()) CHECK(speed < std::stod(rows.back()[3]));
        prev_speed = speed;
    }
    CHECK(std::stod(rows.back()[0]) == 1.0);
    CHECK(prev_speed == std::stod(rows.back()[3]));
    CHECK(fs::exists(dir / "comparison.json"));
}

TEST_CASE("infeasible relay exits nonzero and names the assumption", "[cli]") {
    const auto dir = scratch("hb_infeasible");
    const Groups g = load_config(fixture("fig5.json")).groups;
    const auto cfg = write_text(dir / "weak.json", groups_config(g, R"("hb": {"M": 0.1})"));
    const auto r = run({"hb", "--config", cfg, "--out", dir.string()});
    CHECK(r.code == kExitNumerical);
    CHECK(r.err.find("Assumption 4") != std::string::npos);
}

TEST_CASE("gain sweep flips regime once", "[cli]") {
    const auto dir = scratch("sweep");
    REQUIRE(run({"sweep", "--config", fixture("supercritical.json"), "--out", dir.string()}).code == kExitOk);
    const auto rows = read_csv(dir / "sweep.csv");
    REQUIRE(rows.size() == 10);
    CHECK(rows[0][0] == "pi_s");
    int flips = 0;
    for (std::size_t i = 2; i < rows.size(); ++i) flips += rows[i][1] != rows[i - 1][1];
    CHECK(flips == 1);
    CHECK(rows[1][1] == "resting");
    CHECK(rows.back()[1] == "crawling");
}

TEST_CASE("empty sweep range writes only the header", "[cli]") {
    const auto dir = scratch("sweep_empty");
    const auto cfg = write_text(
        dir / "empty.json",
        groups_config(crawler::testing::fig3_groups(),
                      R"("sweep": {"axes": [{"group": "pi_s", "range": {"start": 1, "stop": 2, "count": 0}}]})"));
    REQUIRE(run({"sweep", "--config", cfg, "--out", dir.string()}).code == kExitOk);
    const auto rows = read_csv(dir / "sweep.csv");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0][0] == "pi_s");
}

TEST_CASE("repeated runs are byte-identical", "[cli]") {
    const auto a = scratch("det_a");
    const auto b = scratch("det_b");
    const auto cfg = write_text(
        a / "grid.json",
        groups_config(crawler::testing::strong_gain_groups(),
                      R"("simulate": {"t_end": 60, "transient": 20, "sample_dt": 0.05,
                          "x0_offset_from_fixed_point": [0.001, 0, 0.001, 0]},
                         "sweep": {"simulate": true, "axes": [
                           {"group": "pi_s", "values": [2300, 2500]},
                           {"group": "n_f", "values": [0.3, 0.5]}]})"));
    REQUIRE(run({"sweep", "--config", cfg, "--out", a.string()}).code == kExitOk);
    REQUIRE(run({"sweep", "--config", cfg, "--out", b.string()}).code == kExitOk);
    const auto first = slurp(a / "sweep.csv");
    CHECK(first == slurp(b / "sweep.csv"));
    CHECK(read_csv(a / "sweep.csv").size() == 5);
    REQUIRE(run({"simulate", "--config", cfg, "--out", a.string()}).code == kExitOk);
    REQUIRE(run({"simulate", "--config", cfg, "--out", b.string()}).code == kExitOk);
    CHECK(slurp(a / "trajectory.csv") == slurp(b / "trajectory.csv"));
}

TEST_CASE("tolerance flags reach the integrator", "[cli]") {
    const auto dir = scratch("tol");
    REQUIRE(run({"simulate", "--config", fixture("supercritical.json"), "--out", dir.string(), "--tol-abs", "1e-11",
                 "--tol-rel", "1e-9"})
                .code == kExitOk);
    const auto j = read_json(dir / "metrics.json");
    CHECK(j["integrator"]["tol_abs"].get<double>() == 1e-11);
    CHECK(j["integrator"]["tol_rel"].get<double>() == 1e-9);
}
