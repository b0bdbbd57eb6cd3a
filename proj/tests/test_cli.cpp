#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <string>

#include "kepoly/config.hpp"
#include "kepoly/report.hpp"

using namespace kepoly;
using namespace kepoly::cli;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
    std::string cmd = (env.empty() ? "" : env + " ") + std::string(KEPOLY_BIN) + " " + args +
                      " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

std::string write_temp_config(const std::string& name, const std::string& body) {
    std::string path = "/tmp/kepoly_test_" + name + ".json";
    std::ofstream f(path);
    f << body;
    return path;
}

}  // namespace

TEST_CASE("config parsing: happy path and field-naming errors") {
    nlohmann::json good = nlohmann::json::parse(R"({
        "group": {"factors": ["B2"], "torus_rank": 0},
        "polytope": {"pplus_vertices": [["0","0"],["5","5/2"],["5","3"],["4","7/2"],["7/2","7/2"]]},
        "coordinates": "simple_roots"
    })");
    Config cfg = parse_config(good);
    CHECK(cfg.group.factors == std::vector<std::string>{"B2"});
    CHECK(cfg.vertex_strings.size() == 5);

    auto expect_field = [](const char* json_text, const char* field) {
        try {
            parse_config(nlohmann::json::parse(json_text));
            FAIL_CHECK("expected ConfigError for field " << field);
        } catch (const ConfigError& e) {
            CHECK(e.field == field);
        }
    };
    expect_field(R"({"polytope": {"wonderful": true}})", "group");
    expect_field(R"({"group": {"factors": ["A2"]}})", "polytope");
    expect_field(R"({"group": {"factors": ["A2"]}, "polytope": {}})", "polytope");
    expect_field(
        R"({"group": {"factors": ["A2"]}, "polytope": {"wonderful": true, "p_vertices": []}})",
        "polytope");
    expect_field(
        R"({"group": {"factors": ["A2"]}, "polytope": {"wonderful": true}, "coordinates": "polar"})",
        "coordinates");
}

TEST_CASE("realize: vertex dimension and chamber validation") {
    nlohmann::json bad_dim = nlohmann::json::parse(R"({
        "group": {"factors": ["A2"]},
        "polytope": {"pplus_vertices": [["1","2","3"]]}
    })");
    CHECK_THROWS_AS(realize(parse_config(bad_dim), false), ConfigError);

    nlohmann::json off_chamber = nlohmann::json::parse(R"({
        "group": {"factors": ["A1"]},
        "polytope": {"pplus_vertices": [["-1"],["2"]]}
    })");
    CHECK_THROWS_AS(realize(parse_config(off_chamber), false), ConfigError);

    // bad rational literals surface at realization time, naming the field
    nlohmann::json div0 = nlohmann::json::parse(R"({
        "group": {"factors": ["A2"]},
        "polytope": {"pplus_vertices": [["1/0","0"]]}
    })");
    try {
        realize(parse_config(div0), false);
        FAIL_CHECK("expected ConfigError for the 1/0 vertex");
    } catch (const ConfigError& e) {
        CHECK(e.field == "polytope.pplus_vertices");
    }

    nlohmann::json wonderful = nlohmann::json::parse(R"({
        "group": {"factors": ["B2"]},
        "polytope": {"wonderful": true}
    })");
    Realization r = realize(parse_config(wonderful), true);
    CHECK(r.pplus.full_dim);
    CHECK(r.p_full.has_value());
}

TEST_CASE("builtin configs round-trip through their own echo") {
    Config cfg = config_for_builtin("X2");
    Config reparsed = parse_config(cfg.echo);
    CHECK(reparsed.echo == cfg.echo);
    Realization a = realize(cfg, false);
    Realization b = realize(reparsed, false);
    CHECK(a.pplus.vertices == b.pplus.vertices);
}

TEST_CASE("cli: check exit codes and exact JSON values") {
    RunResult x1 = run_cli("check --builtin X1 --json");
    CHECK(x1.exit_code == 0);
    nlohmann::json j1 = nlohmann::json::parse(x1.out);
    CHECK(j1["ke"]["verdict"] == "KE_EXISTS");
    CHECK(j1["dh"]["barycenter_alpha"][0]["exact"] == "24641/9888");
    CHECK(j1["dh"]["barycenter_alpha"][1]["exact"] == "24641/9888");

    RunResult x2 = run_cli("check --builtin X2 --json");
    CHECK(x2.exit_code == 3);
    nlohmann::json j2 = nlohmann::json::parse(x2.out);
    CHECK(j2["ke"]["verdict"] == "NO_KE");

    RunResult p2 = run_cli("check --builtin P2 --json");
    CHECK(p2.exit_code == 0);
    nlohmann::json jp = nlohmann::json::parse(p2.out);
    CHECK(jp["dh"]["barycenter_alpha"][0]["exact"] == "0");
    CHECK(jp["dh"]["barycenter_alpha"][1]["exact"] == "0");

    // boundary: A1 with P+ = [0, 4/3]
    std::string path = write_temp_config("boundary", R"({
        "group": {"factors": ["A1"]},
        "polytope": {"pplus_vertices": [["0"],["4/3"]]}
    })");
    CHECK(run_cli("check --config " + path).exit_code == 4);
}

TEST_CASE("cli: rlb reports the paper value for X2") {
    RunResult r = run_cli("rlb --builtin X2 --json");
    CHECK(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["rlb"]["R"]["exact"] == "1046175339/1236719713");
    CHECK(j["rlb"]["s_star"]["exact"] == "1046175339/190544374");
    CHECK(j["rlb"]["ratio_BC_AC"]["exact"] == j["rlb"]["R"]["exact"]);
}

TEST_CASE("cli: parse errors exit 2 and name the field") {
    std::string path = write_temp_config("badfield", R"({
        "group": {"factors": ["A2"]},
        "polytope": {"pplus_vertices": [["1/0","0"]]}
    })");
    RunResult r = run_cli("check --config " + path);
    CHECK(r.exit_code == 2);
    CHECK(run_cli("check --config /nonexistent.json").exit_code == 2);
    CHECK(run_cli("check").exit_code == 2);  // neither --config nor --builtin
    CHECK(run_cli("check --builtin NOPE").exit_code == 2);
}

TEST_CASE("cli: determinism across runs and echo round-trip") {
    RunResult a = run_cli("rlb --builtin X2 --json");
    RunResult b = run_cli("rlb --builtin X2 --json");
    RunResult c = run_cli("rlb --builtin X2 --json");
    CHECK(a.out == b.out);
    CHECK(b.out == c.out);

    // re-running on the echoed input yields the identical report
    nlohmann::json j = nlohmann::json::parse(a.out);
    std::string path = write_temp_config("echo", j["input"].dump());
    RunResult d = run_cli("rlb --config " + path + " --json");
    CHECK(d.out == a.out);
}

TEST_CASE("cli: figure CSV schema and SVG emission") {
    RunResult csv = run_cli("figure --builtin X2");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.rfind("kind,x,y,label\n", 0) == 0);
    CHECK(csv.out.find("pplus_vertex") != std::string::npos);
    CHECK(csv.out.find("two_rho") != std::string::npos);
    CHECK(csv.out.find("barycenter") != std::string::npos);
    CHECK(csv.out.find("xi_ray") != std::string::npos);
    CHECK(csv.out.find("point_C") != std::string::npos);

    RunResult svg = run_cli("figure --builtin X1 --csv /tmp/kepoly_fig.csv --svg /tmp/kepoly_fig.svg");
    CHECK(svg.exit_code == 0);
    std::ifstream s("/tmp/kepoly_fig.svg");
    std::string svg_text((std::istreambuf_iterator<char>(s)), std::istreambuf_iterator<char>());
    CHECK(svg_text.find("<svg") != std::string::npos);
    CHECK(svg_text.find("<polygon") != std::string::npos);

    // rank != 2 is rejected
    CHECK(run_cli("figure --builtin X0").exit_code == 2);
}

TEST_CASE("cli: catalog listing and dump") {
    RunResult names = run_cli("catalog");
    CHECK(names.exit_code == 0);
    CHECK(names.out.find("X1") != std::string::npos);
    CHECK(names.out.find("Bl1P2") != std::string::npos);
    RunResult dump = run_cli("catalog X2");
    CHECK(dump.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(dump.out);
    CHECK(j["group"]["factors"][0] == "B2");
    CHECK(j["pplus_vertices"].size() == 5);
    CHECK(run_cli("catalog NOPE").exit_code == 2);
}

TEST_CASE("cli: verify runs the analytic battery and honors the budget env") {
    RunResult r = run_cli("verify --builtin X0 --json");
    CHECK(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    REQUIRE(j.contains("residuals"));
    CHECK(j["residuals"].size() >= 5);
    for (const auto& row : j["residuals"]) {
        CHECK(row["pass"] == true);
        CHECK(row["converged"] == true);
    }

    // a starved budget flags non-convergence on the quadrature rows
    RunResult starved = run_cli("verify --builtin X0 --json", "KEPOLY_QUAD_BUDGET=64");
    nlohmann::json js = nlohmann::json::parse(starved.out);
    bool saw_unconverged = false;
    for (const auto& row : js["residuals"])
        if (row["name"] == "pushforward_identity" && row["converged"] == false)
            saw_unconverged = true;
    CHECK(saw_unconverged);
}

TEST_CASE("cli: human-readable output carries exact rationals") {
    RunResult r = run_cli("check --builtin X1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("24641/9888") != std::string::npos);
    CHECK(r.out.find("KE_EXISTS") != std::string::npos);
}
