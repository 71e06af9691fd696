#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pbqc/cli.hpp"

using namespace pbqc;

namespace {

const char* kAttackConfig = R"(# two-station teleport attack
[run]
seed = 7
out = out

[geometry]
layout = collinear
d = 1.0
l = 0.1
c = 1.0

[protocol]
kind = A
u = 1
q_shares = 1

[attack]
kind = a-n2
enumerate = true
)";

std::string temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "pbqc_cli_test";
    std::filesystem::create_directories(dir);
    return dir.string();
}

} // namespace

TEST_CASE("config document parse and print round trip") {
    const auto doc = ConfigDoc::parse(kAttackConfig);
    CHECK(*doc.find("run", "seed") == "7");
    CHECK(*doc.find("protocol", "kind") == "A");
    CHECK(doc.find("protocol", "missing") == nullptr);

    const auto doc2 = ConfigDoc::parse(doc.print());
    CHECK(doc2.print() == doc.print());

    CHECK_THROWS_AS(ConfigDoc::parse("key_without_section = 1\n"), ParseError);
    CHECK_THROWS_AS(ConfigDoc::parse("[sec]\nnot a pair\n"), ParseError);
    CHECK_THROWS_AS(ConfigDoc::parse("[unterminated\n"), ParseError);
}

TEST_CASE("scenario config round trip through its document form") {
    const auto cfg = ScenarioConfig::from_doc(ConfigDoc::parse(kAttackConfig));
    CHECK(cfg.seed == 7);
    CHECK(cfg.protocol == ProtocolKind::A);
    CHECK(cfg.prot_a->u == 1);
    CHECK(cfg.attack == AttackKind::AN2);

    const auto cfg2 = ScenarioConfig::from_doc(cfg.to_doc());
    CHECK(cfg2.seed == cfg.seed);
    CHECK(cfg2.prot_a->u == cfg.prot_a->u);
    CHECK(cfg2.prot_a->q_shares == cfg.prot_a->q_shares);
    CHECK(cfg2.attack == cfg.attack);
    CHECK(cfg2.geometry.verifiers.size() == cfg.geometry.verifiers.size());
}

TEST_CASE("scenario validation errors") {
    // attack without its protocol section
    CHECK_THROWS_AS(ScenarioConfig::from_doc(ConfigDoc::parse(R"(
[geometry]
layout = collinear
[attack]
kind = a-n2
)")),
                    ValidationError);

    // wrong station count for the selected attack
    CHECK_THROWS_AS(ScenarioConfig::from_doc(ConfigDoc::parse(R"(
[geometry]
layout = equilateral
[protocol]
kind = A
q_shares = 0 0
[attack]
kind = a-n2
)")),
                    ValidationError);

    // cheater inside the restricted area
    CHECK_THROWS_AS(ScenarioConfig::from_doc(ConfigDoc::parse(R"(
[geometry]
layout = custom
l = 0.5
c = 1
verifier1 = -1 0 0
verifier2 = 1 0 0
receiver = 0 0 0
cheater1 = 0.1 0 0
cheater2 = 0.6 0 0
)")),
                    ValidationError);
}

TEST_CASE("run-protocol and run-attack subcommands") {
    auto cfg = ScenarioConfig::from_doc(ConfigDoc::parse(kAttackConfig));

    const auto prot = run_subcommand("run-protocol", cfg);
    CHECK(prot.body().find("decoded: 1") != std::string::npos);
    CHECK(prot.body().find("accept: true") != std::string::npos);

    const auto att = run_subcommand("run-attack", cfg);
    CHECK(att.body().find("success: true") != std::string::npos);
    const Table* t = att.table("branches");
    REQUIRE(t != nullptr);
    CHECK(t->rows[0][1] == "4"); // valid branches
    CHECK(t->rows[0][2] == "4"); // all successes

    CHECK_THROWS_AS(run_subcommand("unknown", cfg), ValidationError);
}

TEST_CASE("report determinism and emit_table") {
    const auto cfg = ScenarioConfig::from_doc(ConfigDoc::parse(kAttackConfig));
    auto r1 = run_subcommand("run-attack", cfg);
    auto r2 = run_subcommand("run-attack", cfg);
    r1.wall_clock_s = 0.123;
    r2.wall_clock_s = 9.876;
    CHECK(r1.body() == r2.body());
    CHECK(r1.full_text() != r2.full_text());

    const auto csv = emit_table(r1, "branches");
    CHECK(csv.rfind("candidates,valid,successes", 0) == 0);
    CHECK_THROWS_AS(emit_table(r1, "nope"), std::invalid_argument);
}

TEST_CASE("verify-stabilizers subcommand") {
    ScenarioConfig cfg;
    cfg.geometry = Geometry::collinear(1.0, 0.1, 1.0);
    const auto rep = run_subcommand("verify-stabilizers", cfg);
    const Table* t = rep.table("table1");
    REQUIRE(t != nullptr);
    CHECK(t->rows.size() == 16);
    CHECK(rep.body().find("dense_agree: 16") != std::string::npos);
    CHECK(rep.body().find("generators_match: 128") != std::string::npos);
}

TEST_CASE("feasibility subcommand") {
    ScenarioConfig cfg;
    cfg.geometry = Geometry::equilateral(1.0, 0.1, 1.0);
    cfg.geometry.receiver = {1.0, 1.0, 0.0};
    const auto rep = run_subcommand("feasibility", cfg);
    CHECK(rep.body().find("feasible: false") != std::string::npos);
    CHECK(rep.body().find("witness") != std::string::npos);
}

TEST_CASE("cli driver end to end with exit codes") {
    const std::string dir = temp_dir();
    const std::string cfg_path = dir + "/attack.cfg";
    {
        std::ofstream out(cfg_path);
        out << kAttackConfig;
    }

    CliOptions opts;
    opts.subcommand = "run-attack";
    opts.config_path = cfg_path;
    opts.out_dir = dir + "/out";
    opts.quiet = true;
    std::ostringstream os, es;
    CHECK(run_cli(opts, os, es) == 0);
    CHECK(std::filesystem::exists(dir + "/out/run-attack-report.txt"));
    CHECK(std::filesystem::exists(dir + "/out/run-attack-branches.csv"));

    // determinism: byte-identical bodies across runs (wall clock differs)
    std::ifstream in1(dir + "/out/run-attack-report.txt");
    std::stringstream s1;
    s1 << in1.rdbuf();
    CHECK(run_cli(opts, os, es) == 0);
    std::ifstream in2(dir + "/out/run-attack-report.txt");
    std::stringstream s2;
    s2 << in2.rdbuf();
    auto strip_clock = [](std::string text) {
        const auto pos = text.find("wall_clock_s:");
        return text.substr(0, pos);
    };
    CHECK(strip_clock(s1.str()) == strip_clock(s2.str()));

    // --format table prints the primary table
    opts.format = "table";
    std::ostringstream table_out;
    CHECK(run_cli(opts, table_out, es) == 0);
    CHECK(table_out.str().rfind("candidates,valid,successes", 0) == 0);

    // parse failure -> exit 2
    CliOptions bad = opts;
    bad.config_path = dir + "/missing.cfg";
    CHECK(run_cli(bad, os, es) == 2);

    const std::string bad_cfg = dir + "/bad.cfg";
    {
        std::ofstream out(bad_cfg);
        out << "[geometry]\nlayout = collinear\n[attack]\nkind = a-n2\n";
    }
    CliOptions invalid = opts;
    invalid.config_path = bad_cfg;
    CHECK(run_cli(invalid, os, es) == 3); // validation failure -> exit 3
}

TEST_CASE("rates subcommand produces the three-row table") {
    ScenarioConfig cfg;
    cfg.geometry = Geometry::collinear(1.0, 0.1, 1.0);
    cfg.samples = 2000;
    cfg.seed = 5;
    const auto rep = run_subcommand("rates", cfg);
    const Table* t = rep.table("rates");
    REQUIRE(t != nullptr);
    REQUIRE(t->rows.size() == 3);
    CHECK(t->rows[0][0] == "random-guess");
    CHECK(t->rows[1][0] == "measure-hold");
    CHECK(t->rows[2][0] == "teleport-optimal");
    const Table* sweep = rep.table("rate-vs-theta");
    REQUIRE(sweep != nullptr);
    CHECK(sweep->rows.size() == 25);
}
