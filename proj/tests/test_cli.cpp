#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "aim/config.hpp"
#include "aim/csv.hpp"
#include "aim/sim.hpp"
#include "aim/validate.hpp"

using namespace aim;

namespace {

const char* kMinimalConfig =
    "family = gaussian\n"
    "means = 0.8 0.79\n"
    "horizon = 1000\n"
    "runs = 10\n"
    "seed = 1\n"
    "policies = aim_gauss2\n";

struct CsvRow {
    std::string policy;
    std::int64_t t;
    double mean_regret;
    double stderr_regret;
    std::int64_t runs;
};

std::vector<CsvRow> parse_csv(const std::string& text) {
    std::vector<CsvRow> rows;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        CsvRow r;
        std::istringstream ls(line);
        std::string field;
        std::getline(ls, r.policy, ',');
        std::getline(ls, field, ',');
        r.t = std::stoll(field);
        std::getline(ls, field, ',');
        r.mean_regret = std::stod(field);
        std::getline(ls, field, ',');
        r.stderr_regret = std::stod(field);
        std::getline(ls, field, ',');
        r.runs = std::stoll(field);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace

TEST_CASE("parse_config accepts the minimal experiment") {
    const ExperimentConfig cfg = parse_config_text(kMinimalConfig);
    CHECK(cfg.family == RewardFamily::Gaussian);
    CHECK(cfg.fixed_means == std::vector<double>{0.8, 0.79});
    CHECK(cfg.horizon == 1000);
    CHECK(cfg.runs == 10);
    CHECK(cfg.base_seed == 1);
    REQUIRE(cfg.policies.size() == 1);
    CHECK(cfg.policies[0].kind == PolicyKind::AimGauss2);
    CHECK(cfg.sigma2 == 1.0);
    CHECK(cfg.policies[0].c_ucb == 2.1);
    CHECK(cfg.policies[0].c_klucb == 1e-5);
}

TEST_CASE("parse_config rejects bad configurations with every violation listed") {
    SUBCASE("horizon below the arm count") {
        const char* text =
            "family = gaussian\nmeans = 0.8 0.79\nhorizon = 1\nruns = 1\npolicies = aim\n";
        CHECK_THROWS_AS(parse_config_text(text), ConfigError);
    }
    SUBCASE("unknown global key") {
        CHECK_THROWS_WITH_AS(parse_config_text("horizont = 10\n"),
                             doctest::Contains("unknown key"), ConfigError);
    }
    SUBCASE("unknown policy") {
        const char* text = "means = 0.5 0.4\nhorizon = 10\npolicies = ucb_best\n";
        CHECK_THROWS_WITH_AS(parse_config_text(text), doctest::Contains("unknown policy"),
                             ConfigError);
    }
    SUBCASE("family-policy mismatch") {
        const char* text = "family = gaussian\nmeans = 0.5 0.4\nhorizon = 10\npolicies = kl_ucb\n";
        CHECK_THROWS_WITH_AS(parse_config_text(text), doctest::Contains("kl_ucb"), ConfigError);
    }
    SUBCASE("section for a policy that is not requested") {
        const char* text =
            "means = 0.5 0.4\nhorizon = 10\npolicies = thompson\n[ucb_tuned]\nc = 1.5\n";
        CHECK_THROWS_AS(parse_config_text(text), ConfigError);
    }
    SUBCASE("multiple violations are all reported") {
        try {
            parse_config_text("family = poisson\nmeans = 0.5\nhorizon = 0\npolicies = aim\n");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("family") != std::string::npos);
            CHECK(msg.find("horizon") != std::string::npos);
        }
    }
}

TEST_CASE("parse_config applies overrides and per-policy parameters") {
    SUBCASE("runs override wins") {
        ConfigOverrides ov;
        ov.runs = 5;
        const ExperimentConfig cfg = parse_config_text(
            "means = 0.5 0.4\nhorizon = 100\nruns = 100\npolicies = thompson\n", ov);
        CHECK(cfg.runs == 5);
    }
    SUBCASE("policy section tunes its constant") {
        const ExperimentConfig cfg = parse_config_text(
            "family = bernoulli\nmeans = 0.5 0.4\nhorizon = 100\npolicies = kl_ucb\n"
            "[kl_ucb]\nc = 0.5\n");
        CHECK(cfg.policies[0].c_klucb == 0.5);
    }
    SUBCASE("explicit checkpoints are sorted, deduplicated and closed at the horizon") {
        const ExperimentConfig cfg = parse_config_text(
            "means = 0.5 0.4\nhorizon = 100\npolicies = thompson\ncheckpoints = 50 10 50\n");
        CHECK(cfg.checkpoints == std::vector<std::int64_t>{10, 50, 100});
    }
}

TEST_CASE("render_csv format") {
    AggregatedTable table;
    table.rows = {{"aim", 10, 0.123456789123, 0.001, 7}};
    const std::string text = render_csv(table);
    CHECK(text ==
          "policy,t,mean_regret,stderr,runs\n"
          "aim,10,0.123456789,0.001,7\n");

    AggregatedTable zero;
    zero.rows = {{"thompson", 5, 0.0, 0.0, 3}};
    CHECK(render_csv(zero) ==
          "policy,t,mean_regret,stderr,runs\n"
          "thompson,5,0,0,3\n");
}

TEST_CASE("emit_csv rejects an empty table and surfaces the path on IO failure") {
    CHECK_THROWS_AS(emit_csv(AggregatedTable{}, "/tmp/aim_empty.csv"), std::invalid_argument);
    AggregatedTable one;
    one.rows = {{"aim", 1, 0.0, 0.0, 1}};
    CHECK_THROWS_WITH_AS(emit_csv(one, "/nonexistent_dir_xyz/x.csv"),
                         doctest::Contains("/nonexistent_dir_xyz/x.csv"), std::runtime_error);
}

TEST_CASE("csv round trip recovers the table to formatting precision") {
    ExperimentConfig cfg = parse_config_text(kMinimalConfig);
    cfg.horizon = 200;
    cfg.runs = 3;
    const AggregatedTable table = run_experiment(cfg);
    const std::vector<CsvRow> rows = parse_csv(render_csv(table));
    REQUIRE(rows.size() == table.rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].policy == table.rows[i].policy);
        CHECK(rows[i].t == table.rows[i].t);
        CHECK(rows[i].mean_regret ==
              doctest::Approx(table.rows[i].mean_regret).epsilon(1e-8));
        CHECK(rows[i].stderr_regret ==
              doctest::Approx(table.rows[i].stderr_regret).epsilon(1e-8));
        CHECK(rows[i].runs == table.rows[i].runs);
    }
}

TEST_CASE("repeated experiment renders byte-identical csv") {
    const ExperimentConfig cfg = parse_config_text(kMinimalConfig);
    CHECK(render_csv(run_experiment(cfg)) == render_csv(run_experiment(cfg)));
}

TEST_CASE("validation suite passes clean and fails under an injected tail error") {
    ValidationOptions fast;
    fast.closed_form_states = 15;
    fast.erf_identity_tuples = 10;
    fast.theta_eq_states = 1000;
    const ValidationReport clean = run_validation(fast);
    CHECK(clean.all_pass());

    ValidationOptions bad = fast;
    bad.s_tail_perturb = 1e-3;
    const ValidationReport broken = run_validation(bad);
    CHECK_FALSE(broken.all_pass());
}

TEST_CASE("cli exit codes") {
    const std::string cli = AIM_CLI_PATH;
    const std::string dir = "/tmp/aim_cli_test";
    std::system(("mkdir -p " + dir).c_str());

    std::ofstream good(dir + "/good.cfg");
    good << kMinimalConfig << "horizon = 50\nruns = 2\n";
    good.close();
    std::ofstream bad(dir + "/bad.cfg");
    bad << "horizon = 1\nmeans = 0.5 0.4\npolicies = aim\n";
    bad.close();

    const auto run = [&](const std::string& args) {
        const int rc = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
        return WEXITSTATUS(rc);
    };
    CHECK(run("run --config " + dir + "/good.cfg --out " + dir + "/out.csv") == 0);
    CHECK(run("run --config " + dir + "/bad.cfg --out " + dir + "/out.csv") == 2);
    CHECK(run("run --config " + dir + "/missing.cfg --out " + dir + "/out.csv") == 2);
    CHECK(run("run --config " + dir + "/good.cfg --out /nonexistent_dir_xyz/out.csv") == 3);
    CHECK(run("sweep --config " + dir + "/good.cfg --out " + dir + "/sweep") == 0);

    std::ifstream sweep_csv(dir + "/sweep/aim_gauss2.csv");
    CHECK(sweep_csv.good());
}
