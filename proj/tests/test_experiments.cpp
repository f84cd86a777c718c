#include "doctest.h"
#include "qnmlab/errors.hpp"
#include "qnmlab/experiments.hpp"

using namespace qnmlab;

static const char* slab_cfg = R"(
[experiment]
name = slab-complete
[slab]
n = 2
L_nm = 600
[source]
x_src_nm = 120
omega_rad_per_s = 2.2e15
[eval]
x_values_nm = -150, 30, 1200
[sweep]
m_values = 10, 40
)";

TEST_CASE("catalog lists six experiments in stable order") {
    const auto& cat = experiment_catalog();
    REQUIRE(cat.size() == 6);
    CHECK(cat[0].name == "sphere-norms");
    CHECK(cat[1].name == "slab-complete");
    CHECK(cat[4].name == "invariance");
    CHECK(cat[5].name == "revelation");
}

TEST_CASE("slab-complete: schema, rows, outside warning") {
    const Config cfg = Config::parse_text(slab_cfg);
    const ExperimentResult res = run_experiment(cfg);
    REQUIRE(res.outputs.size() == 1);
    const CsvTable& t = res.outputs[0].table;
    CHECK(t.header() == std::vector<std::string>{"M", "x_nm", "abs_err"});
    CHECK(t.row_count() == 6); // 2 M values x 3 points
    CHECK(res.warnings.size() == 1); // x = 1200 nm is outside the slab
}

TEST_CASE("reruns are byte-identical, threads do not change rows") {
    const Config cfg = Config::parse_text(slab_cfg);
    const std::string a = run_experiment(cfg, 1).outputs[0].table.serialize();
    const std::string b = run_experiment(cfg, 1).outputs[0].table.serialize();
    const std::string c = run_experiment(cfg, 4).outputs[0].table.serialize();
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("unknown experiment and stray keys are config errors") {
    Config bad = Config::parse_text("[experiment]\nname = frobnicate\n");
    CHECK_THROWS_AS(run_experiment(bad), ConfigError);
    Config typo = Config::parse_text(std::string(slab_cfg) +
                                     "[typo]\noops = 1\n");
    CHECK_THROWS_AS(run_experiment(typo), ConfigError);
}
