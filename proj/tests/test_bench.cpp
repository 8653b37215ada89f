#include <doctest.h>

#include <sstream>

#include "memc/bench.hpp"
#include "memc/errors.hpp"

using namespace memc;

namespace {

constexpr const char* kToyConfig =
    "[instances]\n"
    "fixtures = toy3\n"
    "[suite]\n"
    "backends = exact,sa,qaoa,photonic\n"
    "global_seed = 1\n"
    "[backend sa]\n"
    "sweeps = 200\n"
    "reads = 20\n"
    "[backend qaoa]\n"
    "max_evals = 150\n"
    "[backend photonic]\n"
    "max_evals = 400\n";

BenchmarkConfig toy_config() {
    std::istringstream in(kToyConfig);
    return BenchmarkConfig::parse(in);
}

}  // namespace

TEST_SUITE("bench") {

TEST_CASE("config parsing") {
    auto config = toy_config();
    CHECK(config.fixtures == std::vector<std::string>{"toy3"});
    CHECK(config.backends == std::vector<std::string>{"exact", "sa", "qaoa", "photonic"});
    CHECK(config.global_seed == 1);
    CHECK(config.backend_settings.at("sa").at("sweeps") == "200");

    std::istringstream empty_backends("[instances]\ncount = 1\n[suite]\nbackends =\n");
    CHECK_THROWS_AS(BenchmarkConfig::parse(empty_backends), ValidationError);

    std::istringstream no_instances("[suite]\nbackends = exact\n");
    CHECK_THROWS_AS(BenchmarkConfig::parse(no_instances), ValidationError);

    std::istringstream bad_backend("[instances]\ncount = 1\n[suite]\nbackends = qpu\n");
    CHECK_THROWS_AS(BenchmarkConfig::parse(bad_backend), ValidationError);

    std::istringstream bad_line("[suite]\nbackends exact\n");
    CHECK_THROWS_AS(BenchmarkConfig::parse(bad_line), ParseError);
}

TEST_CASE("instance family: sizes cycle, ids and seeds deterministic") {
    BenchmarkConfig config;
    config.count = 6;
    config.min_vertices = 4;
    config.max_vertices = 6;
    config.backends = {"exact"};
    auto a = config.make_instances();
    auto b = config.make_instances();
    REQUIRE(a.size() == 6);
    CHECK(a[0].second.num_vertices() == 4);
    CHECK(a[1].second.num_vertices() == 5);
    CHECK(a[2].second.num_vertices() == 6);
    CHECK(a[3].second.num_vertices() == 4);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].first == b[i].first);
        CHECK(a[i].second == b[i].second);
    }
}

TEST_CASE("toy3 across the four backends: all rows hit the optimum") {
    auto records = run_suite(toy_config());
    REQUIRE(records.size() == 4);
    for (const auto& rec : records) {
        CAPTURE(rec.backend);
        CHECK_FALSE(rec.skipped);
        CHECK(rec.opt_energy == doctest::Approx(1.0));
        CHECK(rec.gap == doctest::Approx(0.0));
        CHECK(rec.hit);
    }
}

TEST_CASE("run_backend validates names and propagates parameter errors") {
    auto inst = toy3();
    CHECK_THROWS_AS(run_backend(inst, "annealer", {}, 0), ValidationError);
    CHECK_THROWS_AS(run_backend(inst, "sa", {{"alpha", "-2"}}, 0), ValidationError);
    MulticutInstance k3(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}}, {0, 1, 2});
    CHECK_THROWS_AS(run_backend(k3, "maxflow", {}, 0), ValidationError);
}

TEST_CASE("maxflow rows on k=3 instances are skipped, not fatal") {
    BenchmarkConfig config;
    config.count = 2;
    config.min_vertices = 5;
    config.max_vertices = 5;
    config.k = 3;
    config.backends = {"exact", "maxflow"};
    auto records = run_suite(config);
    REQUIRE(records.size() == 4);
    CHECK_FALSE(records[0].skipped);
    CHECK(records[1].skipped);
    CHECK(records[1].backend == "maxflow");
}

TEST_CASE("records CSV: deterministic bytes, wall time in the sidecar only") {
    auto records = run_suite(toy_config());
    std::ostringstream a, b;
    write_records_csv(records, a);
    auto records2 = run_suite(toy_config());
    write_records_csv(records2, b);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("instance,backend,best_energy,opt_energy,gap,hit,opt_prob,evals,"
                       "wall_ms,seed\n") == 0);

    std::ostringstream meta;
    write_meta_csv(records, meta);
    CHECK(meta.str().find("wall_ms") != std::string::npos);

    // round trip through the reader
    std::istringstream back(a.str());
    auto parsed = read_records_csv(back);
    REQUIRE(parsed.size() == records.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        CHECK(parsed[i].instance_id == records[i].instance_id);
        CHECK(parsed[i].backend == records[i].backend);
        CHECK(parsed[i].hit == records[i].hit);
        CHECK(parsed[i].best_energy == doctest::Approx(records[i].best_energy));
    }
}

TEST_CASE("summaries: hit rates, quantiles, permutation invariance") {
    std::vector<BenchmarkRecord> records;
    for (int i = 0; i < 5; ++i) {
        BenchmarkRecord r;
        r.instance_id = "v0" + std::to_string(4 + i) + "e06k2s000";
        r.backend = "sa";
        r.num_vertices = 4 + i;
        r.best_energy = 1.0;
        r.opt_energy = 1.0;
        r.gap = i == 4 ? 0.5 : 0.0;  // one miss
        r.hit = i != 4;
        records.push_back(r);
    }
    auto summary = summarize(records);
    REQUIRE(summary.size() == 1);
    CHECK(summary[0].backend == "sa");
    CHECK(summary[0].bucket == "small");
    CHECK(summary[0].rows == 5);
    CHECK(summary[0].hit_rate == doctest::Approx(0.8));
    CHECK(summary[0].gap_median == doctest::Approx(0.0));  // lower interpolation
    CHECK(summary[0].gap_q3 == doctest::Approx(0.0));      // index floor(0.75 * 4) = 3

    std::reverse(records.begin(), records.end());
    auto reversed = summarize(records);
    CHECK(reversed[0].hit_rate == doctest::Approx(summary[0].hit_rate));
    CHECK(reversed[0].gap_median == doctest::Approx(summary[0].gap_median));

    BenchmarkRecord single;
    single.backend = "exact";
    single.num_vertices = 12;
    single.gap = 0.25;
    single.hit = false;
    auto one = summarize({single});
    REQUIRE(one.size() == 1);
    CHECK(one[0].bucket == "large");
    CHECK(one[0].gap_median == doctest::Approx(0.25));
    CHECK(one[0].gap_q1 == doctest::Approx(0.25));

    CHECK_THROWS_AS(summarize({}), ValidationError);
}

TEST_CASE("solver report serialization is deterministic and time-free") {
    auto report = run_backend(toy3(), "exact", {}, 0);
    auto json_a = report.to_json();
    CHECK(json_a.find("wall") == std::string::npos);
    auto report_b = run_backend(toy3(), "exact", {}, 0);
    CHECK(json_a == report_b.to_json());
    CHECK(report.to_text().find("cut_cost: 1") != std::string::npos);
}

TEST_CASE("suite rows are identical under a worker pool") {
    auto config = toy_config();
    auto serial = run_suite(config);
    config.workers = 4;
    auto parallel = run_suite(config);
    std::ostringstream a, b;
    write_records_csv(serial, a);
    write_records_csv(parallel, b);
    CHECK(a.str() == b.str());
}

}  // TEST_SUITE
