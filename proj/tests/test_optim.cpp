#include <doctest.h>

#include <cmath>
#include <sstream>

#include "memc/errors.hpp"
#include "memc/optim.hpp"

using namespace memc;

namespace {

double sphere_shifted(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += (v - 1.0) * (v - 1.0);
    return s;
}

}  // namespace

TEST_SUITE("optim") {

TEST_CASE("nelder-mead reaches a quadratic minimum from the origin") {
    OptimizerConfig config;
    config.max_evaluations = 500;
    config.tolerance = 1e-12;
    auto result = nelder_mead(sphere_shifted, {0.0, 0.0, 0.0}, config);
    CHECK(result.best_value < 1e-8);
    CHECK(result.evaluations <= 500);
    for (double v : result.best_point) CHECK(v == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("nelder-mead terminates on a constant objective, value unchanged") {
    OptimizerConfig config;
    config.max_evaluations = 200;
    config.tolerance = 1e-10;
    auto result = nelder_mead([](std::span<const double>) { return 7.5; }, {0.3, -0.2}, config);
    CHECK(result.converged);
    CHECK(result.best_value == doctest::Approx(7.5));
    CHECK(result.evaluations <= 200);
}

TEST_CASE("nelder-mead respects bounds on |x|") {
    OptimizerConfig config;
    config.max_evaluations = 400;
    config.tolerance = 1e-12;
    config.bounds = std::vector<std::pair<double, double>>{{-1.0, 1.0}};
    auto result = nelder_mead(
        [](std::span<const double> x) { return std::abs(x[0]); }, {0.5}, config);
    CHECK(result.best_value < 1e-6);
    CHECK(result.best_point[0] >= -1.0);
    CHECK(result.best_point[0] <= 1.0);
}

TEST_CASE("nelder-mead treats non-finite values as rejected vertices") {
    OptimizerConfig config;
    config.max_evaluations = 300;
    config.tolerance = 1e-10;
    auto spiky = [](std::span<const double> x) {
        if (x[0] < 0.0) return std::numeric_limits<double>::quiet_NaN();
        return (x[0] - 0.5) * (x[0] - 0.5);
    };
    auto result = nelder_mead(spiky, {0.9}, config);
    CHECK(result.best_value < 1e-6);

    auto hopeless = [](std::span<const double>) {
        return std::numeric_limits<double>::infinity();
    };
    auto fail = nelder_mead(hopeless, {0.0, 0.0}, config);
    CHECK_FALSE(fail.converged);
    CHECK(fail.trace.entries.size() == 3);  // initial simplex only
}

TEST_CASE("grid scan basics and tie-breaks") {
    auto result = grid_scan([](std::span<const double> x) { return x[0] * x[0]; },
                            {{-1.0, 0.0, 1.0}});
    CHECK(result.best_value == doctest::Approx(0.0));
    CHECK(result.best_point[0] == doctest::Approx(0.0));

    // ties keep the lexicographically first grid point
    auto flat = grid_scan([](std::span<const double>) { return 1.0; }, {{3.0, 1.0}, {2.0, 4.0}});
    CHECK(flat.best_point == std::vector<double>{3.0, 2.0});

    CHECK_THROWS_AS(grid_scan([](std::span<const double>) { return 0.0; }, {{}}),
                    ValidationError);
    std::vector<double> big(101, 0.0);
    CHECK_THROWS_AS(grid_scan([](std::span<const double>) { return 0.0; },
                              {big, big, big}),
                    CapacityError);
}

TEST_CASE("random search: coverage and determinism") {
    OptimizerConfig config;
    config.max_evaluations = 10000;
    config.seed = 5;
    std::vector<std::pair<double, double>> bounds{{-1.0, 1.0}, {-1.0, 1.0}};
    auto quad = [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1]; };
    auto result = random_search(quad, bounds, config);
    CHECK(result.best_value < 0.05 * 2.0);  // within 5% of the objective range

    auto again = random_search(quad, bounds, config);
    CHECK(result.best_point == again.best_point);
    REQUIRE(result.trace.entries.size() == again.trace.entries.size());
    for (std::size_t i = 0; i < result.trace.entries.size(); ++i)
        CHECK(result.trace.entries[i].value == again.trace.entries[i].value);

    OptimizerConfig one = config;
    one.max_evaluations = 1;
    auto first = random_search([](std::span<const double>) { return 2.0; }, bounds, one);
    CHECK(first.best_value == doctest::Approx(2.0));
    CHECK(first.evaluations == 1);
}

TEST_CASE("traces: best-so-far is non-increasing and bounded by the budget") {
    OptimizerConfig config;
    config.max_evaluations = 120;
    config.tolerance = 1e-14;
    auto result = nelder_mead(sphere_shifted, {2.0, -0.5}, config);
    CHECK(static_cast<int>(result.trace.entries.size()) <= 120);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : result.trace.entries) {
        best = std::min(best, e.value);
        CHECK(e.best_so_far == doctest::Approx(best));
    }
    CHECK(result.best_value == doctest::Approx(best));
}

TEST_CASE("trace CSV export") {
    OptimizerTrace trace;
    trace.entries.push_back({1, {0.5, 1.5}, 2.0, 2.0});
    trace.entries.push_back({2, {0.25, 1.0}, 1.5, 1.5});
    std::ostringstream out;
    write_trace_csv(trace, out);
    CHECK(out.str() ==
          "eval,param_0,param_1,objective,best_so_far\n"
          "1,0.5,1.5,2,2\n"
          "2,0.25,1,1.5,1.5\n");
}

}  // TEST_SUITE
