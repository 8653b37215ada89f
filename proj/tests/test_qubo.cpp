#include <doctest.h>

#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "memc/errors.hpp"
#include "memc/qubo.hpp"
#include "memc/rng.hpp"

using namespace memc;

namespace {

std::vector<std::uint8_t> bits_of(std::uint64_t b, int n) { return bits_from_basis_index(b, n); }

// spins z = 1 - 2x
std::vector<std::int8_t> spins_of(std::uint64_t b, int n) {
    std::vector<std::int8_t> z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = ((b >> i) & 1) ? -1 : 1;
    return z;
}

QuboModel random_model(int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<QuboTerm> terms;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (rng.uniform() < 0.7) terms.push_back({i, j, rng.uniform(-3.0, 3.0)});
    return QuboModel::from_coefficients(n, std::move(terms), rng.uniform(-2.0, 2.0));
}

}  // namespace

TEST_SUITE("qubo") {

TEST_CASE("variable index is the (u, t) bijection") {
    auto inst = toy3();
    auto idx = VariableIndex::full(inst);
    CHECK(idx.size() == 6);
    CHECK(idx.index_of(0, 0) == 0);
    CHECK(idx.index_of(1, 1) == 3);
    CHECK(idx.index_of(2, 1) == 5);
    for (int flat = 0; flat < idx.size(); ++flat) {
        auto [u, t] = idx.vertex_terminal(flat);
        int tpos = t == 0 ? 0 : 1;
        CHECK(idx.index_of(u, tpos) == flat);
    }
    auto red = VariableIndex::reduced(inst);
    CHECK(red.size() == 2);
    CHECK(red.vertices() == std::vector<int>{1});
}

TEST_CASE("toy3 energies match the hand expansion at alpha = 4") {
    auto inst = toy3();
    auto model = build_qubo(inst, 4.0);
    CHECK(model.penalty_weight() == doctest::Approx(4.0));
    // default alpha is 1 + total cost = 4 as well
    CHECK(build_qubo(inst).penalty_weight() == doctest::Approx(4.0));

    // optimal feasible assignment (0->0, 1->2, 2->2): bits x0, x3, x5
    std::vector<std::uint8_t> opt = {1, 0, 0, 1, 0, 1};
    CHECK(model.energy(opt) == doctest::Approx(1.0));
    // all-zero: alpha * |V|
    CHECK(model.energy(std::vector<std::uint8_t>(6, 0)) == doctest::Approx(12.0));
    // a -> t1 cuts the cost-2 edge
    std::vector<std::uint8_t> a1 = {1, 0, 1, 0, 0, 1};
    CHECK(model.energy(a1) == doctest::Approx(2.0));
}

TEST_CASE("energy equals the literal Hamiltonian on every bitstring") {
    for (bool reduced : {false, true}) {
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            auto inst = test::random_instance(5 + static_cast<int>(seed % 2), 2, seed);
            auto model = build_qubo(inst, std::nullopt, reduced);
            const double alpha = model.penalty_weight();
            const int n = model.size();
            REQUIRE(n <= 14);
            for (std::uint64_t b = 0; b < (1ULL << n); ++b) {
                auto bits = bits_of(b, n);
                CHECK(model.energy(bits) ==
                      doctest::Approx(test::direct_hamiltonian(inst, alpha, bits, reduced))
                          .epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("default alpha separates infeasible strings from the optimum") {
    for (auto inst : {toy3(), toy4()}) {
        auto model = build_qubo(inst);
        auto idx = model.index();
        double best_feasible = 1e300, best_infeasible = 1e300;
        for_each_energy(model, [&](const std::vector<std::uint8_t>& bits, double e) {
            if (decode_bitstring(idx, bits).feasible())
                best_feasible = std::min(best_feasible, e);
            else
                best_infeasible = std::min(best_infeasible, e);
        });
        CHECK(best_infeasible > best_feasible);
        // any single one-hot violation costs at least alpha - total edge budget
        CHECK(best_infeasible >=
              best_feasible + model.penalty_weight() - inst.total_edge_cost() - 1e-9);
    }
}

TEST_CASE("feasible one-hot energies equal the classical cut cost") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto inst = test::random_instance(6, 2, seed);
        auto model = build_qubo(inst);
        const auto& idx = model.index();
        for_each_energy(model, [&](const std::vector<std::uint8_t>& bits, double e) {
            auto decoded = decode_bitstring(idx, bits);
            if (!decoded.feasible()) return;
            auto cut = validate_solution(inst, *decoded.assignment);
            CHECK(e == doctest::Approx(cut.cut_cost).epsilon(1e-12));
        });
    }
}

TEST_CASE("rejects bad inputs") {
    auto inst = toy3();
    CHECK_THROWS_AS(build_qubo(inst, -1.0), ValidationError);
    CHECK_THROWS_AS(build_qubo(inst, 0.0), ValidationError);
    auto model = build_qubo(inst);
    CHECK_THROWS_AS(model.energy(std::vector<std::uint8_t>(5, 0)), ValidationError);
}

TEST_CASE("single-variable Ising mapping by hand") {
    auto model = QuboModel::from_coefficients(1, {{0, 0, 1.0}});
    auto ising = to_ising(model);
    CHECK(ising.fields()[0] == doctest::Approx(-0.5));
    CHECK(ising.offset() == doctest::Approx(0.5));
    std::vector<std::int8_t> up = {1}, down = {-1};
    CHECK(ising.energy(up) + ising.offset() == doctest::Approx(0.0));   // x = 0
    CHECK(ising.energy(down) + ising.offset() == doctest::Approx(1.0));  // x = 1
}

TEST_CASE("all-zero QUBO maps to all-zero Ising") {
    auto model = QuboModel::from_coefficients(3, {}, 2.5);
    auto ising = to_ising(model);
    CHECK(ising.couplings().empty());
    for (double h : ising.fields()) CHECK(h == 0.0);
    CHECK(ising.offset() == doctest::Approx(2.5));
}

TEST_CASE("Ising mapping identity, exhaustive") {
    // the coupling/field/offset closed form is only trusted because this
    // enumeration oracle agrees with it
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto model = random_model(2 + static_cast<int>(seed % 7), seed);
        auto ising = to_ising(model);
        const int n = model.size();
        double worst = 0.0;
        for (std::uint64_t b = 0; b < (1ULL << n); ++b) {
            double qe = model.energy(bits_of(b, n));
            double ie = ising.energy(spins_of(b, n)) + ising.offset();
            worst = std::max(worst, std::abs(ie - qe));
        }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("Ising mapping identity, random spot checks beyond exhaustive sizes") {
    auto model = random_model(30, 77);
    auto ising = to_ising(model);
    Rng rng(123);
    std::vector<std::uint8_t> bits(30);
    std::vector<std::int8_t> spins(30);
    double worst = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
        for (int i = 0; i < 30; ++i) {
            bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(rng.bounded(2));
            spins[static_cast<std::size_t>(i)] = bits[static_cast<std::size_t>(i)] ? -1 : 1;
        }
        worst = std::max(worst,
                         std::abs(ising.energy(spins) + ising.offset() - model.energy(bits)));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("Ising argmin set maps onto the QUBO argmin set") {
    auto model = build_qubo(toy3());
    auto ising = to_ising(model);
    const int n = model.size();
    double qmin = 1e300, imin = 1e300;
    std::vector<std::uint64_t> qarg, iarg;
    for (std::uint64_t b = 0; b < (1ULL << n); ++b) {
        double qe = model.energy(bits_of(b, n));
        if (qe < qmin - 1e-12) { qmin = qe; qarg.clear(); }
        if (std::abs(qe - qmin) <= 1e-12) qarg.push_back(b);
        double ie = ising.energy(spins_of(b, n));
        if (ie < imin - 1e-12) { imin = ie; iarg.clear(); }
        if (std::abs(ie - imin) <= 1e-12) iarg.push_back(b);
    }
    CHECK(qmin == doctest::Approx(1.0));
    CHECK(qarg == iarg);  // identical basis indices under x = (1 - z) / 2
}

TEST_CASE("toy3 spin minimum is the optimal cut cost") {
    auto ising = to_ising(build_qubo(toy3()));
    double best = 1e300;
    for (std::uint64_t b = 0; b < 64; ++b)
        best = std::min(best, ising.energy(spins_of(b, 6)) + ising.offset());
    CHECK(best == doctest::Approx(1.0));
}

TEST_CASE("decode: optimum, all-zero, double assignment") {
    auto inst = toy3();
    auto model = build_qubo(inst);
    const auto& idx = model.index();

    auto good = decode_bitstring(idx, std::vector<std::uint8_t>{1, 0, 0, 1, 0, 1});
    REQUIRE(good.feasible());
    CHECK(*good.assignment == std::vector<int>{0, 2, 2});

    auto zero = decode_bitstring(idx, std::vector<std::uint8_t>(6, 0));
    CHECK_FALSE(zero.feasible());
    CHECK(zero.violations.size() == 3);
    for (const auto& v : zero.violations) CHECK(v.kind == DecodeViolation::Kind::Unassigned);

    auto both = decode_bitstring(idx, std::vector<std::uint8_t>{1, 0, 1, 1, 0, 1});
    CHECK_FALSE(both.feasible());
    REQUIRE(both.violations.size() == 1);
    CHECK(both.violations[0].vertex == 1);
    CHECK(both.violations[0].kind == DecodeViolation::Kind::MultipleTerminals);

    auto wrong = decode_bitstring(idx, std::vector<std::uint8_t>{0, 1, 1, 0, 0, 1});
    CHECK_FALSE(wrong.feasible());
    REQUIRE(wrong.violations.size() == 1);
    CHECK(wrong.violations[0].kind == DecodeViolation::Kind::TerminalMisassigned);
}

TEST_CASE("reduced decode assigns terminals implicitly") {
    auto inst = toy4();
    auto model = build_qubo(inst, std::nullopt, true);
    CHECK(model.size() == 4);
    auto decoded = decode_bitstring(model.index(), std::vector<std::uint8_t>{1, 0, 1, 0});
    REQUIRE(decoded.feasible());
    CHECK(*decoded.assignment == std::vector<int>{0, 0, 2, 0});
}

TEST_CASE("reduced and full encodings agree on the optimum") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto inst = test::random_instance(6, seed % 2 ? 3 : 2, seed);
        double best_full = 1e300, best_red = 1e300;
        for_each_energy(build_qubo(inst),
                        [&](const std::vector<std::uint8_t>&, double e) { best_full = std::min(best_full, e); });
        for_each_energy(build_qubo(inst, std::nullopt, true),
                        [&](const std::vector<std::uint8_t>&, double e) { best_red = std::min(best_red, e); });
        CHECK(best_full == doctest::Approx(best_red).epsilon(1e-12));
    }
}

TEST_CASE("export format") {
    auto model = QuboModel::from_coefficients(3, {{0, 1, 1.5}, {2, 2, -1.0}}, 0.5);
    std::ostringstream out;
    model.write(out);
    CHECK(out.str() == "qubo 3 0.5 0\n0 1 1.5\n2 2 -1\n");
}

TEST_CASE("upper-triangular canonicalization merges symmetric entries") {
    auto model = QuboModel::from_coefficients(2, {{1, 0, 1.0}, {0, 1, 2.0}});
    CHECK(model.terms().size() == 1);
    CHECK(model.coefficient(0, 1) == doctest::Approx(3.0));
    CHECK(model.coefficient(1, 0) == doctest::Approx(3.0));
    std::vector<std::uint8_t> ones = {1, 1};
    CHECK(model.energy(ones) == doctest::Approx(3.0));
}

}  // TEST_SUITE
