#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "leaksim/sweep.hpp"

using namespace leaksim;

TEST_CASE("config validation rejects malformed sweeps") {
    SweepConfig c;
    c.distances = {4};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.distances = {3};
    c.p_values = {0.0};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.p_values = {1.5};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.p_values = {1e-3};
    c.shots = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.shots = 100;
    c.workers = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.workers = 2;
    c.modes.clear();
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.modes = {Mode::Leakage};
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("default round count is max(10, 3d)") {
    SweepConfig c;
    CHECK(c.rounds_for(3) == 10);
    CHECK(c.rounds_for(5) == 15);
    CHECK(c.rounds_for(7) == 21);
    c.rounds = 4;
    CHECK(c.rounds_for(7) == 4);
}

TEST_CASE("noise_for wires the per-mode leakage semantics") {
    SweepConfig c;
    c.leak_factor = 0.2;
    c.decay_prob = 0.05;

    NoiseParams plain = c.noise_for(Mode::Plain, 2e-3);
    CHECK(plain.p == 2e-3);
    CHECK_FALSE(plain.leakage_enabled);
    CHECK(plain.leak_prob() == 0.0);

    NoiseParams leak = c.noise_for(Mode::Leakage, 2e-3);
    CHECK(leak.leakage_enabled);
    CHECK_FALSE(leak.teleport_enabled);
    CHECK_FALSE(leak.init_clears_leakage);
    CHECK(leak.leak_prob() == doctest::Approx(0.2 * 2e-3));
    CHECK(leak.decay_prob == 0.05);

    NoiseParams tele = c.noise_for(Mode::Teleport, 2e-3);
    CHECK(tele.leakage_enabled);
    CHECK(tele.teleport_enabled);
    CHECK(tele.init_clears_leakage);
}

TEST_CASE("config serializes and parses losslessly") {
    SweepConfig c;
    c.distances = {3, 5, 7};
    c.p_values = {1e-3, 2e-3};
    c.modes = {Mode::Plain, Mode::Teleport};
    c.shots = 12345;
    c.rounds = 7;
    c.leak_factor = 0.15;
    c.decay_prob = 0.02;
    c.master_seed = 777;
    c.workers = 4;
    c.out_path = "results.csv";
    c.format = OutputFormat::Json;
    CHECK(SweepConfig::parse(c.serialize()) == c);
    CHECK_THROWS(SweepConfig::parse("not json"));
    CHECK_THROWS(SweepConfig::parse("{}"));
}

TEST_CASE("csv output is stable and machine-parsable") {
    CHECK(csv_header() == "mode,d,p,T,shots,failures,p_round,ci_low,ci_high,seed");
    SweepRow r{Mode::Leakage, 5, 2e-3, 15, 1000000, 1610, 0.000161116763578,
               0.000153437052697, 0.000169180495699, 11};
    CHECK(csv_row(r) ==
          "leakage,5,0.002,15,1000000,1610,0.000161116763578,0.000153437052697,"
          "0.000169180495699,11");
}

TEST_CASE("json output round-trips the rows") {
    SweepRow r{Mode::Teleport, 3, 1e-3, 10, 5000, 17, 3.4e-4, 2.1e-4, 5.4e-4, 42};
    std::ostringstream out;
    write_json({r, r}, out);
    auto arr = nlohmann::json::parse(out.str());
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 2);
    CHECK(arr[0]["mode"] == "teleport");
    CHECK(arr[0]["d"] == 3);
    CHECK(arr[0]["p"] == doctest::Approx(1e-3));
    CHECK(arr[0]["T"] == 10);
    CHECK(arr[0]["shots"] == 5000);
    CHECK(arr[0]["failures"] == 17);
    CHECK(arr[0]["p_round"] == doctest::Approx(3.4e-4));
    CHECK(arr[0]["seed"] == 42);
}

TEST_CASE("run_sweep walks the grid in deterministic order and replays exactly") {
    SweepConfig c;
    c.distances = {3};
    c.p_values = {4e-3, 8e-3};
    c.modes = {Mode::Plain, Mode::Leakage};
    c.shots = 2000;
    c.rounds = 4;
    c.master_seed = 5;
    c.workers = 2;

    auto collect = [&]() {
        std::vector<std::string> rows;
        run_sweep(c, [&](const SweepRow &r) { rows.push_back(csv_row(r)); });
        return rows;
    };
    std::vector<std::string> first = collect();
    REQUIRE(first.size() == 4);
    CHECK(first[0].rfind("plain,3,0.004", 0) == 0);
    CHECK(first[1].rfind("plain,3,0.008", 0) == 0);
    CHECK(first[2].rfind("leakage,3,0.004", 0) == 0);
    CHECK(first[3].rfind("leakage,3,0.008", 0) == 0);
    CHECK(collect() == first);

    c.workers = 5;  // worker count must not change the numbers
    CHECK(collect() == first);
}

TEST_CASE("fit_slope recovers a synthetic power law from the lowest points") {
    std::vector<SweepRow> rows;
    for (double p : {8e-3, 1e-3, 2e-3, 4e-3}) {
        SweepRow r{};
        r.mode = Mode::Plain;
        r.distance = 3;
        r.p = p;
        r.failures = 100;
        r.p_round = 0.3 * std::pow(p, 2.5);
        rows.push_back(r);
    }
    SlopeFit fit = fit_slope(rows, 3);
    CHECK(fit.points_used == 3);
    CHECK(fit.exponent == doctest::Approx(2.5));
    CHECK(std::exp(fit.intercept) == doctest::Approx(0.3));
    CHECK(fit.r_squared == doctest::Approx(1.0));

    // Points without failures are skipped; too few points is an error.
    rows[1].failures = 0;
    rows[2].failures = 0;
    CHECK_THROWS_AS(fit_slope(rows, 3), std::runtime_error);
}
