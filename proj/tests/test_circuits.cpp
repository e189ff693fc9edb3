#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "leaksim/runner.hpp"

using namespace leaksim;

namespace {

NoiseParams quiet() { return NoiseParams{}; }

NoiseParams mode_params(Mode mode) {
    NoiseParams params;
    params.leakage_enabled = mode != Mode::Plain;
    params.teleport_enabled = mode == Mode::Teleport;
    params.init_clears_leakage = mode == Mode::Teleport;
    params.decay_prob = 0.0;
    return params;
}

// Replays the gadget's flat gate list on a caller-prepared frame, including
// the byproduct absorption the full runner performs.
void replay(const Schedule &sched, SystemFrame &frame, const NoiseParams &params,
            RngStream &rng) {
    for (const Gate &g : sched.flat) {
        switch (g.kind) {
            case GateKind::Init:
                noisy_init(frame, g, params, rng);
                break;
            case GateKind::Measure: {
                uint8_t bit = noisy_measure(frame, g, params, rng);
                if (g.role == MeasureRole::Byproduct && bit) {
                    frame.states[g.aux] = compose(frame.states[g.aux], PauliLeak::pauli_z());
                }
                break;
            }
            default:
                apply_gate_noise(frame, g, params, rng);
        }
    }
}

int find_gate(const Schedule &sched, GateKind kind, int qubit, int step) {
    for (size_t i = 0; i < sched.flat.size(); i++) {
        const Gate &g = sched.flat[i];
        if (g.kind == kind && g.q0 == qubit && g.step == step) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

}  // namespace

TEST_CASE("mode names round-trip and unknown names are rejected") {
    for (Mode m : {Mode::Plain, Mode::Leakage, Mode::Teleport}) {
        CHECK(mode_from_name(mode_name(m)) == m);
    }
    CHECK_THROWS_AS(mode_from_name("surface"), std::invalid_argument);
}

TEST_CASE("code parameters are validated") {
    CHECK_THROWS_AS((CodeParams{4, 1, Mode::Plain}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((CodeParams{1, 1, Mode::Plain}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((CodeParams{3, 0, Mode::Plain}.validate()), std::invalid_argument);
    CHECK_NOTHROW((CodeParams{5, 2, Mode::Teleport}.validate()));
    CHECK(CodeParams{5, 1, Mode::Plain}.qubit_count() == 9);
    CHECK(CodeParams{5, 1, Mode::Teleport}.qubit_count() == 10);
}

TEST_CASE("every step touches every qubit exactly once") {
    for (Mode mode : {Mode::Plain, Mode::Teleport}) {
        for (int d : {3, 5, 7}) {
            Schedule sched = build_experiment({d, 3, mode});
            std::vector<int> per_step(sched.steps.size(), 0);
            for (const Gate &g : sched.flat) {
                per_step[g.step] += g.is_two_qubit() ? 2 : 1;
            }
            for (int n : per_step) {
                CHECK(n == sched.qubit_count);
            }
        }
    }
}

TEST_CASE("the standard round is the six-step ancilla sequence") {
    const int d = 5;
    Schedule sched = build_standard_round(d);
    REQUIRE(sched.steps.size() == 6);
    REQUIRE(sched.meas_roles.size() == 1);
    REQUIRE(sched.data_roles.size() == 1);
    for (int k = 0; k < d - 1; k++) {
        int m = sched.meas_roles[0][k];
        CHECK(m == 2 * k + 1);
        CHECK(find_gate(sched, GateKind::Init, m, 0) >= 0);
        CHECK(find_gate(sched, GateKind::Hadamard, m, 1) >= 0);
        CHECK(find_gate(sched, GateKind::Hadamard, m, 4) >= 0);
        int up = find_gate(sched, GateKind::CZ, m, 2);
        int down = find_gate(sched, GateKind::CZ, m, 3);
        REQUIRE(up >= 0);
        REQUIRE(down >= 0);
        CHECK(sched.flat[up].q1 == sched.data_roles[0][k]);
        CHECK(sched.flat[down].q1 == sched.data_roles[0][k + 1]);
        int meas = find_gate(sched, GateKind::Measure, m, 5);
        REQUIRE(meas >= 0);
        CHECK(sched.flat[meas].role == MeasureRole::Syndrome);
        CHECK(sched.flat[meas].site == k);
        CHECK(sched.flat[meas].round == 0);
    }
    // Data qubits only idle (steps 0, 1, 4, 5) or partner CZs.
    for (int c = 0; c < d; c++) {
        for (int step : {0, 1, 4, 5}) {
            CHECK(find_gate(sched, GateKind::Identity, 2 * c, step) >= 0);
        }
    }
}

TEST_CASE("experiment step counts: prep + rounds (+ gadget layers) + readout") {
    for (int d : {3, 5}) {
        for (int T : {1, 2, 4}) {
            Schedule plain = build_experiment({d, T, Mode::Plain});
            CHECK(static_cast<int>(plain.steps.size()) == 1 + 6 * T + 1);
            Schedule tele = build_experiment({d, T, Mode::Teleport});
            CHECK(static_cast<int>(tele.steps.size()) == 1 + 6 * T + 5 * (T - 1) + 1);
        }
    }
}

TEST_CASE("teleport mode alternates the data row every round") {
    const int d = 3;
    const int T = 4;
    Schedule sched = build_experiment({d, T, Mode::Teleport});
    REQUIRE(static_cast<int>(sched.data_roles.size()) == T);
    for (int r = 0; r < T; r++) {
        int offset = r % 2;
        for (int c = 0; c < d; c++) {
            CHECK(sched.data_roles[r][c] == 2 * c + offset);
        }
        for (int k = 0; k < d - 1; k++) {
            CHECK(sched.meas_roles[r][k] == 2 * k + 1 + offset);
        }
    }
    // Terminal readout measures the final round's data row.
    std::vector<int> terminal_qubits;
    for (const Gate &g : sched.flat) {
        if (g.role == MeasureRole::Terminal) {
            terminal_qubits.push_back(g.q0);
        }
    }
    std::sort(terminal_qubits.begin(), terminal_qubits.end());
    std::vector<int> expected = sched.data_roles.back();
    std::sort(expected.begin(), expected.end());
    CHECK(terminal_qubits == expected);
}

TEST_CASE("noiseless runs read all zeros in every mode") {
    for (Mode mode : {Mode::Plain, Mode::Leakage, Mode::Teleport}) {
        for (int d : {3, 5}) {
            for (int T : {1, 4}) {
                Schedule sched = build_experiment({d, T, mode});
                NoiseParams params = mode_params(mode);
                RngStream rng(7, 0);
                SystemFrame frame(sched.qubit_count);
                RunResult run;
                run_schedule(sched, params, rng, frame, run);
                CHECK(std::accumulate(run.syndrome.begin(), run.syndrome.end(), 0) == 0);
                CHECK(std::accumulate(run.terminal.begin(), run.terminal.end(), 0) == 0);
                CHECK(run.leak_injections == 0);
            }
        }
    }
}

TEST_CASE("schedule construction is deterministic") {
    for (Mode mode : {Mode::Plain, Mode::Teleport}) {
        Schedule a = build_experiment({5, 3, mode});
        Schedule b = build_experiment({5, 3, mode});
        CHECK(a.dump() == b.dump());
    }
}

TEST_CASE("finalize rejects overlapping gates within a step") {
    Schedule sched;
    sched.qubit_count = 2;
    Gate g;
    g.kind = GateKind::Identity;
    g.q0 = 0;
    sched.steps.push_back({g, g});
    CHECK_THROWS_AS(sched.finalize(), std::logic_error);
}

TEST_CASE("teleport gadget moves the full Pauli frame to the target") {
    Schedule gadget = build_teleport_gadget(0, 1);
    REQUIRE(gadget.steps.size() == 5);
    CHECK_THROWS_AS(build_teleport_gadget(2, 2), std::invalid_argument);

    NoiseParams params = quiet();
    RngStream rng(21, 0);
    for (char label : {'I', 'X', 'Y', 'Z'}) {
        SystemFrame frame(2);
        frame.states[0] = PauliLeak::from_label(label);
        replay(gadget, frame, params, rng);
        CHECK(frame.states[1] == PauliLeak::from_label(label));
        REQUIRE(frame.record.size() == 1);
        CHECK(frame.record[0].role == MeasureRole::Byproduct);
        frame.record.clear();
    }
}

TEST_CASE("teleport gadget converts source leakage into a clean random Pauli") {
    Schedule gadget = build_teleport_gadget(0, 1);
    NoiseParams params = mode_params(Mode::Teleport);
    RngStream rng(22, 0);
    const int trials = 100000;
    std::map<char, int> counts;
    for (int t = 0; t < trials; ++t) {
        SystemFrame frame(2);
        frame.states[0] = PauliLeak::leak();
        replay(gadget, frame, params, rng);
        CHECK(frame.states[1].leaked == 0);
        counts[frame.states[1].label()]++;
    }
    for (char c : {'I', 'X', 'Y', 'Z'}) {
        double sigma = std::sqrt(trials * 0.25 * 0.75);
        CHECK(std::abs(counts[c] - trials * 0.25) <= 3.0 * sigma);
    }
}

TEST_CASE("a leaked data qubit is flushed by the next gadget layer in teleport mode") {
    const int d = 3;
    const int T = 3;
    Schedule sched = build_experiment({d, T, Mode::Teleport});
    // Leak the center data qubit at the start of round 0.
    int step0 = sched.round_boundaries[0];
    Injection inj;
    inj.gate_index = find_gate(sched, GateKind::Identity, sched.data_roles[0][1], step0);
    REQUIRE(inj.gate_index >= 0);
    inj.f0 = PauliLeak::leak();

    NoiseParams params = mode_params(Mode::Teleport);
    RngStream rng(23, 0);
    SystemFrame frame(sched.qubit_count);
    RunResult run;
    run_schedule(sched, params, rng, frame, run);  // control: stays clean
    run_schedule(sched, params, rng, frame, run, &inj);
    for (const auto &s : frame.states) {
        CHECK(s.leaked == 0);
    }

    // Contrast: without teleportation the same leak survives the whole run.
    Schedule plain = build_experiment({d, T, Mode::Leakage});
    Injection inj2;
    inj2.gate_index = find_gate(plain, GateKind::Identity, 2, plain.round_boundaries[0]);
    REQUIRE(inj2.gate_index >= 0);
    inj2.f0 = PauliLeak::leak();
    NoiseParams lparams = mode_params(Mode::Leakage);
    SystemFrame lframe(plain.qubit_count);
    run_schedule(plain, lparams, rng, lframe, run, &inj2);
    CHECK(lframe.states[2].leaked == 1);
}
