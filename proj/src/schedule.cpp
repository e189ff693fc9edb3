#include "leaksim/schedule.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace leaksim {

const char *mode_name(Mode m) {
    switch (m) {
        case Mode::Plain:
            return "plain";
        case Mode::Leakage:
            return "leakage";
        case Mode::Teleport:
            return "teleport";
    }
    return "?";
}

Mode mode_from_name(const std::string &name) {
    if (name == "plain") {
        return Mode::Plain;
    }
    if (name == "leakage") {
        return Mode::Leakage;
    }
    if (name == "teleport") {
        return Mode::Teleport;
    }
    throw std::invalid_argument("unknown mode '" + name + "' (expected plain/leakage/teleport)");
}

void CodeParams::validate() const {
    if (distance < 3 || distance % 2 == 0) {
        throw std::invalid_argument("distance must be an odd integer >= 3");
    }
    if (rounds < 1) {
        throw std::invalid_argument("rounds must be >= 1");
    }
}

void Schedule::finalize() {
    flat.clear();
    for (size_t s = 0; s < steps.size(); s++) {
        std::set<int> used;
        auto &step = steps[s];
        std::sort(step.begin(), step.end(),
                  [](const Gate &a, const Gate &b) { return a.q0 < b.q0; });
        for (auto &g : step) {
            g.step = static_cast<int>(s);
            g.validate(qubit_count);
            if (!used.insert(g.q0).second || (g.is_two_qubit() && !used.insert(g.q1).second)) {
                throw std::logic_error("overlapping gates within a step");
            }
            flat.push_back(g);
        }
    }
}

std::string Schedule::dump() const {
    std::ostringstream out;
    for (const auto &g : flat) {
        out << g.step << ' ' << gate_kind_name(g.kind) << ' ' << g.q0;
        if (g.is_two_qubit()) {
            out << ' ' << g.q1;
        }
        switch (g.role) {
            case MeasureRole::Syndrome:
                out << " syndrome " << g.site << ' ' << g.round;
                break;
            case MeasureRole::Terminal:
                out << " terminal " << g.site;
                break;
            case MeasureRole::Byproduct:
                out << " byproduct " << g.aux;
                break;
            case MeasureRole::None:
                break;
        }
        out << '\n';
    }
    return out.str();
}

namespace {

Gate one_qubit(GateKind kind, int q) {
    Gate g;
    g.kind = kind;
    g.q0 = q;
    return g;
}

Gate cz(int a, int b) {
    Gate g;
    g.kind = GateKind::CZ;
    g.q0 = a;
    g.q1 = b;
    return g;
}

// Adds Identity on every qubit the step does not touch.
void fill_idle(std::vector<Gate> &step, int qubit_count) {
    std::vector<char> used(qubit_count, 0);
    for (const auto &g : step) {
        used[g.q0] = 1;
        if (g.is_two_qubit()) {
            used[g.q1] = 1;
        }
    }
    for (int q = 0; q < qubit_count; q++) {
        if (!used[q]) {
            step.push_back(one_qubit(GateKind::Identity, q));
        }
    }
}

// The six steps of one detection round, with the data row shifted by
// `offset` (0 in plain/leakage mode, alternating 0/1 in teleport mode).
void append_round(Schedule &sched, int round, int offset) {
    const int d = sched.distance;
    const int q = sched.qubit_count;
    std::vector<int> data, meas;
    for (int c = 0; c < d; c++) {
        data.push_back(2 * c + offset);
    }
    for (int k = 0; k < d - 1; k++) {
        meas.push_back(2 * k + 1 + offset);
    }
    sched.round_boundaries.push_back(static_cast<int>(sched.steps.size()));
    sched.data_roles.push_back(data);
    sched.meas_roles.push_back(meas);

    std::vector<std::vector<Gate>> six(6);
    for (int k = 0; k < d - 1; k++) {
        six[0].push_back(one_qubit(GateKind::Init, meas[k]));
        six[1].push_back(one_qubit(GateKind::Hadamard, meas[k]));
        six[2].push_back(cz(meas[k], data[k]));      // upper neighbor
        six[3].push_back(cz(meas[k], data[k + 1]));  // lower neighbor
        six[4].push_back(one_qubit(GateKind::Hadamard, meas[k]));
        Gate m = one_qubit(GateKind::Measure, meas[k]);
        m.role = MeasureRole::Syndrome;
        m.site = k;
        m.round = round;
        six[5].push_back(m);
    }
    for (auto &step : six) {
        fill_idle(step, q);
        sched.steps.push_back(std::move(step));
    }
}

// Parallel teleport layer: every data qubit moves to the adjacent row
// (down when the current offset is 0, up when it is 1).
void append_gadget_layer(Schedule &sched, int offset) {
    const int d = sched.distance;
    const int q = sched.qubit_count;
    const int shift = offset == 0 ? 1 : -1;
    std::vector<std::vector<Gate>> five(5);
    for (int c = 0; c < d; c++) {
        int source = 2 * c + offset;
        int target = source + shift;
        five[0].push_back(one_qubit(GateKind::Init, target));
        five[1].push_back(one_qubit(GateKind::Hadamard, target));
        five[2].push_back(cz(source, target));
        five[3].push_back(one_qubit(GateKind::Hadamard, source));
        five[3].push_back(one_qubit(GateKind::Hadamard, target));
        Gate m = one_qubit(GateKind::Measure, source);
        m.role = MeasureRole::Byproduct;
        m.aux = target;
        five[4].push_back(m);
    }
    for (auto &step : five) {
        fill_idle(step, q);
        sched.steps.push_back(std::move(step));
    }
}

// Round-0 preparation of the data row in the all-zeros codeword.
void append_data_prep(Schedule &sched, int offset) {
    std::vector<Gate> step;
    for (int c = 0; c < sched.distance; c++) {
        step.push_back(one_qubit(GateKind::Init, 2 * c + offset));
    }
    fill_idle(step, sched.qubit_count);
    sched.steps.push_back(std::move(step));
}

void append_terminal_readout(Schedule &sched) {
    std::vector<Gate> step;
    const auto &data = sched.data_roles.back();
    for (int c = 0; c < sched.distance; c++) {
        Gate m = one_qubit(GateKind::Measure, data[c]);
        m.role = MeasureRole::Terminal;
        m.site = c;
        step.push_back(m);
    }
    fill_idle(step, sched.qubit_count);
    sched.steps.push_back(std::move(step));
}

}  // namespace

Schedule build_standard_round(int distance) {
    CodeParams params{distance, 1, Mode::Plain};
    params.validate();
    Schedule sched;
    sched.qubit_count = params.qubit_count();
    sched.distance = distance;
    sched.rounds = 1;
    sched.mode = Mode::Plain;
    append_round(sched, 0, 0);
    sched.finalize();
    return sched;
}

Schedule build_teleport_gadget(int source, int target) {
    if (source < 0 || target < 0 || source == target) {
        throw std::invalid_argument("teleport gadget needs two distinct qubits");
    }
    Schedule sched;
    sched.qubit_count = std::max(source, target) + 1;
    std::vector<std::vector<Gate>> five(5);
    five[0].push_back(one_qubit(GateKind::Init, target));
    five[1].push_back(one_qubit(GateKind::Hadamard, target));
    five[2].push_back(cz(source, target));
    five[3].push_back(one_qubit(GateKind::Hadamard, source));
    five[3].push_back(one_qubit(GateKind::Hadamard, target));
    Gate m = one_qubit(GateKind::Measure, source);
    m.role = MeasureRole::Byproduct;
    m.aux = target;
    five[4].push_back(m);
    sched.steps = std::move(five);
    sched.finalize();
    return sched;
}

Schedule build_experiment(const CodeParams &params) {
    params.validate();
    Schedule sched;
    sched.qubit_count = params.qubit_count();
    sched.distance = params.distance;
    sched.rounds = params.rounds;
    sched.mode = params.mode;
    append_data_prep(sched, 0);
    for (int r = 0; r < params.rounds; r++) {
        int offset = params.mode == Mode::Teleport ? r % 2 : 0;
        append_round(sched, r, offset);
        if (params.mode == Mode::Teleport && r + 1 < params.rounds) {
            append_gadget_layer(sched, offset);
        }
    }
    append_terminal_readout(sched);
    sched.finalize();
    return sched;
}

}  // namespace leaksim
