#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "leaksim/gate.hpp"

namespace leaksim {

enum class Mode { Plain, Leakage, Teleport };

const char *mode_name(Mode m);
Mode mode_from_name(const std::string &name);

struct CodeParams {
    int distance = 3;  // odd, >= 3
    int rounds = 1;    // error-detection rounds
    Mode mode = Mode::Plain;

    void validate() const;
    int qubit_count() const { return mode == Mode::Teleport ? 2 * distance : 2 * distance - 1; }
};

// A time-stepped gate list. Gates within a step act on disjoint qubits; every
// qubit is touched in every step (Identity fills), so depolarizing and decay
// act uniformly in time.
struct Schedule {
    int qubit_count = 0;
    int distance = 0;
    int rounds = 0;
    Mode mode = Mode::Plain;

    std::vector<std::vector<Gate>> steps;
    std::vector<int> round_boundaries;            // step index where each round starts
    std::vector<std::vector<int>> data_roles;     // per round: column -> qubit index
    std::vector<std::vector<int>> meas_roles;     // per round: stabilizer site -> qubit index

    // Execution order: steps in order, gates within a step by first operand.
    std::vector<Gate> flat;

    int num_sites() const { return distance - 1; }
    void finalize();  // fills `flat`, checks per-step disjointness
    std::string dump() const;
};

// One 6-step error-detection round for a distance-d code (Fig-style layout:
// ancilla Init, H, CZ up, CZ down, H, Measure; Identity on idle qubits).
Schedule build_standard_round(int distance);

// One-bit teleportation of `source` onto `target` (5 steps). The readout is a
// Byproduct measurement whose Z^bit lands on `target`.
Schedule build_teleport_gadget(int source, int target);

// Full experiment: `rounds` detection rounds plus a terminal transversal data
// readout. Teleport mode interleaves a parallel gadget layer after every
// round but the last, alternating the data rows down then up.
Schedule build_experiment(const CodeParams &params);

}  // namespace leaksim
