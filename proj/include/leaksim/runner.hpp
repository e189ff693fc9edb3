#pragma once

#include <cstdint>
#include <vector>

#include "leaksim/noise.hpp"
#include "leaksim/schedule.hpp"

namespace leaksim {

// Extra Pauli composed onto a gate's operands: after reset for Init, before
// readout for Measure, after the noise channel otherwise.
struct Injection {
    int32_t gate_index = -1;
    PauliLeak f0;
    PauliLeak f1;  // CZ second operand
};

struct RunResult {
    std::vector<uint8_t> syndrome;  // [round * (d-1) + site]
    std::vector<uint8_t> terminal;  // [data column]
    int64_t leak_injections = 0;

    void prepare(const Schedule &sched) {
        syndrome.assign(static_cast<size_t>(sched.rounds) * sched.num_sites(), 0);
        terminal.assign(sched.distance, 0);
        leak_injections = 0;
    }
};

// Executes the whole schedule under the noise model, filling the syndrome and
// terminal grids. Teleport byproduct bits are absorbed as Z^bit on the gadget
// target and do not enter the grids. `frame` must be sized for the schedule
// and is reset here.
void run_schedule(const Schedule &sched, const NoiseParams &params, RngStream &rng,
                  SystemFrame &frame, RunResult &out, const Injection *inj = nullptr);

}  // namespace leaksim
