#include "leaksim/runner.hpp"

#include <stdexcept>

namespace leaksim {

void run_schedule(const Schedule &sched, const NoiseParams &params, RngStream &rng,
                  SystemFrame &frame, RunResult &out, const Injection *inj) {
    if (frame.states.size() != static_cast<size_t>(sched.qubit_count)) {
        throw std::invalid_argument("frame size does not match schedule");
    }
    frame.reset();
    out.prepare(sched);
    const int sites = sched.num_sites();
    const bool track_leaks = params.leak_prob() > 0.0;

    for (size_t i = 0; i < sched.flat.size(); i++) {
        const Gate &g = sched.flat[i];
        const bool injected = inj && inj->gate_index == static_cast<int32_t>(i);
        switch (g.kind) {
            case GateKind::Init:
                noisy_init(frame, g, params, rng);
                if (injected) {
                    frame.states[g.q0] = compose(frame.states[g.q0], inj->f0);
                }
                break;
            case GateKind::Identity:
            case GateKind::Hadamard:
            case GateKind::CZ: {
                if (track_leaks && g.kind != GateKind::Identity) {
                    bool l0 = frame.states[g.q0].leaked;
                    bool l1 = g.is_two_qubit() && frame.states[g.q1].leaked;
                    apply_gate_noise(frame, g, params, rng);
                    out.leak_injections += (!l0 && frame.states[g.q0].leaked);
                    if (g.is_two_qubit()) {
                        out.leak_injections += (!l1 && frame.states[g.q1].leaked);
                    }
                } else {
                    apply_gate_noise(frame, g, params, rng);
                }
                if (injected) {
                    frame.states[g.q0] = compose(frame.states[g.q0], inj->f0);
                    if (g.is_two_qubit()) {
                        frame.states[g.q1] = compose(frame.states[g.q1], inj->f1);
                    }
                }
                break;
            }
            case GateKind::Measure: {
                if (injected) {
                    frame.states[g.q0] = compose(frame.states[g.q0], inj->f0);
                }
                uint8_t bit = noisy_measure(frame, g, params, rng);
                switch (g.role) {
                    case MeasureRole::Syndrome:
                        out.syndrome[static_cast<size_t>(g.round) * sites + g.site] = bit;
                        break;
                    case MeasureRole::Terminal:
                        out.terminal[g.site] = bit;
                        break;
                    case MeasureRole::Byproduct:
                        if (bit) {
                            frame.states[g.aux] =
                                compose(frame.states[g.aux], PauliLeak::pauli_z());
                        }
                        break;
                    case MeasureRole::None:
                        throw std::logic_error("measurement without a role in schedule");
                }
                break;
            }
        }
    }
}

}  // namespace leaksim
