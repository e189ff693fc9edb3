#pragma once

#include <stdexcept>

#include "leaksim/frame.hpp"
#include "leaksim/rng.hpp"

namespace leaksim {

struct NoiseParams {
    double p = 0.0;            // depolarizing probability per gate
    double leak_factor = 0.1;  // leakage probability per Hadamard/CZ is leak_factor * p
    double decay_prob = 0.01;  // per-gate probability of L decaying to a random Pauli
    bool leakage_enabled = false;
    bool teleport_enabled = false;
    // Whether re-initialization removes the leaked flag. A reset pulse acts
    // on the computational subspace only, so by default leakage survives it.
    bool init_clears_leakage = false;

    void validate() const {
        if (p < 0.0 || p > 1.0) {
            throw std::invalid_argument("p must be in [0, 1]");
        }
        if (leak_factor < 0.0 || leak_factor * p > 1.0) {
            throw std::invalid_argument("leak_factor * p must be in [0, 1]");
        }
        if (decay_prob < 0.0 || decay_prob > 1.0) {
            throw std::invalid_argument("decay_prob must be in [0, 1]");
        }
    }

    double leak_prob() const { return leakage_enabled ? leak_factor * p : 0.0; }
};

namespace detail {

inline PauliLeak uniform_nonidentity(RngStream &rng) {
    static constexpr PauliLeak table[3] = {
        PauliLeak::pauli_x(), PauliLeak::pauli_y(), PauliLeak::pauli_z()};
    return table[rng.uniform_index(3)];
}

inline PauliLeak uniform_pauli(RngStream &rng) {
    static constexpr PauliLeak table[4] = {
        PauliLeak::identity(), PauliLeak::pauli_x(), PauliLeak::pauli_y(),
        PauliLeak::pauli_z()};
    return table[rng.uniform_index(4)];
}

inline PauliLeak pauli_from_code(uint32_t code) {
    return {static_cast<uint8_t>(code & 1), static_cast<uint8_t>(code >> 1), 0};
}

}  // namespace detail

// One noisy Identity/Hadamard/CZ. Sub-steps in fixed order: ideal conjugation,
// CZ-partner scrambling, depolarizing fault, leakage injection, leakage decay.
inline void apply_gate_noise(SystemFrame &frame, const Gate &gate, const NoiseParams &params,
                             RngStream &rng) {
    if (gate.kind != GateKind::Identity && gate.kind != GateKind::Hadamard &&
        gate.kind != GateKind::CZ) {
        throw std::invalid_argument("apply_gate_noise expects Identity/Hadamard/CZ");
    }
    conjugate(frame, gate);

    PauliLeak &a = frame.states[gate.q0];
    const bool two_qubit = gate.is_two_qubit();

    if (two_qubit) {
        PauliLeak &b = frame.states[gate.q1];
        if (a.leaked != b.leaked) {
            PauliLeak &partner = a.leaked ? b : a;
            partner = detail::uniform_pauli(rng);
        }
    }

    if (params.p > 0.0) {
        double u = rng.uniform();
        if (u < params.p) {
            if (two_qubit) {
                // Uniform over the 15 non-identity two-qubit Paulis.
                uint32_t idx = 1 + static_cast<uint32_t>(u / params.p * 15.0);
                if (idx > 15) {
                    idx = 15;
                }
                PauliLeak fa = detail::pauli_from_code(idx & 3);
                PauliLeak fb = detail::pauli_from_code(idx >> 2);
                frame.states[gate.q0] = compose(frame.states[gate.q0], fa);
                frame.states[gate.q1] = compose(frame.states[gate.q1], fb);
            } else {
                uint32_t idx = static_cast<uint32_t>(u / params.p * 3.0);
                if (idx > 2) {
                    idx = 2;
                }
                static constexpr PauliLeak table[3] = {
                    PauliLeak::pauli_x(), PauliLeak::pauli_y(), PauliLeak::pauli_z()};
                frame.states[gate.q0] = compose(frame.states[gate.q0], table[idx]);
            }
        }
    }

    const double lp = params.leak_prob();
    if (lp > 0.0 && gate.kind != GateKind::Identity) {
        if (rng.bernoulli(lp)) {
            frame.states[gate.q0] = PauliLeak::leak();
        }
        if (two_qubit && rng.bernoulli(lp)) {
            frame.states[gate.q1] = PauliLeak::leak();
        }
    }

    if (params.decay_prob > 0.0) {
        if (frame.states[gate.q0].leaked && rng.bernoulli(params.decay_prob)) {
            frame.states[gate.q0] = detail::uniform_pauli(rng);
        }
        if (two_qubit && frame.states[gate.q1].leaked && rng.bernoulli(params.decay_prob)) {
            frame.states[gate.q1] = detail::uniform_pauli(rng);
        }
    }
}

// Init: reset to I, then a depolarizing fault with probability p. A leaked
// qubit does not respond to the computational-subspace reset: it stays L
// until it decays (see NoiseParams::init_clears_leakage).
inline void noisy_init(SystemFrame &frame, const Gate &gate, const NoiseParams &params,
                       RngStream &rng) {
    if (gate.kind != GateKind::Init) {
        throw std::invalid_argument("noisy_init expects an Init gate");
    }
    gate.validate(static_cast<int>(frame.states.size()));
    if (frame.states[gate.q0].leaked && !params.init_clears_leakage) {
        return;
    }
    frame.states[gate.q0] = PauliLeak::identity();
    if (params.p > 0.0 && rng.bernoulli(params.p)) {
        frame.states[gate.q0] = detail::uniform_nonidentity(rng);
    }
}

// Measure: pre-readout depolarizing fault, then Z-basis readout of the frame.
// A leaked qubit reports a coin flip and stays leaked. Returns the bit and
// appends it to the record.
inline uint8_t noisy_measure(SystemFrame &frame, const Gate &gate, const NoiseParams &params,
                             RngStream &rng) {
    if (gate.kind != GateKind::Measure) {
        throw std::invalid_argument("noisy_measure expects a Measure gate");
    }
    gate.validate(static_cast<int>(frame.states.size()));
    PauliLeak &s = frame.states[gate.q0];
    if (params.p > 0.0 && rng.bernoulli(params.p)) {
        s = compose(s, detail::uniform_nonidentity(rng));
    }
    uint8_t bit;
    if (s.leaked) {
        bit = static_cast<uint8_t>(rng.uniform_index(2));
    } else {
        bit = s.x;
    }
    frame.record.push_back({gate.role, gate.site, gate.round, bit});
    return bit;
}

}  // namespace leaksim
