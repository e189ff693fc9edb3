#pragma once

#include <cstdint>
#include <vector>

#include "leaksim/gate.hpp"
#include "leaksim/pauli.hpp"

namespace leaksim {

struct RecordEntry {
    MeasureRole role;
    int32_t site;
    int32_t round;
    uint8_t bit;
};

// Pauli frame of the whole system: the tracked deviation of each qubit from
// the ideal circuit, plus the classical measurement record.
struct SystemFrame {
    std::vector<PauliLeak> states;
    std::vector<RecordEntry> record;

    explicit SystemFrame(size_t qubit_count) : states(qubit_count) {}

    void reset() {
        for (auto &s : states) {
            s = PauliLeak::identity();
        }
        record.clear();
    }
};

// Ideal Clifford conjugation of the frame through one gate. Leaked qubits are
// untouched and the leaked flag never moves to a CZ partner.
inline void conjugate(SystemFrame &frame, const Gate &gate) {
    gate.validate(static_cast<int>(frame.states.size()));
    switch (gate.kind) {
        case GateKind::Identity:
            break;
        case GateKind::Hadamard: {
            PauliLeak &s = frame.states[gate.q0];
            if (!s.leaked) {
                std::swap(s.x, s.z);
            }
            break;
        }
        case GateKind::CZ: {
            PauliLeak &a = frame.states[gate.q0];
            PauliLeak &b = frame.states[gate.q1];
            // X_a -> X_a Z_b, X_b -> Z_a X_b; Z components are fixed.
            uint8_t ax = a.leaked ? 0 : a.x;
            uint8_t bx = b.leaked ? 0 : b.x;
            if (!a.leaked) {
                a.z ^= bx;
            }
            if (!b.leaked) {
                b.z ^= ax;
            }
            break;
        }
        case GateKind::Init:
        case GateKind::Measure:
            throw std::invalid_argument("conjugate handles only Identity/Hadamard/CZ");
    }
}

}  // namespace leaksim
