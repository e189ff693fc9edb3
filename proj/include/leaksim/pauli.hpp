#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace leaksim {

// Single-qubit error label: I, X, Y, Z, or leaked (L).
// Y is x=1,z=1 so that composition of unleaked states is bitwise XOR.
// A leaked qubit always carries normalized (0,0) Pauli bits.
struct PauliLeak {
    uint8_t x = 0;
    uint8_t z = 0;
    uint8_t leaked = 0;

    static constexpr PauliLeak identity() { return {0, 0, 0}; }
    static constexpr PauliLeak pauli_x() { return {1, 0, 0}; }
    static constexpr PauliLeak pauli_y() { return {1, 1, 0}; }
    static constexpr PauliLeak pauli_z() { return {0, 1, 0}; }
    static constexpr PauliLeak leak() { return {0, 0, 1}; }

    bool is_identity() const { return !x && !z && !leaked; }

    bool operator==(const PauliLeak &o) const {
        return x == o.x && z == o.z && leaked == o.leaked;
    }
    bool operator!=(const PauliLeak &o) const { return !(*this == o); }

    char label() const {
        if (leaked) {
            return 'L';
        }
        if (x && z) {
            return 'Y';
        }
        if (x) {
            return 'X';
        }
        if (z) {
            return 'Z';
        }
        return 'I';
    }

    static PauliLeak from_label(char c) {
        switch (c) {
            case 'I':
                return identity();
            case 'X':
                return pauli_x();
            case 'Y':
                return pauli_y();
            case 'Z':
                return pauli_z();
            case 'L':
                return leak();
            default:
                throw std::invalid_argument(std::string("unknown error label '") + c + "'");
        }
    }
};

// Composition with global phase discarded. Leakage absorbs everything.
inline PauliLeak compose(PauliLeak a, PauliLeak b) {
    if (a.leaked || b.leaked) {
        return PauliLeak::leak();
    }
    return {static_cast<uint8_t>(a.x ^ b.x), static_cast<uint8_t>(a.z ^ b.z), 0};
}

}  // namespace leaksim
