#pragma once

#include <cstdint>
#include <stdexcept>

namespace leaksim {

enum class GateKind : uint8_t { Init, Measure, Identity, Hadamard, CZ };

// What a Measure gate's classical bit means to the rest of the run.
enum class MeasureRole : uint8_t {
    None,      // not a measurement
    Syndrome,  // stabilizer readout; feeds detection events at (site, round)
    Terminal,  // final transversal data readout of logical column `site`
    Byproduct  // teleport gadget readout; X^bit is absorbed onto `aux` qubit
};

struct Gate {
    GateKind kind;
    int32_t q0 = -1;
    int32_t q1 = -1;  // CZ only
    int32_t step = 0;

    MeasureRole role = MeasureRole::None;
    int32_t site = -1;   // Syndrome: stabilizer index; Terminal: data column
    int32_t round = -1;  // Syndrome only
    int32_t aux = -1;    // Byproduct: qubit receiving the X^bit correction

    bool is_two_qubit() const { return kind == GateKind::CZ; }

    void validate(int qubit_count) const {
        if (q0 < 0 || q0 >= qubit_count) {
            throw std::out_of_range("gate operand out of range");
        }
        if (kind == GateKind::CZ) {
            if (q1 < 0 || q1 >= qubit_count || q1 == q0) {
                throw std::out_of_range("CZ needs two distinct in-range operands");
            }
        } else if (q1 != -1) {
            throw std::invalid_argument("one-qubit gate with two operands");
        }
    }
};

inline const char *gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::Init:
            return "INIT";
        case GateKind::Measure:
            return "MEASURE";
        case GateKind::Identity:
            return "ID";
        case GateKind::Hadamard:
            return "H";
        case GateKind::CZ:
            return "CZ";
    }
    return "?";
}

}  // namespace leaksim
