#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "leaksim/runner.hpp"

namespace leaksim {

// Dots live on a (site, layer) lattice: site in [0, d-2], layer in [0, T]
// where layer T is the terminal-readout comparison. One extra vertex stands
// for the spatial boundary.
constexpr int32_t BOUNDARY = -1;

struct Dot {
    int32_t site;
    int32_t layer;
};

// Detection events as sorted dot ids.
using DetectionEventSet = std::vector<int32_t>;

DetectionEventSet extract_detection_events(const RunResult &run, const Schedule &sched);

// One non-identity Pauli component of some gate's depolarizing channel.
struct FaultClass {
    int32_t gate_index;
    PauliLeak f0;
    PauliLeak f1;  // identity unless the gate is a CZ
    double probability;
};

struct PropagatedFault {
    DetectionEventSet events;
    std::vector<int32_t> terminal_flips;                  // data columns
    std::vector<std::pair<int32_t, int32_t>> record_flips;  // (site, round)
};

struct Line {
    int32_t u;
    int32_t v;  // BOUNDARY for boundary lines
    double probability = 0.0;
    double weight = 0.0;
    // Correction metadata of the dominant contributing fault class.
    std::vector<int32_t> terminal_flips;
    std::vector<std::pair<int32_t, int32_t>> record_flips;
};

struct MatchingGraph {
    int distance = 0;
    int rounds = 0;
    int num_dots = 0;  // (rounds + 1) * (distance - 1)

    std::vector<Line> lines;
    std::vector<std::vector<int32_t>> adj;  // dot -> indices of bulk lines
    std::vector<int32_t> boundary_line;     // dot -> line index or -1

    // All-pairs shortest paths over the bulk lattice plus per-dot boundary
    // distances, precomputed once and shared read-only by every shot.
    std::vector<double> dist;         // [u * num_dots + v]
    std::vector<int32_t> parent;      // predecessor of v on the path from u
    std::vector<double> boundary_dist;
    std::vector<int32_t> boundary_via;  // dot whose boundary line realizes it

    int32_t dot_id(int32_t site, int32_t layer) const {
        return layer * (distance - 1) + site;
    }
    Dot dot_at(int32_t id) const { return {id % (distance - 1), id / (distance - 1)}; }
    double pair_distance(int32_t u, int32_t v) const {
        return dist[static_cast<size_t>(u) * num_dots + v];
    }
    int32_t line_between(int32_t u, int32_t v) const;

    std::string dump() const;
};

std::vector<FaultClass> enumerate_fault_classes(const Schedule &sched,
                                                const NoiseParams &params);

// Noiseless propagation of a single injected fault through the schedule.
PropagatedFault propagate_fault(const Schedule &sched, const FaultClass &fault);

MatchingGraph build_graph(const Schedule &sched, const NoiseParams &params);

// Exclusive-or combination of two independent fault probabilities.
inline double xor_merge(double p1, double p2) {
    return p1 * (1.0 - p2) + p2 * (1.0 - p1);
}

}  // namespace leaksim
