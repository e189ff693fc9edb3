#pragma once

#include <cstdint>
#include <vector>

#include "leaksim/dgraph.hpp"

namespace leaksim {

// Shortest-path completion of the sparse lattice over the current shot's
// detection events. Distances are lookups into the graph's precomputed
// tables; realizing paths are reconstructed lazily from the path trees.
struct EventGraph {
    const MatchingGraph *graph = nullptr;
    std::vector<int32_t> events;
    std::vector<double> pair_dist;      // [i * n + j]
    std::vector<double> boundary_dist;  // [i]

    size_t size() const { return events.size(); }
    double pair(size_t i, size_t j) const { return pair_dist[i * events.size() + j]; }
};

EventGraph build_event_graph(const MatchingGraph &graph, const DetectionEventSet &events);

struct Matching {
    std::vector<std::pair<int32_t, int32_t>> pairs;  // indices into eg.events
    std::vector<int32_t> boundary_matches;
    double total_weight = 0.0;
};

// Exact minimum-weight perfect matching with unlimited boundary capacity
// (virtual boundary twin per event, zero-weight twin-twin edges).
Matching min_weight_match(const EventGraph &eg);

struct CorrectionSet {
    std::vector<uint8_t> terminal_flips;  // [data column]
    std::vector<uint8_t> record_flips;    // [round * (d-1) + site]

    bool empty() const;
};

CorrectionSet corrections_from_matching(const Matching &m, const EventGraph &eg);

}  // namespace leaksim
