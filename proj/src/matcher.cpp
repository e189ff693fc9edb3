#include "leaksim/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "leaksim/blossom.hpp"

namespace leaksim {

EventGraph build_event_graph(const MatchingGraph &graph, const DetectionEventSet &events) {
    EventGraph eg;
    eg.graph = &graph;
    eg.events = events;
    const size_t n = events.size();
    for (int32_t e : events) {
        if (e < 0 || e >= graph.num_dots) {
            throw std::out_of_range("detection event is not a dot of the graph");
        }
    }
    eg.pair_dist.resize(n * n);
    eg.boundary_dist.resize(n);
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            eg.pair_dist[i * n + j] = graph.pair_distance(events[i], events[j]);
        }
        eg.boundary_dist[i] = graph.boundary_dist[events[i]];
    }
    return eg;
}

namespace {

// Resolution for converting edge weights to integers for the exact solver.
// Relative to the largest weight in the instance, so rounding error per edge
// is ~max_w * 2^-36, far below the tolerances that matter downstream.
constexpr double kWeightScale = 68719476736.0;  // 2^36

// Min-weight perfect matching via the boundary-doubling construction mapped
// onto a maximum-weight matching: each event i gets a twin n+i, twins are
// connected all-to-all at full weight M, and transformed weights M - w make
// any perfect matching beat any non-perfect one.
Matching match_general(const EventGraph &eg) {
    const size_t n = eg.size();
    double max_w = 0.0;
    for (double w : eg.pair_dist) {
        max_w = std::max(max_w, w);
    }
    for (double w : eg.boundary_dist) {
        max_w = std::max(max_w, w);
    }
    if (max_w <= 0.0) {
        max_w = 1.0;
    }
    auto scaled = [&](double w) {
        return static_cast<int64_t>(std::llround(w / max_w * kWeightScale));
    };
    const int64_t big = static_cast<int64_t>(n) * scaled(max_w) + 2;

    std::vector<std::vector<int64_t>> weights(2 * n, std::vector<int64_t>(2 * n, 0));
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i + 1; j < n; j++) {
            weights[i][j] = weights[j][i] = big - scaled(eg.pair(i, j));
            weights[n + i][n + j] = weights[n + j][n + i] = big;
        }
        weights[i][n + i] = weights[n + i][i] = big - scaled(eg.boundary_dist[i]);
    }
    std::vector<int> mate = max_weight_matching(weights);

    Matching m;
    for (size_t i = 0; i < n; i++) {
        int partner = mate[i];
        if (partner == static_cast<int>(i + n)) {
            m.boundary_matches.push_back(static_cast<int32_t>(i));
            m.total_weight += eg.boundary_dist[i];
        } else if (partner >= 0 && partner < static_cast<int>(n)) {
            if (partner > static_cast<int>(i)) {
                m.pairs.emplace_back(static_cast<int32_t>(i), static_cast<int32_t>(partner));
                m.total_weight += eg.pair(i, partner);
            }
        } else {
            throw std::logic_error("matching left an event unmatched");
        }
    }
    return m;
}

}  // namespace

Matching min_weight_match(const EventGraph &eg) {
    Matching m;
    const size_t n = eg.size();
    if (n == 0) {
        return m;
    }
    if (n == 1) {
        m.boundary_matches.push_back(0);
        m.total_weight = eg.boundary_dist[0];
        return m;
    }
    if (n == 2) {
        double paired = eg.pair(0, 1);
        double split = eg.boundary_dist[0] + eg.boundary_dist[1];
        if (paired <= split) {
            m.pairs.emplace_back(0, 1);
            m.total_weight = paired;
        } else {
            m.boundary_matches = {0, 1};
            m.total_weight = split;
        }
        return m;
    }
    return match_general(eg);
}

bool CorrectionSet::empty() const {
    auto zero = [](uint8_t b) { return b == 0; };
    return std::all_of(terminal_flips.begin(), terminal_flips.end(), zero) &&
           std::all_of(record_flips.begin(), record_flips.end(), zero);
}

namespace {

void xor_line(const MatchingGraph &g, int32_t li, CorrectionSet &out) {
    const Line &l = g.lines[li];
    for (int32_t c : l.terminal_flips) {
        out.terminal_flips[c] ^= 1;
    }
    const int sites = g.distance - 1;
    for (auto [site, round] : l.record_flips) {
        out.record_flips[static_cast<size_t>(round) * sites + site] ^= 1;
    }
}

// XOR the corrections of every line on the precomputed shortest path u -> v.
void xor_path(const MatchingGraph &g, int32_t u, int32_t v, CorrectionSet &out) {
    const int32_t *parent = g.parent.data() + static_cast<size_t>(u) * g.num_dots;
    while (v != u) {
        int32_t prev = parent[v];
        xor_line(g, g.line_between(v, prev), out);
        v = prev;
    }
}

}  // namespace

CorrectionSet corrections_from_matching(const Matching &m, const EventGraph &eg) {
    const MatchingGraph &g = *eg.graph;
    CorrectionSet out;
    out.terminal_flips.assign(g.distance, 0);
    out.record_flips.assign(static_cast<size_t>(g.rounds) * (g.distance - 1), 0);
    for (auto [i, j] : m.pairs) {
        xor_path(g, eg.events[i], eg.events[j], out);
    }
    for (int32_t i : m.boundary_matches) {
        int32_t via = g.boundary_via[eg.events[i]];
        xor_path(g, eg.events[i], via, out);
        xor_line(g, g.boundary_line[via], out);
    }
    return out;
}

}  // namespace leaksim
