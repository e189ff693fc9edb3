#include "leaksim/dgraph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace leaksim {

DetectionEventSet extract_detection_events(const RunResult &run, const Schedule &sched) {
    const int sites = sched.num_sites();
    const int rounds = sched.rounds;
    if (run.syndrome.size() != static_cast<size_t>(rounds) * sites ||
        run.terminal.size() != static_cast<size_t>(sched.distance)) {
        throw std::invalid_argument("measurement record does not match schedule");
    }
    DetectionEventSet events;
    for (int k = 0; k < sites; k++) {
        uint8_t prev = 0;
        for (int r = 0; r < rounds; r++) {
            uint8_t bit = run.syndrome[static_cast<size_t>(r) * sites + k];
            if (bit != prev) {
                events.push_back(r * sites + k);
            }
            prev = bit;
        }
        uint8_t parity = run.terminal[k] ^ run.terminal[k + 1];
        if (parity != prev) {
            events.push_back(rounds * sites + k);
        }
    }
    std::sort(events.begin(), events.end());
    return events;
}

std::vector<FaultClass> enumerate_fault_classes(const Schedule &sched,
                                                const NoiseParams &params) {
    if (params.p <= 0.0) {
        throw std::invalid_argument("fault enumeration needs p > 0 (weights undefined at p = 0)");
    }
    static constexpr PauliLeak kSingle[3] = {
        PauliLeak::pauli_x(), PauliLeak::pauli_y(), PauliLeak::pauli_z()};
    std::vector<FaultClass> classes;
    for (size_t i = 0; i < sched.flat.size(); i++) {
        const Gate &g = sched.flat[i];
        if (g.kind == GateKind::CZ) {
            for (uint32_t code = 1; code < 16; code++) {
                classes.push_back({static_cast<int32_t>(i), detail::pauli_from_code(code & 3),
                                   detail::pauli_from_code(code >> 2), params.p / 15.0});
            }
        } else {
            for (const auto &f : kSingle) {
                classes.push_back(
                    {static_cast<int32_t>(i), f, PauliLeak::identity(), params.p / 3.0});
            }
        }
    }
    return classes;
}

PropagatedFault propagate_fault(const Schedule &sched, const FaultClass &fault) {
    if (fault.gate_index < 0 || fault.gate_index >= static_cast<int32_t>(sched.flat.size())) {
        throw std::out_of_range("fault references a gate outside the schedule");
    }
    NoiseParams quiet;  // p = 0, leakage off
    quiet.leakage_enabled = false;
    quiet.decay_prob = 0.0;
    RngStream rng(0, 0);
    SystemFrame frame(sched.qubit_count);
    RunResult run;
    Injection inj{fault.gate_index, fault.f0, fault.f1};
    run_schedule(sched, quiet, rng, frame, run, &inj);

    PropagatedFault out;
    out.events = extract_detection_events(run, sched);
    const int sites = sched.num_sites();
    for (int r = 0; r < sched.rounds; r++) {
        for (int k = 0; k < sites; k++) {
            if (run.syndrome[static_cast<size_t>(r) * sites + k]) {
                out.record_flips.emplace_back(k, r);
            }
        }
    }
    for (int c = 0; c < sched.distance; c++) {
        if (run.terminal[c]) {
            out.terminal_flips.push_back(c);
        }
    }
    return out;
}

int32_t MatchingGraph::line_between(int32_t u, int32_t v) const {
    for (int32_t li : adj[u]) {
        const Line &l = lines[li];
        if (l.u == v || l.v == v) {
            return li;
        }
    }
    throw std::logic_error("no line between requested dots");
}

namespace {

struct Contribution {
    double probability;
    const PropagatedFault *metadata;
};

using LineKey = std::pair<int32_t, int32_t>;  // (u, v) with u < v, v may be BOUNDARY

LineKey key_for(const DetectionEventSet &events) {
    if (events.size() == 1) {
        return {events[0], BOUNDARY};
    }
    return {std::min(events[0], events[1]), std::max(events[0], events[1])};
}

void run_dijkstra(const MatchingGraph &g, int32_t src, std::vector<double> &dist,
                  std::vector<int32_t> &parent) {
    const int n = g.num_dots;
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    std::fill(parent.begin(), parent.end(), -1);
    using Item = std::pair<double, int32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    dist[src] = 0.0;
    parent[src] = src;
    heap.push({0.0, src});
    while (!heap.empty()) {
        auto [du, u] = heap.top();
        heap.pop();
        if (du > dist[u]) {
            continue;
        }
        for (int32_t li : g.adj[u]) {
            const Line &l = g.lines[li];
            int32_t v = l.u == u ? l.v : l.u;
            double nd = du + l.weight;
            if (nd < dist[v]) {
                dist[v] = nd;
                parent[v] = u;
                heap.push({nd, v});
            }
        }
    }
}

}  // namespace

MatchingGraph build_graph(const Schedule &sched, const NoiseParams &params) {
    auto classes = enumerate_fault_classes(sched, params);

    std::vector<PropagatedFault> props(classes.size());
    for (size_t i = 0; i < classes.size(); i++) {
        props[i] = propagate_fault(sched, classes[i]);
    }

    std::map<LineKey, std::vector<Contribution>> table;
    std::vector<PropagatedFault> factor_props;  // owned storage for decompositions
    factor_props.reserve(classes.size());

    std::vector<size_t> oversized;
    for (size_t i = 0; i < classes.size(); i++) {
        size_t n = props[i].events.size();
        if (n == 0) {
            continue;
        }
        if (n <= 2) {
            table[key_for(props[i].events)].push_back({classes[i].probability, &props[i]});
        } else {
            oversized.push_back(i);
        }
    }

    // A fault whose event set has more than two elements is split into its
    // two single-qubit factors; frame propagation is GF(2)-linear, so the
    // factors' event sets XOR to the original set.
    for (size_t i : oversized) {
        const FaultClass &c = classes[i];
        const Gate &g = sched.flat[c.gate_index];
        if (g.kind != GateKind::CZ || c.f0.is_identity() || c.f1.is_identity()) {
            throw std::logic_error("single-operand fault produced more than two events");
        }
        for (int half = 0; half < 2; half++) {
            FaultClass factor = c;
            (half == 0 ? factor.f1 : factor.f0) = PauliLeak::identity();
            factor_props.push_back(propagate_fault(sched, factor));
            const PropagatedFault &fp = factor_props.back();
            if (fp.events.empty() || fp.events.size() > 2) {
                throw std::logic_error("fault decomposition did not split into lines");
            }
            table[key_for(fp.events)].push_back({c.probability, &factor_props.back()});
        }
    }

    if (table.empty()) {
        throw std::invalid_argument("schedule yields no detectable fault classes");
    }

    MatchingGraph graph;
    graph.distance = sched.distance;
    graph.rounds = sched.rounds;
    graph.num_dots = (sched.rounds + 1) * sched.num_sites();
    graph.adj.resize(graph.num_dots);
    graph.boundary_line.assign(graph.num_dots, -1);

    for (const auto &[key, contribs] : table) {
        Line line;
        line.u = key.first;
        line.v = key.second;
        const Contribution *dominant = &contribs.front();
        for (const auto &c : contribs) {
            line.probability = xor_merge(line.probability, c.probability);
            if (c.probability > dominant->probability) {
                dominant = &c;
            }
        }
        if (line.probability <= 0.0 || line.probability >= 1.0) {
            throw std::logic_error("line probability outside (0, 1)");
        }
        line.weight = -std::log(line.probability);
        line.terminal_flips = dominant->metadata->terminal_flips;
        line.record_flips = dominant->metadata->record_flips;

        int32_t li = static_cast<int32_t>(graph.lines.size());
        graph.lines.push_back(std::move(line));
        if (key.second == BOUNDARY) {
            graph.boundary_line[key.first] = li;
        } else {
            graph.adj[key.first].push_back(li);
            graph.adj[key.second].push_back(li);
        }
    }

    // Precompute pairwise distances and path trees over the bulk lattice.
    const int n = graph.num_dots;
    graph.dist.assign(static_cast<size_t>(n) * n, 0.0);
    graph.parent.assign(static_cast<size_t>(n) * n, -1);
    std::vector<double> dist(n);
    std::vector<int32_t> parent(n);
    for (int32_t src = 0; src < n; src++) {
        run_dijkstra(graph, src, dist, parent);
        std::copy(dist.begin(), dist.end(), graph.dist.begin() + static_cast<size_t>(src) * n);
        std::copy(parent.begin(), parent.end(),
                  graph.parent.begin() + static_cast<size_t>(src) * n);
    }

    graph.boundary_dist.assign(n, std::numeric_limits<double>::infinity());
    graph.boundary_via.assign(n, -1);
    for (int32_t u = 0; u < n; u++) {
        for (int32_t x = 0; x < n; x++) {
            if (graph.boundary_line[x] < 0) {
                continue;
            }
            double w = graph.pair_distance(u, x) + graph.lines[graph.boundary_line[x]].weight;
            if (w < graph.boundary_dist[u]) {
                graph.boundary_dist[u] = w;
                graph.boundary_via[u] = x;
            }
        }
        if (!std::isfinite(graph.boundary_dist[u])) {
            throw std::logic_error("dot disconnected from the boundary");
        }
    }

    return graph;
}

std::string MatchingGraph::dump() const {
    std::ostringstream out;
    for (const Line &l : lines) {
        Dot a = dot_at(l.u);
        out << a.site << ' ' << a.layer << ' ';
        if (l.v == BOUNDARY) {
            out << "B B";
        } else {
            Dot b = dot_at(l.v);
            out << b.site << ' ' << b.layer;
        }
        out << ' ' << l.probability << ' ' << l.weight << " |";
        for (int32_t c : l.terminal_flips) {
            out << ' ' << c;
        }
        out << " |";
        for (auto [s, r] : l.record_flips) {
            out << ' ' << s << ':' << r;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace leaksim
