#pragma once

#include <cstdint>

#include "leaksim/matcher.hpp"

namespace leaksim {

struct ShotResult {
    bool failed = false;
    int32_t detection_event_count = 0;
    int32_t leak_events = 0;  // diagnostic only; the decoder never sees it
};

struct LogicalErrorEstimate {
    double p_shot = 0.0;
    double p_round = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    int64_t shots = 0;
    int64_t failures = 0;
    int rounds = 0;
};

// Reusable per-worker buffers so the hot loop does not allocate.
struct ShotContext {
    SystemFrame frame;
    RunResult run;

    explicit ShotContext(const Schedule &sched) : frame(sched.qubit_count) {}
};

ShotResult run_shot(const Schedule &sched, const MatchingGraph &graph,
                    const NoiseParams &params, RngStream &rng, ShotContext &ctx);

// Wilson 95% interval on the per-shot failure rate, mapped to per-round.
LogicalErrorEstimate summarize(int64_t failures, int64_t shots, int rounds);

// Monte Carlo over `shots` independent streams derived from
// (master_seed, shot index); the tally is independent of worker count.
LogicalErrorEstimate estimate(const Schedule &sched, const MatchingGraph &graph,
                              const NoiseParams &params, int64_t shots, uint64_t master_seed,
                              int workers);

}  // namespace leaksim
