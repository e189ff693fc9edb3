#include "leaksim/engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace leaksim {

namespace {

#ifndef NDEBUG
// Applying the decoder's corrections to the observed history must leave it
// syndrome-free, with the terminal string a codeword.
void assert_consistent(const Schedule &sched, RunResult &run, const CorrectionSet &corr) {
    for (size_t i = 0; i < run.syndrome.size(); i++) {
        run.syndrome[i] ^= corr.record_flips[i];
    }
    for (size_t c = 0; c < run.terminal.size(); c++) {
        run.terminal[c] ^= corr.terminal_flips[c];
    }
    assert(extract_detection_events(run, sched).empty());
    for (size_t c = 1; c < run.terminal.size(); c++) {
        assert(run.terminal[c] == run.terminal[0]);
    }
}
#endif

}  // namespace

ShotResult run_shot(const Schedule &sched, const MatchingGraph &graph,
                    const NoiseParams &params, RngStream &rng, ShotContext &ctx) {
    run_schedule(sched, params, rng, ctx.frame, ctx.run);
    DetectionEventSet events = extract_detection_events(ctx.run, sched);

    ShotResult res;
    res.detection_event_count = static_cast<int32_t>(events.size());
    res.leak_events = static_cast<int32_t>(ctx.run.leak_injections);

    if (events.empty()) {
        res.failed = ctx.run.terminal[0] != 0;
        return res;
    }
    EventGraph eg = build_event_graph(graph, events);
    Matching m = min_weight_match(eg);
    CorrectionSet corr = corrections_from_matching(m, eg);
    uint8_t corrected = ctx.run.terminal[0] ^ corr.terminal_flips[0];
    res.failed = corrected != 0;
#ifndef NDEBUG
    assert_consistent(sched, ctx.run, corr);
#endif
    return res;
}

LogicalErrorEstimate summarize(int64_t failures, int64_t shots, int rounds) {
    if (shots < 1) {
        throw std::invalid_argument("shots must be >= 1");
    }
    const double z = 1.959963984540054;  // 95% two-sided normal quantile
    const double n = static_cast<double>(shots);
    const double phat = static_cast<double>(failures) / n;
    const double denom = 1.0 + z * z / n;
    const double center = (phat + z * z / (2.0 * n)) / denom;
    const double half =
        z / denom * std::sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n));
    const double lo = std::max(0.0, center - half);
    const double hi = std::min(1.0, center + half);

    auto per_round = [rounds](double x) {
        return 1.0 - std::pow(1.0 - x, 1.0 / static_cast<double>(rounds));
    };
    LogicalErrorEstimate est;
    est.shots = shots;
    est.failures = failures;
    est.rounds = rounds;
    est.p_shot = phat;
    est.p_round = per_round(phat);
    est.ci_low = per_round(lo);
    est.ci_high = per_round(hi);
    return est;
}

LogicalErrorEstimate estimate(const Schedule &sched, const MatchingGraph &graph,
                              const NoiseParams &params, int64_t shots, uint64_t master_seed,
                              int workers) {
    if (shots < 1) {
        throw std::invalid_argument("shots must be >= 1");
    }
    workers = std::max(1, workers);
    workers = static_cast<int>(std::min<int64_t>(workers, shots));

    std::vector<int64_t> failures(workers, 0);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; w++) {
        int64_t begin = shots * w / workers;
        int64_t end = shots * (w + 1) / workers;
        pool.emplace_back([&, w, begin, end]() {
            ShotContext ctx(sched);
            int64_t tally = 0;
            for (int64_t s = begin; s < end; s++) {
                RngStream rng(master_seed, static_cast<uint64_t>(s));
                tally += run_shot(sched, graph, params, rng, ctx).failed;
            }
            failures[w] = tally;
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    int64_t total = 0;
    for (int64_t f : failures) {
        total += f;
    }
    return summarize(total, shots, sched.rounds);
}

}  // namespace leaksim
