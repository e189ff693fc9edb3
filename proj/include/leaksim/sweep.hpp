#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "leaksim/engine.hpp"

namespace leaksim {

enum class OutputFormat { Csv, Json };

struct SweepConfig {
    std::vector<int> distances{3};
    std::vector<double> p_values{1e-3};
    std::vector<Mode> modes{Mode::Plain};
    int64_t shots = 100000;
    int rounds = 0;  // 0: per-distance default max(10, 3d)
    double leak_factor = 0.1;
    double decay_prob = 0.01;
    uint64_t master_seed = 1;
    int workers = 1;
    std::string out_path;  // empty: stdout
    OutputFormat format = OutputFormat::Csv;

    void validate() const;
    int rounds_for(int distance) const;
    NoiseParams noise_for(Mode mode, double p) const;

    std::string serialize() const;  // JSON, round-trips through parse()
    static SweepConfig parse(const std::string &text);

    bool operator==(const SweepConfig &o) const;
};

struct SweepRow {
    Mode mode;
    int distance;
    double p;
    int rounds;
    int64_t shots;
    int64_t failures;
    double p_round;
    double ci_low;
    double ci_high;
    uint64_t seed;
};

// Evaluates the (distance, p, mode) product in deterministic order, calling
// `emit` after each completed cell.
void run_sweep(const SweepConfig &config, const std::function<void(const SweepRow &)> &emit);

std::string csv_header();
std::string csv_row(const SweepRow &row);
void write_json(const std::vector<SweepRow> &rows, std::ostream &out);

struct SlopeFit {
    double exponent = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int points_used = 0;
};

// Least-squares line through (ln p, ln p_round) over the k lowest p values
// that saw at least one failure. `rows` must all belong to one (d, mode).
SlopeFit fit_slope(std::vector<SweepRow> rows, int k_lowest);

}  // namespace leaksim
