#include "leaksim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace leaksim {

void SweepConfig::validate() const {
    if (distances.empty() || p_values.empty() || modes.empty()) {
        throw std::invalid_argument("distances, p-values, and modes must all be non-empty");
    }
    for (int d : distances) {
        if (d < 3 || d % 2 == 0) {
            throw std::invalid_argument("distances must be odd integers >= 3");
        }
    }
    for (double p : p_values) {
        if (p <= 0.0 || p > 1.0) {
            throw std::invalid_argument(
                "p-values must be in (0, 1]: graph weights are undefined at p = 0");
        }
    }
    if (shots < 1) {
        throw std::invalid_argument("shots must be >= 1");
    }
    if (rounds < 0) {
        throw std::invalid_argument("rounds must be >= 1 (or omitted for the default)");
    }
    if (workers < 1) {
        throw std::invalid_argument("workers must be >= 1");
    }
    NoiseParams probe;
    probe.p = *std::max_element(p_values.begin(), p_values.end());
    probe.leak_factor = leak_factor;
    probe.decay_prob = decay_prob;
    probe.leakage_enabled = true;
    probe.validate();
}

int SweepConfig::rounds_for(int distance) const {
    return rounds > 0 ? rounds : std::max(10, 3 * distance);
}

NoiseParams SweepConfig::noise_for(Mode mode, double p) const {
    NoiseParams params;
    params.p = p;
    params.leak_factor = leak_factor;
    params.decay_prob = decay_prob;
    params.leakage_enabled = mode != Mode::Plain;
    params.teleport_enabled = mode == Mode::Teleport;
    // Plain/leakage modes have no leakage-removal hardware: a reset pulse
    // acts on the computational subspace and a leaked qubit ignores it. The
    // teleport scheme exists to remove leakage, so its re-initializations
    // are full refreshes of the measured-out qubits.
    params.init_clears_leakage = params.teleport_enabled;
    return params;
}

std::string SweepConfig::serialize() const {
    nlohmann::json j;
    j["distances"] = distances;
    j["p_values"] = p_values;
    std::vector<std::string> mode_names;
    for (Mode m : modes) {
        mode_names.emplace_back(mode_name(m));
    }
    j["modes"] = mode_names;
    j["shots"] = shots;
    j["rounds"] = rounds;
    j["leak_factor"] = leak_factor;
    j["decay"] = decay_prob;
    j["seed"] = master_seed;
    j["workers"] = workers;
    j["out"] = out_path;
    j["format"] = format == OutputFormat::Csv ? "csv" : "json";
    return j.dump(2);
}

SweepConfig SweepConfig::parse(const std::string &text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SweepConfig c;
    c.distances = j.at("distances").get<std::vector<int>>();
    c.p_values = j.at("p_values").get<std::vector<double>>();
    c.modes.clear();
    for (const auto &name : j.at("modes")) {
        c.modes.push_back(mode_from_name(name.get<std::string>()));
    }
    c.shots = j.at("shots").get<int64_t>();
    c.rounds = j.at("rounds").get<int>();
    c.leak_factor = j.at("leak_factor").get<double>();
    c.decay_prob = j.at("decay").get<double>();
    c.master_seed = j.at("seed").get<uint64_t>();
    c.workers = j.at("workers").get<int>();
    c.out_path = j.at("out").get<std::string>();
    std::string fmt = j.at("format").get<std::string>();
    if (fmt == "csv") {
        c.format = OutputFormat::Csv;
    } else if (fmt == "json") {
        c.format = OutputFormat::Json;
    } else {
        throw std::invalid_argument("format must be csv or json");
    }
    return c;
}

bool SweepConfig::operator==(const SweepConfig &o) const {
    return distances == o.distances && p_values == o.p_values && modes == o.modes &&
           shots == o.shots && rounds == o.rounds && leak_factor == o.leak_factor &&
           decay_prob == o.decay_prob && master_seed == o.master_seed &&
           workers == o.workers && out_path == o.out_path && format == o.format;
}

void run_sweep(const SweepConfig &config, const std::function<void(const SweepRow &)> &emit) {
    config.validate();
    for (int d : config.distances) {
        for (Mode mode : config.modes) {
            CodeParams code{d, config.rounds_for(d), mode};
            Schedule sched = build_experiment(code);
            for (double p : config.p_values) {
                NoiseParams noise = config.noise_for(mode, p);
                MatchingGraph graph = build_graph(sched, noise);
                LogicalErrorEstimate est = estimate(sched, graph, noise, config.shots,
                                                    config.master_seed, config.workers);
                SweepRow row;
                row.mode = mode;
                row.distance = d;
                row.p = p;
                row.rounds = est.rounds;
                row.shots = est.shots;
                row.failures = est.failures;
                row.p_round = est.p_round;
                row.ci_low = est.ci_low;
                row.ci_high = est.ci_high;
                row.seed = config.master_seed;
                emit(row);
            }
        }
    }
}

std::string csv_header() {
    return "mode,d,p,T,shots,failures,p_round,ci_low,ci_high,seed";
}

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

std::string csv_row(const SweepRow &r) {
    std::string out = mode_name(r.mode);
    out += ',' + std::to_string(r.distance);
    out += ',' + format_double(r.p);
    out += ',' + std::to_string(r.rounds);
    out += ',' + std::to_string(r.shots);
    out += ',' + std::to_string(r.failures);
    out += ',' + format_double(r.p_round);
    out += ',' + format_double(r.ci_low);
    out += ',' + format_double(r.ci_high);
    out += ',' + std::to_string(r.seed);
    return out;
}

void write_json(const std::vector<SweepRow> &rows, std::ostream &out) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &r : rows) {
        arr.push_back({{"mode", mode_name(r.mode)},
                       {"d", r.distance},
                       {"p", r.p},
                       {"T", r.rounds},
                       {"shots", r.shots},
                       {"failures", r.failures},
                       {"p_round", r.p_round},
                       {"ci_low", r.ci_low},
                       {"ci_high", r.ci_high},
                       {"seed", r.seed}});
    }
    out << arr.dump(2) << '\n';
}

SlopeFit fit_slope(std::vector<SweepRow> rows, int k_lowest) {
    std::sort(rows.begin(), rows.end(),
              [](const SweepRow &a, const SweepRow &b) { return a.p < b.p; });
    if (static_cast<int>(rows.size()) > k_lowest) {
        rows.resize(k_lowest);
    }
    std::vector<std::pair<double, double>> pts;
    for (const auto &r : rows) {
        if (r.failures > 0) {
            pts.emplace_back(std::log(r.p), std::log(r.p_round));
        }
    }
    if (pts.size() < 2) {
        throw std::runtime_error(
            "slope fit needs at least 2 points with nonzero failures among the lowest p "
            "values; run more shots");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    for (auto [x, y] : pts) {
        double e = y - (slope * x + intercept);
        ss_res += e * e;
        double m = y - sy / n;
        ss_tot += m * m;
    }
    SlopeFit fit;
    fit.exponent = slope;
    fit.intercept = intercept;
    fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.points_used = static_cast<int>(pts.size());
    return fit;
}

}  // namespace leaksim
