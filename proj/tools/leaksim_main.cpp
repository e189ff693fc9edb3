#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <vector>

#include <CLI11.hpp>

#include "leaksim/sweep.hpp"

using namespace leaksim;

int main(int argc, char **argv) {
    CLI::App app{"Repetition-code Monte Carlo simulator with qubit leakage and MWPM decoding"};

    SweepConfig config;
    std::vector<std::string> mode_names{"plain"};
    std::string format_name = "csv";
    bool dump_schedule = false;
    bool dump_graph = false;
    int fit_k = 0;

    app.add_option("--distances", config.distances, "Code distances (odd, >= 3)")
        ->delimiter(',');
    app.add_option("--p-values", config.p_values, "Depolarizing probabilities per gate")
        ->delimiter(',');
    app.add_option("--modes", mode_names, "Simulation modes: plain, leakage, teleport")
        ->delimiter(',');
    app.add_option("--shots", config.shots, "Shots per (d, p, mode) cell");
    app.add_option("--rounds", config.rounds,
                   "Detection rounds per shot (default: max(10, 3d))");
    app.add_option("--leak-factor", config.leak_factor,
                   "Leakage probability per Hadamard/CZ is leak-factor * p");
    app.add_option("--decay", config.decay_prob, "Leakage decay probability per gate");
    app.add_option("--seed", config.master_seed, "Master seed");
    app.add_option("--workers", config.workers, "Worker thread count");
    app.add_option("--out", config.out_path, "Output path (default: stdout)");
    app.add_option("--format", format_name, "Output format: csv or json");
    app.add_flag("--dump-schedule", dump_schedule,
                 "Print the gate schedule per (d, mode) and exit");
    app.add_flag("--dump-graph", dump_graph,
                 "Print the matching graph per (d, p, mode) and exit");
    app.add_option("--fit", fit_k, "Fit the low-p slope over the K lowest p values");

    CLI11_PARSE(app, argc, argv);

    try {
        config.modes.clear();
        for (const auto &name : mode_names) {
            config.modes.push_back(mode_from_name(name));
        }
        if (format_name == "csv") {
            config.format = OutputFormat::Csv;
        } else if (format_name == "json") {
            config.format = OutputFormat::Json;
        } else {
            throw std::invalid_argument("--format must be csv or json");
        }
        config.validate();

        if (dump_schedule || dump_graph) {
            for (int d : config.distances) {
                for (Mode mode : config.modes) {
                    CodeParams code{d, config.rounds_for(d), mode};
                    Schedule sched = build_experiment(code);
                    if (dump_schedule) {
                        std::cout << "# schedule d=" << d << " mode=" << mode_name(mode)
                                  << " T=" << code.rounds << '\n'
                                  << sched.dump();
                    }
                    if (dump_graph) {
                        for (double p : config.p_values) {
                            MatchingGraph graph = build_graph(sched, config.noise_for(mode, p));
                            std::cout << "# graph d=" << d << " mode=" << mode_name(mode)
                                      << " p=" << p << " T=" << code.rounds << '\n'
                                      << graph.dump();
                        }
                    }
                }
            }
            return 0;
        }

        std::ofstream file;
        std::ostream *out = &std::cout;
        if (!config.out_path.empty()) {
            file.open(config.out_path);
            if (!file) {
                throw std::runtime_error("cannot open output path '" + config.out_path + "'");
            }
            out = &file;
        }

        std::vector<SweepRow> rows;
        if (config.format == OutputFormat::Csv) {
            *out << csv_header() << '\n';
            out->flush();
        }
        run_sweep(config, [&](const SweepRow &row) {
            rows.push_back(row);
            if (config.format == OutputFormat::Csv) {
                *out << csv_row(row) << '\n';
                out->flush();
            }
            std::cerr << "done mode=" << mode_name(row.mode) << " d=" << row.distance
                      << " p=" << row.p << " failures=" << row.failures << "/" << row.shots
                      << '\n';
        });
        if (config.format == OutputFormat::Json) {
            write_json(rows, *out);
            out->flush();
        }
        if (out == &file && !file) {
            throw std::runtime_error("write to '" + config.out_path + "' failed");
        }

        if (fit_k > 0) {
            std::map<std::pair<int, int>, std::vector<SweepRow>> groups;
            for (const auto &row : rows) {
                groups[{row.distance, static_cast<int>(row.mode)}].push_back(row);
            }
            for (const auto &[key, group] : groups) {
                try {
                    SlopeFit fit = fit_slope(group, fit_k);
                    std::cout << "fit mode=" << mode_name(group.front().mode)
                              << " d=" << key.first << " exponent=" << fit.exponent
                              << " intercept=" << fit.intercept << " r2=" << fit.r_squared
                              << " points=" << fit.points_used << '\n';
                } catch (const std::exception &e) {
                    std::cout << "fit mode=" << mode_name(group.front().mode)
                              << " d=" << key.first << " failed: " << e.what() << '\n';
                }
            }
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
