// Copyright 2026 The coopt Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// coopt: certified global minimization of a model file.

#include <chrono>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "coopt/model.hpp"
#include "coopt/orchestrate.hpp"
#include "coopt/report.hpp"

int main(int argc, char** argv)
{
    using namespace coopt;

    CLI::App app{"Certified global minimization with cooperating interval and evolutionary solvers"};
    std::string model_path;
    SolverConfig cfg;
    double eps_eq = 1e-8;
    std::string mode = "hybrid";
    std::string log_path;
    bool porcelain = false;
    double activity = kDefaultActivityThreshold;
    bool no_taylor = false;
    bool strict_restart = false;

    const std::map<std::string, BisectStrategy> bisect_map{{"rr", BisectStrategy::round_robin},
                                                           {"largest", BisectStrategy::largest_first},
                                                           {"smear", BisectStrategy::smear}};
    const std::map<std::string, QueueStrategy> queue_map{{"maxdist", QueueStrategy::maxdist},
                                                         {"best", QueueStrategy::best_first},
                                                         {"largest", QueueStrategy::largest_first},
                                                         {"depth", QueueStrategy::depth_first}};

    app.add_option("model", model_path, "Model file")->required();
    app.add_option("--eps", cfg.ibc.eps, "Objective precision")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--eps-eq", eps_eq, "Equality tolerance")->capture_default_str()->check(CLI::NonNegativeNumber);
    app.add_option("--np", cfg.de.np, "DE population size")->capture_default_str()->check(CLI::Range(4, 1 << 20));
    app.add_option("--w", cfg.de.w, "DE amplitude factor")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--cr", cfg.de.cr, "DE crossover rate")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    app.add_option("--eta", cfg.ibc.eta, "Quasi-fixed point ratio")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    std::string bisect = "smear";
    std::string queue = "maxdist";
    app.add_option("--bisect", bisect, "Bisection strategy")
        ->capture_default_str()
        ->check(CLI::IsMember(bisect_map));
    app.add_option("--queue", queue, "Queue strategy")
        ->capture_default_str()
        ->check(CLI::IsMember(queue_map));
    app.add_option("--seed", cfg.de.seed, "DE random seed")->capture_default_str();
    app.add_option("--mode", mode, "hybrid, ibc-only or de-only")
        ->capture_default_str()
        ->check(CLI::IsMember({"hybrid", "ibc-only", "de-only"}));
    app.add_option("--reduction-period", cfg.ibc.reduction_period, "DE generations between domain reductions (0: never)")
        ->capture_default_str();
    app.add_option("--max-time", cfg.ibc.max_time, "Wall-time cap in seconds (0: none)")->capture_default_str();
    app.add_option("--max-iters", cfg.ibc.max_iters, "IBC iteration cap (0: none)")->capture_default_str();
    app.add_option("--generations", cfg.de_only_generations, "Generation budget in de-only mode")
        ->capture_default_str();
    app.add_flag("--deterministic", cfg.deterministic, "Interleave both workers on one thread");
    app.add_option("--ibc-steps", cfg.ibc_steps_per_generation, "IBC iterations per DE generation in deterministic mode")
        ->capture_default_str();
    app.add_option("--log-messages", log_path, "Write the message log to this file");
    app.add_flag("--porcelain", porcelain, "Print key=value lines");
    app.add_option("--activity-threshold", activity, "Constraint activity threshold")->capture_default_str();
    app.add_flag("--no-taylor", no_taylor, "Disable the Taylor lower bound");
    app.add_flag("--strict-restart", strict_restart, "Do not keep the DE elite across domain reductions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    cfg.mode = *parse_mode(mode);
    cfg.ibc.bisect = bisect_map.at(bisect);
    cfg.ibc.queue = queue_map.at(queue);
    cfg.ibc.use_taylor = !no_taylor;
    cfg.de.keep_elite_on_restart = !strict_restart;
    cfg.record_messages = !log_path.empty();

    Problem problem;
    try {
        problem = load_problem(model_path, eps_eq);
    } catch (const ParseError& e) {
        std::cerr << model_path << ':' << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        const auto t0 = std::chrono::steady_clock::now();
        SolveResult result = solve(problem, cfg);
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;

        Report report = make_report(problem, result.certificate, std::string(to_string(cfg.mode)), dt.count(), activity);
        report.error = result.error;
        if (porcelain) {
            print_porcelain(std::cout, report);
        } else {
            print_human(std::cout, report);
        }
        if (!log_path.empty()) {
            std::ofstream out(log_path);
            if (!out) {
                std::cerr << "error: cannot write '" << log_path << "'\n";
                return 1;
            }
            for (const auto& line : result.message_log) out << line << '\n';
        }
        return exit_code(result.certificate);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
