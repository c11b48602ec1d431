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

// Runs the IBC and DE workers together over a shared Channel.
//
// Threaded mode runs the DE on its own thread. Deterministic mode
// interleaves both workers on the calling thread: one DE generation, then a
// fixed number of IBC iterations.

#ifndef COOPT_ORCHESTRATE_HPP
#define COOPT_ORCHESTRATE_HPP

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "coopt/certificate.hpp"
#include "coopt/channel.hpp"
#include "coopt/de.hpp"
#include "coopt/ibc.hpp"
#include "coopt/problem.hpp"
#include "coopt/rigorous.hpp"

namespace coopt {

enum class Mode { hybrid, ibc_only, de_only };

inline std::string_view to_string(Mode m)
{
    switch (m) {
    case Mode::hybrid: return "hybrid";
    case Mode::ibc_only: return "ibc-only";
    case Mode::de_only: return "de-only";
    }
    return "?";
}

inline std::optional<Mode> parse_mode(std::string_view s)
{
    if (s == "hybrid") return Mode::hybrid;
    if (s == "ibc-only") return Mode::ibc_only;
    if (s == "de-only") return Mode::de_only;
    return std::nullopt;
}

struct SolverConfig {
    IbcConfig ibc;
    DEConfig de;
    Mode mode = Mode::hybrid;
    bool deterministic = false;
    std::size_t ibc_steps_per_generation = 1; // deterministic interleaving quota
    std::size_t de_only_generations = 1000;   // generation budget in de-only mode
    bool record_messages = false;
};

struct SolveResult {
    Certificate certificate;
    std::vector<std::string> message_log;
    std::vector<ReductionRecord> reductions;
    std::string error; // set when a worker failed
};

namespace detail {

inline SolveResult solve_de_only(const Problem& p, const SolverConfig& cfg)
{
    SolveResult r;
    DeWorker de(p, cfg.de);
    Certificate& c = r.certificate;
    if (!de.domain_empty()) {
        const std::size_t budget = cfg.de.max_generations ? cfg.de.max_generations : cfg.de_only_generations;
        while (de.generations() < budget) de.generation();
        if (const auto& best = de.best_feasible()) {
            c.point = best->position;
            c.upper_bound = rigorous_ub(best->position, p);
            c.stats.ub_updates = 1;
        }
    }
    c.status = Status::uncertified;
    c.stats.de_generations = de.generations();
    return r;
}

inline void finish(SolveResult& r, IbcWorker& ibc, std::uint64_t generations, Channel& ch)
{
    r.certificate = ibc.certificate();
    r.certificate.stats.de_generations = generations;
    r.reductions = ibc.reductions();
    ch.send(Message::terminate(r.certificate));
}

inline SolveResult solve_deterministic(const Problem& p, const SolverConfig& cfg)
{
    SolveResult r;
    Channel ch(cfg.record_messages);
    IbcWorker ibc(p, cfg.ibc, &ch);
    DeWorker de(p, cfg.de, &ch);
    const std::size_t quota = std::max<std::size_t>(1, cfg.ibc_steps_per_generation);
    while (!ibc.done()) {
        de.generation();
        for (std::size_t k = 0; k < quota && !ibc.done(); ++k) ibc.step();
    }
    finish(r, ibc, de.generations(), ch);
    de.generation(); // consumes TERMINATE
    r.message_log = ch.log();
    return r;
}

inline SolveResult solve_threaded(const Problem& p, const SolverConfig& cfg)
{
    SolveResult r;
    Channel ch(cfg.record_messages);
    IbcWorker ibc(p, cfg.ibc, &ch);
    DeWorker de(p, cfg.de, &ch);
    std::atomic<bool> stop{false};
    std::exception_ptr de_error;

    std::thread de_thread([&] {
        try {
            while (!de.terminated() && !stop.load(std::memory_order_relaxed)) {
                if (de.domain_empty()) {
                    std::this_thread::yield();
                    de.generation(); // still drains TERMINATE
                    continue;
                }
                de.generation();
            }
        } catch (...) {
            de_error = std::current_exception();
        }
    });

    try {
        ibc.run();
        finish(r, ibc, ch.generations(), ch);
    } catch (const std::exception& e) {
        r.certificate = ibc.certificate();
        r.certificate.status = Status::uncertified;
        r.error = std::string("ibc: ") + e.what();
    }
    stop.store(true, std::memory_order_relaxed);
    de_thread.join();
    if (de_error) {
        try {
            std::rethrow_exception(de_error);
        } catch (const std::exception& e) {
            r.error = std::string("de: ") + e.what();
        } catch (...) {
            r.error = "de: unknown failure";
        }
        r.certificate.status = Status::uncertified;
    }
    r.certificate.stats.de_generations = de.generations();
    r.message_log = ch.log();
    return r;
}

} // namespace detail

/// Solves `p` and returns the IBC certificate. DE results never override it.
inline SolveResult solve(const Problem& p, const SolverConfig& cfg)
{
    p.validate();
    switch (cfg.mode) {
    case Mode::de_only: return detail::solve_de_only(p, cfg);
    case Mode::ibc_only: {
        SolveResult r;
        IbcWorker ibc(p, cfg.ibc);
        ibc.run();
        r.certificate = ibc.certificate();
        return r;
    }
    case Mode::hybrid:
        return cfg.deterministic ? detail::solve_deterministic(p, cfg) : detail::solve_threaded(p, cfg);
    }
    throw std::logic_error("solve: unknown mode");
}

} // namespace coopt

#endif // COOPT_ORCHESTRATE_HPP
