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

// Differential evolution with direct constraint handling.
//
// Each generation every individual x is paired with a base individual u
// chosen by a per-generation offset (so every individual is a base exactly
// once) and two distinct partners v, w. The trial point is repaired by
// bounce-back and replaces x under the feasibility rules. Feasibility is
// decided by interval evaluation of the constraints; only rigorously
// feasible points ever report an upper bound.

#ifndef COOPT_DE_HPP
#define COOPT_DE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "coopt/box.hpp"
#include "coopt/channel.hpp"
#include "coopt/contractor.hpp"
#include "coopt/expr.hpp"
#include "coopt/problem.hpp"
#include "coopt/rigorous.hpp"

namespace coopt {

using Rng = std::mt19937_64;

struct DEConfig {
    std::size_t np = 20;
    double w = 0.7;
    double cr = 0.9;
    std::uint64_t seed = 1;
    std::size_t max_generations = 0; // 0: unlimited
    bool keep_elite_on_restart = true;
    double initial_eta = 0.0; // HC4 ratio for the initial domain contraction

    void validate() const
    {
        if (np < 4) throw std::invalid_argument("de: population size must be at least 4");
        if (!(w > 0)) throw std::invalid_argument("de: amplitude W must be positive");
        if (!(cr >= 0 && cr <= 1)) throw std::invalid_argument("de: crossover rate must lie in [0, 1]");
    }
};

struct Individual {
    Point position;
    double objective = rounding::kInf;
    std::vector<double> constraint_values;
    bool feasible = false;
    std::optional<double> rigorous_ub;

    /// max(g_i, 0) per constraint; NaN evaluations count as infinite.
    double violation(std::size_t i) const
    {
        const double g = constraint_values[i];
        if (std::isnan(g)) return rounding::kInf;
        return std::max(g, 0.0);
    }
};

/// Evaluates objective and constraints in floating point and decides
/// rigorous feasibility by interval evaluation.
inline Individual evaluate(Point x, const Problem& p, std::span<const Expr> constraints)
{
    Individual ind;
    ind.position = std::move(x);
    ind.objective = eval_real(p.objective, ind.position);
    ind.constraint_values.reserve(constraints.size());
    for (const auto& g : constraints) ind.constraint_values.push_back(eval_real(g, ind.position));
    if (std::isnan(ind.objective)) {
        std::fill(ind.constraint_values.begin(), ind.constraint_values.end(),
                  std::numeric_limits<double>::quiet_NaN());
        ind.objective = rounding::kInf;
        ind.feasible = false;
        return ind;
    }
    ind.feasible = rigorous_feasible(ind.position, constraints);
    return ind;
}

struct Partners {
    std::size_t u;
    std::size_t v;
    std::size_t w;
};

/// Base index (x + offset) mod NP, and two uniformly drawn partners so that
/// x, u, v, w are pairwise distinct.
inline Partners pick_base_and_partners(std::size_t np, std::size_t x, std::size_t offset, Rng& rng)
{
    if (np < 4) throw std::invalid_argument("pick_base_and_partners: NP < 4");
    Partners p{};
    p.u = (x + offset) % np;
    std::uniform_int_distribution<std::size_t> pick(0, np - 1);
    do {
        p.v = pick(rng);
    } while (p.v == x || p.v == p.u);
    do {
        p.w = pick(rng);
    } while (p.w == x || p.w == p.u || p.w == p.v);
    return p;
}

inline std::size_t draw_offset(std::size_t np, Rng& rng)
{
    return std::uniform_int_distribution<std::size_t>(1, np - 1)(rng);
}

/// y_i = u_i + W (v_i - w_i) when i == forced or r_i < CR, else x_i.
inline Point crossover(std::span<const double> x, std::span<const double> u, std::span<const double> v,
                       std::span<const double> w, double amplitude, double cr, std::size_t forced,
                       std::span<const double> r)
{
    Point y(x.begin(), x.end());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i == forced || r[i] < cr) y[i] = u[i] + amplitude * (v[i] - w[i]);
    }
    return y;
}

inline Point crossover(std::span<const double> x, std::span<const double> u, std::span<const double> v,
                       std::span<const double> w, const DEConfig& cfg, Rng& rng)
{
    const std::size_t n = x.size();
    const std::size_t forced = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> r(n);
    for (auto& ri : r) ri = unit(rng);
    return crossover(x, u, v, w, cfg.w, cfg.cr, forced, r);
}

/// Moves each out-of-bounds coordinate to u_i + omega (bound - u_i), with
/// omega drawn once per violated coordinate by `draw_omega`.
template <class DrawOmega>
Point bounce_back(Point y, std::span<const double> u, const Box& domain, DrawOmega&& draw_omega)
{
    for (std::size_t i = 0; i < y.size(); ++i) {
        const Interval& d = domain[i];
        if (y[i] > d.hi) {
            y[i] = std::clamp(u[i] + draw_omega() * (d.hi - u[i]), d.lo, d.hi);
        } else if (y[i] < d.lo) {
            y[i] = std::clamp(u[i] + draw_omega() * (d.lo - u[i]), d.lo, d.hi);
        } else if (std::isnan(y[i])) {
            y[i] = u[i];
        }
    }
    return y;
}

inline Point bounce_back(Point y, std::span<const double> u, const Box& domain, Rng& rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return bounce_back(std::move(y), u, domain, [&] { return unit(rng); });
}

/// Selection: may `b` replace `a`?
///  1. both feasible and f(b) <= f(a);
///  2. b feasible and a not;
///  3. both infeasible and b violates no constraint more than a.
inline bool better(const Individual& a, const Individual& b)
{
    if (a.feasible && b.feasible) return b.objective <= a.objective;
    if (b.feasible) return true;
    if (a.feasible) return false;
    for (std::size_t i = 0; i < a.constraint_values.size(); ++i) {
        if (b.violation(i) > a.violation(i)) return false;
    }
    return true;
}

namespace detail {

// Sampling range for a domain component; unbounded sides are truncated at a
// fixed offset from the finite bound.
inline Interval sampling_range(const Interval& d)
{
    using rounding::kInf;
    double lo = d.lo, hi = d.hi;
    if (lo == -kInf && hi == kInf) return {-kUnboundedMidpointOffset, kUnboundedMidpointOffset};
    if (lo == -kInf) lo = hi - kUnboundedMidpointOffset;
    if (hi == kInf) hi = lo + kUnboundedMidpointOffset;
    return {lo, hi};
}

inline Point random_point(const Box& b, Rng& rng)
{
    Point x(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        const Interval r = sampling_range(b[i]);
        if (r.is_degenerate()) {
            x[i] = r.lo;
        } else {
            x[i] = std::clamp(std::uniform_real_distribution<double>(r.lo, r.hi)(rng), r.lo, r.hi);
        }
    }
    return x;
}

} // namespace detail

/// Population index of the best individual: lowest objective among feasible
/// individuals, otherwise the smallest total violation.
inline std::size_t best_index(std::span<const Individual> pop)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i) {
        const Individual& a = pop[best];
        const Individual& b = pop[i];
        if (a.feasible != b.feasible) {
            if (b.feasible) best = i;
            continue;
        }
        if (a.feasible) {
            if (b.objective < a.objective) best = i;
            continue;
        }
        double va = 0, vb = 0;
        for (std::size_t k = 0; k < a.constraint_values.size(); ++k) {
            va += a.violation(k);
            vb += b.violation(k);
        }
        if (vb < va) best = i;
    }
    return best;
}

/// The DE worker. `generation()` advances one generation; the worker polls
/// the channel at generation boundaries.
class DeWorker {
public:
    DeWorker(Problem problem, DEConfig cfg, Channel* channel = nullptr)
        : problem_(std::move(problem)), cfg_(cfg), channel_(channel), rng_(cfg.seed),
          constraints_(problem_.constraints())
    {
        cfg_.validate();
        const auto rel = relational_constraints(problem_);
        domain_ = hc4(rel, problem_.domain, cfg_.initial_eta);
        if (!domain_.is_empty()) populate(std::nullopt);
    }

    const Problem& problem() const { return problem_; }
    const Box& domain() const { return domain_; }
    std::span<const Individual> population() const { return population_; }
    std::size_t generations() const { return generation_; }
    double best_known_ub() const { return best_ub_; }
    bool terminated() const { return terminated_; }
    std::size_t last_offset() const { return last_offset_; }
    const std::vector<std::size_t>& last_bases() const { return last_bases_; }

    /// True when no point of the original domain can satisfy the constraints.
    bool domain_empty() const { return domain_.is_empty(); }

    /// Best individual of the current population (population must be non-empty).
    const Individual& best() const { return population_[best_index(population_)]; }

    /// Best rigorously feasible individual found so far, if any.
    const std::optional<Individual>& best_feasible() const { return best_feasible_; }

    void generation()
    {
        if (terminated_) return;
        receive();
        if (terminated_ || domain_.is_empty()) return;

        const std::size_t np = population_.size();
        const std::size_t offset = draw_offset(np, rng_);
        last_offset_ = offset;
        last_bases_.assign(np, 0);
        std::vector<Individual> next;
        next.reserve(np);
        for (std::size_t i = 0; i < np; ++i) {
            const Partners pr = pick_base_and_partners(np, i, offset, rng_);
            last_bases_[i] = pr.u;
            const auto& x = population_[i].position;
            const auto& u = population_[pr.u].position;
            Point y = crossover(x, u, population_[pr.v].position, population_[pr.w].position, cfg_, rng_);
            y = bounce_back(std::move(y), u, domain_, rng_);
            Individual trial = evaluate(std::move(y), problem_, constraints_);
            next.push_back(better(population_[i], trial) ? std::move(trial) : population_[i]);
        }
        population_ = std::move(next);
        ++generation_;
        report_best();
        if (channel_) channel_->publish_generation(generation_);
    }

    /// Replaces the DE domain and regenerates the population inside it. The
    /// best rigorously feasible individual survives when it lies in the new
    /// domain and elite preservation is enabled.
    void reduce_and_restart(const Box& new_domain)
    {
        if (new_domain.is_empty()) throw std::invalid_argument("reduce_and_restart: empty domain");
        domain_ = new_domain;
        std::optional<Individual> elite;
        if (cfg_.keep_elite_on_restart && best_feasible_ && domain_.contains(best_feasible_->position)) {
            elite = best_feasible_;
        }
        populate(elite);
    }

    /// Inserts an external solution in place of the current worst
    /// individual; the best individual is never displaced.
    void inject(const Point& x, double ub)
    {
        best_ub_ = std::min(best_ub_, ub);
        if (population_.empty() || !domain_.contains(x)) return;
        Individual ind = evaluate(x, problem_, constraints_);
        ind.rigorous_ub = ub;
        const std::size_t b = best_index(population_);
        std::size_t worst = b == 0 ? 1 : 0;
        for (std::size_t i = 0; i < population_.size(); ++i) {
            if (i == b) continue;
            if (better(population_[i], population_[worst])) continue;
            if (better(population_[worst], population_[i])) worst = i;
        }
        population_[worst] = std::move(ind);
        note_feasible(population_[worst]);
    }

private:
    void populate(const std::optional<Individual>& elite)
    {
        population_.clear();
        population_.reserve(cfg_.np);
        if (elite) population_.push_back(*elite);
        while (population_.size() < cfg_.np) {
            population_.push_back(evaluate(detail::random_point(domain_, rng_), problem_, constraints_));
        }
    }

    void receive()
    {
        if (!channel_) return;
        for (Message& m : channel_->drain(Direction::ibc_to_de)) {
            switch (m.kind) {
            case MessageKind::solution_from_ibc: inject(m.point, m.value); break;
            case MessageKind::domain_reduction: {
                Box b = domain_.is_empty() ? m.box : intersect(m.box, domain_);
                if (b.is_empty()) b = m.box;
                if (!b.is_empty()) reduce_and_restart(b);
                break;
            }
            case MessageKind::terminate: terminated_ = true; return;
            default: break;
            }
        }
    }

    // Tracks the best floating objective among rigorously feasible points;
    // returns true when `ind` improves on it.
    bool note_feasible(const Individual& ind)
    {
        if (!ind.feasible) return false;
        if (best_feasible_ && !(ind.objective < best_feasible_->objective)) return false;
        best_feasible_ = ind;
        return true;
    }

    void report_best()
    {
        const Individual& b = population_[best_index(population_)];
        if (!note_feasible(b)) return;
        const double ub = rigorous_ub(b.position, problem_);
        best_feasible_->rigorous_ub = ub;
        if (!(ub < best_ub_)) return;
        best_ub_ = ub;
        if (channel_) channel_->send(Message::upper_bound(b.position, ub));
    }

    Problem problem_;
    DEConfig cfg_;
    Channel* channel_;
    Rng rng_;
    std::vector<Expr> constraints_;
    Box domain_;
    std::vector<Individual> population_;
    std::optional<Individual> best_feasible_;
    double best_ub_ = rounding::kInf;
    std::size_t generation_ = 0;
    std::size_t last_offset_ = 0;
    std::vector<std::size_t> last_bases_;
    bool terminated_ = false;
};

/// Runs the DE alone for cfg.max_generations generations (or until a
/// TERMINATE message arrives on the channel).
inline Individual run_de(const Problem& p, const DEConfig& cfg, Channel* channel = nullptr)
{
    DeWorker de(p, cfg, channel);
    if (de.domain_empty()) return Individual{};
    while (!de.terminated() && (cfg.max_generations == 0 || de.generations() < cfg.max_generations)) {
        de.generation();
    }
    if (de.best_feasible()) return *de.best_feasible();
    return de.best();
}

} // namespace coopt

#endif // COOPT_DE_HPP
