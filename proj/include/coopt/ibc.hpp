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

// Interval branch and contract.
//
// Boxes are extracted from a priority queue, contracted against the
// constraints and the objective cut F <= f_ub - eps, bounded from below by
// the natural and first-order Taylor forms, probed at their midpoint, and
// bisected. A box is discarded once its lower bound reaches the cut, so on
// completion f_ub - eps <= f* <= f_ub.

#ifndef COOPT_IBC_HPP
#define COOPT_IBC_HPP

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "coopt/box.hpp"
#include "coopt/certificate.hpp"
#include "coopt/channel.hpp"
#include "coopt/contractor.hpp"
#include "coopt/expr.hpp"
#include "coopt/problem.hpp"
#include "coopt/rigorous.hpp"
#include "coopt/work_queue.hpp"

namespace coopt {

enum class BisectStrategy { round_robin, largest_first, smear };

inline std::string_view to_string(BisectStrategy s)
{
    switch (s) {
    case BisectStrategy::round_robin: return "rr";
    case BisectStrategy::largest_first: return "largest";
    case BisectStrategy::smear: return "smear";
    }
    return "?";
}

struct IbcConfig {
    double eps = 1e-8;
    double eta = 0.0;
    bool use_taylor = true;
    BisectStrategy bisect = BisectStrategy::smear;
    QueueStrategy queue = QueueStrategy::maxdist;
    std::size_t max_iters = 0; // 0: unlimited
    double max_time = 0.0;     // seconds, 0: unlimited
    std::uint64_t reduction_period = 10; // DE generations between reductions, 0: never
    bool record_discards = false;
};

/// Workspace reused across contractions by a single worker.
struct ContractWorkspace {
    NodeStore store;
};

struct ContractResult {
    Box box; // empty: no feasible point with f <= cut
    double lower_bound = -rounding::kInf;
};

/// The main contractor: repeats {objective cut by HC4Revise, natural and
/// Taylor lower bounds, HC4 on the constraints} until the box is empty or
/// a round fails to shrink it below eta times its width.
inline ContractResult contract_and_bound(const Box& box, const Expr& objective,
                                         std::span<const RelationalConstraint> constraints,
                                         double cut, double eta, bool use_taylor,
                                         ContractWorkspace& ws)
{
    ContractResult r{box, -rounding::kInf};
    const RelationalConstraint objective_cut = RelationalConstraint::at_most(objective, cut);
    if (r.box.is_empty()) return r;
    for (;;) {
        const double w0 = box_width(r.box);
        const Box before = r.box;

        const ReviseResult rev = hc4revise(objective_cut, r.box, ws.store);
        if (rev.box.is_empty()) {
            r.box = rev.box;
            r.lower_bound = rounding::kInf;
            return r;
        }
        r.box = rev.box;
        r.lower_bound = std::max(r.lower_bound, rev.root.lo);

        if (use_taylor) {
            const Point c = midpoint(r.box);
            const auto g = grad_interval(objective, r.box, ws.store);
            const Interval t = taylor_form(objective, r.box, c, g);
            if (!t.is_empty()) r.lower_bound = std::max(r.lower_bound, t.lo);
        }
        if (r.lower_bound > cut) {
            r.box.set_empty();
            r.lower_bound = rounding::kInf;
            return r;
        }

        r.box = hc4(constraints, r.box, eta, ws.store);
        if (r.box.is_empty()) {
            r.lower_bound = rounding::kInf;
            return r;
        }
        if (r.box == before || !(box_width(r.box) <= eta * w0)) break;
    }
    return r;
}

inline ContractResult contract_and_bound(const Box& box, const Problem& p, double cut, double eta,
                                         bool use_taylor)
{
    ContractWorkspace ws;
    const auto cs = relational_constraints(p);
    return contract_and_bound(box, p.objective, cs, cut, eta, use_taylor, ws);
}

namespace detail {

inline bool splittable(const Interval& x)
{
    if (x.is_empty() || x.is_degenerate()) return false;
    const double m = midpoint(x);
    return x.lo < m && m < x.hi;
}

inline std::optional<std::size_t> largest_splittable(const Box& b)
{
    std::optional<std::size_t> best;
    double w = -1.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!splittable(b[i])) continue;
        const double wi = width(b[i]);
        if (wi > w) {
            w = wi;
            best = i;
        }
    }
    return best;
}

} // namespace detail

/// True when some component can be split at its midpoint.
inline bool can_bisect(const Box& b)
{
    return std::any_of(b.begin(), b.end(), [](const Interval& x) { return detail::splittable(x); });
}

/// Selects the component to split. `rr_next` is the round-robin cursor.
inline std::size_t select_bisection_dim(const Box& b, BisectStrategy strategy, const Expr& objective,
                                        std::size_t& rr_next)
{
    if (!can_bisect(b)) throw std::invalid_argument("bisect: every component is degenerate");
    switch (strategy) {
    case BisectStrategy::round_robin:
        for (std::size_t k = 0; k < b.size(); ++k) {
            const std::size_t i = (rr_next + k) % b.size();
            if (detail::splittable(b[i])) {
                rr_next = (i + 1) % b.size();
                return i;
            }
        }
        break;
    case BisectStrategy::largest_first: return *detail::largest_splittable(b);
    case BisectStrategy::smear: {
        const auto g = grad_interval(objective, b);
        std::optional<std::size_t> best;
        double q = 0.0;
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (!detail::splittable(b[i]) || i >= g.size()) continue;
            const double qi = (g[i] * (b[i] - Interval{midpoint(b[i])})).mag();
            if (qi > q) {
                q = qi;
                best = i;
            }
        }
        if (best) return *best;
        return *detail::largest_splittable(b);
    }
    }
    return *detail::largest_splittable(b);
}

/// Splits `b` at the midpoint of the selected component.
inline std::pair<Box, Box> bisect(const Box& b, BisectStrategy strategy, const Expr& objective,
                                  std::size_t& rr_next)
{
    const std::size_t i = select_bisection_dim(b, strategy, objective, rr_next);
    const double m = midpoint(b[i]);
    std::pair<Box, Box> out{b, b};
    out.first[i] = Interval{b[i].lo, m};
    out.second[i] = Interval{m, b[i].hi};
    return out;
}

struct Incumbent {
    Point point;
    double ub = rounding::kInf;
};

struct SearchState {
    WorkQueue queue;
    double best_ub = rounding::kInf;
    std::optional<Point> best_point;
    SearchStats stats;
    std::vector<double> ub_history; // every accepted upper bound, in order
};

/// Upward-rounded f_ub - eps: boxes with lower bound at or above it hold no
/// point improving on f_ub by more than eps.
inline double objective_cut(double best_ub, double eps)
{
    if (best_ub == rounding::kInf) return rounding::kInf;
    return rounding::sub_up(best_ub, eps);
}

/// Probes the box midpoint. On a rigorously feasible midpoint whose
/// rigorous objective bound beats the incumbent, updates `state` and returns
/// the new incumbent.
inline std::optional<Incumbent> midpoint_test(const Box& b, std::span<const Expr> constraints,
                                              const Problem& p, SearchState& state)
{
    Point c = midpoint(b);
    if (!rigorous_feasible(c, constraints)) return std::nullopt;
    const double ub = rigorous_ub(c, p);
    if (!(ub < state.best_ub)) return std::nullopt;
    state.best_ub = ub;
    state.best_point = c;
    state.ub_history.push_back(ub);
    ++state.stats.ub_updates;
    ++state.stats.ub_updates_midpoint;
    return Incumbent{std::move(c), ub};
}

inline std::optional<Incumbent> midpoint_test(const Box& b, const Problem& p, SearchState& state)
{
    const auto cs = p.constraints();
    return midpoint_test(b, cs, p, state);
}

struct DiscardRecord {
    Box input;
    Box output; // empty when the whole input was discarded
    double cut;
};

struct ReductionRecord {
    Box hull;
    double best_ub; // IBC upper bound when the hull was sent
};

/// The IBC worker. `step()` performs one extraction; `run()` loops until
/// the queue is exhausted or a cap is reached.
class IbcWorker {
public:
    IbcWorker(Problem problem, IbcConfig cfg, Channel* channel = nullptr)
        : problem_(std::move(problem)), cfg_(cfg), channel_(channel),
          constraints_(relational_constraints(problem_)), normalized_(problem_.constraints()),
          start_(std::chrono::steady_clock::now())
    {
        if (!(cfg_.eps > 0)) throw std::invalid_argument("ibc: eps must be positive");
        state_.queue = WorkQueue(cfg_.queue);
        state_.queue.push(problem_.domain, -rounding::kInf, 0, state_.best_point);
        state_.stats.max_queue_size = 1;
    }

    const Problem& problem() const { return problem_; }
    const IbcConfig& config() const { return cfg_; }
    const SearchState& state() const { return state_; }
    const std::vector<DiscardRecord>& discards() const { return discards_; }
    const std::vector<ReductionRecord>& reductions() const { return reductions_; }

    bool done() const { return finished_; }

    void run()
    {
        while (!finished_) step();
    }

    /// One iteration of the branch-and-contract loop.
    void step()
    {
        if (finished_) return;
        if (cap_reached()) {
            timed_out_ = true;
            finished_ = true;
            return;
        }
        receive();
        maybe_reduce();
        if (state_.queue.empty()) {
            finished_ = true;
            return;
        }
        WorkItem item = state_.queue.pop();
        ++iterations_;
        ++state_.stats.boxes_processed;
        const double cut = current_cut();
        if (item.lower_bound >= cut) return;

        ContractResult cr = contract_and_bound(item.box, problem_.objective, constraints_, cut,
                                               cfg_.eta, cfg_.use_taylor, ws_);
        if (cfg_.record_discards && !(cr.box == item.box)) {
            discards_.push_back({item.box, cr.box, cut});
        }
        if (cr.box.is_empty()) return;
        const double lb = std::max(item.lower_bound, cr.lower_bound);

        if (auto inc = midpoint_test(cr.box, normalized_, problem_, state_)) {
            on_improved();
            if (channel_) channel_->send(Message::solution(inc->point, inc->ub));
        }
        if (lb >= current_cut()) return;

        if (!can_bisect(cr.box)) {
            residual_lb_ = std::min(residual_lb_, lb);
            ++state_.stats.residual_boxes;
            return;
        }
        auto [left, right] = bisect(cr.box, cfg_.bisect, problem_.objective, rr_next_);
        state_.queue.push(std::move(left), lb, item.depth + 1, state_.best_point);
        state_.queue.push(std::move(right), lb, item.depth + 1, state_.best_point);
        state_.stats.max_queue_size = std::max(state_.stats.max_queue_size, state_.queue.size());
    }

    /// Certified enclosure when finished; otherwise the current bounds.
    Certificate certificate() const
    {
        Certificate c;
        c.upper_bound = state_.best_ub;
        c.point = state_.best_point;
        c.stats = state_.stats;
        c.timed_out = timed_out_;
        const double cut = current_cut();
        double lb = std::min({cut, residual_lb_, state_.queue.min_lower_bound()});
        c.lower_bound = std::min(lb, state_.best_ub);
        if (!finished_ || timed_out_ || !state_.queue.empty()) {
            c.status = Status::uncertified;
            return c;
        }
        if (state_.best_ub == rounding::kInf) {
            c.status = residual_lb_ == rounding::kInf ? Status::infeasible : Status::uncertified;
            return c;
        }
        c.status = c.upper_bound - c.lower_bound <= cfg_.eps ? Status::certified : Status::uncertified;
        return c;
    }

    /// Current global lower bound: min over queued boxes, residual boxes and
    /// the incumbent.
    double global_lower_bound() const { return certificate().lower_bound; }

private:
    double current_cut() const { return objective_cut(state_.best_ub, cfg_.eps); }

    bool cap_reached() const
    {
        if (cfg_.max_iters && iterations_ >= cfg_.max_iters) return true;
        if (cfg_.max_time > 0) {
            const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
            if (dt.count() >= cfg_.max_time) return true;
        }
        return false;
    }

    void receive()
    {
        if (!channel_) return;
        for (Message& m : channel_->drain(Direction::de_to_ibc)) {
            if (m.kind != MessageKind::ub_from_de) continue;
            if (m.point.size() != problem_.dimension() || !problem_.domain.contains(m.point)) continue;
            // Upper bounds are recomputed locally; the certificate never rests
            // on the sender's arithmetic.
            if (!rigorous_feasible(m.point, normalized_)) continue;
            const double ub = rigorous_ub(m.point, problem_);
            if (!(ub < state_.best_ub)) continue;
            state_.best_ub = ub;
            state_.best_point = std::move(m.point);
            state_.ub_history.push_back(ub);
            ++state_.stats.ub_updates;
            ++state_.stats.ub_updates_from_de;
            on_improved();
        }
    }

    void on_improved()
    {
        const double cut = current_cut();
        state_.queue.remove_if([cut](const WorkItem& w) { return w.lower_bound >= cut; });
        if (state_.queue.strategy() == QueueStrategy::maxdist) {
            state_.queue.reprioritize(state_.best_point);
        }
    }

    void maybe_reduce()
    {
        if (!channel_ || cfg_.reduction_period == 0) return;
        const std::uint64_t g = channel_->generations();
        if (g < last_reduction_gen_ + cfg_.reduction_period) return;
        last_reduction_gen_ = g - g % cfg_.reduction_period;
        if (auto h = queue_hull(state_.queue)) {
            reductions_.push_back({*h, state_.best_ub});
            ++state_.stats.domain_reductions;
            channel_->send(Message::reduction(std::move(*h)));
        }
    }

    Problem problem_;
    IbcConfig cfg_;
    Channel* channel_;
    std::vector<RelationalConstraint> constraints_;
    std::vector<Expr> normalized_;
    SearchState state_;
    ContractWorkspace ws_;
    std::size_t rr_next_ = 0;
    std::size_t iterations_ = 0;
    double residual_lb_ = rounding::kInf;
    bool finished_ = false;
    bool timed_out_ = false;
    std::uint64_t last_reduction_gen_ = 0;
    std::chrono::steady_clock::time_point start_;
    std::vector<DiscardRecord> discards_;
    std::vector<ReductionRecord> reductions_;
};

/// Runs the IBC to completion without a partner.
inline Certificate run_ibc(const Problem& p, const IbcConfig& cfg, Channel* channel = nullptr)
{
    IbcWorker w(p, cfg, channel);
    w.run();
    return w.certificate();
}

} // namespace coopt

#endif // COOPT_IBC_HPP
