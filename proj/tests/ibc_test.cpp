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

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "coopt/ibc.hpp"
#include "coopt/model.hpp"
#include "test_support.hpp"

namespace coopt {
namespace {

using testing::Rng;

const Expr x = Expr::variable(0);
const Expr y = Expr::variable(1);
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBananaMin = -2.825296148;

Problem banana() { return load_problem(testing::model_path("banana.model")); }

Problem unconstrained(Expr f, std::vector<Interval> dom)
{
    Problem p;
    for (std::size_t i = 0; i < dom.size(); ++i) p.names.push_back("x" + std::to_string(i));
    p.domain = Box(std::move(dom));
    p.objective = std::move(f);
    return p;
}

TEST(ContractAndBound, BananaWithoutIncumbent)
{
    const Problem p = banana();
    const ContractResult r = contract_and_bound(p.domain, p, kInf, 0.0, true);
    ASSERT_FALSE(r.box.is_empty());
    EXPECT_NEAR(r.box[0].lo, 1.4142, 1e-3);
    EXPECT_NEAR(r.box[0].hi, 8.5674, 1e-3);
    EXPECT_NEAR(r.box[1].lo, 0.2, 1e-3);
    EXPECT_NEAR(r.box[1].hi, 9.125, 1e-3);
    EXPECT_LE(r.lower_bound, -2.8252962);
}

TEST(ContractAndBound, ObjectiveCutRejects)
{
    const Problem p = unconstrained(sqr(x), {Interval(1, 3)});
    EXPECT_TRUE(contract_and_bound(p.domain, p, 0.5, 0.0, true).box.is_empty());
    const ContractResult r = contract_and_bound(p.domain, p, kInf, 0.0, true);
    EXPECT_EQ(r.lower_bound, 1.0);
    EXPECT_EQ(r.box, p.domain);
}

TEST(MidpointTest, Examples)
{
    {
        const Problem p = unconstrained(sqr(x), {Interval(1, 3)});
        SearchState s;
        const auto inc = midpoint_test(p.domain, p, s);
        ASSERT_TRUE(inc);
        EXPECT_EQ(inc->point, Point{2});
        EXPECT_EQ(s.best_ub, 4.0);
    }
    {
        const Problem p = banana();
        SearchState s;
        EXPECT_FALSE(midpoint_test(Box({Interval(0, 1), Interval(0, 1)}), p, s));
        EXPECT_EQ(s.best_ub, kInf);
        const auto inc = midpoint_test(Box::degenerate(Point{8.532424, 0.274717}), p, s);
        ASSERT_TRUE(inc);
        EXPECT_NEAR(s.best_ub, kBananaMin, 1e-6);
        // Not improving: no update.
        EXPECT_FALSE(midpoint_test(Box::degenerate(Point{8.532424, 0.274717}), p, s));
    }
}

TEST(Bisect, Strategies)
{
    std::size_t rr = 0;
    const Box b({Interval(0, 4), Interval(0, 1)});
    auto [l, r] = bisect(b, BisectStrategy::largest_first, x, rr);
    EXPECT_EQ(l, Box({Interval(0, 2), Interval(0, 1)}));
    EXPECT_EQ(r, Box({Interval(2, 4), Interval(0, 1)}));

    const Box sq({Interval(0, 1), Interval(0, 1)});
    rr = 0;
    EXPECT_EQ(select_bisection_dim(sq, BisectStrategy::round_robin, x, rr), 0u);
    EXPECT_EQ(select_bisection_dim(sq, BisectStrategy::round_robin, x, rr), 1u);
    EXPECT_EQ(select_bisection_dim(sq, BisectStrategy::round_robin, x, rr), 0u);

    // Smear: |[-5,0] * [-1.25,1.25]| = 6.25 for x^2 - x on [-2, 0.5].
    const Box one({Interval(-2, 0.5)});
    const auto g = grad_interval(sqr(x) - x, one);
    EXPECT_EQ((g[0] * (one[0] - Interval(midpoint(one[0])))).mag(), 6.25);
    EXPECT_EQ(select_bisection_dim(one, BisectStrategy::smear, sqr(x) - x, rr), 0u);

    // Smear prefers the steep direction over the wide one.
    const Expr steep = Expr::constant(100) * y + x;
    EXPECT_EQ(select_bisection_dim(b, BisectStrategy::smear, steep, rr), 1u);
    EXPECT_EQ(select_bisection_dim(b, BisectStrategy::largest_first, steep, rr), 0u);

    // Flat gradient falls back to largest-first.
    EXPECT_EQ(select_bisection_dim(b, BisectStrategy::smear, Expr::constant(1), rr), 0u);

    // Degenerate components are skipped; an all-degenerate box is an error.
    const Box mixed({Interval(1), Interval(0, 1)});
    EXPECT_EQ(select_bisection_dim(mixed, BisectStrategy::round_robin, x, rr), 1u);
    EXPECT_FALSE(can_bisect(Box::degenerate(Point{1, 2})));
    EXPECT_THROW(select_bisection_dim(Box::degenerate(Point{1, 2}), BisectStrategy::largest_first, x, rr),
                 std::invalid_argument);
}

TEST(WorkQueue, MaxDistOrdering)
{
    WorkItem item;
    item.box = Box({Interval(2, 3), Interval(0, 0.5)});
    EXPECT_EQ(maxdist_priority(item, Point{1, 1}), 1.5);
    EXPECT_EQ(maxdist_priority(item, Point{2.5, 0.2}), 0.0);
    EXPECT_EQ(maxdist_priority(item, std::nullopt), 1.0);

    WorkQueue q(QueueStrategy::maxdist);
    const std::optional<Point> inc = Point{0.0};
    q.push(Box({Interval(1, 2)}), 0, 0, inc);  // distance 1
    q.push(Box({Interval(3, 4)}), 0, 0, inc);  // distance 3
    q.push(Box({Interval(-1, 1)}), 0, 0, inc); // contains the incumbent
    EXPECT_EQ(q.pop().box, Box({Interval(3, 4)}));
    EXPECT_EQ(q.pop().box, Box({Interval(1, 2)}));
    EXPECT_EQ(q.pop().box, Box({Interval(-1, 1)}));
}

TEST(WorkQueue, TieBreaks)
{
    WorkQueue q(QueueStrategy::best_first);
    q.push(Box({Interval(0, 1)}), 5, 0, std::nullopt);
    q.push(Box({Interval(0, 2)}), 5, 0, std::nullopt);
    q.push(Box({Interval(1, 2)}), 5, 0, std::nullopt);
    q.push(Box({Interval(0, 9)}), 7, 0, std::nullopt);
    EXPECT_EQ(q.pop().box, Box({Interval(0, 2)})); // wider
    EXPECT_EQ(q.pop().box, Box({Interval(0, 1)})); // earlier
    EXPECT_EQ(q.pop().box, Box({Interval(1, 2)}));
    EXPECT_EQ(q.pop().box, Box({Interval(0, 9)})); // larger lower bound last
}

TEST(WorkQueue, ReprioritizeMatchesFullResort)
{
    Rng rng(12);
    for (int t = 0; t < 200; ++t) {
        WorkQueue q(QueueStrategy::maxdist);
        const int k = static_cast<int>(rng() % 30);
        std::vector<Box> boxes;
        for (int i = 0; i < k; ++i) {
            boxes.push_back(testing::random_box(rng, 2));
            q.push(boxes.back(), 0, 0, Point{testing::uniform(rng, -4, 4), testing::uniform(rng, -4, 4)});
        }
        const Point inc{testing::uniform(rng, -4, 4), testing::uniform(rng, -4, 4)};
        q.reprioritize(inc);
        // Oracle: sort the distances independently, descending.
        std::vector<double> expected;
        for (const auto& b : boxes) expected.push_back(point_box_distance(inc, b));
        std::sort(expected.rbegin(), expected.rend());
        std::vector<double> got;
        std::vector<Box> popped;
        while (!q.empty()) {
            WorkItem w = q.pop();
            got.push_back(point_box_distance(inc, w.box));
            popped.push_back(w.box);
        }
        EXPECT_EQ(got, expected);
        EXPECT_EQ(popped.size(), boxes.size());
    }
    WorkQueue empty;
    empty.reprioritize(Point{1.0});
    EXPECT_TRUE(empty.empty());
}

TEST(WorkQueue, Hull)
{
    WorkQueue q;
    EXPECT_FALSE(queue_hull(q));
    q.push(Box({Interval(0, 1), Interval(0, 1)}), 0, 0, std::nullopt);
    EXPECT_EQ(*queue_hull(q), Box({Interval(0, 1), Interval(0, 1)}));
    q.push(Box({Interval(2, 3), Interval(0, 0.5)}), 0, 0, std::nullopt);
    EXPECT_EQ(*queue_hull(q), Box({Interval(0, 3), Interval(0, 1)}));
}

TEST(RunIbc, UnconstrainedSquare)
{
    const Problem p = unconstrained(sqr(x), {Interval(-1, 2)});
    const Certificate c = run_ibc(p, IbcConfig{});
    EXPECT_EQ(c.status, Status::certified);
    EXPECT_GE(c.upper_bound, 0.0);
    EXPECT_LE(c.upper_bound, 1e-8);
    ASSERT_TRUE(c.point);
    EXPECT_NEAR((*c.point)[0], 0.0, 1e-4);
}

TEST(RunIbc, Infeasible)
{
    Problem p = unconstrained(x, {Interval(-1, 2)});
    p.inequalities = {x, Expr::constant(1) - x};
    const Certificate c = run_ibc(p, IbcConfig{});
    EXPECT_EQ(c.status, Status::infeasible);
    EXPECT_EQ(c.upper_bound, kInf);
    EXPECT_FALSE(c.point);
}

TEST(RunIbc, UnboundedDomain)
{
    const Problem p = unconstrained(sqr(x - Expr::constant(1)) + Expr::constant(3), {Interval::entire()});
    const Certificate c = run_ibc(p, IbcConfig{});
    EXPECT_EQ(c.status, Status::certified);
    EXPECT_LE(c.lower_bound, 3.0);
    EXPECT_GE(c.upper_bound, 3.0);
    EXPECT_LE(c.gap(), 1e-8);
}

TEST(RunIbc, BananaCertificate)
{
    const Problem p = banana();
    IbcWorker w(p, IbcConfig{});
    w.run();
    const Certificate c = w.certificate();
    EXPECT_EQ(c.status, Status::certified);
    EXPECT_NEAR(c.upper_bound, kBananaMin, 1e-6);
    EXPECT_LE(c.gap(), 1e-8);
    ASSERT_TRUE(c.point);
    EXPECT_TRUE(rigorous_feasible(*c.point, p));
    EXPECT_NEAR((*c.point)[0], 8.532424, 1e-3);
    EXPECT_NEAR((*c.point)[1], 0.274717, 1e-3);

    const auto& h = w.state().ub_history;
    ASSERT_FALSE(h.empty());
    for (std::size_t i = 1; i < h.size(); ++i) EXPECT_LT(h[i], h[i - 1]);
    EXPECT_EQ(h.back(), c.upper_bound);
}

TEST(RunIbc, CapGivesSoundUncertifiedResult)
{
    const Problem p = banana();
    IbcConfig cfg;
    cfg.max_iters = 5;
    const Certificate c = run_ibc(p, cfg);
    EXPECT_EQ(c.status, Status::uncertified);
    EXPECT_TRUE(c.timed_out);
    EXPECT_LE(c.lower_bound, kBananaMin);
    EXPECT_GE(c.upper_bound, kBananaMin);
}

// Best-first order keeps every run short; with the incumbent-distance order
// and no early incumbent, round-robin and largest-first refine a long level
// curve before the optimum region and take minutes.
TEST(IbcProperty, BisectionStrategiesAgree)
{
    for (const char* name : {"banana.model", "quartic.model", "camel.model", "circle_eq.model"}) {
        const Problem p = load_problem(testing::model_path(name));
        std::vector<double> ubs;
        for (auto s : {BisectStrategy::round_robin, BisectStrategy::largest_first, BisectStrategy::smear}) {
            IbcConfig cfg;
            cfg.bisect = s;
            cfg.queue = QueueStrategy::best_first;
            const Certificate c = run_ibc(p, cfg);
            EXPECT_EQ(c.status, Status::certified) << name << " " << to_string(s);
            ubs.push_back(c.upper_bound);
        }
        const auto [lo, hi] = std::minmax_element(ubs.begin(), ubs.end());
        EXPECT_LE(*hi - *lo, 1e-8) << name;
    }
}

TEST(IbcProperty, QueueStrategiesAgree)
{
    const Problem p = load_problem(testing::model_path("circle_eq.model"));
    const double minimum = -std::sqrt(2.0 * (1 + 1e-8));
    for (auto q : {QueueStrategy::maxdist, QueueStrategy::best_first, QueueStrategy::largest_first,
                   QueueStrategy::depth_first}) {
        IbcConfig cfg;
        cfg.queue = q;
        const Certificate c = run_ibc(p, cfg);
        EXPECT_EQ(c.status, Status::certified) << to_string(q);
        EXPECT_LE(c.lower_bound, minimum) << to_string(q);
        EXPECT_GE(c.upper_bound, minimum) << to_string(q);
    }
}

// Discard correctness: points of a discarded region that satisfy the
// constraints never have an objective value below the cut in force at the
// time of the discard.
TEST(IbcProperty, DiscardCorrectnessFuzz)
{
    const Problem p = banana();
    IbcConfig cfg;
    cfg.record_discards = true;
    IbcWorker w(p, cfg);
    w.run();
    const auto& log = w.discards();
    ASSERT_FALSE(log.empty());
    Rng rng(55);
    int sampled = 0;
    int violations = 0;
    const auto cs = p.constraints();
    for (int s = 0; s < 10000; ++s) {
        const DiscardRecord& d = log[rng() % log.size()];
        const Point pt = testing::random_point(rng, d.input);
        if (!d.output.is_empty() && d.output.contains(pt)) continue;
        bool feasible = true;
        for (const auto& g : cs) feasible = feasible && testing::eval_long(g, pt) <= 0;
        if (!feasible) continue;
        ++sampled;
        if (testing::eval_long(p.objective, pt) < d.cut) ++violations;
    }
    EXPECT_EQ(violations, 0);
    EXPECT_GT(sampled, 100);
}

TEST(IbcProperty, CertificateSoundnessOnKnownMinima)
{
    struct Case {
        const char* model;
        double minimum;
    };
    for (const Case& k : {Case{"sphere.model", 0.0}, Case{"quartic.model", 0.0},
                          Case{"circle_eq.model", -std::sqrt(2.0 * (1 + 1e-8))}}) {
        const Problem p = load_problem(testing::model_path(k.model));
        const Certificate c = run_ibc(p, IbcConfig{});
        EXPECT_EQ(c.status, Status::certified) << k.model;
        EXPECT_LE(c.lower_bound, k.minimum + 1e-12) << k.model;
        EXPECT_GE(c.upper_bound, k.minimum - 1e-12) << k.model;
        EXPECT_LE(c.gap(), 1e-8) << k.model;
        ASSERT_TRUE(c.point) << k.model;
        EXPECT_TRUE(rigorous_feasible(*c.point, p)) << k.model;
    }
}

} // namespace
} // namespace coopt
