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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "coopt/contractor.hpp"
#include "coopt/model.hpp"
#include "test_support.hpp"

namespace coopt {
namespace {

using testing::Rng;

const Expr x = Expr::variable(0);
const Expr y = Expr::variable(1);
constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(Hc4Revise, LinearInequality)
{
    const auto c = RelationalConstraint::at_most(x + y, 0.0);
    const Box in({Interval(-5, 5), Interval(2, 3)});
    const ReviseResult r = hc4revise(c, in);
    EXPECT_EQ(r.box, Box({Interval(-5, -2), Interval(2, 3)}));
    EXPECT_EQ(r.root, Interval(-3, 8));

    // Dense sampling: every feasible sample survives and the bound -2 is
    // attained by the feasible point (-2, 2).
    for (int i = 0; i <= 200; ++i) {
        for (int j = 0; j <= 20; ++j) {
            const double xv = -5 + 10.0 * i / 200;
            const double yv = 2 + 1.0 * j / 20;
            if (xv + yv <= 0) {
                EXPECT_TRUE(r.box.contains(Point{xv, yv}));
            }
        }
    }
    EXPECT_TRUE(r.box.contains(Point{-2, 2}));
}

TEST(Hc4Revise, SquareEquality)
{
    const RelationalConstraint c(sqr(x), Interval(4));
    EXPECT_EQ(hc4revise(c, Box({Interval(0, 10)})).box, Box({Interval(2)}));
    EXPECT_EQ(hc4revise(c, Box({Interval(-10, 10)})).box, Box({Interval(-2, 2)}));
    EXPECT_EQ(hc4revise(c, Box({Interval(-10, 1)})).box, Box({Interval(-2)}));
}

TEST(Hc4Revise, ForwardRejection)
{
    const auto c = RelationalConstraint::at_most(x + y, 0.0);
    EXPECT_TRUE(hc4revise(c, Box({Interval(1, 2), Interval(3, 4)})).box.is_empty());
}

TEST(Hc4Revise, ProjectionRules)
{
    // mul with a zero-straddling factor: the two quotient pieces are hulled
    // after intersecting with the current range.
    const RelationalConstraint m(x * y, Interval(1, 2));
    EXPECT_EQ(hc4revise(m, Box({Interval(0.5, 4), Interval(-1, 1)})).box,
              Box({Interval(1, 4), Interval(0.25, 1)}));

    const RelationalConstraint e(exp(x), Interval(-kInf, 1));
    EXPECT_EQ(hc4revise(e, Box({Interval(-3, 3)})).box, Box({Interval(-3, 0)}));

    const RelationalConstraint l(log(x), Interval(-kInf, 0));
    EXPECT_EQ(hc4revise(l, Box({Interval(-3, 3)})).box, Box({Interval(0, 1)}));

    const RelationalConstraint s(sqrt(x), Interval(0, 2));
    EXPECT_EQ(hc4revise(s, Box({Interval(-3, 9)})).box, Box({Interval(0, 4)}));

    const RelationalConstraint p3(pow(x, 3), Interval(-8, 1));
    EXPECT_EQ(hc4revise(p3, Box({Interval(-5, 5)})).box, Box({Interval(-2, 1)}));

    const RelationalConstraint d(x / y, Interval(1, 2));
    const Box r = hc4revise(d, Box({Interval(0, 10), Interval(1, 2)})).box;
    EXPECT_EQ(r[0], Interval(1, 4));

    // sin on a single monotone branch is inverted.
    const RelationalConstraint sn(sin(x), Interval(0.5, 1));
    const Box rs = hc4revise(sn, Box({Interval(0, 1.5)})).box;
    EXPECT_LE(rs[0].lo, std::asin(0.5));
    EXPECT_GT(rs[0].lo, 0.5);
    EXPECT_EQ(rs[0].hi, 1.5);
}

TEST(Hc4, BananaInitialDomain)
{
    const Problem p = load_problem(testing::model_path("banana.model"));
    const auto cs = relational_constraints(p);
    const Box r = hc4(cs, p.domain, 0.0);
    EXPECT_NEAR(r[0].lo, 1.4142, 1e-3);
    EXPECT_NEAR(r[0].hi, 8.5674, 1e-3);
    EXPECT_NEAR(r[1].lo, 0.2, 1e-3);
    EXPECT_NEAR(r[1].hi, 9.125, 1e-3);
}

TEST(Hc4, TrivialCases)
{
    const Box b({Interval(-1, 2)});
    EXPECT_EQ(hc4(std::vector<RelationalConstraint>{}, b, 0.0), b);
    const std::vector<RelationalConstraint> cs{RelationalConstraint::at_most(x, 0.0),
                                               RelationalConstraint::at_most(Expr::constant(1) - x, 0.0)};
    EXPECT_TRUE(hc4(cs, b, 0.0).is_empty());
}

TEST(Hc4, FixedPointWithEtaOne)
{
    // The second constraint tightens x, which the first then propagates to y.
    const std::vector<RelationalConstraint> cs{
        RelationalConstraint::at_most(y - x + Expr::constant(1), 0.0),
        RelationalConstraint::at_most(x + Expr::constant(2) * y - Expr::constant(4), 0.0)};
    const Box b({Interval(0, 10), Interval(0, 10)});
    const Box one = hc4(cs, b, 0.0);
    const Box fix = hc4(cs, b, 1.0);
    EXPECT_EQ(one, Box({Interval(1, 4), Interval(0, 1.5)}));
    EXPECT_EQ(fix, Box({Interval(1, 4), Interval(0, 1.5)}));
    EXPECT_EQ(hc4(cs, fix, 1.0), fix);

    // A geometrically converging cycle stops at the pass cap.
    const std::vector<RelationalConstraint> slow{RelationalConstraint::at_most(y - x, 0.0),
                                                 RelationalConstraint::at_most(x - Expr::constant(0.5) * y, 0.0)};
    const Box capped = hc4(slow, b, 1.0);
    EXPECT_FALSE(capped.is_empty());
    EXPECT_TRUE(capped.subset_of(hc4(slow, b, 0.0)));
}

struct RandomSystem {
    std::vector<RelationalConstraint> constraints;
    Box box;
};

// A constraint system that is satisfied at a random anchor point, so the
// feasible set is non-empty and sampling finds feasible points.
RandomSystem random_system(Rng& rng)
{
    const std::size_t n = 1 + rng() % 3;
    RandomSystem s{{}, testing::random_box(rng, n)};
    const Point anchor = testing::random_point(rng, s.box);
    const int m = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < m; ++k) {
        const Expr e = testing::random_expr(rng, n, 1 + static_cast<int>(rng() % 3));
        const double v = eval_real(e, anchor);
        if (!std::isfinite(v)) continue;
        const double slack = testing::uniform(rng, 0.0, 1.0);
        if (rng() % 4 == 0) {
            s.constraints.emplace_back(e, Interval(v - slack, v + slack));
        } else {
            s.constraints.push_back(RelationalConstraint::at_most(e, v + slack));
        }
    }
    return s;
}

// True when every constraint holds at p with a margin that dominates the
// error of the long double reference evaluation.
bool clearly_feasible(const std::vector<RelationalConstraint>& cs, const Point& p)
{
    for (const auto& c : cs) {
        const long double v = testing::eval_long(c.expr, p);
        if (!std::isfinite(static_cast<double>(v))) return false;
        const long double margin = 1e-9L * (1 + std::fabs(static_cast<double>(v)));
        if (!(v >= c.bound.lo + margin && v <= c.bound.hi - margin)) return false;
    }
    return true;
}

TEST(ContractorProperty, SoundnessFuzz)
{
    Rng rng(101);
    int feasible_samples = 0;
    int lost = 0;
    for (int t = 0; t < 1000; ++t) {
        const RandomSystem s = random_system(rng);
        for (double eta : {0.0, 0.9}) {
            const Box r = hc4(s.constraints, s.box, eta);
            EXPECT_TRUE(r.subset_of(s.box));
            for (int k = 0; k < 10; ++k) {
                const Point p = testing::random_point(rng, s.box);
                if (!clearly_feasible(s.constraints, p)) continue;
                ++feasible_samples;
                if (!r.contains(p)) ++lost;
            }
        }
    }
    EXPECT_EQ(lost, 0);
    EXPECT_GT(feasible_samples, 2000);
}

TEST(ContractorProperty, ReviseIsContractingAndRejectsLikeForward)
{
    Rng rng(102);
    for (int t = 0; t < 3000; ++t) {
        const RandomSystem s = random_system(rng);
        for (const auto& c : s.constraints) {
            const ReviseResult r = hc4revise(c, s.box);
            EXPECT_TRUE(r.box.subset_of(s.box));
            if (intersect(eval_natural(c.expr, s.box), c.bound).is_empty()) {
                EXPECT_TRUE(r.box.is_empty());
            }
        }
    }
}

TEST(ContractorProperty, IdempotentAtFixedPoint)
{
    Rng rng(103);
    for (int t = 0; t < 1000; ++t) {
        const RandomSystem s = random_system(rng);
        const Box once = hc4(s.constraints, s.box, 1.0);
        if (once.is_empty()) continue;
        const Box twice = hc4(s.constraints, once, 1.0);
        // The pass cap may stop a slowly converging cycle before the fixed
        // point, so require only that another call never grows the box.
        EXPECT_TRUE(twice.subset_of(once));
    }
}

} // namespace
} // namespace coopt
