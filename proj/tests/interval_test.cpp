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
#include <limits>

#include <gtest/gtest.h>

#include "coopt/box.hpp"
#include "coopt/interval.hpp"
#include "test_support.hpp"

namespace coopt {
namespace {

using testing::Rng;
constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(Interval, EmptyIsDistinguished)
{
    const Interval e = Interval::empty();
    EXPECT_TRUE(e.is_empty());
    EXPECT_FALSE(std::isnan(e.lo));
    EXPECT_FALSE(std::isnan(e.hi));
    EXPECT_TRUE(Interval(3.0, 1.0).is_empty());
    EXPECT_TRUE(Interval(std::nan(""), 1.0).is_empty());
    EXPECT_TRUE((e + Interval{1, 2}).is_empty());
    EXPECT_TRUE((Interval{1, 2} * e).is_empty());
    EXPECT_TRUE(sqrt(e).is_empty());
    EXPECT_TRUE(sin(e).is_empty());
}

TEST(Interval, SubtractionExamples)
{
    EXPECT_EQ(Interval(-5, 5) - Interval(-5, 5), Interval(-10, 10));
    EXPECT_EQ(Interval(0, 4) - Interval(-2, 0.5), Interval(-0.5, 6));
}

TEST(Interval, AddZeroIsIdentity)
{
    const Interval y{0.1, 0.7};
    const Interval r = Interval(0.0) + y;
    EXPECT_TRUE(y.subset_of(r));
    EXPECT_LE(r.lo, y.lo);
    EXPECT_GE(r.lo, rounding::next_down(y.lo));
    EXPECT_LE(r.hi, rounding::next_up(y.hi));
}

TEST(Interval, RoundingIsOutward)
{
    // 0.1 + 0.2 is inexact; the enclosure must bracket the exact sum.
    const Interval r = Interval(0.1) + Interval(0.2);
    EXPECT_LT(r.lo, r.hi);
    EXPECT_LE(r.lo, 0.1 + 0.2);
    EXPECT_GE(r.hi, 0.1 + 0.2);
    // Exact results are not widened.
    EXPECT_EQ(Interval(1.5) * Interval(2.0), Interval(3.0));
    EXPECT_EQ(Interval(1.0) / Interval(4.0), Interval(0.25));
    EXPECT_EQ(sqrt(Interval(4.0)), Interval(2.0));
}

TEST(Interval, UnaryExamples)
{
    EXPECT_EQ(sqr(Interval(-2, 0.5)), Interval(0, 4));
    EXPECT_EQ(-Interval(1.25, 3.5), Interval(-3.5, -1.25));
    EXPECT_EQ(sqrt(Interval(-4, 9)), Interval(0, 3));
    EXPECT_TRUE(sqrt(Interval(-4, -1)).is_empty());
    EXPECT_TRUE(log(Interval(-4, 0)).is_empty());
    EXPECT_EQ(pow(Interval(-2, 1), 3), Interval(-8, 1));
    EXPECT_EQ(pow(Interval(-2, 1), 2), Interval(0, 4));
    EXPECT_EQ(pow(Interval(2, 4), 0), Interval(1));
}

TEST(Interval, SqrtMatchesDenseSampling)
{
    // Sampled image of x -> sqrt(x) over the domain part [0, 9].
    const Interval r = sqrt(Interval(-4, 9));
    double lo = kInf, hi = -kInf;
    for (int i = 0; i <= 9000; ++i) {
        const double v = std::sqrt(9.0 * i / 9000);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    EXPECT_LE(r.lo, lo);
    EXPECT_GE(r.hi, hi);
    EXPECT_NEAR(r.lo, lo, 1e-12);
    EXPECT_NEAR(r.hi, hi, 1e-12);
}

TEST(Interval, TrigExtrema)
{
    const Interval s = sin(Interval(0, 4));
    EXPECT_EQ(s.hi, 1.0);
    EXPECT_LE(s.lo, std::sin(4.0));
    const Interval c = cos(Interval(-1, 1));
    EXPECT_EQ(c.hi, 1.0);
    EXPECT_LE(c.lo, std::cos(1.0));
    EXPECT_EQ(sin(Interval(-1e7, 1e7)), Interval(-1, 1));
}

TEST(Interval, ExtendedDivisionExamples)
{
    auto [a, b] = extended_div(Interval(1, 2), Interval(-1, 1));
    EXPECT_EQ(a, Interval(-kInf, -1));
    EXPECT_EQ(b, Interval(1, kInf));

    auto [c, d] = extended_div(Interval(1, 2), Interval(1, 2));
    EXPECT_EQ(c, Interval(0.5, 2));
    EXPECT_TRUE(d.is_empty());

    auto [e, f] = extended_div(Interval(0, 1), Interval(0, 0));
    EXPECT_TRUE(e.is_empty());
    EXPECT_TRUE(f.is_empty());

    EXPECT_TRUE((Interval(0, 1) / Interval(0, 0)).is_empty());
    EXPECT_EQ(Interval(1, 2) / Interval(-1, 1), Interval::entire());
}

TEST(Interval, ExtendedDivisionCoversSampledQuotients)
{
    Rng rng(11);
    for (int t = 0; t < 2000; ++t) {
        const Interval x = testing::random_interval(rng);
        const Interval y = testing::random_interval(rng);
        auto [p, q] = extended_div(x, y);
        if (!p.is_empty() && !q.is_empty()) {
            EXPECT_TRUE(p.hi < q.lo) << x << " / " << y;
        }
        for (int s = 0; s < 20; ++s) {
            const double xv = testing::random_point(rng, x);
            const double yv = testing::random_point(rng, y);
            if (yv == 0) continue;
            const long double v = static_cast<long double>(xv) / yv;
            EXPECT_TRUE(testing::encloses(p, v) || testing::encloses(q, v)) << xv << " / " << yv;
        }
    }
}

TEST(Interval, HullAndIntersect)
{
    EXPECT_EQ(hull(Interval(0, 1), Interval(2, 3)), Interval(0, 3));
    EXPECT_EQ(hull(Interval::empty(), Interval(1, 2)), Interval(1, 2));
    EXPECT_EQ(hull(Interval(0, 5), Interval(1, 2)), Interval(0, 5));
    EXPECT_EQ(intersect(Interval(0, 3), Interval(2, 5)), Interval(2, 3));
    EXPECT_TRUE(intersect(Interval(0, 1), Interval(2, 3)).is_empty());
    const Interval x{-1.5, 2.25};
    EXPECT_EQ(intersect(x, x), x);
}

TEST(Interval, HullAlgebra)
{
    Rng rng(5);
    for (int t = 0; t < 1000; ++t) {
        const Interval a = testing::random_interval(rng);
        const Interval b = testing::random_interval(rng);
        const Interval c = testing::random_interval(rng);
        EXPECT_EQ(hull(hull(a, b), c), hull(a, hull(b, c)));
        EXPECT_EQ(hull(a, b), hull(b, a));
        EXPECT_EQ(hull(a, a), a);
    }
}

TEST(Interval, WidthAndMidpoint)
{
    EXPECT_EQ(width(Interval(-2, 0.5)), 2.5);
    EXPECT_EQ(midpoint(Interval(-2, 0.5)), -0.75);
    EXPECT_EQ(midpoint(Interval::entire()), 0.0);
    EXPECT_EQ(midpoint(Interval(3, kInf)), 3 + kUnboundedMidpointOffset);
    EXPECT_EQ(midpoint(Interval(-kInf, 3)), 3 - kUnboundedMidpointOffset);
    const Interval huge{-std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    EXPECT_TRUE(std::isfinite(midpoint(huge)));
    EXPECT_EQ(width(Interval(0, kInf)), kInf);
}

TEST(Box, WidthHullDistance)
{
    const Box b({Interval(0, 1), Interval(0, 10)});
    EXPECT_EQ(box_width(b), 10.0);
    const Box q1({Interval(0, 1), Interval(0, 1)});
    const Box q2({Interval(2, 3), Interval(0, 0.5)});
    EXPECT_EQ(hull(q1, q2), Box({Interval(0, 3), Interval(0, 1)}));

    EXPECT_EQ(point_box_distance(Point{1, 1}, q2), 1.5);
    EXPECT_EQ(point_box_distance(Point{2.5, 0.2}, q2), 0.0);
    EXPECT_EQ(point_box_distance(Point{0}, Box({Interval(-1, 1)})), 0.0);
    EXPECT_EQ(point_box_distance(Point{0, 0}, Box::empty(2)), kInf);
    EXPECT_THROW(point_box_distance(Point{0}, q1), std::invalid_argument);
}

TEST(Box, EmptyComponentEmptiesBox)
{
    Box b({Interval(0, 1), Interval::empty()});
    EXPECT_TRUE(b.is_empty());
    EXPECT_FALSE(b.contains(Point{0.5, 0.5}));
}

// Inclusion: the exact result of x op y for sampled points lies in the
// interval result. The reference value is computed in long double.
TEST(IntervalProperty, ArithmeticInclusionFuzz)
{
    Rng rng(2026);
    int violations = 0;
    int checked = 0;
    for (int t = 0; t < 10000; ++t) {
        const Interval x = testing::random_interval(rng);
        const Interval y = testing::random_interval(rng);
        const double xv = testing::random_point(rng, x);
        const double yv = testing::random_point(rng, y);
        const int op = t % 4;
        Interval r;
        long double v = 0;
        switch (op) {
        case 0: r = x + y; v = static_cast<long double>(xv) + yv; break;
        case 1: r = x - y; v = static_cast<long double>(xv) - yv; break;
        case 2: r = x * y; v = static_cast<long double>(xv) * yv; break;
        default:
            if (yv == 0) continue;
            r = x / y;
            v = static_cast<long double>(xv) / yv;
            break;
        }
        ++checked;
        // Rounding to long double is monotone, so the reference stays inside
        // any enclosure of the exact value whose bounds are doubles.
        if (!testing::encloses(r, v)) ++violations;
    }
    EXPECT_EQ(violations, 0);
    EXPECT_GT(checked, 9000);
}

TEST(IntervalProperty, UnaryInclusionFuzz)
{
    Rng rng(7);
    int violations = 0;
    for (int t = 0; t < 10000; ++t) {
        const Interval x = testing::random_interval(rng, 8.0);
        const double xv = testing::random_point(rng, x);
        const long double lx = xv;
        Interval r;
        long double v = 0;
        switch (t % 8) {
        case 0: r = sqr(x); v = lx * lx; break;
        case 1: r = -x; v = -lx; break;
        case 2:
            if (xv < 0) continue;
            r = sqrt(x);
            v = sqrtl(lx);
            break;
        case 3: r = exp(x); v = expl(lx); break;
        case 4:
            if (xv <= 0) continue;
            r = log(x);
            v = logl(lx);
            break;
        case 5: {
            const int n = 1 + t % 5;
            r = pow(x, n);
            v = powl(lx, n);
            break;
        }
        case 6: r = sin(x); v = sinl(lx); break;
        default: r = cos(x); v = cosl(lx); break;
        }
        if (!testing::encloses(r, v)) ++violations;
    }
    EXPECT_EQ(violations, 0);
}

TEST(IntervalProperty, InclusionMonotonicity)
{
    Rng rng(8);
    for (int t = 0; t < 4000; ++t) {
        const Interval xo = testing::random_interval(rng);
        const Interval yo = testing::random_interval(rng);
        const Interval xi = testing::random_subinterval(rng, xo);
        const Interval yi = testing::random_subinterval(rng, yo);
        EXPECT_TRUE((xi + yi).subset_of(xo + yo));
        EXPECT_TRUE((xi - yi).subset_of(xo - yo));
        EXPECT_TRUE((xi * yi).subset_of(xo * yo));
        EXPECT_TRUE((xi / yi).subset_of(xo / yo)) << xi << "/" << yi << " vs " << xo << "/" << yo;
        EXPECT_TRUE(sqr(xi).subset_of(sqr(xo)));
        EXPECT_TRUE(sin(xi).subset_of(sin(xo)));
        EXPECT_TRUE(exp(xi).subset_of(exp(xo)));
    }
}

TEST(IntervalProperty, SquareIsTighterThanSelfProduct)
{
    Rng rng(9);
    for (int t = 0; t < 2000; ++t) {
        const Interval x = testing::random_interval(rng);
        EXPECT_TRUE(sqr(x).subset_of(x * x));
        if (x.strictly_contains_zero()) {
            EXPECT_NE(sqr(x), x * x);
            EXPECT_GT(sqr(x).lo, (x * x).lo);
        }
    }
}

} // namespace
} // namespace coopt
