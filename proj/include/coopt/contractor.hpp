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

#ifndef COOPT_CONTRACTOR_HPP
#define COOPT_CONTRACTOR_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "coopt/box.hpp"
#include "coopt/expr.hpp"
#include "coopt/interval.hpp"
#include "coopt/problem.hpp"

namespace coopt {

/// expr(x) in bound. Inequalities g <= 0 use bound (-inf, 0], relaxed
/// equalities [-eps, eps], and the objective cut (-inf, f_ub].
struct RelationalConstraint {
    Expr expr;
    Interval bound;
    std::vector<std::size_t> vars;

    RelationalConstraint(Expr e, Interval b) : expr(std::move(e)), bound(b), vars(expr.variables()) {}

    static RelationalConstraint at_most(Expr e, double ub)
    {
        return {std::move(e), Interval{-rounding::kInf, ub}};
    }
};

/// Relational form of the problem's constraints: one entry per inequality
/// and one [-eps, eps] entry per equality.
inline std::vector<RelationalConstraint> relational_constraints(const Problem& p)
{
    std::vector<RelationalConstraint> out;
    for (const auto& g : p.inequalities) out.push_back(RelationalConstraint::at_most(g, 0.0));
    for (const auto& h : p.equalities) out.emplace_back(h, Interval{-p.eq_tol, p.eq_tol});
    return out;
}

struct ReviseResult {
    Box box;       // contracted box, empty when the constraint cannot hold
    Interval root; // forward range of the expression over the input box
};

namespace detail {

// Slack for projections computed through libm inverse trig functions.
inline double trig_margin(double k)
{
    return 1e-13 * (1.0 + std::abs(k) * std::numbers::pi);
}

// Child range of y = sin(x) for x in `child`, when `child` lies inside one
// monotone branch [k*pi - pi/2, k*pi + pi/2]. Otherwise `child` unchanged.
inline Interval project_sin(const Interval& node, const Interval& child)
{
    constexpr double pi = std::numbers::pi;
    if (!child.is_bounded() || std::abs(child.lo) > 1e6 || std::abs(child.hi) > 1e6) return child;
    const double k = std::round(midpoint(child) / pi);
    const double margin = trig_margin(k);
    if (child.lo < k * pi - pi / 2 + margin || child.hi > k * pi + pi / 2 - margin) return child;
    const Interval y = intersect(node, {-1.0, 1.0});
    if (y.is_empty()) return y;
    const double a = std::asin(y.lo), b = std::asin(y.hi);
    Interval x;
    if (static_cast<long long>(k) % 2 == 0) {
        x = Interval{k * pi + a - margin, k * pi + b + margin};
    } else {
        x = Interval{k * pi - b - margin, k * pi - a + margin};
    }
    return intersect(child, x);
}

// Same for cos with monotone branches [k*pi, (k+1)*pi].
inline Interval project_cos(const Interval& node, const Interval& child)
{
    constexpr double pi = std::numbers::pi;
    if (!child.is_bounded() || std::abs(child.lo) > 1e6 || std::abs(child.hi) > 1e6) return child;
    const double k = std::floor(midpoint(child) / pi);
    const double margin = trig_margin(k + 1);
    if (child.lo < k * pi + margin || child.hi > (k + 1) * pi - margin) return child;
    const Interval y = intersect(node, {-1.0, 1.0});
    if (y.is_empty()) return y;
    const double a = std::acos(y.hi), b = std::acos(y.lo); // a <= b
    Interval x;
    if (static_cast<long long>(k) % 2 == 0) {
        x = Interval{k * pi + a - margin, k * pi + b + margin};
    } else {
        x = Interval{(k + 1) * pi - b - margin, (k + 1) * pi - a + margin};
    }
    return intersect(child, x);
}

// Points of `child` whose even power lies in `node`: +-root(node+) hulled.
inline Interval project_even_power(const Interval& node, const Interval& child, unsigned n)
{
    const Interval pos = intersect(node, {0.0, rounding::kInf});
    if (pos.is_empty()) return pos;
    const Interval r{rounding::root_down(pos.lo, n), rounding::root_up(pos.hi, n)};
    return hull(intersect(child, r), intersect(child, -r));
}

inline Interval project_odd_power(const Interval& node, const Interval& child, unsigned n)
{
    auto down = [n](double y) {
        return y >= 0 ? rounding::root_down(y, n) : -rounding::root_up(-y, n);
    };
    auto up = [n](double y) {
        return y >= 0 ? rounding::root_up(y, n) : -rounding::root_down(-y, n);
    };
    return intersect(child, Interval{down(node.lo), up(node.hi)});
}

// Hull of the pieces of extended_div(num, den) that meet `current`.
inline Interval project_quotient(const Interval& num, const Interval& den, const Interval& current)
{
    auto [first, second] = extended_div(num, den);
    return hull(intersect(current, first), intersect(current, second));
}

} // namespace detail

/// Backward projection over a store already narrowed at the root. Returns
/// false when some node range becomes empty.
inline bool backward(const Expr& e, NodeStore& s)
{
    const auto nodes = e.nodes();
    for (std::size_t k = nodes.size(); k-- > 0;) {
        const Node& n = nodes[k];
        const Interval& y = s[k];
        if (y.is_empty()) return false;
        switch (n.op) {
        case Op::constant:
        case Op::variable: break;
        case Op::add:
            s[n.lhs] = intersect(s[n.lhs], y - s[n.rhs]);
            s[n.rhs] = intersect(s[n.rhs], y - s[n.lhs]);
            break;
        case Op::sub:
            s[n.lhs] = intersect(s[n.lhs], y + s[n.rhs]);
            s[n.rhs] = intersect(s[n.rhs], s[n.lhs] - y);
            break;
        case Op::mul:
            if (!(y.contains(0.0) && s[n.rhs].contains(0.0))) {
                s[n.lhs] = detail::project_quotient(y, s[n.rhs], s[n.lhs]);
            }
            if (!(y.contains(0.0) && s[n.lhs].contains(0.0))) {
                s[n.rhs] = detail::project_quotient(y, s[n.lhs], s[n.rhs]);
            }
            break;
        case Op::div:
            s[n.lhs] = intersect(s[n.lhs], y * s[n.rhs]);
            if (!(y.contains(0.0) && s[n.lhs].contains(0.0))) {
                s[n.rhs] = detail::project_quotient(s[n.lhs], y, s[n.rhs]);
            }
            break;
        case Op::neg: s[n.lhs] = intersect(s[n.lhs], -y); break;
        case Op::sqr: s[n.lhs] = detail::project_even_power(y, s[n.lhs], 2); break;
        case Op::sqrt: {
            const Interval r = intersect(y, {0.0, rounding::kInf});
            s[n.lhs] = r.is_empty() ? r : intersect(s[n.lhs], sqr(r));
            break;
        }
        case Op::exp: s[n.lhs] = intersect(s[n.lhs], log(y)); break;
        case Op::log: s[n.lhs] = intersect(s[n.lhs], exp(y)); break;
        case Op::pow:
            if (n.exponent > 1 && n.exponent % 2 == 0) {
                s[n.lhs] = detail::project_even_power(y, s[n.lhs], static_cast<unsigned>(n.exponent));
            } else if (n.exponent > 0 && n.exponent % 2 == 1) {
                s[n.lhs] = detail::project_odd_power(y, s[n.lhs], static_cast<unsigned>(n.exponent));
            }
            // Negative exponents and x^0 are left unchanged.
            break;
        case Op::sin: s[n.lhs] = detail::project_sin(y, s[n.lhs]); break;
        case Op::cos: s[n.lhs] = detail::project_cos(y, s[n.lhs]); break;
        }
        if (n.lhs >= 0 && s[n.lhs].is_empty()) return false;
        if (n.rhs >= 0 && s[n.rhs].is_empty()) return false;
    }
    return true;
}

/// HC4Revise: forward evaluation then backward projection of one
/// constraint. No point of `box` satisfying `c` is removed.
inline ReviseResult hc4revise(const RelationalConstraint& c, const Box& box, NodeStore& store)
{
    ReviseResult r{box, forward(c.expr, box, store)};
    if (box.is_empty()) return r;
    store.back() = intersect(store.back(), c.bound);
    if (store.back().is_empty() || !backward(c.expr, store)) {
        r.box.set_empty();
        return r;
    }
    const auto nodes = c.expr.nodes();
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (nodes[k].op != Op::variable) continue;
        Interval& xi = r.box[nodes[k].var];
        xi = intersect(xi, store[k]);
        if (xi.is_empty()) {
            r.box.set_empty();
            return r;
        }
    }
    return r;
}

inline ReviseResult hc4revise(const RelationalConstraint& c, const Box& box)
{
    NodeStore store;
    return hc4revise(c, box, store);
}

/// Guard against slowly converging propagation cycles.
inline constexpr int kMaxPropagationPasses = 1000;

/// HC4 propagation with quasi-fixed-point ratio eta.
///
/// A pass revises every constraint of its agenda once, in declaration order.
/// The next agenda holds the constraints sharing a variable whose domain
/// changed during the pass. Passes repeat while the agenda is non-empty and
/// the box width after the pass is at most eta times the width before it;
/// eta = 0 gives a single pass, eta = 1 runs to the fixed point.
inline Box hc4(std::span<const RelationalConstraint> constraints, const Box& box, double eta,
               NodeStore& store)
{
    Box b = box;
    if (b.is_empty() || constraints.empty()) return b;
    std::vector<bool> agenda(constraints.size(), true);
    bool pending = true;
    for (int pass = 0; pending && pass < kMaxPropagationPasses; ++pass) {
        const double w0 = box_width(b);
        std::vector<bool> changed(b.size(), false);
        for (std::size_t i = 0; i < constraints.size(); ++i) {
            if (!agenda[i]) continue;
            const Box before = b;
            b = hc4revise(constraints[i], b, store).box;
            if (b.is_empty()) return b;
            for (std::size_t v : constraints[i].vars) {
                if (!(b[v] == before[v])) changed[v] = true;
            }
        }
        pending = false;
        for (std::size_t i = 0; i < constraints.size(); ++i) {
            agenda[i] = false;
            for (std::size_t v : constraints[i].vars) {
                if (changed[v]) agenda[i] = true;
            }
            pending = pending || agenda[i];
        }
        if (!(box_width(b) <= eta * w0)) break;
    }
    return b;
}

inline Box hc4(std::span<const RelationalConstraint> constraints, const Box& box, double eta)
{
    NodeStore store;
    return hc4(constraints, box, eta, store);
}

} // namespace coopt

#endif // COOPT_CONTRACTOR_HPP
