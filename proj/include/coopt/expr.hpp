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

#ifndef COOPT_EXPR_HPP
#define COOPT_EXPR_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "coopt/box.hpp"
#include "coopt/interval.hpp"

namespace coopt {

enum class Op : std::uint8_t {
    constant,
    variable,
    add,
    sub,
    mul,
    div,
    neg,
    sqr,
    sqrt,
    exp,
    log,
    pow,
    sin,
    cos,
};

inline constexpr bool is_binary(Op op)
{
    return op == Op::add || op == Op::sub || op == Op::mul || op == Op::div;
}

inline constexpr bool is_leaf(Op op) { return op == Op::constant || op == Op::variable; }

inline constexpr std::string_view op_name(Op op)
{
    switch (op) {
    case Op::constant: return "const";
    case Op::variable: return "var";
    case Op::add: return "+";
    case Op::sub: return "-";
    case Op::mul: return "*";
    case Op::div: return "/";
    case Op::neg: return "neg";
    case Op::sqr: return "sqr";
    case Op::sqrt: return "sqrt";
    case Op::exp: return "exp";
    case Op::log: return "log";
    case Op::pow: return "pow";
    case Op::sin: return "sin";
    case Op::cos: return "cos";
    }
    return "?";
}

struct Node {
    Op op = Op::constant;
    std::int32_t lhs = -1; // first child (unary child)
    std::int32_t rhs = -1; // second child of binary nodes
    std::size_t var = 0;   // variable index
    int exponent = 0;      // pow exponent
    double value = 0.0;    // nearest float of a constant
    Interval enclosure;    // rigorous enclosure of a constant

    friend bool operator==(const Node& a, const Node& b)
    {
        return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs && a.var == b.var &&
               a.exponent == b.exponent &&
               (a.value == b.value || (std::isnan(a.value) && std::isnan(b.value))) &&
               a.enclosure == b.enclosure;
    }
};

/// Immutable expression tree stored as a flat node array in post-order:
/// children always precede their parent and the root is the last node.
/// Every node has exactly one parent, so node-indexed scratch stores hold one
/// range per occurrence.
class Expr {
public:
    Expr() : Expr(constant(0.0)) {}

    /// Exactly representable constant.
    static Expr constant(double v) { return constant(v, Interval{v}); }

    /// Constant whose true value is only known to lie in `enclosure`.
    static Expr constant(double v, Interval enclosure)
    {
        Expr e(nullptr);
        Node n;
        n.op = Op::constant;
        n.value = v;
        n.enclosure = enclosure;
        e.nodes_.push_back(n);
        return e;
    }

    static Expr variable(std::size_t index)
    {
        Expr e(nullptr);
        Node n;
        n.op = Op::variable;
        n.var = index;
        e.nodes_.push_back(n);
        return e;
    }

    static Expr unary(Op op, const Expr& child, int exponent = 0)
    {
        Expr e(nullptr);
        e.nodes_ = child.nodes_;
        Node n;
        n.op = op;
        n.lhs = static_cast<std::int32_t>(child.root());
        n.exponent = exponent;
        e.nodes_.push_back(n);
        return e;
    }

    static Expr binary(Op op, const Expr& a, const Expr& b)
    {
        Expr e(nullptr);
        e.nodes_.reserve(a.nodes_.size() + b.nodes_.size() + 1);
        e.nodes_ = a.nodes_;
        const auto shift = static_cast<std::int32_t>(a.nodes_.size());
        for (Node n : b.nodes_) {
            if (n.lhs >= 0) n.lhs += shift;
            if (n.rhs >= 0) n.rhs += shift;
            e.nodes_.push_back(n);
        }
        Node n;
        n.op = op;
        n.lhs = static_cast<std::int32_t>(a.root());
        n.rhs = static_cast<std::int32_t>(e.nodes_.size() - 1);
        e.nodes_.push_back(n);
        return e;
    }

    std::span<const Node> nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    std::size_t root() const { return nodes_.size() - 1; }
    const Node& root_node() const { return nodes_.back(); }

    /// One past the largest variable index referenced (0 if none).
    std::size_t arity() const
    {
        std::size_t n = 0;
        for (const auto& node : nodes_) {
            if (node.op == Op::variable) n = std::max(n, node.var + 1);
        }
        return n;
    }

    /// Sorted distinct variable indices.
    std::vector<std::size_t> variables() const
    {
        std::vector<bool> seen(arity(), false);
        for (const auto& node : nodes_) {
            if (node.op == Op::variable) seen[node.var] = true;
        }
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < seen.size(); ++i) {
            if (seen[i]) out.push_back(i);
        }
        return out;
    }

    friend bool operator==(const Expr& a, const Expr& b) { return a.nodes_ == b.nodes_; }

private:
    explicit Expr(std::nullptr_t) {}
    std::vector<Node> nodes_;
};

inline Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(Op::add, a, b); }
inline Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(Op::sub, a, b); }
inline Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(Op::mul, a, b); }
inline Expr operator/(const Expr& a, const Expr& b) { return Expr::binary(Op::div, a, b); }
inline Expr operator-(const Expr& a) { return Expr::unary(Op::neg, a); }
inline Expr sqr(const Expr& a) { return Expr::unary(Op::sqr, a); }
inline Expr sqrt(const Expr& a) { return Expr::unary(Op::sqrt, a); }
inline Expr exp(const Expr& a) { return Expr::unary(Op::exp, a); }
inline Expr log(const Expr& a) { return Expr::unary(Op::log, a); }
inline Expr sin(const Expr& a) { return Expr::unary(Op::sin, a); }
inline Expr cos(const Expr& a) { return Expr::unary(Op::cos, a); }
inline Expr pow(const Expr& a, int n) { return Expr::unary(Op::pow, a, n); }

// Real evaluation ---------------------------------------------------------------

/// Floating-point evaluation. Domain violations (sqrt of a negative, log of a
/// nonpositive, division by zero) yield NaN.
inline double eval_real(const Expr& e, std::span<const double> x)
{
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    const auto nodes = e.nodes();
    std::vector<double> v(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        const double a = n.lhs >= 0 ? v[n.lhs] : 0.0;
        const double b = n.rhs >= 0 ? v[n.rhs] : 0.0;
        switch (n.op) {
        case Op::constant: v[i] = n.value; break;
        case Op::variable:
            if (n.var >= x.size()) throw std::out_of_range("eval_real: variable index out of range");
            v[i] = x[n.var];
            break;
        case Op::add: v[i] = a + b; break;
        case Op::sub: v[i] = a - b; break;
        case Op::mul: v[i] = a * b; break;
        case Op::div: v[i] = b == 0 ? nan : a / b; break;
        case Op::neg: v[i] = -a; break;
        case Op::sqr: v[i] = a * a; break;
        case Op::sqrt: v[i] = a < 0 ? nan : std::sqrt(a); break;
        case Op::exp: v[i] = std::exp(a); break;
        case Op::log: v[i] = a <= 0 ? nan : std::log(a); break;
        case Op::pow:
            v[i] = (n.exponent < 0 && a == 0) ? nan : std::pow(a, n.exponent);
            break;
        case Op::sin: v[i] = std::sin(a); break;
        case Op::cos: v[i] = std::cos(a); break;
        }
    }
    return v.back();
}

// Interval evaluation -----------------------------------------------------------

/// Node-indexed interval ranges, reused across evaluations by one worker.
using NodeStore = std::vector<Interval>;

inline Interval apply_unary(const Node& n, const Interval& a)
{
    switch (n.op) {
    case Op::neg: return -a;
    case Op::sqr: return sqr(a);
    case Op::sqrt: return sqrt(a);
    case Op::exp: return exp(a);
    case Op::log: return log(a);
    case Op::pow: return pow(a, n.exponent);
    case Op::sin: return sin(a);
    case Op::cos: return cos(a);
    default: break;
    }
    throw std::logic_error("apply_unary: not a unary operator");
}

inline Interval apply_binary(Op op, const Interval& a, const Interval& b)
{
    switch (op) {
    case Op::add: return a + b;
    case Op::sub: return a - b;
    case Op::mul: return a * b;
    case Op::div: return a / b;
    default: break;
    }
    throw std::logic_error("apply_binary: not a binary operator");
}

/// Forward sweep of the natural extension; fills `store` with one range per
/// node and returns the root range.
inline Interval forward(const Expr& e, const Box& box, NodeStore& store)
{
    const auto nodes = e.nodes();
    store.resize(nodes.size());
    if (box.is_empty()) {
        std::fill(store.begin(), store.end(), Interval::empty());
        return Interval::empty();
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        switch (n.op) {
        case Op::constant: store[i] = n.enclosure; break;
        case Op::variable:
            if (n.var >= box.size()) throw std::out_of_range("forward: variable index out of range");
            store[i] = box[n.var];
            break;
        case Op::add:
        case Op::sub:
        case Op::mul:
        case Op::div: store[i] = apply_binary(n.op, store[n.lhs], store[n.rhs]); break;
        default: store[i] = apply_unary(n, store[n.lhs]); break;
        }
    }
    return store.back();
}

/// Natural interval extension: encloses {e(x) : x in box}.
inline Interval eval_natural(const Expr& e, const Box& box)
{
    NodeStore store;
    return forward(e, box, store);
}

/// Reverse sweep over a store filled by `forward`. Returns one derivative
/// enclosure per variable of a `dim`-dimensional box.
inline std::vector<Interval> reverse(const Expr& e, const NodeStore& store, std::size_t dim)
{
    const auto nodes = e.nodes();
    std::vector<Interval> grad(dim, Interval{0.0});
    if (store.back().is_empty()) {
        std::fill(grad.begin(), grad.end(), Interval::empty());
        return grad;
    }
    std::vector<Interval> adj(nodes.size(), Interval{0.0});
    adj.back() = Interval{1.0};
    for (std::size_t k = nodes.size(); k-- > 0;) {
        const Node& n = nodes[k];
        const Interval a = adj[k];
        if (a == Interval{0.0}) continue;
        switch (n.op) {
        case Op::constant: break;
        case Op::variable: grad[n.var] += a; break;
        case Op::add:
            adj[n.lhs] += a;
            adj[n.rhs] += a;
            break;
        case Op::sub:
            adj[n.lhs] += a;
            adj[n.rhs] -= a;
            break;
        case Op::mul:
            adj[n.lhs] += a * store[n.rhs];
            adj[n.rhs] += a * store[n.lhs];
            break;
        case Op::div: {
            const Interval& r = store[n.rhs];
            adj[n.lhs] += a / r;
            adj[n.rhs] -= a * (store[k] / r);
            break;
        }
        case Op::neg: adj[n.lhs] -= a; break;
        case Op::sqr: adj[n.lhs] += a * (Interval{2.0} * store[n.lhs]); break;
        case Op::sqrt: adj[n.lhs] += a / (Interval{2.0} * store[k]); break;
        case Op::exp: adj[n.lhs] += a * store[k]; break;
        case Op::log: adj[n.lhs] += a / store[n.lhs]; break;
        case Op::pow:
            if (n.exponent != 0) {
                adj[n.lhs] += a * (Interval{static_cast<double>(n.exponent)} *
                                   pow(store[n.lhs], n.exponent - 1));
            }
            break;
        case Op::sin: adj[n.lhs] += a * cos(store[n.lhs]); break;
        case Op::cos: adj[n.lhs] -= a * sin(store[n.lhs]); break;
        }
    }
    return grad;
}

/// Enclosure of the gradient over `box`, by one forward and one reverse sweep.
inline std::vector<Interval> grad_interval(const Expr& e, const Box& box, NodeStore& store)
{
    forward(e, box, store);
    return reverse(e, store, box.size());
}

inline std::vector<Interval> grad_interval(const Expr& e, const Box& box)
{
    NodeStore store;
    return grad_interval(e, box, store);
}

/// First-order centered form F({c}) + sum_i G_i(box) * (box_i - c_i).
/// `grad` must enclose the gradient over `box`.
inline Interval taylor_form(const Expr& e, const Box& box, std::span<const double> center,
                            std::span<const Interval> grad)
{
    Interval r = eval_natural(e, Box::degenerate(center));
    for (std::size_t i = 0; i < box.size(); ++i) {
        if (grad[i] == Interval{0.0}) continue;
        r += grad[i] * (box[i] - Interval{center[i]});
    }
    return r;
}

inline Interval eval_taylor(const Expr& e, const Box& box, std::span<const double> center)
{
    if (box.is_empty()) return Interval::empty();
    if (!box.contains(center)) throw std::invalid_argument("eval_taylor: center outside box");
    const auto g = grad_interval(e, box);
    return taylor_form(e, box, center, g);
}

} // namespace coopt

#endif // COOPT_EXPR_HPP
