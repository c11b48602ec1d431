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

// Text model format:
//
//   # comment
//   var x in [0, 10];
//   var y in [-inf, 1e3];
//   minimize -sqr(x + y - 10) / 30 - (x - y + 10)^2 / 120;
//   subject to 20 / x^2 - y <= 0;
//   subject to x*y = 1;
//
// Constraints may use <=, >= or = with an arbitrary right-hand side; they are
// stored as g <= 0 and h = 0.

#ifndef COOPT_MODEL_HPP
#define COOPT_MODEL_HPP

#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coopt/decimal.hpp"
#include "coopt/expr.hpp"
#include "coopt/problem.hpp"

namespace coopt {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line), column_(column)
    {
    }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

namespace detail {

enum class Tok { ident, number, punct, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    int line = 1;
    int column = 1;
};

inline std::vector<Token> tokenize(std::string_view src)
{
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
                ++j;
            }
            t.kind = Tok::ident;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                   (c == '.' && i + 1 < src.size() &&
                    std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && src[j] == '.') {
                ++j;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
                if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
                    while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
                    j = k;
                } else {
                    throw ParseError("malformed exponent in numeric literal", line, col);
                }
            }
            t.kind = Tok::number;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else {
            static constexpr std::string_view two[] = {"<=", ">="};
            t.kind = Tok::punct;
            t.text = std::string(1, c);
            for (auto op : two) {
                if (src.substr(i, 2) == op) t.text = std::string(op);
            }
            if (std::string_view("+-*/^()[],;=<>").find(c) == std::string_view::npos) {
                throw ParseError(std::string("unexpected character '") + c + "'", line, col);
            }
            if ((c == '<' || c == '>') && t.text.size() != 2) {
                throw ParseError("strict inequalities are not supported; use <= or >=", line, col);
            }
            advance(t.text.size());
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Tok::end;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

inline const std::map<std::string, Op, std::less<>>& function_table()
{
    static const std::map<std::string, Op, std::less<>> table = {
        {"sqr", Op::sqr}, {"sqrt", Op::sqrt}, {"exp", Op::exp}, {"log", Op::log},
        {"sin", Op::sin}, {"cos", Op::cos},   {"neg", Op::neg},
    };
    return table;
}

inline bool is_keyword(std::string_view s)
{
    return s == "var" || s == "in" || s == "minimize" || s == "subject" || s == "to" ||
           s == "inf" || function_table().count(s) > 0;
}

class Parser {
public:
    Parser(std::vector<Token> toks, double eq_tol) : toks_(std::move(toks)) { problem_.eq_tol = eq_tol; }

    Problem run()
    {
        std::vector<Interval> domain;
        bool have_objective = false;
        while (peek().kind != Tok::end) {
            const Token& t = peek();
            if (t.kind != Tok::ident) fail("expected 'var', 'minimize' or 'subject to'", t);
            if (t.text == "var") {
                next();
                const Token name = expect_ident();
                if (is_keyword(name.text)) fail("'" + name.text + "' is reserved", name);
                if (vars_.count(name.text)) fail("variable '" + name.text + "' redeclared", name);
                expect_word("in");
                expect_punct("[");
                const double lo = bound(true);
                expect_punct(",");
                const double hi = bound(false);
                const Token& close = peek();
                expect_punct("]");
                if (!(lo <= hi)) fail("empty domain for '" + name.text + "'", close);
                expect_punct(";");
                vars_[name.text] = problem_.names.size();
                problem_.names.push_back(name.text);
                domain.emplace_back(lo, hi);
            } else if (t.text == "minimize") {
                if (have_objective) fail("objective already defined", t);
                next();
                problem_.objective = expr();
                expect_punct(";");
                have_objective = true;
            } else if (t.text == "subject") {
                next();
                expect_word("to");
                const Expr lhs = expr();
                const Token rel = next();
                if (rel.kind != Tok::punct || (rel.text != "<=" && rel.text != ">=" && rel.text != "=")) {
                    fail("expected '<=', '>=' or '='", rel);
                }
                const Expr rhs = expr();
                expect_punct(";");
                const bool rhs_zero = rhs.size() == 1 && rhs.root_node().op == Op::constant &&
                                      rhs.root_node().enclosure == Interval{0.0};
                if (rel.text == "<=") {
                    problem_.inequalities.push_back(rhs_zero ? lhs : lhs - rhs);
                } else if (rel.text == ">=") {
                    problem_.inequalities.push_back(rhs_zero ? -lhs : rhs - lhs);
                } else {
                    problem_.equalities.push_back(rhs_zero ? lhs : lhs - rhs);
                }
            } else {
                fail("expected 'var', 'minimize' or 'subject to', got '" + t.text + "'", t);
            }
        }
        if (!have_objective) fail("missing 'minimize' statement", peek());
        if (domain.empty()) fail("no variables declared", peek());
        problem_.domain = Box(std::move(domain));
        return std::move(problem_);
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] static void fail(const std::string& msg, const Token& t)
    {
        throw ParseError(msg, t.line, t.column);
    }

    bool at_punct(std::string_view p) const
    {
        return peek().kind == Tok::punct && peek().text == p;
    }

    void expect_punct(std::string_view p)
    {
        if (!at_punct(p)) {
            fail("expected '" + std::string(p) + "'" +
                     (peek().kind == Tok::end ? std::string(" at end of input")
                                              : ", got '" + peek().text + "'"),
                 peek());
        }
        next();
    }

    void expect_word(std::string_view w)
    {
        if (peek().kind != Tok::ident || peek().text != w) fail("expected '" + std::string(w) + "'", peek());
        next();
    }

    Token expect_ident()
    {
        if (peek().kind != Tok::ident) fail("expected identifier", peek());
        return next();
    }

    // Domain bounds are rounded outward so the float box contains the
    // decimal one.
    double bound(bool lower)
    {
        bool negative = false;
        if (at_punct("-") || at_punct("+")) negative = next().text == "-";
        const Token t = next();
        if (t.kind == Tok::ident && t.text == "inf") {
            return negative ? -rounding::kInf : rounding::kInf;
        }
        if (t.kind != Tok::number) fail("expected numeric bound", t);
        DecimalValue d = parse_decimal(t.text);
        Interval v = negative ? -d.enclosure : d.enclosure;
        return lower ? v.lo : v.hi;
    }

    Expr expr()
    {
        Expr e = term();
        while (at_punct("+") || at_punct("-")) {
            const bool plus = next().text == "+";
            Expr r = term();
            e = plus ? e + r : e - r;
        }
        return e;
    }

    Expr term()
    {
        Expr e = unary();
        while (at_punct("*") || at_punct("/")) {
            const bool mul = next().text == "*";
            Expr r = unary();
            e = mul ? e * r : e / r;
        }
        return e;
    }

    Expr unary()
    {
        if (at_punct("+")) {
            next();
            return unary();
        }
        if (at_punct("-")) {
            next();
            // A minus directly on a literal folds into a negative constant.
            if (peek().kind == Tok::number && !(toks_[pos_ + 1].kind == Tok::punct && toks_[pos_ + 1].text == "^")) {
                const DecimalValue d = parse_decimal(next().text);
                return Expr::constant(-d.nearest, -d.enclosure);
            }
            return -unary();
        }
        return power();
    }

    Expr power()
    {
        Expr base = primary();
        if (at_punct("^")) {
            next();
            bool negative = false;
            if (at_punct("-") || at_punct("+")) negative = next().text == "-";
            const Token t = next();
            if (t.kind != Tok::number || t.text.find_first_not_of("0123456789") != std::string::npos) {
                fail("exponent must be an integer literal", t);
            }
            if (t.text.size() > 4) fail("exponent too large", t);
            const int n = std::stoi(t.text);
            return pow(base, negative ? -n : n);
        }
        return base;
    }

    Expr primary()
    {
        const Token t = next();
        if (t.kind == Tok::number) {
            const DecimalValue d = parse_decimal(t.text);
            return Expr::constant(d.nearest, d.enclosure);
        }
        if (t.kind == Tok::punct && t.text == "(") {
            Expr e = expr();
            expect_punct(")");
            return e;
        }
        if (t.kind == Tok::ident) {
            const auto& fns = function_table();
            if (auto it = fns.find(t.text); it != fns.end()) {
                if (!at_punct("(")) fail("function '" + t.text + "' takes exactly one argument", peek());
                next();
                Expr arg = expr();
                if (at_punct(",")) fail("function '" + t.text + "' takes exactly one argument", peek());
                expect_punct(")");
                return Expr::unary(it->second, arg);
            }
            if (auto it = vars_.find(t.text); it != vars_.end()) {
                return Expr::variable(it->second);
            }
            fail("unknown identifier '" + t.text + "'", t);
        }
        if (t.kind == Tok::end) fail("unexpected end of input", t);
        fail("unexpected '" + t.text + "'", t);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::map<std::string, std::size_t, std::less<>> vars_;
    Problem problem_;
};

inline void print_expr(std::ostream& os, const Expr& e, std::size_t k,
                       const std::vector<std::string>& names)
{
    const Node& n = e.nodes()[k];
    switch (n.op) {
    case Op::constant: {
        const bool exact = n.enclosure == Interval{n.value};
        const std::string s = exact ? format_exact(n.value) : format_roundtrip(n.value);
        if (n.value < 0 || std::signbit(n.value)) {
            os << '(' << s << ')';
        } else {
            os << s;
        }
        return;
    }
    case Op::variable:
        os << (n.var < names.size() ? names[n.var] : "x" + std::to_string(n.var));
        return;
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div:
        os << '(';
        print_expr(os, e, static_cast<std::size_t>(n.lhs), names);
        os << ' ' << op_name(n.op) << ' ';
        print_expr(os, e, static_cast<std::size_t>(n.rhs), names);
        os << ')';
        return;
    case Op::neg:
        os << "(-(";
        print_expr(os, e, static_cast<std::size_t>(n.lhs), names);
        os << "))";
        return;
    case Op::pow:
        os << '(';
        print_expr(os, e, static_cast<std::size_t>(n.lhs), names);
        os << ")^" << n.exponent;
        return;
    default:
        os << op_name(n.op) << '(';
        print_expr(os, e, static_cast<std::size_t>(n.lhs), names);
        os << ')';
        return;
    }
}

} // namespace detail

/// Parses a model. Equality constraints are kept as h = 0 and relaxed to
/// |h| <= eq_tol by `Problem::constraints()`.
inline Problem parse_problem(std::string_view text, double eq_tol = 1e-8)
{
    detail::Parser parser(detail::tokenize(text), eq_tol);
    Problem p = parser.run();
    p.validate();
    return p;
}

inline Problem load_problem(const std::string& path, double eq_tol = 1e-8)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str(), eq_tol);
}

inline std::string to_string(const Expr& e, const std::vector<std::string>& names)
{
    std::ostringstream os;
    detail::print_expr(os, e, e.root(), names);
    return os.str();
}

/// Model text that parses back into a structurally identical problem.
inline std::string print_problem(const Problem& p)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < p.dimension(); ++i) {
        os << "var " << p.names[i] << " in [" << format_exact(p.domain[i].lo) << ", "
           << format_exact(p.domain[i].hi) << "];\n";
    }
    os << "minimize " << to_string(p.objective, p.names) << ";\n";
    for (const auto& g : p.inequalities) os << "subject to " << to_string(g, p.names) << " <= 0;\n";
    for (const auto& h : p.equalities) os << "subject to " << to_string(h, p.names) << " = 0;\n";
    return os.str();
}

} // namespace coopt

#endif // COOPT_MODEL_HPP
