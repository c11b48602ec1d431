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

#ifndef COOPT_PROBLEM_HPP
#define COOPT_PROBLEM_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "coopt/box.hpp"
#include "coopt/expr.hpp"

namespace coopt {

/// min f(x) s.t. g_i(x) <= 0, h_j(x) = 0, x in domain.
///
/// Equalities are kept as written; `constraints()` returns the normalized
/// system where each h_j becomes the pair h_j - eps_eq <= 0, -h_j - eps_eq <= 0.
struct Problem {
    std::vector<std::string> names;
    Box domain;
    Expr objective;
    std::vector<Expr> inequalities;
    std::vector<Expr> equalities;
    double eq_tol = 1e-8;

    std::size_t dimension() const { return domain.size(); }

    std::vector<Expr> constraints() const
    {
        std::vector<Expr> out = inequalities;
        const Expr tol = Expr::constant(eq_tol);
        for (const auto& h : equalities) {
            out.push_back(h - tol);
            out.push_back(-h - tol);
        }
        return out;
    }

    /// Human-readable label per normalized constraint.
    std::vector<std::string> constraint_labels() const
    {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < inequalities.size(); ++i) {
            out.push_back("g" + std::to_string(i + 1));
        }
        for (std::size_t j = 0; j < equalities.size(); ++j) {
            out.push_back("h" + std::to_string(j + 1) + "-");
            out.push_back("h" + std::to_string(j + 1) + "+");
        }
        return out;
    }

    /// Throws std::invalid_argument when variable indices exceed the
    /// dimension or the domain has an empty component.
    void validate() const
    {
        if (names.size() != domain.size()) {
            throw std::invalid_argument("problem: names and domain differ in size");
        }
        if (domain.is_empty()) throw std::invalid_argument("problem: empty domain");
        auto check = [&](const Expr& e, const char* what) {
            if (e.arity() > dimension()) {
                throw std::invalid_argument(std::string("problem: ") + what +
                                            " references an undeclared variable");
            }
        };
        check(objective, "objective");
        for (const auto& g : inequalities) check(g, "inequality");
        for (const auto& h : equalities) check(h, "equality");
        if (!(eq_tol >= 0)) throw std::invalid_argument("problem: negative equality tolerance");
    }
};

} // namespace coopt

#endif // COOPT_PROBLEM_HPP
