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

#ifndef COOPT_RIGOROUS_HPP
#define COOPT_RIGOROUS_HPP

#include <span>
#include <vector>

#include "coopt/box.hpp"
#include "coopt/expr.hpp"
#include "coopt/problem.hpp"

namespace coopt {

/// True iff every normalized constraint has a nonpositive interval upper
/// bound at the degenerate box {x}. A domain error makes the point infeasible.
inline bool rigorous_feasible(std::span<const double> x, std::span<const Expr> constraints)
{
    const Box at = Box::degenerate(x);
    NodeStore store;
    for (const auto& g : constraints) {
        const Interval v = forward(g, at, store);
        if (v.is_empty() || !(v.hi <= 0)) return false;
    }
    return true;
}

inline bool rigorous_feasible(std::span<const double> x, const Problem& p)
{
    const auto cs = p.constraints();
    return rigorous_feasible(x, cs);
}

/// Upper bound of the natural extension of the objective at {x}; a valid
/// upper bound of the global minimum when x is rigorously feasible. +inf on
/// a domain error.
inline double rigorous_ub(std::span<const double> x, const Problem& p)
{
    const Interval v = eval_natural(p.objective, Box::degenerate(x));
    return v.is_empty() ? rounding::kInf : v.hi;
}

} // namespace coopt

#endif // COOPT_RIGOROUS_HPP
