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

#ifndef COOPT_CERTIFICATE_HPP
#define COOPT_CERTIFICATE_HPP

#include <cstddef>
#include <optional>
#include <string_view>

#include "coopt/box.hpp"

namespace coopt {

enum class Status { certified, infeasible, uncertified };

inline std::string_view to_string(Status s)
{
    switch (s) {
    case Status::certified: return "CERTIFIED";
    case Status::infeasible: return "INFEASIBLE";
    case Status::uncertified: return "UNCERTIFIED";
    }
    return "?";
}

struct SearchStats {
    std::size_t boxes_processed = 0;
    std::size_t max_queue_size = 0;
    std::size_t ub_updates = 0;          // accepted improvements of the upper bound
    std::size_t ub_updates_from_de = 0;  // ... of which came from the DE worker
    std::size_t ub_updates_midpoint = 0; // ... of which came from the midpoint test
    std::size_t residual_boxes = 0;      // boxes too small to bisect further
    std::size_t de_generations = 0;
    std::size_t domain_reductions = 0;
};

/// Enclosure lower_bound <= f* <= upper_bound. `point` is a rigorously
/// feasible witness with F(point) <= upper_bound when set.
struct Certificate {
    Status status = Status::uncertified;
    double upper_bound = rounding::kInf;
    double lower_bound = -rounding::kInf;
    std::optional<Point> point;
    SearchStats stats;
    bool timed_out = false;

    double gap() const { return upper_bound - lower_bound; }
};

} // namespace coopt

#endif // COOPT_CERTIFICATE_HPP
