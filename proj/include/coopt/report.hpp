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

#ifndef COOPT_REPORT_HPP
#define COOPT_REPORT_HPP

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "coopt/box.hpp"
#include "coopt/certificate.hpp"
#include "coopt/decimal.hpp"
#include "coopt/expr.hpp"
#include "coopt/problem.hpp"

namespace coopt {

inline constexpr double kDefaultActivityThreshold = 1e-4;

struct ConstraintActivity {
    std::string label;
    Interval value; // interval value at the witness
    bool active = false;
};

/// Interval value of each constraint at `x`. An inequality is active when
/// the upper bound lies in [-threshold, 0]; an equality when its enclosure
/// lies within eq_tol + threshold of zero.
inline std::vector<ConstraintActivity> constraint_activity(const Problem& p, const Point& x,
                                                           double threshold = kDefaultActivityThreshold)
{
    std::vector<ConstraintActivity> out;
    const Box at = Box::degenerate(x);
    for (std::size_t i = 0; i < p.inequalities.size(); ++i) {
        const Interval v = eval_natural(p.inequalities[i], at);
        out.push_back({"g" + std::to_string(i + 1), v, !v.is_empty() && v.hi <= 0 && v.hi >= -threshold});
    }
    for (std::size_t j = 0; j < p.equalities.size(); ++j) {
        const Interval v = eval_natural(p.equalities[j], at);
        out.push_back({"h" + std::to_string(j + 1), v, !v.is_empty() && v.mag() <= p.eq_tol + threshold});
    }
    return out;
}

struct Report {
    Certificate certificate;
    std::vector<ConstraintActivity> activity;
    std::vector<std::string> names;
    std::string mode;
    double wall_time = 0.0;
    std::string error;
};

inline Report make_report(const Problem& p, const Certificate& c, std::string mode, double wall_time,
                          double threshold = kDefaultActivityThreshold)
{
    Report r;
    r.certificate = c;
    r.names = p.names;
    r.mode = std::move(mode);
    r.wall_time = wall_time;
    if (c.point) r.activity = constraint_activity(p, *c.point, threshold);
    return r;
}

/// Status word; an uncertified result carries its gap.
inline std::string status_text(const Certificate& c)
{
    std::string s(to_string(c.status));
    if (c.status == Status::uncertified) s += "(gap=" + format_roundtrip(c.gap()) + ")";
    return s;
}

inline void print_human(std::ostream& os, const Report& r)
{
    const Certificate& c = r.certificate;
    os << "status          " << status_text(c) << (c.timed_out ? " [cap reached]" : "") << '\n';
    os << "mode            " << r.mode << '\n';
    os << "upper bound     " << format_roundtrip(c.upper_bound) << '\n';
    os << "lower bound     " << format_roundtrip(c.lower_bound) << '\n';
    if (c.point) {
        os << "solution\n";
        for (std::size_t i = 0; i < c.point->size(); ++i) {
            os << "  " << r.names[i] << " = " << format_roundtrip((*c.point)[i]) << '\n';
        }
    }
    if (!r.activity.empty()) {
        os << "constraints at solution\n";
        for (const auto& a : r.activity) {
            os << "  " << a.label << " in [" << format_roundtrip(a.value.lo) << ", "
               << format_roundtrip(a.value.hi) << "]" << (a.active ? " active" : "") << '\n';
        }
    }
    os << "boxes processed " << c.stats.boxes_processed << '\n';
    os << "max queue size  " << c.stats.max_queue_size << '\n';
    os << "ub updates      " << c.stats.ub_updates << " (de " << c.stats.ub_updates_from_de << ", midpoint "
       << c.stats.ub_updates_midpoint << ")\n";
    os << "de generations  " << c.stats.de_generations << '\n';
    os << "reductions      " << c.stats.domain_reductions << '\n';
    os << "wall time       " << r.wall_time << " s\n";
    if (!r.error.empty()) os << "error           " << r.error << '\n';
}

/// key=value lines; floats are shortest round-trip decimals.
inline void print_porcelain(std::ostream& os, const Report& r)
{
    const Certificate& c = r.certificate;
    os << "status=" << to_string(c.status) << '\n';
    os << "timed_out=" << (c.timed_out ? 1 : 0) << '\n';
    os << "mode=" << r.mode << '\n';
    os << "upper_bound=" << format_roundtrip(c.upper_bound) << '\n';
    os << "lower_bound=" << format_roundtrip(c.lower_bound) << '\n';
    os << "gap=" << format_roundtrip(c.gap()) << '\n';
    if (c.point) {
        for (std::size_t i = 0; i < c.point->size(); ++i) {
            os << "x." << r.names[i] << '=' << format_roundtrip((*c.point)[i]) << '\n';
        }
    }
    for (const auto& a : r.activity) {
        os << "constraint." << a.label << ".lo=" << format_roundtrip(a.value.lo) << '\n';
        os << "constraint." << a.label << ".hi=" << format_roundtrip(a.value.hi) << '\n';
        os << "constraint." << a.label << ".active=" << (a.active ? 1 : 0) << '\n';
    }
    os << "boxes_processed=" << c.stats.boxes_processed << '\n';
    os << "max_queue_size=" << c.stats.max_queue_size << '\n';
    os << "ub_updates=" << c.stats.ub_updates << '\n';
    os << "ub_updates_de=" << c.stats.ub_updates_from_de << '\n';
    os << "ub_updates_midpoint=" << c.stats.ub_updates_midpoint << '\n';
    os << "de_generations=" << c.stats.de_generations << '\n';
    os << "domain_reductions=" << c.stats.domain_reductions << '\n';
    os << "residual_boxes=" << c.stats.residual_boxes << '\n';
    if (!r.error.empty()) os << "error=" << r.error << '\n';
    os << "wall_time=" << r.wall_time << '\n';
}

/// 0 on CERTIFIED or INFEASIBLE, 3 on a cap or an uncertified result.
inline int exit_code(const Certificate& c)
{
    if (c.status == Status::certified || c.status == Status::infeasible) return 0;
    return 3;
}

} // namespace coopt

#endif // COOPT_REPORT_HPP
