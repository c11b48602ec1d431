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

#ifndef COOPT_BOX_HPP
#define COOPT_BOX_HPP

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "coopt/interval.hpp"

namespace coopt {

using Point = std::vector<double>;

/// Cartesian product of intervals, one per variable. A box with an empty
/// component is empty as a whole.
class Box {
public:
    Box() = default;
    explicit Box(std::size_t dim, Interval fill = Interval::entire()) : comps_(dim, fill) {}
    Box(std::initializer_list<Interval> comps) : comps_(comps) {}
    explicit Box(std::vector<Interval> comps) : comps_(std::move(comps)) {}

    static Box degenerate(std::span<const double> x)
    {
        Box b(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) b.comps_[i] = Interval{x[i]};
        return b;
    }

    static Box empty(std::size_t dim) { return Box(dim, Interval::empty()); }

    std::size_t size() const { return comps_.size(); }
    Interval& operator[](std::size_t i) { return comps_[i]; }
    const Interval& operator[](std::size_t i) const { return comps_[i]; }
    auto begin() const { return comps_.begin(); }
    auto end() const { return comps_.end(); }
    std::span<const Interval> components() const { return comps_; }

    bool is_empty() const
    {
        return std::any_of(comps_.begin(), comps_.end(),
                           [](const Interval& x) { return x.is_empty(); });
    }

    void set_empty()
    {
        for (auto& c : comps_) c = Interval::empty();
    }

    bool contains(std::span<const double> x) const
    {
        if (x.size() != comps_.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!comps_[i].contains(x[i])) return false;
        }
        return true;
    }

    bool subset_of(const Box& o) const
    {
        if (is_empty()) return true;
        for (std::size_t i = 0; i < comps_.size(); ++i) {
            if (!comps_[i].subset_of(o.comps_[i])) return false;
        }
        return true;
    }

    friend bool operator==(const Box& a, const Box& b)
    {
        if (a.size() != b.size()) return false;
        if (a.is_empty() || b.is_empty()) return a.is_empty() && b.is_empty();
        return a.comps_ == b.comps_;
    }

private:
    std::vector<Interval> comps_;
};

inline std::ostream& operator<<(std::ostream& os, const Box& b)
{
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (i) os << " x ";
        os << b[i];
    }
    return os;
}

/// Maximum component width.
inline double box_width(const Box& b)
{
    double w = 0.0;
    for (const auto& c : b) w = std::max(w, width(c));
    return w;
}

inline Point midpoint(const Box& b)
{
    Point m(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) m[i] = midpoint(b[i]);
    return m;
}

inline Box hull(const Box& a, const Box& b)
{
    assert(a.size() == b.size());
    if (a.is_empty()) return b;
    if (b.is_empty()) return a;
    Box r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = hull(a[i], b[i]);
    return r;
}

inline Box intersect(const Box& a, const Box& b)
{
    assert(a.size() == b.size());
    Box r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = intersect(a[i], b[i]);
    if (r.is_empty()) r.set_empty();
    return r;
}

/// Sum over coordinates of the distance from x_i to the closest point of
/// B_i. Zero iff x lies in B; +inf for an empty box.
inline double point_box_distance(std::span<const double> x, const Box& b)
{
    if (x.size() != b.size()) throw std::invalid_argument("point_box_distance: dimension mismatch");
    if (b.is_empty()) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < b[i].lo) {
            d += b[i].lo - x[i];
        } else if (x[i] > b[i].hi) {
            d += x[i] - b[i].hi;
        }
    }
    return d;
}

} // namespace coopt

#endif // COOPT_BOX_HPP
