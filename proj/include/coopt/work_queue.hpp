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

#ifndef COOPT_WORK_QUEUE_HPP
#define COOPT_WORK_QUEUE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "coopt/box.hpp"

namespace coopt {

enum class QueueStrategy { maxdist, best_first, largest_first, depth_first };

inline std::string_view to_string(QueueStrategy s)
{
    switch (s) {
    case QueueStrategy::maxdist: return "maxdist";
    case QueueStrategy::best_first: return "best";
    case QueueStrategy::largest_first: return "largest";
    case QueueStrategy::depth_first: return "depth";
    }
    return "?";
}

struct WorkItem {
    Box box;
    double lower_bound = -rounding::kInf;
    double priority = 0.0; // larger is extracted first
    std::size_t depth = 0;
    std::uint64_t seq = 0; // insertion order, for FIFO tie-breaking
    double width = 0.0;    // cached box_width
};

/// MaxDist key: distance from the incumbent to the box, so the farthest box
/// is extracted first. Without an incumbent, the box width.
inline double maxdist_priority(const WorkItem& item, const std::optional<Point>& incumbent)
{
    if (!incumbent) return box_width(item.box);
    return point_box_distance(*incumbent, item.box);
}

/// Priority queue of boxes under a selectable exploration strategy. Ties
/// on the key go to the wider box, then to the earlier insertion.
class WorkQueue {
public:
    explicit WorkQueue(QueueStrategy strategy = QueueStrategy::maxdist) : strategy_(strategy) {}

    QueueStrategy strategy() const { return strategy_; }
    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }
    std::span<const WorkItem> items() const { return heap_; }

    void push(Box box, double lower_bound, std::size_t depth, const std::optional<Point>& incumbent)
    {
        WorkItem item;
        item.width = box_width(box);
        item.box = std::move(box);
        item.lower_bound = lower_bound;
        item.depth = depth;
        item.seq = next_seq_++;
        item.priority = key(item, incumbent);
        heap_.push_back(std::move(item));
        std::push_heap(heap_.begin(), heap_.end(), Less{});
    }

    WorkItem pop()
    {
        if (heap_.empty()) throw std::logic_error("WorkQueue::pop on empty queue");
        std::pop_heap(heap_.begin(), heap_.end(), Less{});
        WorkItem item = std::move(heap_.back());
        heap_.pop_back();
        return item;
    }

    const WorkItem& top() const { return heap_.front(); }

    /// Rekeys every item under a new incumbent and restores the heap.
    void reprioritize(const std::optional<Point>& incumbent)
    {
        for (auto& item : heap_) item.priority = key(item, incumbent);
        std::make_heap(heap_.begin(), heap_.end(), Less{});
    }

    /// Removes the items for which `pred` holds; returns how many.
    template <class Pred> std::size_t remove_if(Pred pred)
    {
        const auto it = std::remove_if(heap_.begin(), heap_.end(), pred);
        const auto n = static_cast<std::size_t>(heap_.end() - it);
        heap_.erase(it, heap_.end());
        std::make_heap(heap_.begin(), heap_.end(), Less{});
        return n;
    }

    double min_lower_bound() const
    {
        double lb = rounding::kInf;
        for (const auto& item : heap_) lb = std::min(lb, item.lower_bound);
        return lb;
    }

    /// Heap order predicate: true when `a` is extracted after `b`.
    struct Less {
        bool operator()(const WorkItem& a, const WorkItem& b) const
        {
            if (a.priority != b.priority) return a.priority < b.priority;
            if (a.width != b.width) return a.width < b.width;
            return a.seq > b.seq;
        }
    };

private:
    double key(const WorkItem& item, const std::optional<Point>& incumbent) const
    {
        switch (strategy_) {
        case QueueStrategy::maxdist: return maxdist_priority(item, incumbent);
        case QueueStrategy::best_first: return -item.lower_bound;
        case QueueStrategy::largest_first: return item.width;
        case QueueStrategy::depth_first: return static_cast<double>(item.depth);
        }
        return 0.0;
    }

    QueueStrategy strategy_;
    std::vector<WorkItem> heap_;
    std::uint64_t next_seq_ = 0;
};

/// Component-wise hull of every box in the queue, in one linear pass.
/// Returns nullopt for an empty queue (no domain remains).
inline std::optional<Box> queue_hull(const WorkQueue& q)
{
    if (q.empty()) return std::nullopt;
    Box h = q.items().front().box;
    for (const auto& item : q.items()) h = hull(h, item.box);
    return h;
}

} // namespace coopt

#endif // COOPT_WORK_QUEUE_HPP
