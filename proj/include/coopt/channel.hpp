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

// Message contract between the DE and IBC workers.
//
// Log format, one line per message:
//
//   <seq> DE->IBC UB_FROM_DE <n> <x_1> ... <x_n> <ub>
//   <seq> IBC->DE SOLUTION_FROM_IBC <n> <x_1> ... <x_n> <ub>
//   <seq> IBC->DE DOMAIN_REDUCTION <n> <lo_1> <hi_1> ... <lo_n> <hi_n>
//   <seq> IBC->DE TERMINATE <status> <upper_bound> <lower_bound>
//
// Floats are printed as shortest round-trip decimals; seq counts per
// direction starting at 0.

#ifndef COOPT_CHANNEL_HPP
#define COOPT_CHANNEL_HPP

#include <atomic>
#include <cstdlib>
#include <cstdint>
#include <deque>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coopt/box.hpp"
#include "coopt/certificate.hpp"
#include "coopt/decimal.hpp"

namespace coopt {

enum class Direction { de_to_ibc, ibc_to_de };

enum class MessageKind { ub_from_de, solution_from_ibc, domain_reduction, terminate };

inline std::string_view to_string(Direction d)
{
    return d == Direction::de_to_ibc ? "DE->IBC" : "IBC->DE";
}

inline std::string_view to_string(MessageKind k)
{
    switch (k) {
    case MessageKind::ub_from_de: return "UB_FROM_DE";
    case MessageKind::solution_from_ibc: return "SOLUTION_FROM_IBC";
    case MessageKind::domain_reduction: return "DOMAIN_REDUCTION";
    case MessageKind::terminate: return "TERMINATE";
    }
    return "?";
}

inline Direction direction_of(MessageKind k)
{
    return k == MessageKind::ub_from_de ? Direction::de_to_ibc : Direction::ibc_to_de;
}

struct Message {
    std::uint64_t seq = 0;
    MessageKind kind = MessageKind::ub_from_de;
    Point point;                       // UB_FROM_DE, SOLUTION_FROM_IBC
    double value = rounding::kInf;     // ub, or the certificate upper bound
    Box box;                           // DOMAIN_REDUCTION
    Status status = Status::uncertified;  // TERMINATE
    double lower_bound = -rounding::kInf; // TERMINATE

    Direction direction() const { return direction_of(kind); }

    static Message upper_bound(Point x, double ub)
    {
        Message m;
        m.kind = MessageKind::ub_from_de;
        m.point = std::move(x);
        m.value = ub;
        return m;
    }
    static Message solution(Point x, double ub)
    {
        Message m;
        m.kind = MessageKind::solution_from_ibc;
        m.point = std::move(x);
        m.value = ub;
        return m;
    }
    static Message reduction(Box b)
    {
        Message m;
        m.kind = MessageKind::domain_reduction;
        m.box = std::move(b);
        return m;
    }
    static Message terminate(const Certificate& c)
    {
        Message m;
        m.kind = MessageKind::terminate;
        m.status = c.status;
        m.value = c.upper_bound;
        m.lower_bound = c.lower_bound;
        return m;
    }
};

inline std::string format_message(const Message& m)
{
    std::ostringstream os;
    os << m.seq << ' ' << to_string(m.direction()) << ' ' << to_string(m.kind);
    switch (m.kind) {
    case MessageKind::ub_from_de:
    case MessageKind::solution_from_ibc:
        os << ' ' << m.point.size();
        for (double v : m.point) os << ' ' << format_roundtrip(v);
        os << ' ' << format_roundtrip(m.value);
        break;
    case MessageKind::domain_reduction:
        os << ' ' << m.box.size();
        for (const auto& c : m.box) os << ' ' << format_roundtrip(c.lo) << ' ' << format_roundtrip(c.hi);
        break;
    case MessageKind::terminate:
        os << ' ' << to_string(m.status) << ' ' << format_roundtrip(m.value) << ' '
           << format_roundtrip(m.lower_bound);
        break;
    }
    return os.str();
}

namespace detail {

inline double parse_float_token(const std::string& t)
{
    if (t == "inf") return rounding::kInf;
    if (t == "-inf") return -rounding::kInf;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size()) throw std::invalid_argument("bad float '" + t + "'");
    return v;
}

} // namespace detail

/// Inverse of format_message; throws std::invalid_argument on malformed input.
inline Message parse_message(std::string_view line)
{
    std::istringstream is{std::string(line)};
    Message m;
    std::string dir, kind;
    if (!(is >> m.seq >> dir >> kind)) throw std::invalid_argument("truncated message line");
    auto next = [&is]() {
        std::string t;
        if (!(is >> t)) throw std::invalid_argument("truncated message payload");
        return t;
    };
    auto read_count = [&]() {
        const std::string t = next();
        return static_cast<std::size_t>(std::stoul(t));
    };
    if (kind == "UB_FROM_DE" || kind == "SOLUTION_FROM_IBC") {
        m.kind = kind == "UB_FROM_DE" ? MessageKind::ub_from_de : MessageKind::solution_from_ibc;
        const std::size_t n = read_count();
        m.point.resize(n);
        for (auto& v : m.point) v = detail::parse_float_token(next());
        m.value = detail::parse_float_token(next());
    } else if (kind == "DOMAIN_REDUCTION") {
        m.kind = MessageKind::domain_reduction;
        const std::size_t n = read_count();
        std::vector<Interval> comps(n);
        for (auto& c : comps) {
            const double lo = detail::parse_float_token(next());
            const double hi = detail::parse_float_token(next());
            c = Interval{lo, hi};
        }
        m.box = Box(std::move(comps));
    } else if (kind == "TERMINATE") {
        m.kind = MessageKind::terminate;
        const std::string s = next();
        if (s == "CERTIFIED") {
            m.status = Status::certified;
        } else if (s == "INFEASIBLE") {
            m.status = Status::infeasible;
        } else if (s == "UNCERTIFIED") {
            m.status = Status::uncertified;
        } else {
            throw std::invalid_argument("unknown status '" + s + "'");
        }
        m.value = detail::parse_float_token(next());
        m.lower_bound = detail::parse_float_token(next());
    } else {
        throw std::invalid_argument("unknown message kind '" + kind + "'");
    }
    if (dir != to_string(m.direction())) throw std::invalid_argument("direction does not match kind");
    return m;
}

/// Two unbounded FIFO queues, one per direction, safe for concurrent use by
/// the two workers. Optionally records every message as a log line.
class Channel {
public:
    explicit Channel(bool record = false) : record_(record) {}

    Channel(const Channel&) = delete;
    Channel& operator=(const Channel&) = delete;

    void send(Message m)
    {
        std::lock_guard lock(mutex_);
        auto& q = queue(m.direction());
        m.seq = next_seq_[index(m.direction())]++;
        if (record_) log_.push_back(format_message(m));
        q.push_back(std::move(m));
    }

    /// Non-blocking receive of every pending message for one direction.
    std::vector<Message> drain(Direction d)
    {
        std::lock_guard lock(mutex_);
        auto& q = queue(d);
        std::vector<Message> out(std::make_move_iterator(q.begin()), std::make_move_iterator(q.end()));
        q.clear();
        return out;
    }

    std::vector<std::string> log() const
    {
        std::lock_guard lock(mutex_);
        return log_;
    }

    /// Completed DE generations, published by the DE worker so the IBC can
    /// schedule domain reductions.
    void publish_generation(std::uint64_t g) { generations_.store(g, std::memory_order_release); }
    std::uint64_t generations() const { return generations_.load(std::memory_order_acquire); }

private:
    static std::size_t index(Direction d) { return d == Direction::de_to_ibc ? 0 : 1; }
    std::deque<Message>& queue(Direction d) { return queues_[index(d)]; }

    mutable std::mutex mutex_;
    std::deque<Message> queues_[2];
    std::uint64_t next_seq_[2] = {0, 0};
    bool record_;
    std::vector<std::string> log_;
    std::atomic<std::uint64_t> generations_{0};
};

} // namespace coopt

#endif // COOPT_CHANNEL_HPP
