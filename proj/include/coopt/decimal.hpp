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

#ifndef COOPT_DECIMAL_HPP
#define COOPT_DECIMAL_HPP

#include <cfenv>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <system_error>

#include "coopt/interval.hpp"

namespace coopt {

struct DecimalValue {
    double nearest = 0.0;
    Interval enclosure;
    bool exact = true;
};

namespace detail {

inline double strtod_rounded(const std::string& s, int mode)
{
    const int saved = std::fegetround();
    std::fesetround(mode);
    const double v = std::strtod(s.c_str(), nullptr);
    std::fesetround(saved);
    return v;
}

} // namespace detail

/// Parses a decimal literal (no sign). An inexact literal gets the enclosure
/// [prev(nearest), next(nearest)].
inline DecimalValue parse_decimal(std::string_view text)
{
    const std::string s(text);
    DecimalValue d;
    d.nearest = std::strtod(s.c_str(), nullptr);
    const double down = detail::strtod_rounded(s, FE_DOWNWARD);
    const double up = detail::strtod_rounded(s, FE_UPWARD);
    d.exact = down == up;
    if (d.exact) {
        d.enclosure = Interval{d.nearest};
    } else {
        d.enclosure = Interval{rounding::next_down(d.nearest), rounding::next_up(d.nearest)};
    }
    return d;
}

/// Shortest decimal string that parses back to exactly `v`.
inline std::string format_roundtrip(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) return std::to_string(v);
    return {buf, ptr};
}

/// Decimal string whose value equals `v` exactly (every binary double has a
/// finite decimal expansion).
inline std::string format_exact(double v)
{
    if (std::isnan(v) || std::isinf(v)) return format_roundtrip(v);
    std::string s = format_roundtrip(v);
    if (parse_decimal(s[0] == '-' ? s.substr(1) : s).exact) return s;
    char buf[1200];
    for (int prec = 17; prec < 1100; prec += 8) {
        std::snprintf(buf, sizeof buf, "%.*e", prec, v);
        std::string candidate(buf);
        if (parse_decimal(candidate[0] == '-' ? candidate.substr(1) : candidate).exact) {
            // strip trailing zeros of the mantissa
            const auto epos = candidate.find('e');
            std::string mant = candidate.substr(0, epos);
            const std::string expo = candidate.substr(epos);
            while (!mant.empty() && mant.back() == '0') mant.pop_back();
            if (!mant.empty() && mant.back() == '.') mant.pop_back();
            return mant + expo;
        }
    }
    return s;
}

} // namespace coopt

#endif // COOPT_DECIMAL_HPP
