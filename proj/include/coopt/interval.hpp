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

#ifndef COOPT_INTERVAL_HPP
#define COOPT_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <utility>

namespace coopt {

namespace rounding {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kMax = std::numeric_limits<double>::max();

// Products and quotients smaller than this may lose bits of their FMA
// residual to underflow; such results are stepped unconditionally.
inline constexpr double kResidualSafe = 0x1p-960;

inline double next_down(double x) { return std::nextafter(x, -kInf); }
inline double next_up(double x) { return std::nextafter(x, kInf); }

// Every directed operation below computes the round-to-nearest result and
// moves it one ulp outward unless an error-free transformation proves the
// nearest result already lies on the correct side of the exact value.

inline double add_down(double a, double b)
{
    const double s = a + b;
    if (std::isnan(s)) return -kInf;
    if (std::isinf(s)) {
        return (s > 0 && std::isfinite(a) && std::isfinite(b)) ? kMax : s;
    }
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return err < 0 ? next_down(s) : s;
}

inline double add_up(double a, double b)
{
    const double s = a + b;
    if (std::isnan(s)) return kInf;
    if (std::isinf(s)) {
        return (s < 0 && std::isfinite(a) && std::isfinite(b)) ? -kMax : s;
    }
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return err > 0 ? next_up(s) : s;
}

inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

// Interval products use the convention 0 * inf = 0.
inline double mul_down(double a, double b)
{
    if (a == 0 || b == 0) return 0.0;
    const double p = a * b;
    if (std::isinf(p)) {
        return (p > 0 && std::isfinite(a) && std::isfinite(b)) ? kMax : p;
    }
    if (std::abs(p) < kResidualSafe) return next_down(p);
    const double err = std::fma(a, b, -p);
    return err < 0 ? next_down(p) : p;
}

inline double mul_up(double a, double b)
{
    if (a == 0 || b == 0) return 0.0;
    const double p = a * b;
    if (std::isinf(p)) {
        return (p < 0 && std::isfinite(a) && std::isfinite(b)) ? -kMax : p;
    }
    if (std::abs(p) < kResidualSafe) return next_up(p);
    const double err = std::fma(a, b, -p);
    return err > 0 ? next_up(p) : p;
}

// b must be nonzero.
inline double div_down(double a, double b)
{
    const double q = a / b;
    if (std::isnan(q)) return -kInf;
    if (std::isinf(q)) {
        return (q > 0 && std::isfinite(a)) ? kMax : q;
    }
    if (std::isinf(b) || a == 0) return q;
    if (std::abs(q) < kResidualSafe) return next_down(q);
    // a - q*b is exact; the exact quotient is q + r/b.
    const double r = std::fma(-q, b, a);
    const bool below = (r < 0) != (b < 0) && r != 0;
    return below ? next_down(q) : q;
}

inline double div_up(double a, double b)
{
    const double q = a / b;
    if (std::isnan(q)) return kInf;
    if (std::isinf(q)) {
        return (q < 0 && std::isfinite(a)) ? -kMax : q;
    }
    if (std::isinf(b) || a == 0) return q;
    if (std::abs(q) < kResidualSafe) return next_up(q);
    const double r = std::fma(-q, b, a);
    const bool above = (r > 0) == (b > 0) && r != 0;
    return above ? next_up(q) : q;
}

// x must be nonnegative.
inline double sqrt_down(double x)
{
    const double s = std::sqrt(x);
    if (x == 0 || std::isinf(x)) return s;
    const double r = std::fma(-s, s, x);
    return r < 0 ? next_down(s) : s;
}

inline double sqrt_up(double x)
{
    const double s = std::sqrt(x);
    if (x == 0 || std::isinf(x)) return s;
    const double r = std::fma(-s, s, x);
    return r > 0 ? next_up(s) : s;
}

// Positive base only: the product of lower (upper) bounds stays a lower
// (upper) bound because every factor is nonnegative.
inline double pow_down(double x, unsigned n)
{
    double r = 1.0;
    for (unsigned i = 0; i < n; ++i) r = mul_down(r, x);
    return r;
}

inline double pow_up(double x, unsigned n)
{
    double r = 1.0;
    for (unsigned i = 0; i < n; ++i) r = mul_up(r, x);
    return r;
}

// Largest float r with r^n <= y (y >= 0), found by correcting std::pow.
inline double root_down(double y, unsigned n)
{
    if (y == 0 || std::isinf(y) || n == 1) return y;
    double r = std::pow(y, 1.0 / n);
    for (int i = 0; i < 64 && pow_up(r, n) > y; ++i) r = next_down(r);
    if (pow_up(r, n) > y) return 0.0;
    return r;
}

inline double root_up(double y, unsigned n)
{
    if (y == 0 || std::isinf(y) || n == 1) return y;
    double r = std::pow(y, 1.0 / n);
    for (int i = 0; i < 64 && pow_down(r, n) < y; ++i) r = next_up(r);
    if (pow_down(r, n) < y) return kInf;
    return r;
}

// libm transcendental results are within one ulp; one outward step covers them.
inline double libm_down(double v) { return std::isfinite(v) ? next_down(v) : v; }
inline double libm_up(double v) { return std::isfinite(v) ? next_up(v) : v; }

} // namespace rounding

/// Closed interval [lo, hi] with floating-point bounds. Bounds may be
/// infinite but never NaN. The empty set is a distinguished value with
/// lo = +inf and hi = -inf.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    constexpr Interval() = default;
    constexpr Interval(double v) : lo(v), hi(v) {} // NOLINT(google-explicit-constructor)
    constexpr Interval(double l, double u) : lo(l), hi(u)
    {
        if (!(l <= u) || l == rounding::kInf || u == -rounding::kInf) {
            lo = rounding::kInf;
            hi = -rounding::kInf;
        }
    }

    static constexpr Interval empty()
    {
        Interval e;
        e.lo = rounding::kInf;
        e.hi = -rounding::kInf;
        return e;
    }
    static constexpr Interval entire() { return {-rounding::kInf, rounding::kInf}; }

    constexpr bool is_empty() const { return lo > hi; }
    constexpr bool is_degenerate() const { return lo == hi; }
    constexpr bool is_bounded() const
    {
        return lo > -rounding::kInf && hi < rounding::kInf;
    }
    constexpr bool contains(double x) const { return lo <= x && x <= hi; }
    constexpr bool subset_of(const Interval& o) const
    {
        return is_empty() || (o.lo <= lo && hi <= o.hi);
    }
    constexpr bool strictly_contains_zero() const { return lo < 0 && 0 < hi; }

    /// Magnitude max(|lo|, |hi|).
    double mag() const { return is_empty() ? 0.0 : std::max(std::abs(lo), std::abs(hi)); }
    /// Mignitude: smallest absolute value in the interval.
    double mig() const
    {
        if (is_empty()) return 0.0;
        if (contains(0.0)) return 0.0;
        return std::min(std::abs(lo), std::abs(hi));
    }

    friend constexpr bool operator==(const Interval& a, const Interval& b)
    {
        if (a.is_empty() || b.is_empty()) return a.is_empty() && b.is_empty();
        return a.lo == b.lo && a.hi == b.hi;
    }
};

inline std::ostream& operator<<(std::ostream& os, const Interval& x)
{
    if (x.is_empty()) return os << "[empty]";
    return os << '[' << x.lo << ", " << x.hi << ']';
}

/// Offset from the finite bound used as the midpoint of a half-unbounded
/// interval.
inline constexpr double kUnboundedMidpointOffset = 1e8;

/// Width rounded up; +inf when unbounded, 0 for the empty interval.
inline double width(const Interval& x)
{
    if (x.is_empty()) return 0.0;
    return rounding::sub_up(x.hi, x.lo);
}

/// A finite point inside x. Unbounded sides fall back to a fixed offset from
/// the finite bound, and (-inf, +inf) maps to 0.
inline double midpoint(const Interval& x)
{
    using rounding::kInf;
    using rounding::kMax;
    if (x.lo == -kInf && x.hi == kInf) return 0.0;
    if (x.lo == -kInf) return std::max(x.hi - kUnboundedMidpointOffset, -kMax);
    if (x.hi == kInf) return std::min(x.lo + kUnboundedMidpointOffset, kMax);
    const double m = 0.5 * x.lo + 0.5 * x.hi;
    return std::clamp(m, x.lo, x.hi);
}

inline Interval hull(const Interval& x, const Interval& y)
{
    if (x.is_empty()) return y;
    if (y.is_empty()) return x;
    return {std::min(x.lo, y.lo), std::max(x.hi, y.hi)};
}

inline Interval intersect(const Interval& x, const Interval& y)
{
    if (x.is_empty() || y.is_empty()) return Interval::empty();
    return {std::max(x.lo, y.lo), std::min(x.hi, y.hi)};
}

// Arithmetic ----------------------------------------------------------------

inline Interval operator-(const Interval& x)
{
    if (x.is_empty()) return x;
    return {-x.hi, -x.lo};
}

inline Interval operator+(const Interval& x, const Interval& y)
{
    if (x.is_empty() || y.is_empty()) return Interval::empty();
    return {rounding::add_down(x.lo, y.lo), rounding::add_up(x.hi, y.hi)};
}

inline Interval operator-(const Interval& x, const Interval& y)
{
    if (x.is_empty() || y.is_empty()) return Interval::empty();
    return {rounding::sub_down(x.lo, y.hi), rounding::sub_up(x.hi, y.lo)};
}

inline Interval operator*(const Interval& x, const Interval& y)
{
    using namespace rounding;
    if (x.is_empty() || y.is_empty()) return Interval::empty();
    const double a = x.lo, b = x.hi, c = y.lo, d = y.hi;
    if (a >= 0) {
        if (c >= 0) return {mul_down(a, c), mul_up(b, d)};
        if (d <= 0) return {mul_down(b, c), mul_up(a, d)};
        return {mul_down(b, c), mul_up(b, d)};
    }
    if (b <= 0) {
        if (c >= 0) return {mul_down(a, d), mul_up(b, c)};
        if (d <= 0) return {mul_down(b, d), mul_up(a, c)};
        return {mul_down(a, d), mul_up(a, c)};
    }
    if (c >= 0) return {mul_down(a, d), mul_up(b, d)};
    if (d <= 0) return {mul_down(b, c), mul_up(a, c)};
    return {std::min(mul_down(a, d), mul_down(b, c)), std::max(mul_up(a, c), mul_up(b, d))};
}

/// Quotient of x by a divisor that does not contain zero.
inline Interval divide_nonzero(const Interval& x, const Interval& y)
{
    using namespace rounding;
    const double a = x.lo, b = x.hi, c = y.lo, d = y.hi;
    if (c > 0) {
        if (a >= 0) return {div_down(a, d), div_up(b, c)};
        if (b <= 0) return {div_down(a, c), div_up(b, d)};
        return {div_down(a, c), div_up(b, c)};
    }
    // d < 0
    if (a >= 0) return {div_down(b, d), div_up(a, c)};
    if (b <= 0) return {div_down(b, c), div_up(a, d)};
    return {div_down(b, d), div_up(a, d)};
}

/// Two-piece quotient. The second slot is empty when the set of quotients
/// {x / y : y != 0} is connected.
inline std::pair<Interval, Interval> extended_div(const Interval& x, const Interval& y)
{
    using namespace rounding;
    const Interval e = Interval::empty();
    if (x.is_empty() || y.is_empty()) return {e, e};
    if (y.lo == 0 && y.hi == 0) return {e, e};
    if (y.lo > 0 || y.hi < 0) return {divide_nonzero(x, y), e};
    if (x.contains(0.0)) return {Interval::entire(), e};
    if (x.lo > 0) {
        if (y.lo == 0) return {{div_down(x.lo, y.hi), kInf}, e};
        if (y.hi == 0) return {{-kInf, div_up(x.lo, y.lo)}, e};
        return {{-kInf, div_up(x.lo, y.lo)}, {div_down(x.lo, y.hi), kInf}};
    }
    if (y.lo == 0) return {{-kInf, div_up(x.hi, y.hi)}, e};
    if (y.hi == 0) return {{div_down(x.hi, y.lo), kInf}, e};
    return {{-kInf, div_up(x.hi, y.hi)}, {div_down(x.hi, y.lo), kInf}};
}

inline Interval operator/(const Interval& x, const Interval& y)
{
    auto [first, second] = extended_div(x, y);
    return hull(first, second);
}

inline Interval& operator+=(Interval& x, const Interval& y) { return x = x + y; }
inline Interval& operator-=(Interval& x, const Interval& y) { return x = x - y; }
inline Interval& operator*=(Interval& x, const Interval& y) { return x = x * y; }

// Elementary functions --------------------------------------------------------

inline Interval sqr(const Interval& x)
{
    using namespace rounding;
    if (x.is_empty()) return x;
    const double lo = x.mig();
    const double hi = x.mag();
    return {mul_down(lo, lo), mul_up(hi, hi)};
}

inline Interval sqrt(const Interval& x)
{
    const Interval d = intersect(x, {0.0, rounding::kInf});
    if (d.is_empty()) return d;
    return {rounding::sqrt_down(d.lo), rounding::sqrt_up(d.hi)};
}

inline Interval exp(const Interval& x)
{
    using namespace rounding;
    if (x.is_empty()) return x;
    double lo = x.lo == 0 ? 1.0 : std::max(0.0, libm_down(std::exp(x.lo)));
    if (lo == kInf) lo = kMax;
    const double hi = x.hi == 0 ? 1.0 : libm_up(std::exp(x.hi));
    return {lo, hi};
}

/// Natural logarithm of x intersected with (0, +inf).
inline Interval log(const Interval& x)
{
    using namespace rounding;
    if (x.is_empty() || x.hi <= 0) return Interval::empty();
    const double lo = x.lo <= 0 ? -kInf : (x.lo == 1 ? 0.0 : libm_down(std::log(x.lo)));
    const double hi = x.hi == 1 ? 0.0 : libm_up(std::log(x.hi));
    return {lo, hi};
}

/// Integer power. Even exponents use the image of |x|^n; negative exponents
/// are 1 / x^|n|.
inline Interval pow(const Interval& x, int n)
{
    using namespace rounding;
    if (x.is_empty()) return x;
    if (n == 0) return {1.0, 1.0};
    if (n < 0) return Interval{1.0} / pow(x, -n);
    const auto k = static_cast<unsigned>(n);
    if (n % 2 == 0) {
        return {pow_down(x.mig(), k), pow_up(x.mag(), k)};
    }
    const double lo = x.lo >= 0 ? pow_down(x.lo, k) : -pow_up(-x.lo, k);
    const double hi = x.hi >= 0 ? pow_up(x.hi, k) : -pow_down(-x.hi, k);
    return {lo, hi};
}

namespace detail {

// Beyond this magnitude the argument reduction is too coarse to locate
// extrema, and the range [-1, 1] is returned.
inline constexpr double kTrigArgLimit = 1e6;

// True when [a, b] may contain a point phase + 2k*pi. Errs toward true.
inline bool may_contain_phase(double a, double b, double phase)
{
    constexpr double two_pi = 2 * std::numbers::pi;
    constexpr double tol = 1e-9;
    const double t0 = (a - phase) / two_pi;
    const double t1 = (b - phase) / two_pi;
    return std::floor(t1 + tol) >= std::ceil(t0 - tol);
}

inline Interval trig_range(const Interval& x, double (*fn)(double), double max_phase,
                           double min_phase)
{
    using namespace rounding;
    if (x.is_empty()) return x;
    if (!x.is_bounded() || x.hi - x.lo >= 2 * std::numbers::pi ||
        std::abs(x.lo) > kTrigArgLimit || std::abs(x.hi) > kTrigArgLimit) {
        return {-1.0, 1.0};
    }
    const double a = fn(x.lo);
    const double b = fn(x.hi);
    double lo = std::max(-1.0, libm_down(std::min(a, b)));
    double hi = std::min(1.0, libm_up(std::max(a, b)));
    if (may_contain_phase(x.lo, x.hi, max_phase)) hi = 1.0;
    if (may_contain_phase(x.lo, x.hi, min_phase)) lo = -1.0;
    return {lo, hi};
}

} // namespace detail

inline Interval sin(const Interval& x)
{
    constexpr double half_pi = std::numbers::pi / 2;
    return detail::trig_range(x, [](double v) { return std::sin(v); }, half_pi, -half_pi);
}

inline Interval cos(const Interval& x)
{
    return detail::trig_range(x, [](double v) { return std::cos(v); }, 0.0, std::numbers::pi);
}

} // namespace coopt

#endif // COOPT_INTERVAL_HPP
