#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace sumsetlab {

/// Exact fraction num/den with den > 0 and gcd(num, den) = 1. Arithmetic goes
/// through 128-bit intermediates and throws CapExceeded if the reduced result
/// leaves the 64-bit range.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string to_string() const;

    /// floor(*this * m), exact.
    std::int64_t floor_times(std::int64_t m) const;
    /// Numerator of the fractional part of *this * m, over den(): in [0, den).
    std::int64_t frac_times_num(std::int64_t m) const;

    friend Rational operator+(const Rational &a, const Rational &b);
    friend Rational operator-(const Rational &a, const Rational &b);
    friend Rational operator*(const Rational &a, const Rational &b);
    friend Rational operator/(const Rational &a, const Rational &b);

    friend bool operator==(const Rational &, const Rational &) = default;
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) noexcept;

private:
    static Rational from_wide(__int128 num, __int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace sumsetlab
