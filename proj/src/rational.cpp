#include "sumsetlab/rational.hpp"

#include "sumsetlab/error.hpp"

#include <limits>

namespace sumsetlab {

namespace {

__int128 gcd_wide(__int128 a, __int128 b) noexcept
{
    if (a < 0)
        a = -a;
    if (b < 0)
        b = -b;
    while (b != 0) {
        const __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

__int128 floor_div_wide(__int128 a, __int128 b) noexcept
{
    const __int128 q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0)
        throw InvalidArgument("rational with zero denominator");
    *this = from_wide(num, den);
}

Rational Rational::from_wide(__int128 num, __int128 den)
{
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const __int128 g = gcd_wide(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    constexpr __int128 hi = std::numeric_limits<std::int64_t>::max();
    if (num > hi || num < -hi || den > hi)
        throw CapExceeded("rational arithmetic overflowed 64 bits");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
}

std::string Rational::to_string() const
{
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

std::int64_t Rational::floor_times(std::int64_t m) const
{
    const __int128 v = floor_div_wide(static_cast<__int128>(num_) * m, den_);
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw CapExceeded("floor(xi * a) overflowed 64 bits");
    return static_cast<std::int64_t>(v);
}

std::int64_t Rational::frac_times_num(std::int64_t m) const
{
    const __int128 p = static_cast<__int128>(num_) * m;
    __int128 r = p % den_;
    if (r < 0)
        r += den_;
    return static_cast<std::int64_t>(r);
}

Rational operator+(const Rational &a, const Rational &b)
{
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                               static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational &a, const Rational &b)
{
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                               static_cast<__int128>(a.den_) * b.den_);
}

Rational operator*(const Rational &a, const Rational &b)
{
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational &a, const Rational &b)
{
    if (b.num_ == 0)
        throw InvalidArgument("rational division by zero");
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational &a, const Rational &b) noexcept
{
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
}

} // namespace sumsetlab
