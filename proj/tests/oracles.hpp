#pragma once

// Reference implementations kept deliberately naive and independent of the
// library's fast paths: they use only std::polar and textbook sums.

#include "sumsetlab/groups.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

inline std::uint64_t pairing(const sumsetlab::GroupSpec &g, std::uint64_t r, std::uint64_t x)
{
    const auto q = g.modulus();
    if (g.is_cyclic())
        return static_cast<std::uint64_t>((unsigned __int128)r * x % q);
    std::uint64_t acc = 0;
    for (unsigned i = 0; i < g.dimension(); ++i) {
        acc = (acc + (r % q) * (x % q)) % q;
        r /= q;
        x /= q;
    }
    return acc;
}

inline Complex chi(const sumsetlab::GroupSpec &g, std::uint64_t r, std::uint64_t x)
{
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(pairing(g, r, x)) /
                               static_cast<double>(g.modulus()));
}

inline std::vector<Complex> dft(const sumsetlab::GroupSpec &g, const std::vector<Complex> &f)
{
    const auto n = g.order();
    std::vector<Complex> out(n);
    for (std::uint64_t r = 0; r < n; ++r) {
        Complex acc{};
        for (std::uint64_t x = 0; x < n; ++x)
            acc += f[x] * std::conj(chi(g, r, x));
        out[r] = acc / static_cast<double>(n);
    }
    return out;
}

inline std::vector<Complex> convolve(const sumsetlab::GroupSpec &g, const std::vector<Complex> &f,
                                     const std::vector<Complex> &h)
{
    const auto n = g.order();
    std::vector<Complex> out(n);
    for (std::uint64_t x = 0; x < n; ++x) {
        Complex acc{};
        for (std::uint64_t y = 0; y < n; ++y)
            acc += f[y] * h[g.sub(x, y)];
        out[x] = acc / static_cast<double>(n);
    }
    return out;
}

inline std::vector<Complex> random_function(std::uint64_t n, std::mt19937_64 &gen)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Complex> f(n);
    for (auto &z : f)
        z = {u(gen), u(gen)};
    return f;
}

inline double max_diff(const std::vector<Complex> &a, const std::vector<Complex> &b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline std::vector<std::uint64_t> random_subset(std::uint64_t n, double density, std::mt19937_64 &gen)
{
    std::bernoulli_distribution keep(density);
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < n; ++x)
        if (keep(gen))
            out.push_back(x);
    if (out.empty())
        out.push_back(0);
    return out;
}

} // namespace oracle
