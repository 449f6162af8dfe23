#include "sumsetlab/fft.hpp"

#include "sumsetlab/error.hpp"

#include <bit>

namespace sumsetlab {

namespace {

constexpr std::size_t kDirectThreshold = 16;

} // namespace

DftPlan::DftPlan(std::size_t n) : n_(n)
{
    if (n == 0)
        throw InvalidArgument("DFT length must be positive");
    if (n == 1) {
        algo_ = Algo::trivial;
        return;
    }
    roots_ = unit_root_table(n);
    if (std::has_single_bit(n)) {
        algo_ = Algo::radix2;
        const unsigned bits = static_cast<unsigned>(std::countr_zero(n));
        bitrev_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (unsigned b = 0; b < bits; ++b)
                if (i & (std::size_t{1} << b))
                    r |= std::size_t{1} << (bits - 1 - b);
            bitrev_[i] = r;
        }
        return;
    }
    if (n <= kDirectThreshold) {
        algo_ = Algo::direct;
        return;
    }

    algo_ = Algo::bluestein;
    roots_.clear();
    padded_ = std::bit_ceil(2 * n - 1);
    inner_ = std::make_unique<DftPlan>(padded_);
    chirp_.resize(n);
    const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto sq = static_cast<std::uint64_t>(static_cast<unsigned __int128>(j) * j % two_n);
        chirp_[j] = unit_root(sq, two_n);
    }
    // For sign s the chirp is c_j = exp(s i pi j^2 / n) and the kernel is conj(c).
    kernel_plus_.assign(padded_, Complex{});
    kernel_minus_.assign(padded_, Complex{});
    for (std::size_t j = 0; j < n; ++j) {
        kernel_plus_[j] = std::conj(chirp_[j]);
        kernel_minus_[j] = chirp_[j];
        if (j != 0) {
            kernel_plus_[padded_ - j] = std::conj(chirp_[j]);
            kernel_minus_[padded_ - j] = chirp_[j];
        }
    }
    inner_->run(kernel_plus_, -1);
    inner_->run(kernel_minus_, -1);
}

DftPlan::~DftPlan() = default;
DftPlan::DftPlan(DftPlan &&) noexcept = default;
DftPlan &DftPlan::operator=(DftPlan &&) noexcept = default;

void DftPlan::run(std::span<Complex> data, int sign) const
{
    if (data.size() != n_)
        throw InvalidArgument("DFT input has wrong length");
    switch (algo_) {
    case Algo::trivial: return;
    case Algo::direct: run_direct(data, sign); return;
    case Algo::radix2: run_radix2(data, sign); return;
    case Algo::bluestein: run_bluestein(data, sign); return;
    }
}

void DftPlan::run_direct(std::span<Complex> data, int sign) const
{
    std::vector<Complex> out(n_);
    for (std::size_t k = 0; k < n_; ++k) {
        Complex acc{};
        for (std::size_t j = 0; j < n_; ++j) {
            const Complex w = roots_[j * k % n_];
            acc += data[j] * (sign > 0 ? w : std::conj(w));
        }
        out[k] = acc;
    }
    std::copy(out.begin(), out.end(), data.begin());
}

void DftPlan::run_radix2(std::span<Complex> data, int sign) const
{
    for (std::size_t i = 0; i < n_; ++i)
        if (i < bitrev_[i])
            std::swap(data[i], data[bitrev_[i]]);
    for (std::size_t len = 2; len <= n_; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t step = n_ / len;
        for (std::size_t i = 0; i < n_; i += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const Complex w = sign > 0 ? roots_[j * step] : std::conj(roots_[j * step]);
                const Complex u = data[i + j];
                const Complex v = data[i + j + half] * w;
                data[i + j] = u + v;
                data[i + j + half] = u - v;
            }
        }
    }
}

void DftPlan::run_bluestein(std::span<Complex> data, int sign) const
{
    std::vector<Complex> a(padded_, Complex{});
    for (std::size_t j = 0; j < n_; ++j)
        a[j] = data[j] * (sign > 0 ? chirp_[j] : std::conj(chirp_[j]));
    inner_->run(a, -1);
    const auto &kernel = sign > 0 ? kernel_plus_ : kernel_minus_;
    for (std::size_t i = 0; i < padded_; ++i)
        a[i] *= kernel[i];
    inner_->run(a, +1);
    const double scale = 1.0 / static_cast<double>(padded_);
    for (std::size_t k = 0; k < n_; ++k)
        data[k] = a[k] * scale * (sign > 0 ? chirp_[k] : std::conj(chirp_[k]));
}

} // namespace sumsetlab
