#pragma once

#include "sumsetlab/groups.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace sumsetlab {

/// Unnormalized one-dimensional DFT of a fixed length:
///   out[k] = sum_j in[j] * exp(sign * 2 pi i j k / n),  sign = +1 or -1.
/// Powers of two use an iterative radix-2 kernel, short lengths are summed
/// directly, everything else goes through Bluestein's chirp-z reduction.
class DftPlan {
public:
    explicit DftPlan(std::size_t n);
    ~DftPlan();
    DftPlan(DftPlan &&) noexcept;
    DftPlan &operator=(DftPlan &&) noexcept;

    std::size_t size() const noexcept { return n_; }
    void run(std::span<Complex> data, int sign) const;

private:
    enum class Algo { trivial, direct, radix2, bluestein };

    void run_direct(std::span<Complex> data, int sign) const;
    void run_radix2(std::span<Complex> data, int sign) const;
    void run_bluestein(std::span<Complex> data, int sign) const;

    std::size_t n_;
    Algo algo_;
    std::vector<Complex> roots_;          // exp(+2 pi i m / n)
    std::vector<std::size_t> bitrev_;
    std::size_t padded_ = 0;
    std::vector<Complex> chirp_;          // exp(+i pi j^2 / n)
    std::vector<Complex> kernel_plus_;    // FFT of the conjugate chirp, sign +1
    std::vector<Complex> kernel_minus_;   // FFT of the chirp, sign -1
    std::unique_ptr<DftPlan> inner_;
};

} // namespace sumsetlab
