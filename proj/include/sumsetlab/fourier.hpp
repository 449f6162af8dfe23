#pragma once

#include "sumsetlab/groups.hpp"

#include <limits>
#include <vector>

namespace sumsetlab {

/// Selects how transforms are evaluated. `direct` is the O(|G|^2) summation
/// straight from the definition and serves as the reference for the fast path.
enum class TransformMethod { automatic, direct };

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A complex-valued function on a group, stored densely in canonical element order.
class GroupFunction {
public:
    GroupFunction(GroupSpec group, std::vector<Complex> values);

    static GroupFunction zero(const GroupSpec &g);
    static GroupFunction constant(const GroupSpec &g, Complex c);
    /// 1_A.
    static GroupFunction indicator(const ElementSet &set);
    /// mu_A = 1_A / mu_G(A), which averages to 1 over the group.
    static GroupFunction measure(const ElementSet &set);
    static GroupFunction character(const Character &c);

    const GroupSpec &group() const noexcept { return group_; }
    const std::vector<Complex> &values() const noexcept { return values_; }
    std::vector<Complex> &values() noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    Complex operator[](Index x) const { return values_[x]; }
    Complex &operator[](Index x) { return values_[x]; }

    /// x -> f(x + t).
    GroupFunction translated(Index t) const;
    GroupFunction operator-(const GroupFunction &other) const;
    GroupFunction operator+(const GroupFunction &other) const;
    GroupFunction operator*(Complex scale) const;

    bool is_zero(double tol = 0.0) const noexcept;

private:
    GroupSpec group_;
    std::vector<Complex> values_;
};

/// Fourier coefficients f^(gamma) = E_x f(x) conj(gamma(x)), in canonical character order.
class Spectrum {
public:
    Spectrum(GroupSpec group, std::vector<Complex> coeffs);

    const GroupSpec &group() const noexcept { return group_; }
    const std::vector<Complex> &coeffs() const noexcept { return coeffs_; }
    std::vector<Complex> &coeffs() noexcept { return coeffs_; }
    Complex operator[](Index r) const { return coeffs_[r]; }

private:
    GroupSpec group_;
    std::vector<Complex> coeffs_;
};

Spectrum transform(const GroupFunction &f, TransformMethod method = TransformMethod::automatic);
GroupFunction inverse(const Spectrum &s, TransformMethod method = TransformMethod::automatic);

/// f*g(x) = E_y f(y) g(x - y).
GroupFunction convolve(const GroupFunction &f, const GroupFunction &g,
                       TransformMethod method = TransformMethod::automatic);
/// k-fold self-convolution, computed as the k-th power in Fourier space.
GroupFunction convolution_power(const GroupFunction &f, unsigned k,
                                TransformMethod method = TransformMethod::automatic);

double spectral_l1_norm(const Spectrum &s);

/// (E_x |f(x)|^p)^(1/p); p = kInfinity gives the sup norm. Requires p >= 1.
double lp_norm(const GroupFunction &f, double p);
double lp_distance(const GroupFunction &f, const GroupFunction &g, double p);
/// ||f(x + t) - f(x)||_{L^p(x)}.
double lp_translate_distance(const GroupFunction &f, const GroupElement &t, double p);
double lp_translate_distance(const GroupFunction &f, Index t, double p);

/// E_x f(x).
Complex mean(const GroupFunction &f);

} // namespace sumsetlab
