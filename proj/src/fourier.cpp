#include "sumsetlab/fourier.hpp"

#include "sumsetlab/error.hpp"
#include "sumsetlab/fft.hpp"

#include <cmath>

namespace sumsetlab {

namespace {

void check_p(double p)
{
    if (!(p >= 1.0))
        throw InvalidArgument("L^p norm needs p >= 1");
}

// Neumaier-compensated accumulation; the summation order is fixed so results
// are reproducible bit for bit.
class CompensatedSum {
public:
    void add(double v) noexcept
    {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double pow_abs(Complex z, double p)
{
    const double a = std::abs(z);
    if (p == 1.0)
        return a;
    if (p == 2.0)
        return std::norm(z);
    return std::pow(a, p);
}

// Unnormalized transform along every axis: sign -1 is analysis, +1 synthesis.
void fast_transform(const GroupSpec &g, std::vector<Complex> &data, int sign)
{
    if (g.is_cyclic()) {
        DftPlan plan(g.order());
        plan.run(data, sign);
        return;
    }
    const std::size_t p = g.modulus();
    const std::size_t order = g.order();
    DftPlan plan(p);
    std::vector<Complex> line(p);
    for (std::size_t stride = 1; stride < order; stride *= p) {
        const std::size_t block = stride * p;
        for (std::size_t base = 0; base < order; base += block) {
            for (std::size_t off = 0; off < stride; ++off) {
                for (std::size_t j = 0; j < p; ++j)
                    line[j] = data[base + off + j * stride];
                plan.run(line, sign);
                for (std::size_t j = 0; j < p; ++j)
                    data[base + off + j * stride] = line[j];
            }
        }
    }
}

void direct_transform(const GroupSpec &g, const std::vector<Complex> &in, std::vector<Complex> &out, int sign)
{
    const auto roots = unit_root_table(g.modulus());
    const Index order = g.order();
    out.assign(order, Complex{});
    for (Index r = 0; r < order; ++r) {
        Complex acc{};
        for (Index x = 0; x < order; ++x) {
            const Complex w = roots[g.phase(r, x)];
            acc += in[x] * (sign > 0 ? w : std::conj(w));
        }
        out[r] = acc;
    }
}

} // namespace

GroupFunction::GroupFunction(GroupSpec group, std::vector<Complex> values) : group_(group), values_(std::move(values))
{
    if (values_.size() != group_.order())
        throw InvalidArgument("function on " + group_.to_string() + " needs " + std::to_string(group_.order()) +
                              " values, got " + std::to_string(values_.size()));
}

GroupFunction GroupFunction::zero(const GroupSpec &g)
{
    require_enumerable(g);
    return GroupFunction(g, std::vector<Complex>(g.order()));
}

GroupFunction GroupFunction::constant(const GroupSpec &g, Complex c)
{
    require_enumerable(g);
    return GroupFunction(g, std::vector<Complex>(g.order(), c));
}

GroupFunction GroupFunction::indicator(const ElementSet &set)
{
    auto f = zero(set.group());
    for (auto x : set.members())
        f.values_[x] = 1.0;
    return f;
}

GroupFunction GroupFunction::measure(const ElementSet &set)
{
    if (set.empty())
        throw InvalidArgument("normalized measure of an empty set");
    auto f = zero(set.group());
    const double height = static_cast<double>(set.group().order()) / static_cast<double>(set.size());
    for (auto x : set.members())
        f.values_[x] = height;
    return f;
}

GroupFunction GroupFunction::character(const Character &c)
{
    require_enumerable(c.group);
    const auto roots = unit_root_table(c.group.modulus());
    std::vector<Complex> v(c.group.order());
    for (Index x = 0; x < c.group.order(); ++x)
        v[x] = roots[c.group.phase(c.frequency, x)];
    return GroupFunction(c.group, std::move(v));
}

GroupFunction GroupFunction::translated(Index t) const
{
    std::vector<Complex> v(values_.size());
    for (Index x = 0; x < values_.size(); ++x)
        v[x] = values_[group_.add(x, t)];
    return GroupFunction(group_, std::move(v));
}

GroupFunction GroupFunction::operator-(const GroupFunction &other) const
{
    require_same_group(group_, other.group_, "function subtraction");
    std::vector<Complex> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = values_[i] - other.values_[i];
    return GroupFunction(group_, std::move(v));
}

GroupFunction GroupFunction::operator+(const GroupFunction &other) const
{
    require_same_group(group_, other.group_, "function addition");
    std::vector<Complex> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = values_[i] + other.values_[i];
    return GroupFunction(group_, std::move(v));
}

GroupFunction GroupFunction::operator*(Complex scale) const
{
    std::vector<Complex> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = values_[i] * scale;
    return GroupFunction(group_, std::move(v));
}

bool GroupFunction::is_zero(double tol) const noexcept
{
    for (const auto &z : values_)
        if (std::abs(z) > tol)
            return false;
    return true;
}

Spectrum::Spectrum(GroupSpec group, std::vector<Complex> coeffs) : group_(group), coeffs_(std::move(coeffs))
{
    if (coeffs_.size() != group_.order())
        throw InvalidArgument("spectrum on " + group_.to_string() + " needs " + std::to_string(group_.order()) +
                              " coefficients, got " + std::to_string(coeffs_.size()));
}

Spectrum transform(const GroupFunction &f, TransformMethod method)
{
    const auto &g = f.group();
    std::vector<Complex> out;
    if (method == TransformMethod::direct) {
        direct_transform(g, f.values(), out, -1);
    } else {
        out = f.values();
        fast_transform(g, out, -1);
    }
    const double scale = 1.0 / static_cast<double>(g.order());
    for (auto &c : out)
        c *= scale;
    return Spectrum(g, std::move(out));
}

GroupFunction inverse(const Spectrum &s, TransformMethod method)
{
    const auto &g = s.group();
    std::vector<Complex> out;
    if (method == TransformMethod::direct) {
        direct_transform(g, s.coeffs(), out, +1);
    } else {
        out = s.coeffs();
        fast_transform(g, out, +1);
    }
    return GroupFunction(g, std::move(out));
}

GroupFunction convolve(const GroupFunction &f, const GroupFunction &g, TransformMethod method)
{
    require_same_group(f.group(), g.group(), "convolve");
    const auto &grp = f.group();
    if (method == TransformMethod::direct) {
        const Index order = grp.order();
        std::vector<Complex> out(order);
        const double scale = 1.0 / static_cast<double>(order);
        for (Index x = 0; x < order; ++x) {
            Complex acc{};
            for (Index y = 0; y < order; ++y)
                acc += f[y] * g[grp.sub(x, y)];
            out[x] = acc * scale;
        }
        return GroupFunction(grp, std::move(out));
    }
    auto fs = transform(f, method);
    const auto gs = transform(g, method);
    for (std::size_t i = 0; i < fs.coeffs().size(); ++i)
        fs.coeffs()[i] *= gs.coeffs()[i];
    return inverse(fs, method);
}

GroupFunction convolution_power(const GroupFunction &f, unsigned k, TransformMethod method)
{
    if (k == 0)
        throw InvalidArgument("convolution power needs k >= 1");
    if (k == 1)
        return f;
    auto s = transform(f, method);
    for (auto &c : s.coeffs()) {
        Complex acc = 1.0;
        for (unsigned i = 0; i < k; ++i)
            acc *= c;
        c = acc;
    }
    return inverse(s, method);
}

double spectral_l1_norm(const Spectrum &s)
{
    CompensatedSum acc;
    for (const auto &c : s.coeffs())
        acc.add(std::abs(c));
    return acc.value();
}

double lp_norm(const GroupFunction &f, double p)
{
    check_p(p);
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto &z : f.values())
            m = std::max(m, std::abs(z));
        return m;
    }
    CompensatedSum acc;
    for (const auto &z : f.values())
        acc.add(pow_abs(z, p));
    const double avg = acc.value() / static_cast<double>(f.size());
    return p == 2.0 ? std::sqrt(avg) : std::pow(avg, 1.0 / p);
}

double lp_distance(const GroupFunction &f, const GroupFunction &g, double p)
{
    require_same_group(f.group(), g.group(), "lp_distance");
    check_p(p);
    const auto &a = f.values();
    const auto &b = g.values();
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            m = std::max(m, std::abs(a[i] - b[i]));
        return m;
    }
    CompensatedSum acc;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc.add(pow_abs(a[i] - b[i], p));
    const double avg = acc.value() / static_cast<double>(a.size());
    return p == 2.0 ? std::sqrt(avg) : std::pow(avg, 1.0 / p);
}

double lp_translate_distance(const GroupFunction &f, const GroupElement &t, double p)
{
    require_same_group(f.group(), t.group, "lp_translate_distance");
    return lp_translate_distance(f, t.index, p);
}

double lp_translate_distance(const GroupFunction &f, Index t, double p)
{
    check_p(p);
    const auto &g = f.group();
    if (!g.contains(t))
        throw InvalidArgument("translate outside the group");
    const auto &v = f.values();
    if (std::isinf(p)) {
        double m = 0.0;
        for (Index x = 0; x < v.size(); ++x)
            m = std::max(m, std::abs(v[g.add(x, t)] - v[x]));
        return m;
    }
    CompensatedSum acc;
    for (Index x = 0; x < v.size(); ++x)
        acc.add(pow_abs(v[g.add(x, t)] - v[x], p));
    const double avg = acc.value() / static_cast<double>(v.size());
    return p == 2.0 ? std::sqrt(avg) : std::pow(avg, 1.0 / p);
}

Complex mean(const GroupFunction &f)
{
    CompensatedSum re;
    CompensatedSum im;
    for (const auto &z : f.values()) {
        re.add(z.real());
        im.add(z.imag());
    }
    const double n = static_cast<double>(f.size());
    return {re.value() / n, im.value() / n};
}

} // namespace sumsetlab
