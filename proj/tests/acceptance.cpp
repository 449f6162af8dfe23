// Acceptance runs: one PASS/FAIL line per criterion. Checks recompute results
// from definitions wherever that is affordable, rather than trusting library flags.

#include "cli.hpp"

#include "sumsetlab/error.hpp"
#include "sumsetlab/numtheory.hpp"
#include "sumsetlab/pipelines.hpp"
#include "sumsetlab/random.hpp"
#include "sumsetlab/sampling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>

using namespace sumsetlab;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, bool pass, const std::string &detail)
{
    std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    failures += pass ? 0 : 1;
}

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char *f, double a, double b = 0, double c = 0, double d = 0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

// Character pairing straight from coordinates: exp(2 pi i <r, x> / q).
Complex pairing(const GroupSpec &g, Index r, Index x)
{
    const auto cr = g.coords(r);
    const auto cx = g.coords(x);
    const auto q = g.modulus();
    std::uint64_t dot = 0;
    for (std::size_t i = 0; i < cr.size(); ++i)
        dot = (dot + (cr[i] % q) * (cx[i] % q)) % q;
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(dot) / static_cast<double>(q);
    return {std::cos(theta), std::sin(theta)};
}

std::vector<Complex> naive_dft(const GroupSpec &g, const std::vector<Complex> &f)
{
    const auto n = g.order();
    std::vector<Complex> out(n);
    for (Index r = 0; r < n; ++r) {
        Complex acc = 0;
        for (Index x = 0; x < n; ++x)
            acc += f[x] * std::conj(pairing(g, r, x));
        out[r] = acc / static_cast<double>(n);
    }
    return out;
}

std::vector<Complex> naive_convolution(const GroupSpec &g, const std::vector<Complex> &f, const std::vector<Complex> &h)
{
    const auto n = g.order();
    std::vector<Complex> out(n);
    for (Index x = 0; x < n; ++x) {
        Complex acc = 0;
        for (Index y = 0; y < n; ++y)
            acc += f[y] * h[g.sub(x, y)];
        out[x] = acc / static_cast<double>(n);
    }
    return out;
}

std::vector<Index> random_subset(const GroupSpec &g, double density, std::mt19937_64 &gen)
{
    std::bernoulli_distribution coin(density);
    std::vector<Index> out;
    for (Index x = 0; x < g.order(); ++x)
        if (coin(gen))
            out.push_back(x);
    if (out.empty())
        out.push_back(gen() % g.order());
    return out;
}

std::vector<Complex> indicator_values(const GroupSpec &g, const std::vector<Index> &s, double scale = 1.0)
{
    std::vector<Complex> v(g.order());
    for (auto x : s)
        v[x] = scale;
    return v;
}

double direct_translate_distance(const GroupSpec &g, const std::vector<Complex> &f, Index t, double p)
{
    double acc = 0;
    for (Index x = 0; x < g.order(); ++x)
        acc += std::pow(std::abs(f[g.add(x, t)] - f[x]), p);
    return std::pow(acc / static_cast<double>(g.order()), 1.0 / p);
}

bool in_bohr(const GroupSpec &g, const std::vector<Index> &freqs, double delta, Index x)
{
    for (auto r : freqs)
        if (std::abs(pairing(g, r, x) - Complex(1.0, 0.0)) > delta + 1e-12)
            return false;
    return true;
}

std::set<std::int64_t> naive_sumset(const IntSet &a, const IntSet &b)
{
    std::set<std::int64_t> s;
    for (auto x : a.elements())
        for (auto y : b.elements())
            s.insert(x + y);
    return s;
}

std::uint64_t naive_longest_ap(const std::set<std::int64_t> &s)
{
    if (s.empty())
        return 0;
    std::uint64_t best = 1;
    const std::vector<std::int64_t> v(s.begin(), s.end());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            const auto d = v[j] - v[i];
            if (s.count(v[i] - d))
                continue;
            std::uint64_t len = 2;
            while (s.count(v[i] + static_cast<std::int64_t>(len) * d))
                ++len;
            best = std::max(best, len);
        }
    return best;
}

bool witness_in_sumset(const ProgressionWitness &w, const std::set<std::int64_t> &s)
{
    for (std::uint64_t i = 0; i < w.length; ++i)
        if (!s.count(w.base + static_cast<std::int64_t>(i) * w.step))
            return false;
    return w.length >= 1;
}

// ---------------------------------------------------------------------------

void criterion_1()
{
    const auto t0 = Clock::now();
    std::vector<GroupSpec> groups;
    for (std::uint64_t n = 2; n <= 64; ++n)
        groups.push_back(GroupSpec::cyclic(n));
    for (std::uint64_t n : {97, 101, 128, 199, 4096})
        groups.push_back(GroupSpec::cyclic(n));
    for (unsigned d = 1; d <= 10; ++d)
        groups.push_back(GroupSpec::vector(2, d));

    std::mt19937_64 gen(1001);
    std::normal_distribution<double> normal;
    double worst = 0;
    int fails = 0;
    for (int i = 0; i < 500; ++i) {
        const auto &g = groups[static_cast<std::size_t>(i) % groups.size()];
        std::vector<Complex> fv(g.order()), hv(g.order());
        for (auto &z : fv)
            z = {normal(gen), normal(gen)};
        for (auto &z : hv)
            z = {normal(gen), normal(gen)};
        const GroupFunction f(g, fv), h(g, hv);
        const auto sf = transform(f);
        const auto sh = transform(h);

        double l2 = 0, energy = 0, inv = 0, conv = 0, dft = 0;
        for (auto z : fv)
            l2 += std::norm(z);
        l2 /= static_cast<double>(g.order());
        for (auto z : sf.coeffs())
            energy += std::norm(z);
        const auto back = inverse(sf);
        for (Index x = 0; x < g.order(); ++x)
            inv = std::max(inv, std::abs(back.values()[x] - fv[x]));
        const auto sc = transform(convolve(f, h));
        for (Index r = 0; r < g.order(); ++r)
            conv = std::max(conv, std::abs(sc.coeffs()[r] - sf.coeffs()[r] * sh.coeffs()[r]));
        if (g.order() <= 256) {
            const auto ref = naive_dft(g, fv);
            for (Index r = 0; r < g.order(); ++r)
                dft = std::max(dft, std::abs(ref[r] - sf.coeffs()[r]));
            const auto cref = naive_convolution(g, fv, hv);
            const auto cf = convolve(f, h);
            for (Index x = 0; x < g.order(); ++x)
                dft = std::max(dft, std::abs(cref[x] - cf.values()[x]));
        }
        const double err = std::max({std::abs(l2 - energy), inv, conv, dft});
        worst = std::max(worst, err);
        fails += err > 1e-9 ? 1 : 0;
    }
    const double secs = seconds_since(t0);
    report(1, fails == 0 && secs < 60, fmt("500 functions, max error %.2e, %.0f failures, %.1fs", worst, fails, secs));
}

void criterion_2()
{
    std::vector<GroupSpec> groups;
    for (std::uint64_t n : {2, 5, 16, 31, 64, 97, 101, 128, 199, 4096})
        groups.push_back(GroupSpec::cyclic(n));
    for (unsigned d : {3, 6, 10})
        groups.push_back(GroupSpec::vector(2, d));
    std::mt19937_64 gen(2002);
    std::uniform_real_distribution<double> dens(0.05, 0.95);
    int fails = 0;
    double worst_slack = 1e300;
    for (int i = 0; i < 500; ++i) {
        const auto &g = groups[static_cast<std::size_t>(i) % groups.size()];
        const auto a = random_subset(g, dens(gen), gen);
        const auto b = random_subset(g, dens(gen), gen);
        const auto conv = convolve(GroupFunction(g, indicator_values(g, a)), GroupFunction(g, indicator_values(g, b)));
        const double l1 = spectral_l1_norm(transform(conv));
        const double alpha = static_cast<double>(a.size()) / static_cast<double>(g.order());
        const double beta = static_cast<double>(b.size()) / static_cast<double>(g.order());
        const double slack = std::sqrt(alpha * beta) + 1e-9 - l1;
        worst_slack = std::min(worst_slack, slack);
        fails += slack < 0 ? 1 : 0;
    }
    report(2, fails == 0, fmt("500 pairs, %.0f violations, min slack %.3e", fails, worst_slack));
}

GroupSpec random_small_group(std::mt19937_64 &gen, std::uint64_t max_order)
{
    if (gen() % 3 == 0) {
        const std::uint64_t ps[] = {2, 3, 5, 7};
        const auto p = ps[gen() % 4];
        unsigned n = 1;
        std::uint64_t order = p;
        while (order * p <= max_order && gen() % 4 != 0) {
            order *= p;
            ++n;
        }
        return GroupSpec::vector(p, n);
    }
    return GroupSpec::cyclic(2 + gen() % (max_order - 1));
}

void criterion_3()
{
    std::mt19937_64 gen(3003);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int fails = 0, count_mismatch = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto g = random_small_group(gen, 4096);
        const auto d = gen() % 7;
        std::vector<Index> freqs;
        for (std::uint64_t j = 0; j < d; ++j)
            freqs.push_back(gen() % g.order());
        const double delta = 2.0 * (1.0 - unit(gen)); // (0, 2]
        const BohrDescriptor b(g, freqs, delta);
        const auto c = size_bound_check(b);
        std::uint64_t direct = 0;
        for (Index x = 0; x < g.order(); ++x)
            direct += in_bohr(g, freqs, delta, x) ? 1 : 0;
        const double bound = std::pow(delta / (2 * std::numbers::pi), static_cast<double>(d)) * static_cast<double>(g.order());
        count_mismatch += direct != c.actual ? 1 : 0;
        fails += (!c.pass || static_cast<double>(direct) < bound) ? 1 : 0;
    }
    report(3, fails == 0 && count_mismatch == 0,
           fmt("1000 descriptors, %.0f bound failures, %.0f size mismatches", fails, count_mismatch));
}

void criterion_4()
{
    std::mt19937_64 gen(4004);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int fails = 0;
    std::uint64_t total = 0;
    for (int i = 0; i < 200; ++i) {
        const auto n = next_prime(2 + gen() % 4999);
        if (n > 5000) {
            --i;
            continue;
        }
        const auto g = GroupSpec::cyclic(n);
        const auto d = 1 + gen() % 6;
        std::vector<Index> freqs;
        for (std::uint64_t j = 0; j < d; ++j)
            freqs.push_back(gen() % n);
        const double delta = 2.0 * (1.0 - unit(gen));
        const auto w = find_ap_in_bohr(BohrDescriptor(g, freqs, delta));
        const auto guarantee = static_cast<std::uint64_t>(
            std::floor(delta * std::pow(static_cast<double>(n), 1.0 / static_cast<double>(d)) / (2 * std::numbers::pi)));
        bool ok = w.length >= std::max<std::uint64_t>(1, guarantee) && w.length <= n;
        for (std::uint64_t k = 0; ok && k < w.length; ++k) {
            const auto x = static_cast<Index>((static_cast<unsigned __int128>(w.base) + static_cast<unsigned __int128>(k) * static_cast<std::uint64_t>(w.step)) % n);
            ok = in_bohr(g, freqs, delta, x);
        }
        total += w.length;
        fails += ok ? 0 : 1;
    }
    report(4, fails == 0, fmt("200 descriptors, %.0f failures, mean length %.1f", fails, static_cast<double>(total) / 200.0));
}

void criterion_5()
{
    const auto t0 = Clock::now();
    double worst = 0;
    bool ok = true;
    std::string detail;
    std::uint64_t seed = 5005;
    for (std::uint64_t n : {64, 101}) {
        const auto g = GroupSpec::cyclic(n);
        std::mt19937_64 gen(seed++);
        const auto a = random_subset(g, 0.5, gen);
        const auto b = random_subset(g, 0.5, gen);
        const auto f = convolve(GroupFunction(g, indicator_values(g, a)), GroupFunction(g, indicator_values(g, b)));
        for (double p : {2.0, 4.0})
            for (double eps : {0.25, 0.4}) {
                const auto r = measure_failure_rate(SamplingTask::fourier(f, p, eps), 500, seed++);
                worst = std::max(worst, r.rate);
                ok = ok && r.rate <= 0.05;
            }
    }
    const double secs = seconds_since(t0);
    report(5, ok && secs < 120, fmt("8 configurations x 500 trials, worst failure rate %.3f, %.1fs", worst, secs));
}

void criterion_6()
{
    const auto g = GroupSpec::cyclic(199);
    int pass = 0, contained = 0;
    for (int i = 0; i < 100; ++i) {
        std::mt19937_64 gen(6000 + static_cast<std::uint64_t>(i));
        const auto av = indicator_values(g, random_subset(g, 0.5, gen));
        const auto bv = indicator_values(g, random_subset(g, 0.5, gen));
        const GroupFunction f(g, naive_convolution(g, av, bv));
        const auto r = almost_period_bohr(f, 2.0, 0.4, derive_seed(66, static_cast<std::uint64_t>(i)), {});
        double spectral = 0;
        for (auto z : naive_dft(g, f.values()))
            spectral += std::abs(z);
        const double threshold = 0.4 * spectral * (1 + 1e-9);
        bool all_close = true;
        for (auto t : r.T.members())
            all_close = all_close && direct_translate_distance(g, f.values(), t, 2.0) <= threshold;
        if (r.pass) {
            ++pass;
            contained += all_close ? 1 : 0;
        }
    }
    report(6, pass >= 90 && contained == pass,
           fmt("%.0f/100 verified, %.0f/%.0f contained in the brute-force set", pass, contained, pass));
}

bool brute_iso(const std::map<std::int64_t, std::int64_t> &lift, const IntSet &a, const IntSet &b, std::int64_t n)
{
    // Two-term sums from A' and two from B': equal sums must match modulo n and vice versa.
    std::map<std::int64_t, std::int64_t> sum_to_image;
    std::map<std::int64_t, std::int64_t> image_to_sum;
    for (auto a1 : a.elements())
        for (auto a2 : a.elements())
            for (auto b1 : b.elements())
                for (auto b2 : b.elements()) {
                    const auto s = a1 + a2 + b1 + b2;
                    const auto im = mod_floor(lift.at(a1) + lift.at(a2) + lift.at(b1) + lift.at(b2), n);
                    const auto [i1, new1] = sum_to_image.emplace(s, im);
                    const auto [i2, new2] = image_to_sum.emplace(im, s);
                    if (i1->second != im || i2->second != s)
                        return false;
                }
    return true;
}

void criterion_7()
{
    std::mt19937_64 gen(7007);
    int fails = 0;
    for (int i = 0; i < 100; ++i) {
        auto draw = [&] {
            std::set<std::int64_t> s;
            const auto size = 1 + gen() % 10;
            while (s.size() < size)
                s.insert(static_cast<std::int64_t>(gen() % 60) - 20);
            return IntSet(std::vector<std::int64_t>(s.begin(), s.end()));
        };
        const auto a = draw();
        const auto b = draw();
        std::set<std::int64_t> d;
        for (auto a1 : a.elements())
            for (auto a2 : a.elements())
                for (auto a3 : a.elements())
                    for (auto a4 : a.elements())
                        d.insert(a1 + a2 - a3 - a4);
        std::set<std::int64_t> dd;
        std::set<std::int64_t> bb;
        for (auto b1 : b.elements())
            for (auto b2 : b.elements())
                for (auto b3 : b.elements())
                    for (auto b4 : b.elements())
                        bb.insert(b1 + b2 - b3 - b4);
        for (auto x : d)
            for (auto y : bb)
                dd.insert(x + y);
        const auto n = next_prime(dd.size());
        const auto cert = embed_pair(a, b, 2, n);
        bool ok = cert.verified && cert.check.exhaustive;
        for (std::size_t s = 0; s < 2; ++s) {
            const auto &sizes = cert.band_sizes.at(s);
            const auto &orig = s == 0 ? a : b;
            const auto &kept = cert.subsets.at(s);
            std::size_t sum = 0, mx = 0;
            for (auto c : sizes) {
                sum += c;
                mx = std::max(mx, c);
            }
            ok = ok && sizes.size() == 4 && sum == orig.size() && kept.size() == mx && kept.size() * 4 >= orig.size();
            for (auto x : kept.elements())
                ok = ok && std::binary_search(orig.elements().begin(), orig.elements().end(), x);
        }
        ok = ok && cert.modulus == n && brute_iso(cert.lift, cert.a_prime(), cert.b_prime(), static_cast<std::int64_t>(n));
        fails += ok ? 0 : 1;
    }
    report(7, fails == 0, fmt("100 instances, %.0f failures", fails));
}

void criterion_8()
{
    bool ok = true;
    std::string detail;
    for (std::int64_t n : {50, 100, 200}) {
        int verified = 0, bad = 0;
        std::uint64_t longest = 0;
        for (int i = 0; i < 50; ++i) {
            std::mt19937_64 gen(8000 + static_cast<std::uint64_t>(n) * 100 + static_cast<std::uint64_t>(i));
            std::uniform_real_distribution<double> dens(0.4, 0.9);
            auto draw = [&] {
                std::bernoulli_distribution coin(dens(gen));
                std::vector<std::int64_t> v;
                for (std::int64_t x = 1; x <= n; ++x)
                    if (coin(gen))
                        v.push_back(x);
                if (v.empty())
                    v.push_back(1);
                return IntSet(v);
            };
            const auto a = draw();
            const auto b = draw();
            try {
                const auto r = find_progression_dense(a, b, static_cast<std::uint64_t>(n),
                                                      derive_seed(88, static_cast<std::uint64_t>(i)), {});
                const auto s = naive_sumset(a, b);
                const bool member = witness_in_sumset(r.witness, s);
                const bool dominated = r.witness.length <= naive_longest_ap(s);
                if (r.witness.verified && member && dominated)
                    ++verified;
                if (r.witness.verified && !(member && dominated))
                    ++bad;
                longest = std::max(longest, r.witness.length);
            } catch (const NotFound &) {
            }
        }
        ok = ok && verified >= 45 && bad == 0;
        detail += fmt("N=%.0f: %.0f/50 (max length %.0f, %.0f bad); ", static_cast<double>(n), verified,
                      static_cast<double>(longest), bad);
    }
    report(8, ok, detail);
}

bool dissociated_direct(const GroupSpec &g, const std::vector<Index> &basis)
{
    // No nontrivial {-1,0,1} combination sums to zero.
    const auto d = basis.size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < d; ++i)
        total *= 3;
    for (std::uint64_t code = 1; code < total; ++code) {
        Index acc = 0;
        auto c = code;
        for (std::size_t i = 0; i < d; ++i, c /= 3) {
            if (c % 3 == 1)
                acc = g.add(acc, basis[i]);
            else if (c % 3 == 2)
                acc = g.sub(acc, basis[i]);
        }
        if (acc == 0)
            return false;
    }
    return true;
}

void criterion_9()
{
    const auto g = GroupSpec::cyclic(101);
    int certs = 0, inequality = 0;
    for (int i = 0; i < 50; ++i) {
        std::mt19937_64 gen(9000 + static_cast<std::uint64_t>(i));
        const auto av = random_subset(g, 0.4, gen);
        const ElementSet a(g, av);
        const double kb = static_cast<double>(group_sumset(a, a).size()) / static_cast<double>(a.size());
        const auto r = bootstrap_strong_lp(a, a, 2.0, 1.0 / std::sqrt(kb), std::nullopt,
                                           derive_seed(99, static_cast<std::uint64_t>(i)), {});
        const bool cert_ok = r.certificates_ok() && dissociated_direct(g, r.chang.basis);
        certs += cert_ok ? 1 : 0;
        const auto f = naive_convolution(g, indicator_values(g, av, static_cast<double>(g.order()) / static_cast<double>(av.size())),
                                         indicator_values(g, av));
        const double threshold = r.periodicity.epsilon * r.periodicity.reference * (1 + 1e-9);
        bool holds = true;
        for (auto t : r.periodicity.T.members())
            holds = holds && direct_translate_distance(g, f, t, 2.0) <= threshold;
        inequality += holds ? 1 : 0;
    }
    report(9, certs == 50 && inequality >= 45,
           fmt("certificates %.0f/50, inequality on all of T %.0f/50", certs, inequality));
}

void criterion_10()
{
    int verified = 0, bad = 0, errors = 0;
    std::uint64_t longest = 0;
    for (int i = 0; i < 50; ++i) {
        std::mt19937_64 gen(10000 + static_cast<std::uint64_t>(i));
        IntSet a{0};
        for (;;) {
            std::set<std::int64_t> s;
            while (s.size() < 30)
                s.insert(1 + static_cast<std::int64_t>(gen() % 60));
            a = IntSet(std::vector<std::int64_t>(s.begin(), s.end()));
            if (naive_sumset(a, a).size() <= 4 * a.size())
                break;
        }
        try {
            const auto r = find_progression_small_doubling(a, a, derive_seed(1010, static_cast<std::uint64_t>(i)), {});
            const auto s = naive_sumset(a, a);
            const bool member = witness_in_sumset(r.witness, s);
            if (r.witness.verified && member)
                ++verified;
            if (r.witness.verified && !member)
                ++bad;
            longest = std::max(longest, r.witness.length);
        } catch (const Error &) {
            ++errors;
        }
    }
    report(10, verified >= 40 && bad == 0,
           fmt("%.0f/50 verified, %.0f bad, %.0f errors, max length %.0f", verified, bad, errors,
               static_cast<double>(longest)));
}

void criterion_11()
{
    int false_cyclic = 0, runs_ok = 0;
    {
        const auto g = GroupSpec::cyclic(101);
        for (int i = 0; i < 50; ++i) {
            std::mt19937_64 gen(11000 + static_cast<std::uint64_t>(i));
            const auto av = random_subset(g, 0.45, gen);
            const auto r = bogolyubov_bohr(ElementSet(g, av), derive_seed(111, static_cast<std::uint64_t>(i)), {});
            std::set<Index> two;
            for (auto x : av)
                for (auto y : av)
                    two.insert(g.add(x, y));
            std::set<Index> target;
            for (auto x : two)
                for (auto y : two)
                    target.insert(g.sub(x, y));
            int bad = 0;
            for (auto t : r.bootstrap.periodicity.T.members())
                bad += target.count(t) ? 0 : 1;
            false_cyclic += bad;
            runs_ok += bad == 0 ? 1 : 0;
        }
    }
    int false_sub = 0, subset_ok = 0;
    {
        const auto g = GroupSpec::vector(2, 8);
        for (int i = 0; i < 50; ++i) {
            std::mt19937_64 gen(11500 + static_cast<std::uint64_t>(i));
            std::vector<Index> basis;
            std::set<Index> span{0};
            while (basis.size() < 5) {
                const Index v = gen() % g.order();
                if (span.count(v))
                    continue;
                basis.push_back(v);
                std::set<Index> next = span;
                for (auto s : span)
                    next.insert(s ^ v);
                span = std::move(next);
            }
            const ElementSet a(g, std::vector<Index>(span.begin(), span.end()));
            const auto r = bogolyubov_bohr(a, derive_seed(112, static_cast<std::uint64_t>(i)), {});
            int bad = 0;
            bool inside = true;
            for (auto t : r.bootstrap.periodicity.T.members()) {
                // A is a subgroup, so 2A-2A = A.
                bad += span.count(t) ? 0 : 1;
                inside = inside && span.count(t);
            }
            false_sub += bad;
            subset_ok += inside ? 1 : 0;
        }
    }
    report(11, false_cyclic == 0 && false_sub == 0 && subset_ok == 50,
           fmt("cyclic(101): %.0f/50 clean; F_2^8 subspace: T inside A %.0f/50; false containments %.0f", runs_ok,
               subset_ok, false_cyclic + false_sub));
}

void criterion_12()
{
    const std::vector<std::vector<std::string>> manifests{
        {"--seed", "7", "find-ap", "dense", "--N", "60", "--A", "[1,2,4,7,8,11,15,20,22,23,30,31,40,41,50,59]",
         "--B", "[3,5,6,9,10,12,14,18,25,27,33,35,44,48,52,57]"},
        {"--seed", "3", "almost-periods", "--group", "zN:61", "--A", "[1,2,3,5,8,13,21,34,55]", "--B",
         "[0,4,9,16,25,36,49]", "--eps", "0.4"},
        {"--seed", "11", "sample", "--group", "zN:64", "--A", "[1,2,3,9,20,33]", "--eps", "0.25"},
        {"bogolyubov", "--group", "zN:101", "--A", "[1,4,9,16,25,36,49,64,81,100,20,44,70]"},
        {"experiment", "--spec",
         R"({"pipeline":"dense","trials":8,"seed":4,"generator":{"kind":"interval","N":50,"density_min":0.4,"density_max":0.9}})"},
        {"experiment", "--spec",
         R"({"pipeline":"almost-periods","trials":8,"seed":9,"generator":{"kind":"group","group":"zN:97","density":0.5}})"},
        {"bounds", "--alpha", "0.5", "--beta", "0.5", "--N", "1e20", "--c", "1"},
    };
    int same = 0;
    for (const auto &args : manifests) {
        const auto first = cli::run(args);
        const auto second = cli::run(args);
        const auto replayed = cli::run(first.report["manifest"]["args"].get<std::vector<std::string>>());
        const auto a = cli::without_timestamp(first.report).dump();
        const bool ok = first.code == second.code && a == cli::without_timestamp(second.report).dump() &&
                        a == cli::without_timestamp(replayed.report).dump();
        same += ok ? 1 : 0;
    }
    report(12, same == static_cast<int>(manifests.size()),
           fmt("%.0f/%.0f manifests reproduce identical reports", same, static_cast<double>(manifests.size())));
}

} // namespace

int main()
{
    const std::vector<std::function<void()>> criteria{criterion_1, criterion_2,  criterion_3,  criterion_4,
                                                      criterion_5, criterion_6,  criterion_7,  criterion_8,
                                                      criterion_9, criterion_10, criterion_11, criterion_12};
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i]();
        } catch (const std::exception &e) {
            report(static_cast<int>(i + 1), false, std::string("exception: ") + e.what());
        }
    }
    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
