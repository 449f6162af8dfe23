#include "doctest.h"

#include "sumsetlab/error.hpp"
#include "sumsetlab/freiman.hpp"
#include "sumsetlab/numtheory.hpp"
#include "sumsetlab/random.hpp"

#include <cmath>
#include <functional>
#include <set>

using namespace sumsetlab;

namespace {

std::set<std::int64_t> naive_sumset(const std::vector<std::int64_t> &x, const std::vector<std::int64_t> &y)
{
    std::set<std::int64_t> out;
    for (auto a : x)
        for (auto b : y)
            out.insert(a + b);
    return out;
}

std::vector<std::int64_t> to_vec(const std::set<std::int64_t> &s) { return {s.begin(), s.end()}; }

IntSet random_intset(std::size_t size, std::int64_t range, Rng &rng)
{
    const auto picks = rng.choose(static_cast<std::uint64_t>(range), size);
    return IntSet(std::vector<std::int64_t>(picks.begin(), picks.end()));
}

// xi is admissible iff xi t stays at distance >= 1 from every multiple of N.
bool xi_admissible(const Rational &xi, const IntSet &d, std::int64_t n)
{
    for (auto t : d.elements()) {
        if (t == 0)
            continue;
        const Rational v = xi * Rational(t);
        const std::int64_t q = floor_div(v.num(), v.den() * n);
        const Rational r = v - Rational(q * n);
        if (r < Rational(1) || r > Rational(n - 1))
            return false;
    }
    return true;
}

// Enumerates every pair of tuples directly.
bool brute_iso(const std::map<std::int64_t, std::int64_t> &lift, const IntSet &a, const IntSet &b, unsigned k,
               std::int64_t n)
{
    std::vector<std::pair<std::int64_t, std::int64_t>> all; // (sum, lifted)
    std::vector<std::int64_t> pool;
    std::function<void(unsigned, std::int64_t, std::int64_t)> rec = [&](unsigned depth, std::int64_t s, std::int64_t l) {
        if (depth == 2 * k) {
            all.emplace_back(s, l);
            return;
        }
        const auto &set = depth < k ? a : b;
        for (auto x : set.elements())
            rec(depth + 1, s + x, l + lift.at(x));
    };
    rec(0, 0, 0);
    for (const auto &[s1, l1] : all)
        for (const auto &[s2, l2] : all)
            if ((s1 == s2) != (mod_floor(l1 - l2, n) == 0))
                return false;
    return true;
}

} // namespace

TEST_SUITE("freiman") {

TEST_CASE("rationals")
{
    const Rational a(6, -4);
    CHECK(a.num() == -3);
    CHECK(a.den() == 2);
    CHECK(a + Rational(1, 2) == Rational(-1));
    CHECK(a * Rational(2, 3) == Rational(-1));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(7, 2).floor_times(3) == 10);
    CHECK(Rational(-7, 2).floor_times(3) == -11);
    CHECK(Rational(7, 2).frac_times_num(3) == 1);
    CHECK(Rational(-7, 2).frac_times_num(3) == 1);
    CHECK_THROWS_AS(Rational(1, 0), InvalidArgument);
}

TEST_CASE("int sets")
{
    const IntSet s{5, 1, 3, 1};
    CHECK(s.elements() == std::vector<std::int64_t>{1, 3, 5});
    CHECK(s.negated().elements() == std::vector<std::int64_t>{-5, -3, -1});
    CHECK_THROWS_AS(IntSet(std::vector<std::int64_t>{}), InvalidArgument);
}

TEST_CASE("sumsets and iterated combinations")
{
    CHECK(sumset(IntSet{0}, IntSet{0}) == IntSet{0});
    CHECK(iterated_combination(IntSet{0, 1}, IntSet{0, 1}, 2) == IntSet::interval(-4, 4));
    CHECK(iterated_combination(IntSet{0, 1}, IntSet{0, 2}, 2) == IntSet::interval(-6, 6));

    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = random_intset(1 + rng.below(30), 200, rng);
        const auto y = random_intset(1 + rng.below(30), 200, rng);
        CHECK(sumset(x, y).elements() == to_vec(naive_sumset(x.elements(), y.elements())));
        CHECK(difference(x, y).elements() == to_vec(naive_sumset(x.elements(), y.negated().elements())));
    }
    const IntSet far{0, std::int64_t{1} << 40};
    CHECK(sumset(far, far).elements() == std::vector<std::int64_t>{0, std::int64_t{1} << 40, std::int64_t{1} << 41});
    CHECK_THROWS_AS(sumset(IntSet::interval(0, 99), IntSet::interval(0, 99), 1000), CapExceeded);
}

TEST_CASE("doubling statistics")
{
    const auto a = IntSet::interval(0, 9);
    const auto s = doubling_stats(a, a);
    CHECK(s.sumset_size == 19);
    CHECK(s.k_a == Rational(19, 10));
    CHECK(s.k_b.to_double() == doctest::Approx(1.9));
    CHECK(doubling_stats(IntSet{0}, IntSet{3, 8, 11}).k_b == Rational(1));

    Rng rng(5);
    const auto x = random_intset(20, 101, rng);
    const auto y = random_intset(20, 101, rng);
    const auto st = doubling_stats(x, y);
    const auto n = static_cast<std::int64_t>(naive_sumset(x.elements(), y.elements()).size());
    CHECK(st.sumset_size == static_cast<std::uint64_t>(n));
    CHECK(st.k_a == Rational(n, 20));
}

TEST_CASE("Plunnecke quantities")
{
    const auto q = plunnecke_quantities(IntSet{0, 1}, IntSet{0, 1});
    CHECK(q.actual == 9);
    CHECK(q.k == Rational(3, 2));
    CHECK(q.bound == doctest::Approx(std::pow(1.5, 11) * 2));
    CHECK(q.pass);

    const auto ap = plunnecke_quantities(IntSet::interval(0, 9), IntSet::interval(0, 9));
    CHECK(ap.actual == 73);
    CHECK(ap.pass);

    const auto b = IntSet{0, 3, 4, 9, 20};
    const auto single = plunnecke_quantities(IntSet{0}, b);
    CHECK(single.actual == iterated_combination(std::span<const IntSet>(&b, 1), 2).size());
    CHECK(single.pass);

    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = random_intset(2 + rng.below(12), 60, rng);
        const auto y = random_intset(2 + rng.below(12), 60, rng);
        CHECK(plunnecke_quantities(x, y).pass);
    }
}

TEST_CASE("xi selection")
{
    const auto trivial = choose_xi(IntSet{0}, IntSet{0}, 2, 11);
    CHECK(trivial.xi == Rational(11, 2));
    CHECK(trivial.interval_count == 0);

    const auto c = choose_xi(IntSet{0, 1}, IntSet{0, 1}, 2, 11);
    CHECK(xi_admissible(c.xi, IntSet::interval(-4, 4), 11));
    CHECK(c.excluded_total == Rational(8));
    CHECK(c.excluded_union <= 8.0 + 1e-12);

    const auto c2 = choose_xi(IntSet{0, 1}, IntSet{0, 2}, 2, 13);
    CHECK(xi_admissible(c2.xi, IntSet::interval(-6, 6), 13));
    CHECK(c2.excluded_total == Rational(12));

    CHECK_THROWS_AS(choose_xi(IntSet{0, 1}, IntSet{0, 1}, 2, 8), HypothesisViolation);
    CHECK_THROWS_AS(choose_xi(IntSet{0, 1}, IntSet{0, 1}, 1, 20), InvalidArgument);
}

TEST_CASE("xi selection on random sets")
{
    Rng rng(9);
    for (int trial = 0; trial < 25; ++trial) {
        const auto a = random_intset(1 + rng.below(8), 40, rng);
        const auto b = random_intset(1 + rng.below(8), 40, rng);
        const auto d = iterated_combination(a, b, 2);
        const auto n = d.size() + rng.below(20);
        const auto c = choose_xi(d, n);
        CAPTURE(c.xi.to_string());
        CHECK(xi_admissible(c.xi, d, static_cast<std::int64_t>(n)));
        CHECK(c.excluded_total == Rational(static_cast<std::int64_t>(d.size()) - 1));
        CHECK(c.excluded_union <= static_cast<double>(d.size() - 1) + 1e-9);
        CHECK(Rational(0) <= c.xi);
        CHECK(c.xi <= Rational(static_cast<std::int64_t>(n)));
    }
}

TEST_CASE("embedding examples")
{
    const auto zero = embed_pair(IntSet{0}, IntSet{0}, 2, 5);
    CHECK(zero.verified);
    CHECK(zero.phi.at(0) == 0);

    const auto small = embed_pair(IntSet{0, 1}, IntSet{0, 1}, 2, 11);
    CHECK(small.a_prime().size() >= 1);
    CHECK(small.verified);
    CHECK(small.check.exhaustive);
    CHECK(brute_iso(small.lift, small.a_prime(), small.b_prime(), 2, 11));

    const auto mid = embed_pair(IntSet::interval(0, 7), IntSet::interval(0, 7), 2, 97);
    CHECK(mid.a_prime().size() >= 2);
    CHECK(mid.b_prime().size() >= 2);
    CHECK(mid.verified);
    CHECK(brute_iso(mid.lift, mid.a_prime(), mid.b_prime(), 2, 97));
}

TEST_CASE("certificate invariants on random sets")
{
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = random_intset(1 + rng.below(10), 50, rng);
        const auto b = random_intset(1 + rng.below(10), 50, rng);
        const unsigned k = 2 + static_cast<unsigned>(rng.below(2));
        const auto d = iterated_combination(a, b, k);
        const auto n = d.size() + rng.below(10);
        const auto cert = embed_pair(a, b, k, n);
        CAPTURE(cert.choice.xi.to_string());
        CHECK(cert.a_prime().size() * 2 * k >= a.size());
        CHECK(cert.b_prime().size() * 2 * k >= b.size());
        REQUIRE(cert.verified);
        CHECK(cert.check.forward_integer);
        CHECK(cert.check.well_defined);
        for (auto x : cert.a_prime().elements()) {
            CHECK(a.contains(x));
            CHECK(cert.lift.at(x) == cert.choice.xi.floor_times(x));
            const auto frac = cert.choice.xi.frac_times_num(x);
            // (r-1)/2k <= {xi x} < r/2k
            const auto r = static_cast<std::int64_t>(cert.band_r());
            CHECK(static_cast<__int128>(r - 1) * cert.choice.xi.den() <= static_cast<__int128>(frac) * 2 * k);
            CHECK(static_cast<__int128>(frac) * 2 * k < static_cast<__int128>(r) * cert.choice.xi.den());
        }
        if (k == 2 && a.size() * b.size() <= 40)
            CHECK(brute_iso(cert.lift, cert.a_prime(), cert.b_prime(), 2, static_cast<std::int64_t>(n)));
        if (k == 2) {
            std::set<std::uint64_t> image;
            for (auto x : cert.a_prime().elements())
                for (auto y : cert.b_prime().elements())
                    image.insert((cert.phi.at(x) + cert.phi.at(y)) % n);
            CHECK(image.size() == sumset(cert.a_prime(), cert.b_prime()).size());
        }
    }
}

TEST_CASE("k-isomorphism verification")
{
    const IntSet a{0, 3, 7};
    const IntSet b{1, 2, 10};
    std::map<std::int64_t, std::int64_t> identity;
    for (auto x : {0, 1, 2, 3, 7, 10})
        identity[x] = x;
    const auto ok = verify_k_isomorphism(identity, a, b, 2, 1000);
    CHECK(ok.ok);
    CHECK(ok.forward_integer);
    CHECK(ok.exhaustive);
    CHECK(ok.tuple_count == doctest::Approx(std::pow(81.0, 2)));

    std::map<std::int64_t, std::int64_t> linear;
    for (const auto &[x, v] : identity)
        linear[x] = 37 * v;
    CHECK(verify_k_isomorphism(linear, a, b, 3, 1'000'003).ok);

    // Wraparound: identity into a modulus below the spread of 2A+2B breaks injectivity.
    const auto wrapped = verify_k_isomorphism(identity, a, b, 2, 9);
    CHECK_FALSE(wrapped.ok);
    REQUIRE(wrapped.counterexample);
    CHECK(wrapped.counterexample->direction == "backward");

    const IntSet s{0, 1};
    std::map<std::int64_t, std::int64_t> corrupted{{0, 1}, {1, 1}};
    const auto bad = verify_k_isomorphism(corrupted, s, s, 2, 101);
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.counterexample);
    const auto &cx = *bad.counterexample;
    std::int64_t ls = 0, rs = 0, ll = 0, rl = 0;
    for (const auto &g : cx.lhs)
        for (auto x : g) {
            ls += x;
            ll += corrupted.at(x);
        }
    for (const auto &g : cx.rhs)
        for (auto x : g) {
            rs += x;
            rl += corrupted.at(x);
        }
    CHECK(ls != rs);
    CHECK(mod_floor(ll - rl, 101) == 0);
    CHECK_FALSE(brute_iso(corrupted, s, s, 2, 101));

    CHECK_THROWS_AS(verify_k_isomorphism(std::map<std::int64_t, std::int64_t>{{0, 0}}, s, s, 2, 5), InvalidArgument);
}

TEST_CASE("sampled fallback")
{
    const auto a = IntSet::interval(0, 30);
    std::map<std::int64_t, std::int64_t> identity;
    for (auto x : a.elements())
        identity[x] = x;
    const auto r = verify_k_isomorphism(identity, a, a, 2, 100000, 50, 1);
    CHECK_FALSE(r.exhaustive);
    CHECK(r.ok);
}

TEST_CASE("embedding several sets")
{
    const std::vector<IntSet> sets{IntSet{0, 1, 5}, IntSet{2, 3}, IntSet{0, 4, 9, 11}};
    const auto d = iterated_combination(sets, 2);
    const auto cert = embed_many(sets, 2, d.size() + 3);
    CHECK(cert.verified);
    REQUIRE(cert.subsets.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(cert.subsets[i].size() * 3 * 2 >= sets[i].size());
    CHECK(cert.band_sizes[0].size() == 6);
}

} // TEST_SUITE
