#include <doctest.h>

#include <map>
#include <set>

#include "commucount/core.hpp"

using namespace commucount;

TEST_CASE("gcd") {
    CHECK(gcd(0, 0) == 0);
    CHECK(gcd(12, 18) == 6);
    CHECK(gcd(-4, 6) == 2);
    CHECK(gcd(7, 0) == 7);
}

TEST_CASE("totient") {
    CHECK(totient(1) == 1);
    CHECK(totient(6) == 2);
    CHECK(totient(97) == 96);
    CHECK_THROWS_AS(totient(0), InvalidInput);
    const auto table = totient_table(1000);
    for (std::int64_t u = 1; u <= 1000; ++u) CHECK(table[static_cast<std::size_t>(u)] == totient(u));
}

TEST_CASE("sum of 2v over v coprime to u equals u phi(u)") {
    const auto phi = totient_table(10000);
    std::int64_t u6 = 0;
    for (std::int64_t v = 1; v < 6; ++v)
        if (gcd(v, 6) == 1) u6 += 2 * v;
    CHECK(u6 == 12);
    bool all = true;
    for (std::int64_t u = 2; u <= 10000; ++u) {
        std::int64_t s = 0;
        for (std::int64_t v = 1; v < u; ++v)
            if (gcd(u, v) == 1) s += 2 * v;
        all = all && s == u * phi[static_cast<std::size_t>(u)];
    }
    CHECK(all);
}

TEST_CASE("divisor_tau") {
    CHECK(divisor_tau(1) == 1);
    CHECK(divisor_tau(12) == 6);
    CHECK(divisor_tau(7) == 2);
    CHECK(divisor_tau(720720) == 240);
    CHECK_THROWS_AS(divisor_tau(0), InvalidInput);
}

TEST_CASE("is_prime and smallest prime factors") {
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(2));
    CHECK(is_prime(999983));
    CHECK_FALSE(is_prime(999981));
    const auto spf = smallest_prime_factors(100);
    CHECK(spf[97] == 97);
    CHECK(spf[91] == 7);
    CHECK(spf[64] == 2);
}

TEST_CASE("primitive directions at N = 1 and N = 2") {
    const auto d1 = primitive_directions(BoxParam(1));
    std::set<std::pair<std::int64_t, std::int64_t>> s1;
    for (const auto& p : d1) s1.insert({p.u(), p.v()});
    CHECK(s1 == std::set<std::pair<std::int64_t, std::int64_t>>{{1, 0}, {0, 1}, {1, 1}, {1, -1}});
    const auto d2 = primitive_directions(BoxParam(2));
    CHECK(d2.size() == 8);
    std::set<std::pair<std::int64_t, std::int64_t>> s2;
    for (const auto& p : d2) s2.insert({p.u(), p.v()});
    for (auto uv : {std::pair<std::int64_t, std::int64_t>{1, 2}, {1, -2}, {2, 1}, {2, -1}}) CHECK(s2.count(uv) == 1);
    for (const auto& p : d2) CHECK(gcd(p.u(), p.v()) == 1);
    CHECK(primitive_directions(BoxParam(0)).empty());
}

TEST_CASE("canonical direction form") {
    const auto p = PrimitiveDirection::make(-2, 3);
    CHECK(p.u() == 2);
    CHECK(p.v() == -3);
    CHECK(p.m() == 3);
    CHECK(PrimitiveDirection::make(0, -1) == PrimitiveDirection::make(0, 1));
    CHECK(PrimitiveDirection::make(-1, 0).is_axis());
    CHECK_THROWS_AS(PrimitiveDirection::make(2, 4), InvalidInput);
    CHECK_THROWS_AS(PrimitiveDirection::make(0, 0), InvalidInput);
}

TEST_CASE("multiples of canonical directions partition the nonzero box points") {
    for (std::int64_t n : {1, 2, 7, 50}) {
        const std::int64_t side = 2 * n + 1;
        std::vector<int> hits(static_cast<std::size_t>(side * side), 0);
        for (const auto& p : primitive_directions(BoxParam(n))) {
            for (std::int64_t lambda = -n; lambda <= n; ++lambda) {
                if (lambda == 0) continue;
                const std::int64_t x = lambda * p.u(), y = lambda * p.v();
                if (std::abs(x) > n || std::abs(y) > n) continue;
                ++hits[static_cast<std::size_t>((x + n) * side + (y + n))];
            }
        }
        bool exact = true;
        for (std::int64_t x = -n; x <= n; ++x)
            for (std::int64_t y = -n; y <= n; ++y)
                exact = exact && hits[static_cast<std::size_t>((x + n) * side + (y + n))] == ((x || y) ? 1 : 0);
        CHECK_MESSAGE(exact, "N = " << n);
    }
}

TEST_CASE("product distribution") {
    const auto d1 = product_distribution(BoxParam(1));
    CHECK(d1.counts == std::vector<std::pair<std::int64_t, std::uint64_t>>{{-1, 2}, {0, 5}, {1, 2}});
    const auto d0 = product_distribution(BoxParam(0));
    CHECK(d0.counts == std::vector<std::pair<std::int64_t, std::uint64_t>>{{0, 1}});
    CHECK(product_distribution(BoxParam(2)).total() == 25);
    for (std::int64_t n : {3, 17, 200}) {
        const auto d = product_distribution(BoxParam(n));
        bool symmetric = true;
        for (const auto& [m, c] : d.counts) symmetric = symmetric && d.at(-m) == c;
        CHECK(symmetric);
        CHECK(d.total() == static_cast<std::uint64_t>((2 * n + 1) * (2 * n + 1)));
    }
}

TEST_CASE("box parameter and matrices") {
    CHECK_THROWS_AS(BoxParam(-1), InvalidInput);
    CHECK(BoxParam(3).side() == 7);
    CHECK(BoxParam(3).contains(-3));
    CHECK_FALSE(BoxParam(3).contains(4));
    const IntMatrix a(2, {0, 1, 0, 0}), b(2, {0, 0, 1, 0});
    CHECK(a * b - b * a == IntMatrix(2, {1, 0, 0, -1}));
    CHECK(a.label(2) == 1);
    CHECK_THROWS_AS(a.label(5), IndexOutOfRange);
    CHECK_THROWS_AS(IntMatrix(2, {1, 2, 3}), DimensionMismatch);
    CHECK(IntMatrix::identity(3) * IntMatrix::identity(3) == IntMatrix::identity(3));
    CHECK(IntMatrix(3).is_zero());
    CHECK(IntMatrix(2, {1, -2, 2, 0}).within(BoxParam(2)));
}

TEST_CASE("exact number plumbing") {
    const ExactCount big = parse_count("123456789012345678901234567890");
    CHECK(to_decimal(big) == "123456789012345678901234567890");
    CHECK(to_decimal(big * big * big).size() > 80);
    CHECK_THROWS_AS(parse_count("12a"), InvalidInput);
    CHECK_THROWS_AS(parse_count(""), InvalidInput);
    const u128 x = (static_cast<u128>(1) << 100) + 7;
    CHECK(to_exact(x) == ipow(2, 100) + 7);
    CHECK(to_exact(-static_cast<i128>(x)) == -(ipow(2, 100) + 7));
    const ExactRatio r = make_ratio(6, -4);
    CHECK(to_string(r) == "-3/2");
    CHECK_THROWS_AS(make_ratio(1, 0), InvalidInput);
}

TEST_CASE("work budget") {
    const WorkBudget b{1000};
    CHECK_NOTHROW(b.require(std::uint64_t{1000}, "x"));
    CHECK_THROWS_AS(b.require(std::uint64_t{1001}, "x"), BudgetExceeded);
}

TEST_CASE("parallel reduction is independent of the thread count") {
    const auto sum_with = [](unsigned threads) {
        set_thread_count(threads);
        return parallel_sum(100003, [](std::uint64_t lo, std::uint64_t hi) {
            ExactCount s = 0;
            for (std::uint64_t i = lo; i < hi; ++i) s += static_cast<unsigned long>(i * i);
            return s;
        });
    };
    const ExactCount one = sum_with(1);
    CHECK(one == sum_with(3));
    CHECK(one == sum_with(8));
    set_thread_count(1);
}
