#include <doctest.h>

#include "commucount/oracle.hpp"
#include "commucount/padic.hpp"

using namespace commucount;

TEST_CASE("parameters") {
    CHECK(PadicParams(2, 10).q() == 1024);
    CHECK_THROWS_AS(PadicParams(9, 1), NotPrime);
    CHECK_THROWS_AS(PadicParams(1, 1), NotPrime);
    CHECK_THROWS_AS(PadicParams(2, 0), InvalidInput);
    CHECK_THROWS_AS(PadicParams(2, 63), InvalidInput);
    CHECK(PadicParams(2, 62).q() == (std::uint64_t{1} << 62));
}

TEST_CASE("valuation") {
    CHECK(valuation(12, PadicParams(2, 4)) == 2);
    CHECK(valuation(0, PadicParams(2, 4)) == 4);
    CHECK(valuation(8, PadicParams(2, 3)) == 3);
    CHECK(valuation(-3, PadicParams(3, 2)) == 1);
    CHECK(valuation(5, PadicParams(3, 2)) == 0);
}

TEST_CASE("S(n, 0) closed form and inclusion-exclusion") {
    CHECK(s_n0_formula(PadicParams(2, 1)) == 21);
    CHECK(s_n0_formula(PadicParams(2, 2)) == 336);
    CHECK(s_n0_formula(PadicParams(3, 1)) == 104);
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 31, 97}) {
        for (unsigned n = 1; n <= 8; ++n) {
            const PadicParams params(p, n);
            const PadicBreakdown b = padic_breakdown(params);
            CHECK(b.s_n0 == 3 * b.u0 - 3 * b.u1 + b.u2);
            CHECK(b.s_n0 == s_n0_formula(params));
            // p^(4n) (1 + 1/p)(1 - 1/p^3) as a rational is this integer.
            const ExactCount q4 = ipow(ExactCount(static_cast<unsigned long>(p)), 4UL * n);
            const ExactRatio x(1, static_cast<unsigned long>(p));
            CHECK(ExactRatio(q4) * (1 + x) * (1 - x * x * x) == ExactRatio(b.s_n0));
        }
    }
}

TEST_CASE("fast count against brute force") {
    CHECK(fast_padic_count(PadicParams(2, 1)) == 88);
    CHECK(fast_padic_count(PadicParams(2, 2)) == 6400);
    CHECK(fast_padic_count(PadicParams(3, 1)) == 945);
    for (auto [p, n] : {std::pair<std::uint64_t, unsigned>{2, 3}, {3, 2}, {5, 1}, {7, 1}}) {
        const ExactCount q2 = ipow(ExactCount(static_cast<unsigned long>(p)), 2UL * n);
        CHECK(fast_padic_count(PadicParams(p, n)) == q2 * oracle::brute_padic_solutions(p, n));
    }
}

TEST_CASE("main term and sigma_p") {
    CHECK(theorem13_main(PadicParams(2, 1)) == ExactRatio(21, 16));
    CHECK(theorem13_main(PadicParams(2, 2)) == ExactRatio(21, 16));
    CHECK(sigma_p(2) == ExactRatio(7, 4));
    CHECK(sigma_p(3) == ExactRatio(13, 9));
    CHECK_THROWS_AS(sigma_p(15), NotPrime);
    for (std::uint64_t p = 5; p <= 97; ++p) {
        if (!is_prime(p)) continue;
        CHECK(abs(sigma_p(p) - 1) <= ExactRatio(2, static_cast<unsigned long>(p)));
    }
    // The gap to the fast density is exactly p^(6 floor(n/2) - 4n).
    for (std::uint64_t p : {2, 3, 5}) {
        for (unsigned n = 1; n <= 10; ++n) {
            const PadicParams params(p, n);
            const ExactCount q6 = ipow(ExactCount(static_cast<unsigned long>(p)), 6UL * n);
            const ExactRatio gap = make_ratio(fast_padic_count(params), q6) - theorem13_main(params);
            const ExactRatio expected =
                make_ratio(ipow(ExactCount(static_cast<unsigned long>(p)), 6UL * (n / 2)),
                           ipow(ExactCount(static_cast<unsigned long>(p)), 4UL * n));
            CHECK(gap == expected);
        }
    }
}

TEST_CASE("degenerate counts") {
    CHECK(degenerate_padic_count(PadicParams(2, 1)) == 20);
    for (auto [p, n] : {std::pair<std::uint64_t, unsigned>{2, 2}, {3, 1}, {5, 1}}) {
        const std::uint64_t q = PadicParams(p, n).q();
        std::uint64_t count = 0;
        for (std::uint64_t a2 = 0; a2 < q; ++a2)
            for (std::uint64_t a3 = 0; a3 < q; ++a3)
                for (std::uint64_t a4 = 0; a4 < q; ++a4)
                    for (std::uint64_t b2 = 0; b2 < q; ++b2)
                        for (std::uint64_t b3 = 0; b3 < q; ++b3)
                            for (std::uint64_t b4 = 0; b4 < q; ++b4) {
                                if ((a2 * b3) % q || (a3 * b2) % q) continue;
                                if ((a2 * b4 + q * q - a4 * b2) % q) continue;
                                if ((a3 * b4 + q * q - a4 * b3) % q) continue;
                                ++count;
                            }
        CHECK(degenerate_padic_count(PadicParams(p, n)) == count);
    }
    CHECK_THROWS_AS(degenerate_padic_count(PadicParams(2, 3), WorkBudget{1000}), BudgetExceeded);
}

TEST_CASE("closed-form valuation classes") {
    const auto c22 = valuation_classes_fast(PadicParams(2, 2));
    REQUIRE(c22.classes.size() == 1);
    CHECK(c22.classes[0] == 336);
    CHECK(*c22.residual == 64);
    const auto c21 = valuation_classes_fast(PadicParams(2, 1));
    CHECK(c21.classes[0] == 21);
    CHECK(*c21.residual == 1);
    for (unsigned n = 1; n <= 9; ++n) {
        const PadicParams params(3, n);
        const ExactCount q2 = ipow(ExactCount(3), 2UL * n);
        CHECK(valuation_classes_fast(params).total() * q2 == fast_padic_count(params));
    }
}
