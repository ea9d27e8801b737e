#include "commucount/padic.hpp"

namespace commucount {

namespace {

ExactCount power(std::uint64_t p, long e) {
    if (e < 0) throw InvalidInput("negative exponent");
    return ipow(ExactCount(static_cast<unsigned long>(p)), static_cast<unsigned long>(e));
}

ExactCount s_0(std::uint64_t p, unsigned m) {
    const ExactCount pp = static_cast<unsigned long>(p);
    return power(p, 4L * m - 4) * (pp + 1) * (pp * pp * pp - 1);
}

}  // namespace

unsigned valuation(std::int64_t x, const PadicParams& params) {
    const auto q = static_cast<std::int64_t>(params.q());
    std::int64_t r = x % q;
    if (r < 0) r += q;
    if (r == 0) return params.n();
    unsigned v = 0;
    const auto p = static_cast<std::int64_t>(params.p());
    while (r % p == 0) {
        r /= p;
        ++v;
    }
    return v;
}

PadicBreakdown padic_breakdown(const PadicParams& params) {
    const std::uint64_t p = params.p();
    const long n = params.n();
    const ExactCount pp = static_cast<unsigned long>(p);
    PadicBreakdown out;
    out.u0 = power(p, 4 * n - 2) * (pp * pp - 1);
    out.u1 = power(p, 4 * n - 3) * (pp * pp - 1) * (pp - 1);
    out.u2 = power(p, 4 * n - 4) * (pp * pp - 1) * (pp - 1) * (pp - 1);
    out.s_n0 = 3 * out.u0 - 3 * out.u1 + out.u2;
    return out;
}

ExactCount s_n0_formula(const PadicParams& params) { return s_0(params.p(), params.n()); }

ValuationClassCounts valuation_classes_fast(const PadicParams& params) {
    const std::uint64_t p = params.p();
    const unsigned n = params.n();
    ValuationClassCounts out{params, {}, power(p, 6L * (n / 2))};
    for (unsigned h = 0; h < (n + 1) / 2; ++h) out.classes.push_back(power(p, 6L * h) * s_0(p, n - 2 * h));
    return out;
}

ExactCount fast_padic_count(const PadicParams& params) {
    return power(params.p(), 2L * params.n()) * valuation_classes_fast(params).total();
}

ExactRatio sigma_p(std::uint64_t p) {
    if (!is_prime(p)) throw NotPrime(p);
    const ExactRatio x(1, static_cast<unsigned long>(p));
    ExactRatio out = (1 + x) / (1 - x * x) * (1 - x * x * x);
    out.canonicalize();
    return out;
}

ExactRatio theorem13_main(const PadicParams& params) {
    const unsigned half = (params.n() + 1) / 2;
    ExactRatio tail(1);
    tail -= ExactRatio(1, power(params.p(), 2L * half));
    ExactRatio out = sigma_p(params.p()) * tail;
    out.canonicalize();
    return out;
}

ExactCount degenerate_padic_count(const PadicParams& params, const WorkBudget& budget) {
    budget.require(power(params.p(), 6L * params.n()), "degenerate p-adic enumeration");
    const std::uint64_t q = params.q();
    const auto mul = [q](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>(static_cast<u128>(a) * b % q);
    };
    return parallel_sum(q, [&](std::uint64_t lo, std::uint64_t hi) {
        u128 total = 0;
        for (std::uint64_t a2 = lo; a2 < hi; ++a2)
            for (std::uint64_t b3 = 0; b3 < q; ++b3) {
                if (mul(a2, b3) != 0) continue;
                for (std::uint64_t a3 = 0; a3 < q; ++a3)
                    for (std::uint64_t b2 = 0; b2 < q; ++b2) {
                        if (mul(a3, b2) != 0) continue;
                        for (std::uint64_t a4 = 0; a4 < q; ++a4) {
                            const std::uint64_t a4b2 = mul(a4, b2), a4b3 = mul(a4, b3);
                            for (std::uint64_t b4 = 0; b4 < q; ++b4) {
                                if (mul(a2, b4) == a4b2 && mul(a3, b4) == a4b3) ++total;
                            }
                        }
                    }
            }
        return to_exact(total);
    });
}

}  // namespace commucount
