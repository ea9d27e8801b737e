#include "commucount/zeta.hpp"

#include <vector>

namespace commucount {

namespace {

constexpr unsigned kDirectTerms = 64;
constexpr unsigned kCorrectionTerms = 20;

/// B_0 .. B_limit via sum_{j<=m} C(m+1, j) B_j = 0.
std::vector<mpq_class> bernoulli(unsigned limit) {
    std::vector<mpq_class> b(limit + 1);
    b[0] = 1;
    for (unsigned m = 1; m <= limit; ++m) {
        mpq_class acc = 0;
        mpz_class binom = 1;  // C(m+1, 0)
        for (unsigned j = 0; j < m; ++j) {
            acc += binom * b[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        b[m] = -acc / (m + 1);
        b[m].canonicalize();
    }
    return b;
}

HighReal power_inverse(unsigned long base, unsigned long exp) {
    HighReal x(1, kHighPrecisionBits);
    HighReal b(base, kHighPrecisionBits);
    mpf_pow_ui(x.get_mpf_t(), b.get_mpf_t(), exp);
    return HighReal(1, kHighPrecisionBits) / x;
}

}  // namespace

HighReal zeta(unsigned s) {
    static const std::vector<mpq_class> b = bernoulli(2 * kCorrectionTerms);

    HighReal sum(0, kHighPrecisionBits);
    for (unsigned n = 1; n < kDirectTerms; ++n) sum += power_inverse(n, s);

    // Tail sum_{n >= M} n^{-s} = M^{1-s}/(s-1) + M^{-s}/2
    //   + sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * M^{-s-2k+1} + R,
    // with |R| < 1e-40 for s >= 2 at M = 64, 20 correction terms.
    const unsigned long m = kDirectTerms;
    sum += power_inverse(m, s - 1) / HighReal(s - 1, kHighPrecisionBits);
    sum += power_inverse(m, s) / HighReal(2, kHighPrecisionBits);

    mpq_class coeff = 1;  // (s)_{2k-1} / (2k)!
    for (unsigned k = 1; k <= kCorrectionTerms; ++k) {
        const unsigned j = 2 * k;
        mpq_class step = (k == 1) ? mpq_class(s, 2)
                                  : mpq_class((s + j - 3) * (s + j - 2), (j - 1) * j);
        step.canonicalize();
        coeff = (k == 1) ? step : mpq_class(coeff * step);
        mpq_class term_q = b[j] * coeff;
        HighReal term(term_q, kHighPrecisionBits);
        sum += term * power_inverse(m, s + j - 1);
    }
    return sum;
}

const AsymptoticConstants& constants() {
    static const AsymptoticConstants c = [] {
        AsymptoticConstants out{HighReal(0, kHighPrecisionBits), HighReal(0, kHighPrecisionBits),
                                HighReal(0, kHighPrecisionBits), HighReal(0, kHighPrecisionBits),
                                HighReal(0, kHighPrecisionBits)};
        out.zeta2 = zeta(2);
        out.zeta3 = zeta(3);
        out.k2 = HighReal(10, kHighPrecisionBits) * out.zeta2 / (HighReal(3, kHighPrecisionBits) * out.zeta3);
        out.r0_constant = HighReal(16, kHighPrecisionBits) / out.zeta2;
        out.totient_cube_sum = out.zeta2 / out.zeta3 - HighReal(1, kHighPrecisionBits);
        return out;
    }();
    return c;
}

}  // namespace commucount
