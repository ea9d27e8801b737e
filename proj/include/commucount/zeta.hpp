#pragma once

#include <gmpxx.h>

namespace commucount {

using HighReal = mpf_class;

/// Working precision for HighReal values, in bits (about 60 decimal digits).
inline constexpr unsigned long kHighPrecisionBits = 200;

/// zeta(s) for integer s >= 2: direct summation of the first terms followed by
/// an Euler-Maclaurin tail with an explicit remainder bound below 1e-40.
HighReal zeta(unsigned s);

struct AsymptoticConstants {
    HighReal zeta2;
    HighReal zeta3;
    /// 10 zeta(2) / (3 zeta(3)), the leading constant of c_2(N) / (2N)^5.
    HighReal k2;
    /// 16 / zeta(2), the leading constant of r_N(0) / (N^2 log N).
    HighReal r0_constant;
    /// zeta(2)/zeta(3) - 1, the limit of sum_{u>=2} phi(u)/u^3.
    HighReal totient_cube_sum;
};

/// Evaluated once per process.
const AsymptoticConstants& constants();

}  // namespace commucount
