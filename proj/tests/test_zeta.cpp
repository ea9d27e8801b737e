#include <doctest.h>

#include <cmath>

#include "commucount/core.hpp"
#include "commucount/zeta.hpp"

using namespace commucount;

namespace {

HighReal parse(const char* digits) { return HighReal(digits, kHighPrecisionBits); }

bool close(const HighReal& a, const HighReal& b, double tol) {
    HighReal diff = a - b;
    return std::fabs(diff.get_d()) < tol;
}

}  // namespace

TEST_CASE("zeta values against 40-digit references") {
    CHECK(close(zeta(2), parse("1.644934066848226436472415166646025189219"), 1e-38));
    CHECK(close(zeta(3), parse("1.202056903159594285399738161511449990765"), 1e-38));
}

TEST_CASE("zeta(4) = (2/5) zeta(2)^2 and zeta(6) = (8/35) zeta(2)^3") {
    const HighReal z2 = zeta(2);
    CHECK(close(zeta(4), HighReal(2, kHighPrecisionBits) * z2 * z2 / HighReal(5, kHighPrecisionBits), 1e-38));
    CHECK(close(zeta(6), HighReal(8, kHighPrecisionBits) * z2 * z2 * z2 / HighReal(35, kHighPrecisionBits), 1e-38));
}

TEST_CASE("derived constants") {
    const auto& c = constants();
    CHECK(c.k2.get_d() == doctest::Approx(4.561442592067).epsilon(1e-12));
    CHECK(c.r0_constant.get_d() == doctest::Approx(9.726833630).epsilon(1e-9));
    CHECK(c.totient_cube_sum.get_d() == doctest::Approx(0.368432778).epsilon(1e-8));
}

TEST_CASE("sum_{u=2}^{N} phi(u)/u^3 approaches zeta(2)/zeta(3) - 1 within 10/N") {
    const double limit = constants().totient_cube_sum.get_d();
    for (std::int64_t n : {1000, 10000}) {
        const auto phi = totient_table(n);
        long double s = 0;
        for (std::int64_t u = 2; u <= n; ++u) {
            s += static_cast<long double>(phi[static_cast<std::size_t>(u)]) / (static_cast<long double>(u) * u * u);
        }
        CHECK(std::fabs(static_cast<double>(s) - limit) <= 10.0 / n);
    }
}
