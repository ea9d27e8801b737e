#include "commucount/types.hpp"

#include <limits>

namespace commucount {

ExactCount RTable::at(std::int64_t h) const {
    const auto it = values.find(h);
    return it == values.end() ? ExactCount(0) : it->second;
}

ExactCount RTable::total() const {
    ExactCount sum = 0;
    for (const auto& [h, r] : values) sum += r;
    return sum;
}

PadicParams::PadicParams(std::uint64_t p, unsigned n) : p_(p), n_(n), q_(1) {
    if (!is_prime(p)) throw NotPrime(p);
    if (n < 1) throw InvalidInput("p-adic exponent n must be >= 1");
    constexpr auto kLimit = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
    for (unsigned i = 0; i < n; ++i) {
        if (q_ > kLimit / p) throw InvalidInput("p^n must stay below 2^63");
        q_ *= p;
    }
}

ExactCount ValuationClassCounts::total() const {
    ExactCount sum = residual.value_or(0);
    for (const auto& c : classes) sum += c;
    return sum;
}

}  // namespace commucount
