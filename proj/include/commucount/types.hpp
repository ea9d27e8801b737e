#pragma once

/**
 * Result containers shared by the brute-force oracles and the fast counters.
 * They carry data only; no counting logic lives here.
 */

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "commucount/core.hpp"

namespace commucount {

/// Exact h -> r_N(h) for every h with r_N(h) > 0.
struct RTable {
    BoxParam box;
    std::map<std::int64_t, ExactCount> values;

    /// r_N(h), zero off the support.
    [[nodiscard]] ExactCount at(std::int64_t h) const;
    [[nodiscard]] ExactCount total() const;

    friend bool operator==(const RTable& a, const RTable& b) {
        return a.box.n() == b.box.n() && a.values == b.values;
    }
};

/// A prime p, an exponent n >= 1 and q = p^n < 2^63.
class PadicParams {
public:
    /// Throws NotPrime, or InvalidInput when n < 1 or p^n does not fit.
    PadicParams(std::uint64_t p, unsigned n);

    [[nodiscard]] std::uint64_t p() const noexcept { return p_; }
    [[nodiscard]] unsigned n() const noexcept { return n_; }
    [[nodiscard]] std::uint64_t q() const noexcept { return q_; }

private:
    std::uint64_t p_;
    unsigned n_;
    std::uint64_t q_;
};

/// Solutions of the six-variable commuting system over Z/p^nZ, bucketed by
/// the minimum p-adic valuation h of the six variables.
struct ValuationClassCounts {
    PadicParams params;
    /// classes[h] = |S(n, h)|. Brute histograms cover h = 0..n; the fast
    /// variant covers h < ceil(n/2) and moves the rest into `residual`.
    std::vector<ExactCount> classes;
    std::optional<ExactCount> residual;

    [[nodiscard]] ExactCount total() const;
};

}  // namespace commucount
