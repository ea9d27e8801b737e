#pragma once

/**
 * Restricted divisor correlations r_N(h) = #{a in [-N,N]^4 : a1 a2 - a3 a4 = h},
 * their moments, the classical shifted divisor sum D_X(h), and the
 * finite-set analogues r_A(n) over exact rationals.
 */

#include <string>
#include <vector>

#include "commucount/core.hpp"
#include "commucount/types.hpp"

namespace commucount {

/// Autocorrelation of the product distribution. Charged D^2 / 2 states for D
/// distinct products.
RTable r_table(const BoxParam& box, const WorkBudget& budget = {});

/// r_N(h) for a single h in O(D).
ExactCount r_value(const BoxParam& box, std::int64_t h);

/// r_N(0) as the sum of squared product multiplicities, streamed over blocks
/// of positive products so memory stays bounded for N up to ~10^5.
ExactCount r_zero(const BoxParam& box, const WorkBudget& budget = {});

/// I_k(N) = sum_h r_N(h)^k.
ExactCount moment(const BoxParam& box, unsigned k, const WorkBudget& budget = {});
ExactCount moment(const RTable& table, unsigned k);

/// sum_{d | h, d <= N} 1/d.
ExactRatio restricted_divisor_sum(std::int64_t h, std::int64_t n);

/// r_N(h) / (N^2 sum_{d | h, d <= N} 1/d) for 0 < |h| <= 2N^2.
ExactRatio divisor_bound_check(const BoxParam& box, std::int64_t h);
/// Same, reading r_N(h) from an existing table.
ExactRatio divisor_bound_check(const RTable& table, std::int64_t h);

/// D_X(h) = sum_{1 <= n <= X} tau(n) tau(n + h), via a divisor-count sieve
/// on [1, X + h] (limited to 10^7).
ExactCount classic_divisor_correlation(std::int64_t x, std::int64_t h);

/// (1/X) sum_{n <= X} (sum_{d | n} 1/d)^k, exactly. The common denominator
/// grows like lcm(1..X)^k; charged X * bits(denominator) / 64 states.
ExactRatio partial_sum_check(std::int64_t x, unsigned k, const WorkBudget& budget = {});
/// The same quantity in long double, for X beyond the exact budget.
long double partial_sum_approx(std::int64_t x, unsigned k);

// ---- finite sets -----------------------------------------------------------

/// Strictly increasing, nonempty list of distinct rationals.
class FiniteRealSet {
public:
    /// Sorts; throws InvalidInput on duplicates or an empty list.
    explicit FiniteRealSet(std::vector<ExactRatio> elements);

    [[nodiscard]] const std::vector<ExactRatio>& elements() const noexcept { return elements_; }
    [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }

    static FiniteRealSet arithmetic_progression(std::int64_t start, std::int64_t step, std::size_t length);
    static FiniteRealSet geometric_progression(const ExactRatio& start, const ExactRatio& ratio,
                                               std::size_t length);

private:
    std::vector<ExactRatio> elements_;
};

/// One rational per line as `p/q` or an integer; `#` lines and blank lines
/// are skipped; duplicate values are rejected.
FiniteRealSet parse_set(const std::string& text);
FiniteRealSet read_set_file(const std::string& path);

struct DoublingReport {
    std::size_t set_size;
    std::size_t sumset_size;
    /// |A + A| / |A|.
    ExactRatio doubling;
};

/// #{(a1..a4) in A^4 : a1 a2 - a3 a4 = n}.
ExactCount r_set(const FiniteRealSet& set, const ExactRatio& n);

DoublingReport doubling_report(const FiniteRealSet& set);

struct Lemma61Report {
    ExactCount sup_r;
    ExactCount r0;
    /// sum_n r_A(n)^3.
    ExactCount i3;
};

/// Full correlation table of the set. Charged D^2 / 2 states for D distinct
/// products.
Lemma61Report lemma61_check(const FiniteRealSet& set, const WorkBudget& budget = {});

/// r_A(0) / (K^2 |A|^2 ln(2|A|)).
double small_doubling_ratio(const Lemma61Report& report, const DoublingReport& doubling);

}  // namespace commucount
