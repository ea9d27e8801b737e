#pragma once

/**
 * Shared arithmetic for every counter: exact integer and rational types,
 * box parameters, small integer matrices, canonical lattice directions and
 * the product distribution of a box.
 *
 * All counts are carried as GMP integers. Hot loops accumulate in 128-bit
 * machine integers and convert at the end of a partition.
 */

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "commucount/errors.hpp"

namespace commucount {

using ExactCount = mpz_class;
using ExactRatio = mpq_class;

using i128 = __int128;
using u128 = unsigned __int128;

ExactCount to_exact(u128 value);
ExactCount to_exact(i128 value);

/// Lowest-terms rational with positive denominator. Throws InvalidInput on a
/// zero denominator.
ExactRatio make_ratio(const ExactCount& num, const ExactCount& den);

std::string to_decimal(const ExactCount& value);
/// "p/q", or just "p" when the denominator is 1.
std::string to_string(const ExactRatio& value);
ExactCount parse_count(const std::string& text);

double to_double(const ExactRatio& value);

/// Cap on the number of states an enumeration may visit.
struct WorkBudget {
    static constexpr std::uint64_t kDefault = 10'000'000'000ULL;
    std::uint64_t max_states = kDefault;

    /// Throws BudgetExceeded with `what` in the message when `states` does
    /// not fit.
    void require(const ExactCount& states, const std::string& what) const;
    void require(std::uint64_t states, const std::string& what) const;
};

/// Entry bound N; entries range over [-N, N].
class BoxParam {
public:
    explicit BoxParam(std::int64_t n);

    [[nodiscard]] std::int64_t n() const noexcept { return n_; }
    /// |S| = 2N + 1.
    [[nodiscard]] std::int64_t side() const noexcept { return 2 * n_ + 1; }
    [[nodiscard]] bool contains(std::int64_t x) const noexcept {
        return x >= -n_ && x <= n_;
    }

private:
    std::int64_t n_;
};

/// Dense d x d integer matrix, row-major. Entry k (1-based, k <= d*d) is the
/// flattened label used for cross-determinants.
class IntMatrix {
public:
    explicit IntMatrix(int dim);
    IntMatrix(int dim, std::vector<std::int64_t> entries);

    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] std::int64_t operator()(int row, int col) const {
        return entries_[static_cast<std::size_t>(row * dim_ + col)];
    }
    std::int64_t& operator()(int row, int col) {
        return entries_[static_cast<std::size_t>(row * dim_ + col)];
    }
    /// Flattened 1-based access.
    [[nodiscard]] std::int64_t label(int k) const;
    [[nodiscard]] const std::vector<std::int64_t>& entries() const noexcept {
        return entries_;
    }
    [[nodiscard]] bool within(const BoxParam& box) const;
    [[nodiscard]] bool is_zero() const;

    static IntMatrix identity(int dim);

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);

private:
    int dim_;
    std::vector<std::int64_t> entries_;
};

/// Coprime lattice direction in canonical form: u > 0, or (u, v) = (0, 1).
class PrimitiveDirection {
public:
    /// Canonicalizes the sign; throws InvalidInput when (u, v) is not
    /// primitive.
    static PrimitiveDirection make(std::int64_t u, std::int64_t v);

    [[nodiscard]] std::int64_t u() const noexcept { return u_; }
    [[nodiscard]] std::int64_t v() const noexcept { return v_; }
    /// max(|u|, |v|).
    [[nodiscard]] std::int64_t m() const noexcept { return m_; }
    [[nodiscard]] bool is_axis() const noexcept { return u_ == 0 || v_ == 0; }

    friend bool operator==(const PrimitiveDirection&, const PrimitiveDirection&) = default;

private:
    PrimitiveDirection(std::int64_t u, std::int64_t v, std::int64_t m)
        : u_(u), v_(v), m_(m) {}
    std::int64_t u_;
    std::int64_t v_;
    std::int64_t m_;
};

/// Multiplicity of every product ab over (a, b) in S^2, sorted by product.
struct ProductDistribution {
    BoxParam box;
    std::vector<std::pair<std::int64_t, std::uint64_t>> counts;

    [[nodiscard]] std::uint64_t at(std::int64_t product) const;
    [[nodiscard]] std::uint64_t total() const;
};

// ---- elementary arithmetic -------------------------------------------------

std::int64_t gcd(std::int64_t a, std::int64_t b) noexcept;
std::int64_t totient(std::int64_t u);
/// phi(0..limit), phi(0) = 0.
std::vector<std::int64_t> totient_table(std::int64_t limit);
std::int64_t divisor_tau(std::int64_t n);
/// Smallest prime factor of 0..limit (spf[0] = spf[1] = 0).
std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit);
/// Deterministic trial division; refuses p > 10^12.
bool is_prime(std::uint64_t p);
ExactCount ipow(const ExactCount& base, unsigned long exp);

// ---- lattice enumeration ---------------------------------------------------

/// Canonical directions with m <= N in deterministic order: (0, 1) first,
/// then u = 1..N ascending, v = -N..N ascending.
std::vector<PrimitiveDirection> primitive_directions(const BoxParam& box);
void for_each_primitive_direction(
    const BoxParam& box, const std::function<void(const PrimitiveDirection&)>& fn);

ProductDistribution product_distribution(const BoxParam& box);

// ---- threading -------------------------------------------------------------

/// Worker count used by partitioned loops. Defaults to COMMUCOUNT_THREADS,
/// else the hardware concurrency.
unsigned thread_count();
void set_thread_count(unsigned threads);

/// Splits [0, count) into contiguous chunks and evaluates `fn(begin, end)`
/// on each, using thread_count() workers. Results come back in chunk order,
/// so any in-order reduction is independent of the thread count.
template <typename T, typename Fn>
std::vector<T> parallel_chunks(std::uint64_t count, Fn&& fn) {
    if (count == 0) return {};
    const auto threads = static_cast<unsigned>(std::min<std::uint64_t>(thread_count(), count));
    if (threads <= 1) return {fn(std::uint64_t{0}, count)};

    // More chunks than workers so uneven chunk costs balance out.
    const std::uint64_t chunks = std::min<std::uint64_t>(count, std::uint64_t{threads} * 8);
    std::vector<T> partial(chunks);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t c = next++; c < chunks; c = next++) {
            partial[c] = fn(static_cast<std::uint64_t>(u128{count} * c / chunks),
                            static_cast<std::uint64_t>(u128{count} * (c + 1) / chunks));
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return partial;
}

/// parallel_chunks followed by exact summation.
template <typename Fn>
ExactCount parallel_sum(std::uint64_t count, Fn&& fn) {
    ExactCount total = 0;
    for (const auto& part : parallel_chunks<ExactCount>(count, std::forward<Fn>(fn))) total += part;
    return total;
}

}  // namespace commucount
