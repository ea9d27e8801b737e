#include "commucount/core.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <thread>

namespace commucount {

ExactCount to_exact(u128 value) {
    const auto hi = static_cast<std::uint64_t>(value >> 64);
    const auto lo = static_cast<std::uint64_t>(value);
    ExactCount out = hi;
    out <<= 64;
    out += ExactCount(static_cast<unsigned long>(lo));
    return out;
}

ExactCount to_exact(i128 value) {
    if (value >= 0) return to_exact(static_cast<u128>(value));
    return -to_exact(static_cast<u128>(-value));
}

ExactRatio make_ratio(const ExactCount& num, const ExactCount& den) {
    if (den == 0) throw InvalidInput("zero denominator");
    ExactRatio out(num, den);
    out.canonicalize();
    return out;
}

std::string to_decimal(const ExactCount& value) { return value.get_str(10); }

std::string to_string(const ExactRatio& value) { return value.get_str(10); }

ExactCount parse_count(const std::string& text) {
    ExactCount out;
    if (text.empty() || out.set_str(text, 10) != 0) {
        throw InvalidInput("not a decimal integer: '" + text + "'");
    }
    return out;
}

double to_double(const ExactRatio& value) { return value.get_d(); }

void WorkBudget::require(const ExactCount& states, const std::string& what) const {
    if (states > ExactCount(static_cast<unsigned long>(max_states))) {
        throw BudgetExceeded(what + " needs " + to_decimal(states) +
                             " states, budget is " + std::to_string(max_states));
    }
}

void WorkBudget::require(std::uint64_t states, const std::string& what) const {
    require(ExactCount(static_cast<unsigned long>(states)), what);
}

BoxParam::BoxParam(std::int64_t n) : n_(n) {
    if (n < 0) throw InvalidInput("box parameter N must be nonnegative, got " + std::to_string(n));
    if (n > 3'000'000'000LL) throw InvalidInput("box parameter N too large");
}

IntMatrix::IntMatrix(int dim) : IntMatrix(dim, std::vector<std::int64_t>(static_cast<std::size_t>(dim * dim), 0)) {}

IntMatrix::IntMatrix(int dim, std::vector<std::int64_t> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim < 1) throw InvalidInput("matrix dimension must be positive");
    if (entries_.size() != static_cast<std::size_t>(dim * dim)) {
        throw DimensionMismatch("expected " + std::to_string(dim * dim) + " entries, got " +
                                std::to_string(entries_.size()));
    }
}

std::int64_t IntMatrix::label(int k) const {
    if (k < 1 || k > dim_ * dim_) {
        throw IndexOutOfRange("entry label " + std::to_string(k) + " outside 1.." +
                              std::to_string(dim_ * dim_));
    }
    return entries_[static_cast<std::size_t>(k - 1)];
}

bool IntMatrix::within(const BoxParam& box) const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [&](std::int64_t x) { return box.contains(x); });
}

bool IntMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](std::int64_t x) { return x == 0; });
}

IntMatrix IntMatrix::identity(int dim) {
    IntMatrix out(dim);
    for (int i = 0; i < dim; ++i) out(i, i) = 1;
    return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("matrix product of different dimensions");
    const int d = a.dim();
    IntMatrix out(d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
            const std::int64_t aik = a(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < d; ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("matrix difference of different dimensions");
    std::vector<std::int64_t> e(a.entries().size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.entries()[i] - b.entries()[i];
    return IntMatrix(a.dim(), std::move(e));
}

PrimitiveDirection PrimitiveDirection::make(std::int64_t u, std::int64_t v) {
    if (gcd(u, v) != 1) {
        throw InvalidInput("(" + std::to_string(u) + ", " + std::to_string(v) +
                           ") is not a primitive direction");
    }
    if (u < 0 || (u == 0 && v < 0)) {
        u = -u;
        v = -v;
    }
    return PrimitiveDirection(u, v, std::max(u < 0 ? -u : u, v < 0 ? -v : v));
}

std::uint64_t ProductDistribution::at(std::int64_t product) const {
    auto it = std::lower_bound(counts.begin(), counts.end(), product,
                               [](const auto& entry, std::int64_t key) { return entry.first < key; });
    return (it != counts.end() && it->first == product) ? it->second : 0;
}

std::uint64_t ProductDistribution::total() const {
    std::uint64_t sum = 0;
    for (const auto& [value, count] : counts) sum += count;
    return sum;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) noexcept {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

std::int64_t totient(std::int64_t u) {
    if (u < 1) throw InvalidInput("totient needs u >= 1");
    std::int64_t result = u;
    for (std::int64_t p = 2; p * p <= u; ++p) {
        if (u % p != 0) continue;
        while (u % p == 0) u /= p;
        result -= result / p;
    }
    if (u > 1) result -= result / u;
    return result;
}

std::vector<std::int64_t> totient_table(std::int64_t limit) {
    std::vector<std::int64_t> phi(static_cast<std::size_t>(limit + 1));
    std::iota(phi.begin(), phi.end(), 0);
    for (std::int64_t i = 2; i <= limit; ++i) {
        if (phi[static_cast<std::size_t>(i)] != i) continue;
        for (std::int64_t j = i; j <= limit; j += i) {
            auto& slot = phi[static_cast<std::size_t>(j)];
            slot -= slot / i;
        }
    }
    return phi;
}

std::int64_t divisor_tau(std::int64_t n) {
    if (n < 1) throw InvalidInput("divisor_tau needs n >= 1");
    std::int64_t tau = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        std::int64_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        tau *= e + 1;
    }
    if (n > 1) tau *= 2;
    return tau;
}

std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit) {
    std::vector<std::uint32_t> spf(static_cast<std::size_t>(limit) + 1, 0);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf[i] != 0) continue;
        for (std::uint64_t j = i; j <= limit; j += i)
            if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
    return spf;
}

bool is_prime(std::uint64_t p) {
    if (p > 1'000'000'000'000ULL) throw InvalidInput("primality check limited to p <= 10^12");
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    if (p % 3 == 0) return p == 3;
    for (std::uint64_t f = 5; f * f <= p; f += 6) {
        if (p % f == 0 || p % (f + 2) == 0) return false;
    }
    return true;
}

ExactCount ipow(const ExactCount& base, unsigned long exp) {
    ExactCount out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

void for_each_primitive_direction(
    const BoxParam& box, const std::function<void(const PrimitiveDirection&)>& fn) {
    const std::int64_t n = box.n();
    if (n < 1) return;
    fn(PrimitiveDirection::make(0, 1));
    for (std::int64_t u = 1; u <= n; ++u)
        for (std::int64_t v = -n; v <= n; ++v)
            if (gcd(u, v) == 1) fn(PrimitiveDirection::make(u, v));
}

std::vector<PrimitiveDirection> primitive_directions(const BoxParam& box) {
    std::vector<PrimitiveDirection> out;
    for_each_primitive_direction(box, [&](const PrimitiveDirection& p) { out.push_back(p); });
    return out;
}

ProductDistribution product_distribution(const BoxParam& box) {
    const std::int64_t n = box.n();
    const std::int64_t span = n * n;
    if (span > 50'000'000) throw BudgetExceeded("product distribution limited to N <= 7071");
    std::vector<std::uint32_t> dense(static_cast<std::size_t>(2 * span + 1), 0);
    for (std::int64_t a = -n; a <= n; ++a)
        for (std::int64_t b = -n; b <= n; ++b) ++dense[static_cast<std::size_t>(a * b + span)];
    ProductDistribution out{box, {}};
    for (std::int64_t k = 0; k <= 2 * span; ++k) {
        if (const auto c = dense[static_cast<std::size_t>(k)]; c != 0) out.counts.emplace_back(k - span, c);
    }
    return out;
}

namespace {

unsigned& thread_setting() {
    static unsigned threads = [] {
        if (const char* env = std::getenv("COMMUCOUNT_THREADS")) {
            const long parsed = std::strtol(env, nullptr, 10);
            if (parsed > 0) return static_cast<unsigned>(parsed);
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }();
    return threads;
}

}  // namespace

unsigned thread_count() { return thread_setting(); }

void set_thread_count(unsigned threads) { thread_setting() = std::max(1u, threads); }

}  // namespace commucount
