#include "commucount/divisor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

namespace commucount {

// ---- box correlations ------------------------------------------------------

RTable r_table(const BoxParam& box, const WorkBudget& budget) {
    if (box.n() < 1) throw InvalidInput("r_table needs N >= 1");
    const ProductDistribution pd = product_distribution(box);
    const auto d = static_cast<std::uint64_t>(pd.counts.size());
    budget.require(d * d / 2, "r-table autocorrelation");

    const std::int64_t span = 2 * box.n() * box.n();
    const auto& entries = pd.counts;
    // r(h) for h >= 0: products v_i > v_j with v_i - v_j = h, plus squares at h = 0.
    const auto parts = parallel_chunks<std::vector<std::uint64_t>>(d, [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::uint64_t> acc(static_cast<std::size_t>(span + 1), 0);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const auto [vi, ci] = entries[i];
            for (std::uint64_t j = 0; j <= i; ++j) {
                acc[static_cast<std::size_t>(vi - entries[j].first)] += ci * entries[j].second;
            }
        }
        return acc;
    });

    std::vector<std::uint64_t> half(static_cast<std::size_t>(span + 1), 0);
    for (const auto& part : parts)
        for (std::size_t h = 0; h < half.size(); ++h) half[h] += part[h];

    RTable out{box, {}};
    for (std::int64_t h = -span; h <= span; ++h) {
        const auto value = half[static_cast<std::size_t>(h < 0 ? -h : h)];
        if (value != 0) out.values.emplace_hint(out.values.end(), h, ExactCount(static_cast<unsigned long>(value)));
    }
    return out;
}

ExactCount r_value(const BoxParam& box, std::int64_t h) {
    const ProductDistribution pd = product_distribution(box);
    // Two pointers over v_i and v_j = v_i - h, both increasing.
    u128 total = 0;
    std::size_t j = 0;
    for (const auto& [vi, ci] : pd.counts) {
        const std::int64_t target = vi - h;
        while (j < pd.counts.size() && pd.counts[j].first < target) ++j;
        if (j == pd.counts.size()) break;
        if (pd.counts[j].first == target) total += static_cast<u128>(ci) * pd.counts[j].second;
    }
    return to_exact(total);
}

ExactCount r_zero(const BoxParam& box, const WorkBudget& budget) {
    const std::int64_t n = box.n();
    if (n < 1) throw InvalidInput("r_zero needs N >= 1");
    budget.require(ExactCount(static_cast<long>(n)) * n, "r(0) product stream");

    // counts[0] = 4N + 1; counts[+-m] = 2 c(m) with c(m) = #{1 <= a, b <= N : ab = m}.
    constexpr std::int64_t kBlock = std::int64_t{1} << 22;
    const std::int64_t top = n * n;
    const std::uint64_t blocks = static_cast<std::uint64_t>((top + kBlock - 1) / kBlock);
    const ExactCount positive_squares = parallel_sum(blocks, [&](std::uint64_t lo_block, std::uint64_t hi_block) {
        std::vector<std::uint16_t> counts(static_cast<std::size_t>(kBlock));
        u128 sum = 0;
        for (std::uint64_t blk = lo_block; blk < hi_block; ++blk) {
            const std::int64_t lo = 1 + static_cast<std::int64_t>(blk) * kBlock;
            const std::int64_t hi = std::min(top + 1, lo + kBlock);  // products in [lo, hi)
            std::fill(counts.begin(), counts.end(), 0);
            for (std::int64_t a = 1; a <= n; ++a) {
                const std::int64_t b_lo = std::max<std::int64_t>(1, (lo + a - 1) / a);
                const std::int64_t b_hi = std::min<std::int64_t>(n, (hi - 1) / a);
                for (std::int64_t b = b_lo; b <= b_hi; ++b) ++counts[static_cast<std::size_t>(a * b - lo)];
            }
            for (std::int64_t k = 0; k < hi - lo; ++k) {
                const auto c = static_cast<u128>(counts[static_cast<std::size_t>(k)]);
                sum += c * c;
            }
        }
        return to_exact(sum);
    });
    const ExactCount zero_count = 4 * n + 1;
    return zero_count * zero_count + 8 * positive_squares;
}

ExactCount moment(const RTable& table, unsigned k) {
    if (k < 1) throw InvalidInput("moment order k must be >= 1");
    ExactCount total = 0;
    for (const auto& [h, r] : table.values) total += ipow(r, k);
    return total;
}

ExactCount moment(const BoxParam& box, unsigned k, const WorkBudget& budget) {
    if (k < 1) throw InvalidInput("moment order k must be >= 1");
    if (k == 1) return ipow(ExactCount(static_cast<long>(box.side())), 4);
    return moment(r_table(box, budget), k);
}

ExactRatio restricted_divisor_sum(std::int64_t h, std::int64_t n) {
    if (h == 0) throw InvalidInput("restricted divisor sum needs h != 0");
    const std::int64_t m = h < 0 ? -h : h;
    ExactRatio sum = 0;
    for (std::int64_t d = 1; d * d <= m; ++d) {
        if (m % d != 0) continue;
        if (d <= n) sum += ExactRatio(1, d);
        const std::int64_t e = m / d;
        if (e != d && e <= n) sum += ExactRatio(1, e);
    }
    sum.canonicalize();
    return sum;
}

namespace {

ExactRatio bound_ratio(const ExactCount& r, std::int64_t h, std::int64_t n) {
    if (n < 1) throw InvalidInput("divisor bound check needs N >= 1");
    if (h == 0 || std::abs(h) > 2 * n * n) {
        throw InvalidInput("divisor bound check needs 0 < |h| <= 2N^2, got h = " + std::to_string(h));
    }
    ExactRatio denom = restricted_divisor_sum(h, n) * ExactRatio(n * n);
    ExactRatio out = ExactRatio(r) / denom;
    out.canonicalize();
    return out;
}

}  // namespace

ExactRatio divisor_bound_check(const BoxParam& box, std::int64_t h) {
    const std::int64_t n = box.n();
    if (n >= 1 && h != 0 && std::abs(h) <= 2 * n * n) return bound_ratio(r_value(box, h), h, n);
    return bound_ratio(0, h, n);  // throws
}

ExactRatio divisor_bound_check(const RTable& table, std::int64_t h) {
    return bound_ratio(table.at(h), h, table.box.n());
}

ExactCount classic_divisor_correlation(std::int64_t x, std::int64_t h) {
    if (x < 1 || h < 0) throw InvalidInput("D_X(h) needs X >= 1 and h >= 0");
    const std::int64_t limit = x + h;
    if (limit > 10'000'000) throw BudgetExceeded("divisor sieve limited to X + h <= 10^7");
    std::vector<std::uint32_t> tau(static_cast<std::size_t>(limit + 1), 0);
    for (std::int64_t d = 1; d <= limit; ++d)
        for (std::int64_t k = d; k <= limit; k += d) ++tau[static_cast<std::size_t>(k)];
    u128 sum = 0;
    for (std::int64_t k = 1; k <= x; ++k) {
        sum += static_cast<u128>(tau[static_cast<std::size_t>(k)]) * tau[static_cast<std::size_t>(k + h)];
    }
    return to_exact(sum);
}

namespace {

std::vector<std::uint64_t> sigma_table(std::int64_t x) {
    std::vector<std::uint64_t> sigma(static_cast<std::size_t>(x + 1), 0);
    for (std::int64_t d = 1; d <= x; ++d)
        for (std::int64_t k = d; k <= x; k += d) sigma[static_cast<std::size_t>(k)] += static_cast<std::uint64_t>(d);
    return sigma;
}

void check_partial_sum_args(std::int64_t x, unsigned k) {
    if (x < 1 || x > 1'000'000) throw InvalidInput("partial sum needs 1 <= X <= 10^6");
    if (k < 1 || k > 4) throw InvalidInput("partial sum needs 1 <= k <= 4");
}

}  // namespace

ExactRatio partial_sum_check(std::int64_t x, unsigned k, const WorkBudget& budget) {
    check_partial_sum_args(x, k);
    // lcm(1..X) from prime powers.
    ExactCount lcm = 1;
    const auto spf = smallest_prime_factors(static_cast<std::uint32_t>(x));
    for (std::int64_t p = 2; p <= x; ++p) {
        if (spf[static_cast<std::size_t>(p)] != static_cast<std::uint32_t>(p)) continue;
        std::int64_t pk = p;
        while (pk <= x / p) pk *= p;
        lcm *= static_cast<unsigned long>(pk);
    }
    const ExactCount common = ipow(lcm, k);
    const auto limbs = static_cast<std::uint64_t>(mpz_sizeinbase(common.get_mpz_t(), 2) / 64 + 1);
    budget.require(ExactCount(static_cast<unsigned long>(x)) * limbs * (2 * k), "exact partial sum");

    const auto sigma = sigma_table(x);
    ExactCount numer = 0, term;
    for (std::int64_t n = 1; n <= x; ++n) {
        term = common;
        for (unsigned i = 0; i < k; ++i) {
            mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(n));
            mpz_mul_ui(term.get_mpz_t(), term.get_mpz_t(), sigma[static_cast<std::size_t>(n)]);
        }
        numer += term;
    }
    return make_ratio(numer, common * x);
}

long double partial_sum_approx(std::int64_t x, unsigned k) {
    check_partial_sum_args(x, k);
    const auto sigma = sigma_table(x);
    long double sum = 0, carry = 0;
    for (std::int64_t n = 1; n <= x; ++n) {
        const long double term = std::pow(static_cast<long double>(sigma[static_cast<std::size_t>(n)]) / n, k);
        const long double t = sum + term;
        carry += (std::fabs(sum) >= std::fabs(term)) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    return (sum + carry) / x;
}

// ---- finite sets -------------------------------------------------------------

FiniteRealSet::FiniteRealSet(std::vector<ExactRatio> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw InvalidInput("set must be nonempty");
    for (auto& e : elements_) e.canonicalize();
    std::sort(elements_.begin(), elements_.end());
    const auto dup = std::adjacent_find(elements_.begin(), elements_.end());
    if (dup != elements_.end()) throw InvalidInput("duplicate set element " + to_string(*dup));
}

FiniteRealSet FiniteRealSet::arithmetic_progression(std::int64_t start, std::int64_t step, std::size_t length) {
    if (step == 0) throw InvalidInput("progression step must be nonzero");
    std::vector<ExactRatio> out;
    for (std::size_t i = 0; i < length; ++i) out.emplace_back(start + step * static_cast<std::int64_t>(i));
    return FiniteRealSet(std::move(out));
}

FiniteRealSet FiniteRealSet::geometric_progression(const ExactRatio& start, const ExactRatio& ratio,
                                                   std::size_t length) {
    std::vector<ExactRatio> out;
    ExactRatio x = start;
    for (std::size_t i = 0; i < length; ++i) {
        out.push_back(x);
        x *= ratio;
    }
    return FiniteRealSet(std::move(out));
}

FiniteRealSet parse_set(const std::string& text) {
    std::vector<ExactRatio> values;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(first, last - first + 1);
        const auto bad = [&] {
            return InvalidInput("line " + std::to_string(line_no) + ": not a rational: '" + token + "'");
        };
        const auto slash = token.find('/');
        ExactCount num, den = 1;
        try {
            num = parse_count(token.substr(0, slash));
            if (slash != std::string::npos) den = parse_count(token.substr(slash + 1));
        } catch (const InvalidInput&) {
            throw bad();
        }
        if (den <= 0) throw bad();
        values.push_back(make_ratio(num, den));
    }
    return FiniteRealSet(std::move(values));
}

FiniteRealSet read_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open set file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_set(buf.str());
}

namespace {

/// The set rescaled to integers by the lcm of its denominators.
struct ScaledSet {
    ExactCount scale;  // L
    std::vector<ExactCount> values;
    bool fits_int32 = true;
};

ScaledSet scale_set(const FiniteRealSet& set) {
    ScaledSet out{1, {}, true};
    for (const auto& e : set.elements()) mpz_lcm(out.scale.get_mpz_t(), out.scale.get_mpz_t(), e.get_den_mpz_t());
    const ExactCount limit = std::numeric_limits<std::int32_t>::max();
    for (const auto& e : set.elements()) {
        ExactCount v = e.get_num() * (out.scale / e.get_den());
        if (abs(v) > limit) out.fits_int32 = false;
        out.values.push_back(std::move(v));
    }
    return out;
}

template <typename T>
using Multiset = std::vector<std::pair<T, std::uint64_t>>;

template <typename T>
Multiset<T> product_multiset(const std::vector<T>& values) {
    std::vector<T> products;
    products.reserve(values.size() * values.size());
    for (const auto& a : values)
        for (const auto& b : values) products.push_back(T(a * b));
    std::sort(products.begin(), products.end());
    Multiset<T> out;
    for (auto& p : products) {
        if (!out.empty() && out.back().first == p) {
            ++out.back().second;
        } else {
            out.emplace_back(std::move(p), 1);
        }
    }
    return out;
}

template <typename T>
ExactCount correlate_at(const Multiset<T>& ms, const T& shift) {
    u128 total = 0;
    std::size_t j = 0;
    for (const auto& [v, c] : ms) {
        const T target = T(v - shift);
        while (j < ms.size() && ms[j].first < target) ++j;
        if (j == ms.size()) break;
        if (ms[j].first == target) total += static_cast<u128>(c) * ms[j].second;
    }
    return to_exact(total);
}

std::vector<std::int64_t> to_int64(const std::vector<ExactCount>& values) {
    std::vector<std::int64_t> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(v.get_si());
    return out;
}

void check_set_size(const FiniteRealSet& set) {
    if (set.size() > 2000) throw InvalidInput("finite-set correlations limited to |A| <= 2000");
}

template <typename T>
Lemma61Report correlation_summary_sparse(const Multiset<T>& ms) {
    // r(n) = r(-n); accumulate n >= 0 only.
    std::map<T, std::uint64_t> table;
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) table[T(ms[i].first - ms[j].first)] += ms[i].second * ms[j].second;
    Lemma61Report out{0, 0, 0};
    for (const auto& [n, r] : table) {
        const ExactCount value = static_cast<unsigned long>(r);
        if (value > out.sup_r) out.sup_r = value;
        out.i3 += (n == T(0) ? 1 : 2) * value * value * value;
    }
    out.r0 = static_cast<unsigned long>(table.begin()->second);
    return out;
}

Lemma61Report correlation_summary_dense(const Multiset<std::int64_t>& ms) {
    const std::int64_t span = ms.back().first - ms.front().first;
    std::vector<std::uint64_t> table(static_cast<std::size_t>(span + 1), 0);
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const auto [vi, ci] = ms[i];
        for (std::size_t j = 0; j <= i; ++j) table[static_cast<std::size_t>(vi - ms[j].first)] += ci * ms[j].second;
    }
    Lemma61Report out{0, 0, 0};
    u128 sup = 0;
    for (std::size_t n = 0; n < table.size(); ++n) {
        const std::uint64_t r = table[n];
        if (r == 0) continue;
        sup = std::max<u128>(sup, r);
        const ExactCount value = static_cast<unsigned long>(r);
        out.i3 += (n == 0 ? 1 : 2) * value * value * value;
    }
    out.sup_r = to_exact(sup);
    out.r0 = static_cast<unsigned long>(table[0]);
    return out;
}

}  // namespace

ExactCount r_set(const FiniteRealSet& set, const ExactRatio& n) {
    check_set_size(set);
    const ScaledSet scaled = scale_set(set);
    const ExactRatio shifted = n * ExactRatio(scaled.scale * scaled.scale);
    if (shifted.get_den() != 1) return 0;  // products of scaled values are integers
    const ExactCount target = shifted.get_num();
    if (scaled.fits_int32) {
        const ExactCount limit = std::numeric_limits<std::int64_t>::max() / 2;
        if (abs(target) > limit) return 0;
        return correlate_at(product_multiset(to_int64(scaled.values)), target.get_si());
    }
    return correlate_at(product_multiset(scaled.values), target);
}

DoublingReport doubling_report(const FiniteRealSet& set) {
    check_set_size(set);
    const ScaledSet scaled = scale_set(set);
    std::vector<ExactCount> sums;
    const auto& v = scaled.values;
    sums.reserve(v.size() * (v.size() + 1) / 2);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i; j < v.size(); ++j) sums.push_back(v[i] + v[j]);
    std::sort(sums.begin(), sums.end());
    const auto distinct = static_cast<std::size_t>(std::unique(sums.begin(), sums.end()) - sums.begin());
    return DoublingReport{set.size(), distinct,
                          make_ratio(static_cast<unsigned long>(distinct), static_cast<unsigned long>(set.size()))};
}

Lemma61Report lemma61_check(const FiniteRealSet& set, const WorkBudget& budget) {
    check_set_size(set);
    const ScaledSet scaled = scale_set(set);
    if (scaled.fits_int32) {
        const auto ms = product_multiset(to_int64(scaled.values));
        const auto d = static_cast<std::uint64_t>(ms.size());
        budget.require(d * d / 2, "finite-set correlation table");
        if (ms.back().first - ms.front().first <= (std::int64_t{1} << 25)) return correlation_summary_dense(ms);
        return correlation_summary_sparse(ms);
    }
    const auto ms = product_multiset(scaled.values);
    const auto d = static_cast<std::uint64_t>(ms.size());
    budget.require(d * d / 2, "finite-set correlation table");
    return correlation_summary_sparse(ms);
}

double small_doubling_ratio(const Lemma61Report& report, const DoublingReport& doubling) {
    const double size = static_cast<double>(doubling.set_size);
    const double k = doubling.doubling.get_d();
    return ExactRatio(report.r0).get_d() / (k * k * size * size * std::log(2.0 * size));
}

}  // namespace commucount
