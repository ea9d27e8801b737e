#include "commucount/oracle.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace commucount::oracle {

namespace {

ExactCount side_power(const BoxParam& box, unsigned long e) {
    return ipow(ExactCount(static_cast<long>(box.side())), e);
}

bool commute_2x2(const std::array<std::int64_t, 4>& a, const std::array<std::int64_t, 4>& b) {
    // Full products; no reduction of the commuting system is assumed.
    const std::int64_t ab00 = a[0] * b[0] + a[1] * b[2], ba00 = b[0] * a[0] + b[1] * a[2];
    const std::int64_t ab01 = a[0] * b[1] + a[1] * b[3], ba01 = b[0] * a[1] + b[1] * a[3];
    const std::int64_t ab10 = a[2] * b[0] + a[3] * b[2], ba10 = b[2] * a[0] + b[3] * a[2];
    const std::int64_t ab11 = a[2] * b[1] + a[3] * b[3], ba11 = b[2] * a[1] + b[3] * a[3];
    return ab00 == ba00 && ab01 == ba01 && ab10 == ba10 && ab11 == ba11;
}

void decode(std::uint64_t index, std::int64_t n, std::int64_t side, std::int64_t* out, int len) {
    for (int i = len - 1; i >= 0; --i) {
        out[i] = static_cast<std::int64_t>(index % static_cast<std::uint64_t>(side)) - n;
        index /= static_cast<std::uint64_t>(side);
    }
}

ExactCount brute_2x2(const BoxParam& box, const WorkBudget& budget) {
    budget.require(side_power(box, 8), "2x2 brute force");
    const std::int64_t n = box.n(), side = box.side();
    const std::uint64_t per_matrix = static_cast<std::uint64_t>(side * side * side * side);
    return parallel_sum(per_matrix, [&](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t count = 0;
        std::array<std::int64_t, 4> a{}, b{};
        for (std::uint64_t ia = lo; ia < hi; ++ia) {
            decode(ia, n, side, a.data(), 4);
            for (std::uint64_t ib = 0; ib < per_matrix; ++ib) {
                decode(ib, n, side, b.data(), 4);
                if (commute_2x2(a, b)) ++count;
            }
        }
        return ExactCount(static_cast<unsigned long>(count));
    });
}

// ---- 3x3 meet-in-the-middle ----------------------------------------------

constexpr int kHalfLow = 5;  // B entries 0..4
constexpr int kHalfHigh = 4; // B entries 5..8

/// Scalar encoding of a commutator: entries (0,0)..(2,1) as balanced digits
/// in base W. Entry (2,2) is omitted since tr(AB - BA) = 0.
struct KeyCodec {
    std::int64_t weight[8];

    explicit KeyCodec(std::int64_t n) {
        // |(AB - BA)_ij| <= 6 N^2 for entries in [-N, N].
        const std::int64_t base = 12 * n * n + 1;
        long double top = 1;
        for (int i = 0; i < 8; ++i) top *= static_cast<long double>(base);
        if (top > 0x1p61L) throw BudgetExceeded("3x3 commutator key does not fit 64 bits at this N");
        std::int64_t w = 1;
        for (int i = 0; i < 8; ++i) {
            weight[i] = w;
            w *= base;
        }
    }

    [[nodiscard]] std::int64_t encode(const std::int64_t (&c)[9]) const {
        std::int64_t key = 0;
        for (int i = 0; i < 8; ++i) key += c[i] * weight[i];
        return key;
    }
};

/// key(A E_k - E_k A) for each unit matrix E_k, k = 0..8.
std::array<std::int64_t, 9> basis_keys(const std::int64_t* a, const KeyCodec& codec) {
    std::array<std::int64_t, 9> keys{};
    for (int k = 0; k < 9; ++k) {
        const int r = k / 3, c = k % 3;
        std::int64_t comm[9] = {};
        // (A E_rc)_{ij} = a_{ir} [j == c]; (E_rc A)_{ij} = [i == r] a_{cj}.
        for (int i = 0; i < 3; ++i) comm[i * 3 + c] += a[i * 3 + r];
        for (int j = 0; j < 3; ++j) comm[r * 3 + j] -= a[c * 3 + j];
        keys[static_cast<std::size_t>(k)] = codec.encode(comm);
    }
    return keys;
}

/// Enumerates every assignment of `len` box values in odometer order,
/// reporting the linear key sum and the assignment.
template <typename Fn>
void enumerate_half(std::int64_t n, const std::int64_t* keys, int len, Fn&& fn) {
    std::int64_t vals[kHalfLow];
    std::int64_t sum = 0;
    for (int i = 0; i < len; ++i) {
        vals[i] = -n;
        sum += -n * keys[i];
    }
    while (true) {
        fn(sum, vals);
        int i = len - 1;
        while (i >= 0 && vals[i] == n) {
            sum -= 2 * n * keys[i];
            vals[i] = -n;
            --i;
        }
        if (i < 0) return;
        ++vals[i];
        sum += keys[i];
    }
}

ExactCount states_3x3(const BoxParam& box) {
    return side_power(box, 9) * (side_power(box, kHalfLow) + side_power(box, kHalfHigh));
}

/// Open-addressing multiset of 64-bit keys.
class KeyCounter {
public:
    explicit KeyCounter(std::size_t expected) {
        std::size_t cap = 16;
        while (cap < expected * 2) cap <<= 1;
        slots_.assign(cap, Slot{0, 0});
        mask_ = cap - 1;
    }

    void clear() { std::fill(slots_.begin(), slots_.end(), Slot{0, 0}); }

    void add(std::int64_t key) {
        for (std::size_t i = hash(key);; i = (i + 1) & mask_) {
            Slot& s = slots_[i];
            if (s.count == 0) {
                s = Slot{key, 1};
                return;
            }
            if (s.key == key) {
                ++s.count;
                return;
            }
        }
    }

    [[nodiscard]] std::uint32_t find(std::int64_t key) const {
        for (std::size_t i = hash(key);; i = (i + 1) & mask_) {
            const Slot& s = slots_[i];
            if (s.count == 0) return 0;
            if (s.key == key) return s.count;
        }
    }

private:
    struct Slot {
        std::int64_t key;
        std::uint32_t count;
    };
    [[nodiscard]] std::size_t hash(std::int64_t key) const {
        auto x = static_cast<std::uint64_t>(key);
        x ^= x >> 31;
        x *= 0x9E3779B97F4A7C15ULL;
        x ^= x >> 29;
        return static_cast<std::size_t>(x) & mask_;
    }
    std::vector<Slot> slots_;
    std::size_t mask_ = 0;
};

ExactCount brute_3x3(const BoxParam& box, const WorkBudget& budget) {
    budget.require(states_3x3(box), "3x3 brute force");
    const std::int64_t n = box.n(), side = box.side();
    const KeyCodec codec(n);
    std::uint64_t matrices = 1;
    for (int i = 0; i < 9; ++i) matrices *= static_cast<std::uint64_t>(side);
    std::uint64_t half_high = 1;
    for (int i = 0; i < kHalfHigh; ++i) half_high *= static_cast<std::uint64_t>(side);

    return parallel_sum(matrices, [&](std::uint64_t lo, std::uint64_t hi) {
        KeyCounter table(half_high);
        std::uint64_t count = 0;
        std::int64_t a[9];
        for (std::uint64_t ia = lo; ia < hi; ++ia) {
            decode(ia, n, side, a, 9);
            const auto keys = basis_keys(a, codec);
            table.clear();
            enumerate_half(n, keys.data() + kHalfLow, kHalfHigh,
                           [&](std::int64_t s, const std::int64_t*) { table.add(s); });
            enumerate_half(n, keys.data(), kHalfLow,
                           [&](std::int64_t s, const std::int64_t*) { count += table.find(-s); });
        }
        return ExactCount(static_cast<unsigned long>(count));
    });
}

// ---- p-adic ----------------------------------------------------------------

ExactCount padic_states(std::uint64_t p, unsigned n) {
    return ipow(ExactCount(static_cast<unsigned long>(p)), 6UL * n);
}

std::uint64_t checked_modulus(std::uint64_t p, unsigned n, const WorkBudget& budget) {
    if (n < 1) throw InvalidInput("p-adic exponent n must be >= 1");
    if (!is_prime(p)) throw NotPrime(p);
    budget.require(padic_states(p, n), "p-adic brute force");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < n; ++i) q *= p;  // p^(6n) fits the budget, so q is small
    return q;
}

unsigned valuation_of(std::uint64_t x, std::uint64_t p, unsigned n) {
    if (x == 0) return n;
    unsigned v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

/// Visits every solution of the system over Z/qZ. The first equation is
/// tested before (a4, b4) is enumerated; all p^(6n) tuples are covered.
template <typename Fn>
void for_each_padic_solution(std::uint64_t q, std::uint64_t a2_lo, std::uint64_t a2_hi, Fn&& fn) {
    for (std::uint64_t a2 = a2_lo; a2 < a2_hi; ++a2)
        for (std::uint64_t a3 = 0; a3 < q; ++a3)
            for (std::uint64_t b2 = 0; b2 < q; ++b2)
                for (std::uint64_t b3 = 0; b3 < q; ++b3) {
                    if ((a2 * b3) % q != (a3 * b2) % q) continue;
                    for (std::uint64_t a4 = 0; a4 < q; ++a4)
                        for (std::uint64_t b4 = 0; b4 < q; ++b4) {
                            if ((a2 * b4) % q == (a4 * b2) % q && (a3 * b4) % q == (a4 * b3) % q) {
                                fn(a2, a3, a4, b2, b3, b4);
                            }
                        }
                }
}

}  // namespace

ExactCount brute_commuting_count(int d, const BoxParam& box, const WorkBudget& budget) {
    if (d == 2) return brute_2x2(box, budget);
    if (d == 3) return brute_3x3(box, budget);
    throw UnsupportedDimension("brute force supports d in {2, 3}, got " + std::to_string(d));
}

void for_each_commuting_3x3(const BoxParam& box, const WorkBudget& budget,
                            const std::function<void(const IntMatrix&, const IntMatrix&)>& visit) {
    budget.require(states_3x3(box), "3x3 brute force");
    const std::int64_t n = box.n(), side = box.side();
    const KeyCodec codec(n);
    std::uint64_t matrices = 1;
    for (int i = 0; i < 9; ++i) matrices *= static_cast<std::uint64_t>(side);

    std::vector<std::pair<std::int64_t, std::array<std::int64_t, kHalfHigh>>> high;
    std::vector<std::int64_t> a(9), b(9);
    for (std::uint64_t ia = 0; ia < matrices; ++ia) {
        decode(ia, n, side, a.data(), 9);
        const auto keys = basis_keys(a.data(), codec);
        high.clear();
        enumerate_half(n, keys.data() + kHalfLow, kHalfHigh, [&](std::int64_t s, const std::int64_t* v) {
            high.push_back({s, {v[0], v[1], v[2], v[3]}});
        });
        std::stable_sort(high.begin(), high.end(),
                         [](const auto& x, const auto& y) { return x.first < y.first; });
        const IntMatrix am(3, a);
        enumerate_half(n, keys.data(), kHalfLow, [&](std::int64_t s, const std::int64_t* v) {
            auto range = std::equal_range(
                high.begin(), high.end(), std::make_pair(-s, std::array<std::int64_t, kHalfHigh>{}),
                [](const auto& x, const auto& y) { return x.first < y.first; });
            for (auto it = range.first; it != range.second; ++it) {
                for (int i = 0; i < kHalfLow; ++i) b[static_cast<std::size_t>(i)] = v[i];
                for (int i = 0; i < kHalfHigh; ++i)
                    b[static_cast<std::size_t>(kHalfLow + i)] = it->second[static_cast<std::size_t>(i)];
                visit(am, IntMatrix(3, b));
            }
        });
    }
}

ExactCount brute_padic_solutions(std::uint64_t p, unsigned n, const WorkBudget& budget) {
    const std::uint64_t q = checked_modulus(p, n, budget);
    return parallel_sum(q, [&](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t count = 0;
        for_each_padic_solution(q, lo, hi, [&](auto...) { ++count; });
        return ExactCount(static_cast<unsigned long>(count));
    });
}

ValuationClassCounts brute_valuation_classes(std::uint64_t p, unsigned n, const WorkBudget& budget) {
    const std::uint64_t q = checked_modulus(p, n, budget);
    std::vector<std::uint64_t> hist(n + 1, 0);
    for_each_padic_solution(q, 0, q, [&](std::uint64_t a2, std::uint64_t a3, std::uint64_t a4,
                                         std::uint64_t b2, std::uint64_t b3, std::uint64_t b4) {
        unsigned h = n;
        for (std::uint64_t x : {a2, a3, a4, b2, b3, b4}) h = std::min(h, valuation_of(x, p, n));
        ++hist[h];
    });
    ValuationClassCounts out{PadicParams(p, n), {}, std::nullopt};
    for (auto c : hist) out.classes.emplace_back(static_cast<unsigned long>(c));
    return out;
}

RTable brute_r_table(const BoxParam& box, const WorkBudget& budget) {
    budget.require(side_power(box, 4), "r-table brute force");
    const std::int64_t n = box.n();
    const std::int64_t span = 2 * n * n;
    std::vector<std::uint64_t> dense(static_cast<std::size_t>(2 * span + 1), 0);
    for (std::int64_t a1 = -n; a1 <= n; ++a1)
        for (std::int64_t a2 = -n; a2 <= n; ++a2)
            for (std::int64_t a3 = -n; a3 <= n; ++a3)
                for (std::int64_t a4 = -n; a4 <= n; ++a4)
                    ++dense[static_cast<std::size_t>(a1 * a2 - a3 * a4 + span)];
    RTable out{box, {}};
    for (std::int64_t h = -span; h <= span; ++h) {
        if (const auto c = dense[static_cast<std::size_t>(h + span)]; c != 0) {
            out.values.emplace(h, ExactCount(static_cast<unsigned long>(c)));
        }
    }
    return out;
}

}  // namespace commucount::oracle
