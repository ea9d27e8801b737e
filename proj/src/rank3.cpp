#include "commucount/rank3.hpp"

#include "commucount/oracle.hpp"

namespace commucount {

namespace {

void require_dim(const IntMatrix& a, const IntMatrix& b, int d) {
    if (a.dim() != b.dim()) throw DimensionMismatch("pair has different dimensions");
    if (d != 0 && a.dim() != d) {
        throw DimensionMismatch("expected " + std::to_string(d) + "x" + std::to_string(d) + " matrices");
    }
}

/// Fraction-free elimination in place; returns the rank. Every intermediate
/// entry is a minor of the input, so the divisions are exact.
template <typename T>
int bareiss_rank(std::vector<std::vector<T>>& m) {
    const std::size_t rows = m.size();
    if (rows == 0) return 0;
    const std::size_t cols = m[0].size();
    std::size_t rank = 0;
    T prev = 1;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t k = c + 1; k < cols; ++k) {
                m[r][k] = (m[rank][c] * m[r][k] - m[r][c] * m[rank][k]) / prev;
            }
            m[r][c] = 0;
        }
        prev = m[rank][c];
        ++rank;
    }
    return static_cast<int>(rank);
}

std::vector<std::vector<ExactCount>> widen(const std::vector<std::vector<std::int64_t>>& rows) {
    std::vector<std::vector<ExactCount>> out;
    for (const auto& row : rows) {
        std::vector<ExactCount> r;
        for (auto x : row) r.emplace_back(static_cast<long>(x));
        out.push_back(std::move(r));
    }
    return out;
}

int small_rank(const CommutatorSystem& sys) {
    std::vector<std::vector<i128>> m;
    for (const auto& row : sys.m) m.emplace_back(row.begin(), row.end());
    return bareiss_rank(m);
}

}  // namespace

IntMatrix commutator(const IntMatrix& a, const IntMatrix& b) {
    require_dim(a, b, 0);
    return a * b - b * a;
}

std::int64_t cross_det(const IntMatrix& a, const IntMatrix& b, int i, int j) {
    require_dim(a, b, 0);
    return a.label(i) * b.label(j) - a.label(j) * b.label(i);
}

CommutatorSystem build_system_3x3(const IntMatrix& a, const IntMatrix& b) {
    require_dim(a, b, 3);
    const auto A = [&](int k) { return a.label(k); };
    const auto B = [&](int k) { return b.label(k); };
    const auto D = [&](int i, int j) { return cross_det(a, b, i, j); };
    CommutatorSystem sys{};
    sys.m = {{{-B(2), A(2), 0, 0},
              {B(4), -A(4), 0, 0},
              {0, 0, -B(3), A(3)},
              {0, 0, B(7), -A(7)},
              {B(8), -A(8), -B(8), A(8)},
              {-B(6), A(6), B(6), -A(6)}}};
    sys.y = {D(8, 3), D(7, 6), D(6, 2), D(4, 8), D(7, 2), D(4, 3)};
    sys.rank = small_rank(sys);
    return sys;
}

std::array<std::int64_t, 6> CommutatorSystem::residual(const IntMatrix& a, const IntMatrix& b) const {
    require_dim(a, b, 3);
    const std::array<std::int64_t, 4> x = {a.label(5) - a.label(1), b.label(5) - b.label(1),
                                           a.label(9) - a.label(1), b.label(9) - b.label(1)};
    std::array<std::int64_t, 6> out{};
    for (std::size_t r = 0; r < 6; ++r) {
        std::int64_t s = -y[r];
        for (std::size_t c = 0; c < 4; ++c) s += m[r][c] * x[c];
        out[r] = s;
    }
    return out;
}

std::array<std::int64_t, 3> check_offdiag_constraint(const IntMatrix& a, const IntMatrix& b) {
    require_dim(a, b, 3);
    return {cross_det(a, b, 2, 4), cross_det(a, b, 7, 3), cross_det(a, b, 6, 8)};
}

OffDiagonalSystem build_offdiag_system(const IntMatrix& a, const IntMatrix& b) {
    require_dim(a, b, 0);
    const int d = a.dim();
    OffDiagonalSystem sys;
    const auto add_row = [&](int i, int j) {
        // (AB - BA)_ij = a_ij (beta_j - beta_i) - b_ij (alpha_j - alpha_i)
        //              + sum_{k != i, j} (a_ik b_kj - b_ik a_kj).
        std::vector<std::int64_t> row(static_cast<std::size_t>(2 * (d - 1)), 0);
        const auto put = [&](int idx, std::int64_t alpha, std::int64_t beta) {
            if (idx == 0) return;  // alpha_1 = beta_1 = 0
            row[static_cast<std::size_t>(2 * (idx - 1))] += alpha;
            row[static_cast<std::size_t>(2 * (idx - 1) + 1)] += beta;
        };
        put(i, b(i, j), -a(i, j));
        put(j, -b(i, j), a(i, j));
        std::int64_t rest = 0;
        for (int k = 0; k < d; ++k) {
            if (k != i && k != j) rest += a(i, k) * b(k, j) - b(i, k) * a(k, j);
        }
        sys.m.push_back(std::move(row));
        sys.y.push_back(-rest);
        sys.positions.emplace_back(i + 1, j + 1);
    };
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            add_row(i, j);
            add_row(j, i);
        }
    return sys;
}

int exact_rank(const std::vector<std::vector<ExactCount>>& rows) {
    auto m = rows;
    return bareiss_rank(m);
}

int exact_rank(const std::vector<std::vector<std::int64_t>>& rows) { return exact_rank(widen(rows)); }

ExactCount exact_det(const std::vector<std::vector<std::int64_t>>& rows) {
    const std::size_t n = rows.size();
    for (const auto& r : rows)
        if (r.size() != n) throw DimensionMismatch("determinant of a non-square matrix");
    if (n == 0) return 1;
    auto m = widen(rows);
    int sign = 1;
    ExactCount prev = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && m[pivot][c] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != c) {
            std::swap(m[pivot], m[c]);
            sign = -sign;
        }
        for (std::size_t r = c + 1; r < n; ++r) {
            for (std::size_t k = c + 1; k < n; ++k) m[r][k] = (m[c][c] * m[r][k] - m[r][c] * m[c][k]) / prev;
            m[r][c] = 0;
        }
        prev = m[c][c];
    }
    return sign * m[n - 1][n - 1];
}

ExactCount RankClassCounts::total() const {
    ExactCount sum = 0;
    for (const auto& c : s) sum += c;
    return sum;
}

ClassificationReport classify_commuting_3x3(const BoxParam& box, const WorkBudget& budget) {
    std::array<std::uint64_t, 5> counts{};
    ClassificationReport out;
    oracle::for_each_commuting_3x3(box, budget, [&](const IntMatrix& a, const IntMatrix& b) {
        const CommutatorSystem sys = build_system_3x3(a, b);
        ++counts[static_cast<std::size_t>(sys.rank)];
        for (auto r : sys.residual(a, b)) {
            if (r != 0) {
                ++out.system_violations;
                break;
            }
        }
        if (sys.rank >= 2) {
            const auto t = check_offdiag_constraint(a, b);
            const bool equal = t[0] == t[1] && t[1] == t[2];
            const bool zero = equal && t[0] == 0;
            if (!equal || (sys.rank <= 3 && !zero)) ++out.constraint_violations;
        }
    });
    for (std::size_t i = 0; i < 5; ++i) out.counts.s[i] = static_cast<unsigned long>(counts[i]);
    return out;
}

ExactCount lower_bound_E(int d, const BoxParam& box) {
    if (d < 1 || d > 6) throw InvalidInput("E_d(N) needs 1 <= d <= 6");
    const std::int64_t n = box.n();
    ExactCount sum = ipow(ExactCount(static_cast<long>(2 * n + 1)), static_cast<unsigned long>(d));
    for (std::int64_t x = 1; x <= 2 * n; ++x) {
        sum += 2 * ipow(ExactCount(static_cast<long>(2 * n + 1 - x)), static_cast<unsigned long>(d));
    }
    return sum;
}

ExactCount lower_bound_certificate(int d, const BoxParam& box) {
    if (d != 2 && d != 3) throw UnsupportedDimension("certificate supports d in {2, 3}");
    const ExactCount two_n = 2 * box.n();
    const ExactCount side = box.side();
    const auto dd = static_cast<unsigned long>(d * d);
    return ipow(two_n, dd - static_cast<unsigned long>(d)) * lower_bound_E(d, box) + 2 * ipow(side, dd + 1) -
           side * side;
}

DemoReport inconsistency_demo_4x4(const DemoInputs& in) {
    const IntMatrix a(4, {in.a1, 0, 0, 0, 1, in.a6, 0, 0, 1, in.a10, in.a11, 3, 1, 1, 2, in.a16});
    const IntMatrix b(4, {in.b1, 1, 1, -2, 0, in.b6, 0, 1, 0, in.b10, in.b11, 2, 0, 0, 1, in.b16});
    const IntMatrix c = commutator(a, b);
    bool diagonal = true;
    for (int i = 0; i < 4; ++i) diagonal = diagonal && c(i, i) == 0;

    const OffDiagonalSystem sys = build_offdiag_system(a, b);
    const auto& row7 = sys.m[6];
    const bool zero_row = std::all_of(row7.begin(), row7.end(), [](std::int64_t x) { return x == 0; });

    const std::vector<std::vector<std::int64_t>> first_six(sys.m.begin(), sys.m.begin() + 6);
    auto augmented = sys.m;
    for (std::size_t r = 0; r < augmented.size(); ++r) augmented[r].push_back(sys.y[r]);
    const int rank_m = exact_rank(sys.m);
    const int rank_aug = exact_rank(augmented);
    return DemoReport{a, b, diagonal, zero_row, sys.y[6], exact_det(first_six), rank_m, rank_aug, rank_aug > rank_m};
}

}  // namespace commucount
