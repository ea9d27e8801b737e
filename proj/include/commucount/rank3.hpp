#pragma once

/**
 * The linear system behind 3x3 commuting pairs, its rank classification,
 * lower-bound certificates for c_d(N), and a 4x4 pair whose off-diagonal
 * system is inconsistent although every diagonal commutator entry vanishes.
 *
 * Entries are labelled 1..d^2 row-major, so for d = 3
 *   A = [[a1, a2, a3], [a4, a5, a6], [a7, a8, a9]]
 * and D(i, j) = a_i b_j - a_j b_i.
 */

#include <array>
#include <cstdint>
#include <vector>

#include "commucount/core.hpp"

namespace commucount {

/// AB - BA. Throws DimensionMismatch.
IntMatrix commutator(const IntMatrix& a, const IntMatrix& b);

/// a_i b_j - a_j b_i with 1-based row-major labels. Throws IndexOutOfRange.
std::int64_t cross_det(const IntMatrix& a, const IntMatrix& b, int i, int j);

/// Off-diagonal equations of a 3x3 pair as M X = Y with
/// X = (a5 - a1, b5 - b1, a9 - a1, b9 - b1):
///   ( -b2,  a2,   0,   0 )          D(8,3)
///   (  b4, -a4,   0,   0 )          D(7,6)
///   (   0,   0, -b3,  a3 )   X  =   D(6,2)
///   (   0,   0,  b7, -a7 )          D(4,8)
///   (  b8, -a8, -b8,  a8 )          D(7,2)
///   ( -b6,  a6,  b6, -a6 )          D(4,3)
struct CommutatorSystem {
    std::array<std::array<std::int64_t, 4>, 6> m;
    std::array<std::int64_t, 6> y;
    int rank;

    /// M X - Y for the diagonal differences of A and B.
    [[nodiscard]] std::array<std::int64_t, 6> residual(const IntMatrix& a, const IntMatrix& b) const;
};

CommutatorSystem build_system_3x3(const IntMatrix& a, const IntMatrix& b);

/// (D(2,4), D(7,3), D(6,8)); all three agree for a commuting pair, since the
/// diagonal of AB - BA is (D(2,4) - D(7,3), D(6,8) - D(2,4), D(7,3) - D(6,8)).
std::array<std::int64_t, 3> check_offdiag_constraint(const IntMatrix& a, const IntMatrix& b);

/// Off-diagonal system for any d with X = (a_22 - a_11, b_22 - b_11, ...,
/// a_dd - a_11, b_dd - b_11) and rows ordered (1,2), (2,1), (1,3), (3,1),
/// ..., (d-1,d), (d,d-1). Row (i, j) states (AB - BA)_ij = row . X - y_ij = 0.
struct OffDiagonalSystem {
    std::vector<std::vector<std::int64_t>> m;
    std::vector<std::int64_t> y;
    std::vector<std::pair<int, int>> positions;  // 1-based (i, j) per row
};

OffDiagonalSystem build_offdiag_system(const IntMatrix& a, const IntMatrix& b);

/// Exact rank over Q by fraction-free elimination.
int exact_rank(const std::vector<std::vector<ExactCount>>& rows);
int exact_rank(const std::vector<std::vector<std::int64_t>>& rows);
/// Exact determinant of a square matrix.
ExactCount exact_det(const std::vector<std::vector<std::int64_t>>& rows);

struct RankClassCounts {
    /// s[i] = |S_i|, pairs whose M has rank i.
    std::array<ExactCount, 5> s;

    [[nodiscard]] ExactCount total() const;
};

struct ClassificationReport {
    RankClassCounts counts;
    /// Commuting pairs where M X != Y.
    std::uint64_t system_violations = 0;
    /// Rank >= 2 pairs whose three cross-determinants differ, or rank 2..3
    /// pairs where they are not all zero.
    std::uint64_t constraint_violations = 0;
};

/// Classifies every commuting pair from the brute-force enumeration.
ClassificationReport classify_commuting_3x3(const BoxParam& box, const WorkBudget& budget = {});

/// E_d(N) = sum_{x=-2N}^{2N} (2N+1-|x|)^d, for 1 <= d <= 6.
ExactCount lower_bound_E(int d, const BoxParam& box);

/// (2N)^(d^2-d) E_d(N) + 2 (2N+1)^(d^2+1) - (2N+1)^2 for d in {2, 3}.
/// Throws UnsupportedDimension.
ExactCount lower_bound_certificate(int d, const BoxParam& box);

struct DemoInputs {
    std::int64_t a1 = 0, a6 = 0, a11 = 0, a16 = 0;
    std::int64_t b1 = 0, b6 = 0, b11 = 0, b16 = 0;
    /// Free off-diagonal entries at position (3, 2).
    std::int64_t a10 = 0, b10 = 0;
};

struct DemoReport {
    IntMatrix a;
    IntMatrix b;
    bool diagonal_vanishes;
    /// Row 7 of M, the (2, 3) equation.
    bool seventh_row_zero;
    std::int64_t seventh_y;
    /// Determinant of the first six rows.
    ExactCount first_six_det;
    int rank_m;
    int rank_augmented;
    /// rank [M | Y] > rank M.
    bool infeasible;
};

/// A = [[a1, 0, 0, 0], [1, a6, 0, 0], [1, a10, a11, 3], [1, 1, 2, a16]],
/// B = [[b1, 1, 1, -2], [0, b6, 0, 1], [0, b10, b11, 2], [0, 0, 1, b16]].
DemoReport inconsistency_demo_4x4(const DemoInputs& inputs);

}  // namespace commucount
