#pragma once

/**
 * Exact c_2(N) in O(N^2) time by grouping commuting 2x2 pairs by the line
 * through the origin that carries their off-diagonal vectors.
 *
 * Write A = [[a1, a2], [a3, a4]], B likewise, v2 = (a2, b2), v3 = (a3, b3)
 * and D = (a4 - a1, b4 - b1). AB = BA holds exactly when v2, v3 and D are
 * pairwise parallel (2x2 determinants vanish). So either v2 = v3 = 0 and D
 * is free, or the nonzero vectors among v2, v3 span a single line p and D
 * lies on p (possibly D = 0). A difference vector D is realised by
 * (2N+1-|Da|)(2N+1-|Db|) choices of (a1, a4, b1, b4).
 */

#include "commucount/core.hpp"
#include "commucount/zeta.hpp"

namespace commucount {

struct DirectionWeights {
    PrimitiveDirection direction;
    /// Nonzero multiples of the direction inside S^2: 2 floor(N/m).
    ExactCount n_p;
    /// Weighted count of nonzero difference vectors parallel to the direction.
    ExactCount w_p;
};

/// Pairs with a2 b2 a3 b3 = 0 versus the rest.
struct GammaSplit {
    ExactCount degenerate;
    ExactCount nondegenerate;

    [[nodiscard]] ExactCount total() const { return degenerate + nondegenerate; }
};

/// Solutions (x, y) in S^2 of u x = v y != 0, i.e. nonzero multiples of p.
ExactCount line_count(const BoxParam& box, const PrimitiveDirection& p);

/// Sum over z != 0 with |z| m <= 2N of (2N+1-|z u|)(2N+1-|z v|).
ExactCount weighted_line_sum(const BoxParam& box, const PrimitiveDirection& p);

DirectionWeights direction_weights(const BoxParam& box, const PrimitiveDirection& p);

/// Exact c_2(N). Throws BudgetExceeded when N^2 exceeds the budget.
ExactCount count_commuting_2x2(const BoxParam& box, const WorkBudget& budget = {});

/// Exact split of c_2(N), computed in the same direction pass.
GammaSplit gamma_split(const BoxParam& box, const WorkBudget& budget = {});

/// K (2N)^5 with K = 10 zeta(2) / (3 zeta(3)).
HighReal asymptotic_main_term_2(const BoxParam& box);

/// c / (2N)^5 as a double, the quantity that tends to K.
double normalized_2x2(const ExactCount& count, const BoxParam& box);

}  // namespace commucount
