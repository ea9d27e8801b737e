#pragma once

/**
 * Acceptance checks, shared by `commucount verify` and the acceptance test
 * binary. Each criterion prints its individual checks and ends with one
 * PASS/FAIL line.
 */

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace commucount::cli {

enum class Suite { quick, full };

struct CriterionOutcome {
    bool passed = true;
    std::vector<std::string> lines;

    /// Records a check; a false `ok` fails the criterion.
    void check(bool ok, const std::string& message);
    /// Records an informational line.
    void note(const std::string& message);
};

struct Criterion {
    int id;
    std::string name;
    std::function<CriterionOutcome(Suite)> run;
};

const std::vector<Criterion>& criteria();

struct VerifySummary {
    int passed = 0;
    int failed = 0;
    std::vector<int> failed_ids;
};

/// Runs the selected criteria (all when `only` is empty).
VerifySummary run_verify(Suite suite, const std::vector<int>& only, std::ostream& out);

}  // namespace commucount::cli
