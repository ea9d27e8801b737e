// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <iostream>

#include <CLI11.hpp>

#include "commucount/cli/verify.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Acceptance checks"};
    std::string suite = "full";
    std::vector<int> only;
    app.add_option("--suite", suite, "quick | full")->check(CLI::IsMember({"quick", "full"}));
    app.add_option("--only", only, "Criterion numbers to run");
    CLI11_PARSE(app, argc, argv);

    using commucount::cli::Suite;
    const auto summary =
        commucount::cli::run_verify(suite == "quick" ? Suite::quick : Suite::full, only, std::cout);
    std::cout << summary.passed << " passed, " << summary.failed << " failed\n";
    return summary.failed == 0 ? 0 : 1;
}
