#include "commucount/cli/app.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>

#include <CLI11.hpp>

#include "commucount/cli/cache.hpp"
#include "commucount/cli/result.hpp"
#include "commucount/cli/verify.hpp"
#include "commucount/count2.hpp"
#include "commucount/divisor.hpp"
#include "commucount/oracle.hpp"
#include "commucount/padic.hpp"
#include "commucount/rank3.hpp"

namespace commucount::cli {

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string str(const ExactCount& x) { return to_decimal(x); }
std::string str(const ExactRatio& x) { return to_string(x); }
std::string str(bool b) { return b ? "true" : "false"; }
template <typename T>
std::string num(T x) {
    return std::to_string(x);
}

struct Globals {
    std::string format = "json";
    bool no_cache = false;
    std::uint64_t budget = WorkBudget::kDefault;
    unsigned threads = 0;
};

/// Runs one computation, consulting and filling the cache when allowed, and
/// prints its results.
class Emitter {
public:
    Emitter(const Globals& globals, std::ostream& out, std::ostream& err) : globals_(globals), out_(out), err_(err) {}

    void single(const std::string& command, std::map<std::string, std::string> params,
                const std::function<void(CommandResult&)>& compute, bool cacheable = true) {
        const auto t0 = std::chrono::steady_clock::now();
        std::optional<ResultCache> cache;
        const std::string key = ResultCache::key_for(command, params);
        if (cacheable && !globals_.no_cache) {
            cache.emplace(ResultCache::default_directory(), kVersion, err_);
            if (auto hit = cache->lookup(key)) {
                hit->runtime_ms = elapsed(t0);
                print(*hit);
                return;
            }
        }
        CommandResult result{command, std::move(params), "", {}, 0};
        compute(result);
        result.runtime_ms = elapsed(t0);
        if (cache) cache->store(key, result);
        print(result);
    }

    void print(const CommandResult& result) {
        if (globals_.format == "csv") {
            if (!header_done_) out_ << csv_header() << "\n";
            header_done_ = true;
            for (const auto& row : to_csv_rows(result)) out_ << row << "\n";
        } else {
            out_ << to_json(result).dump() << "\n";
        }
    }

private:
    static std::int64_t elapsed(std::chrono::steady_clock::time_point t0) {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    }

    const Globals& globals_;
    std::ostream& out_;
    std::ostream& err_;
    bool header_done_ = false;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact counts of commuting integer matrix pairs and related divisor sums"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--no-cache", g.no_cache, "Recompute instead of reading the result cache");
    app.add_option("--budget", g.budget, "Maximum enumerated states")->check(CLI::PositiveNumber);
    app.add_option("--threads", g.threads, "Worker threads (overrides COMMUCOUNT_THREADS)")
        ->check(CLI::PositiveNumber);

    std::function<int()> action;
    auto sub = [&](const char* name, const char* help) {
        auto* s = app.add_subcommand(name, help);
        s->fallthrough();
        return s;
    };

    std::int64_t n = 0, h = 0, x = 0;
    unsigned k = 0, pn = 0;
    std::uint64_t p = 0, seed = 0;
    int d = 0;
    bool split = false, classify = false, all = false, zero = false, lemma = false;
    std::string method, set_file, suite = "quick";
    std::vector<int> only;

    auto* count2 = sub("count2", "Exact c_2(N)");
    count2->add_option("--n", n, "Entry bound N")->required();
    count2->add_flag("--split", split, "Also report the degenerate / nondegenerate split");

    auto* count3 = sub("count3", "Exact c_3(N) by brute force");
    count3->add_option("--n", n, "Entry bound N")->required();
    count3->add_flag("--classify", classify, "Classify pairs by the rank of the off-diagonal system");

    auto* padic = sub("padic", "Commuting 2x2 pairs over Z/p^nZ");
    padic->add_option("--p", p, "Prime p")->required();
    padic->add_option("--n", pn, "Exponent n")->required();
    padic->add_option("--method", method, "fast | brute | classes | degenerate")
        ->required()
        ->check(CLI::IsMember({"fast", "brute", "classes", "degenerate"}));

    auto* divisor = sub("divisor", "Restricted divisor correlation r_N(h)");
    divisor->add_option("--n", n, "Entry bound N")->required();
    auto* h_opt = divisor->add_option("--h", h, "Single shift h");
    auto* all_opt = divisor->add_flag("--all", all, "Every h with r_N(h) > 0");
    auto* zero_opt = divisor->add_flag("--zero", zero, "r_N(0) (default)");
    h_opt->excludes(all_opt)->excludes(zero_opt);
    all_opt->excludes(zero_opt);

    auto* moments = sub("moments", "I_k(N) = sum_h r_N(h)^k");
    moments->add_option("--n", n, "Entry bound N")->required();
    moments->add_option("--k", k, "Moment order k")->required()->check(CLI::PositiveNumber);

    auto* dx = sub("dx", "D_X(h) = sum_{n <= X} tau(n) tau(n + h)");
    dx->add_option("--x", x, "X")->required();
    dx->add_option("--h", h, "Shift h")->required();

    auto* doubling = sub("doubling", "Doubling constant of a finite rational set");
    doubling->add_option("--set-file", set_file, "One rational per line")->required();
    doubling->add_flag("--lemma61", lemma, "Also report sup r(n), r(0) and I_3 of the set");

    auto* lowerbound = sub("lowerbound", "Lower-bound certificate for c_d(N)");
    lowerbound->add_option("--d", d, "Dimension 2 or 3")->required()->check(CLI::IsMember({2, 3}));
    lowerbound->add_option("--n", n, "Entry bound N")->required();

    auto* demo = sub("demo4x4", "4x4 pair with vanishing diagonal commutator and inconsistent system");
    auto* seed_opt = demo->add_option("--seed", seed, "Sample diagonal entries in [-3, 3] from this seed");

    auto* verify = sub("verify", "Run the acceptance checks");
    verify->add_option("--suite", suite, "quick | full")->check(CLI::IsMember({"quick", "full"}));
    verify->add_option("--only", only, "Criterion numbers to run");

    std::vector<std::string> argv_store{"commucount"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (g.threads > 0) set_thread_count(g.threads);
    const WorkBudget budget{g.budget};
    Emitter emit(g, out, err);

    try {
        if (*count2) {
            emit.single("count2", {{"n", num(n)}, {"split", str(split)}}, [&](CommandResult& r) {
                const BoxParam box(n);
                const GammaSplit gs = gamma_split(box, budget);
                r.value = str(gs.total());
                if (n > 0) {
                    const double ratio = normalized_2x2(gs.total(), box);
                    const double kk = constants().k2.get_d();
                    r.add("normalized", fmt(ratio));
                    r.add("K", fmt(kk));
                    r.add("deviation", fmt(std::fabs(ratio - kk)));
                }
                if (split) {
                    r.add("degenerate", str(gs.degenerate));
                    r.add("nondegenerate", str(gs.nondegenerate));
                    if (n > 0) {
                        r.add("degenerate_normalized", fmt(normalized_2x2(gs.degenerate, box)));
                        r.add("nondegenerate_normalized", fmt(normalized_2x2(gs.nondegenerate, box)));
                    }
                }
            });
        } else if (*count3) {
            emit.single("count3", {{"n", num(n)}, {"classify", str(classify)}}, [&](CommandResult& r) {
                const BoxParam box(n);
                if (!classify) {
                    r.value = str(oracle::brute_commuting_count(3, box, budget));
                    return;
                }
                const ClassificationReport report = classify_commuting_3x3(box, budget);
                r.value = str(report.counts.total());
                for (std::size_t i = 0; i < 5; ++i) r.add("S" + num(i), str(report.counts.s[i]));
                r.add("system_violations", num(report.system_violations));
                r.add("constraint_violations", num(report.constraint_violations));
            });
        } else if (*padic) {
            emit.single("padic", {{"p", num(p)}, {"n", num(pn)}, {"method", method}}, [&](CommandResult& r) {
                const PadicParams params(p, pn);
                const ExactCount free_diag = ipow(ExactCount(static_cast<unsigned long>(p)), 2UL * pn);
                if (method == "fast") {
                    const ExactCount count = fast_padic_count(params);
                    const ExactRatio density = make_ratio(count, free_diag * free_diag * free_diag);
                    const ExactRatio main = theorem13_main(params);
                    r.value = str(count);
                    r.add("solutions", str(ExactCount(count / free_diag)));
                    r.add("density", str(density));
                    r.add("main_term", str(main));
                    r.add("sigma_p", str(sigma_p(p)));
                    r.add("error", str(ExactRatio(abs(density - main))));
                } else if (method == "brute") {
                    const ExactCount solutions = oracle::brute_padic_solutions(p, pn, budget);
                    r.value = str(ExactCount(free_diag * solutions));
                    r.add("solutions", str(solutions));
                } else if (method == "classes") {
                    const ValuationClassCounts brute = oracle::brute_valuation_classes(p, pn, budget);
                    const ValuationClassCounts fast = valuation_classes_fast(params);
                    r.value = str(brute.total());
                    for (std::size_t i = 0; i < brute.classes.size(); ++i) r.add("h" + num(i), str(brute.classes[i]));
                    for (std::size_t i = 0; i < fast.classes.size(); ++i) {
                        r.add("fast_h" + num(i), str(fast.classes[i]));
                    }
                    r.add("fast_residual", str(*fast.residual));
                } else {
                    const ExactCount count = degenerate_padic_count(params, budget);
                    const double q = static_cast<double>(params.q());
                    r.value = str(count);
                    r.add("bound_ratio", fmt(ExactRatio(count).get_d() / (double(pn) * pn * std::pow(q, 3.5))));
                }
            });
        } else if (*divisor) {
            if (all) {
                const auto t0 = std::chrono::steady_clock::now();
                const RTable table = r_table(BoxParam(n), budget);
                const auto ms =
                    std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
                        .count();
                for (const auto& [hh, r] : table.values) {
                    emit.print(CommandResult{"divisor", {{"n", num(n)}, {"h", num(hh)}}, str(r), {}, ms});
                }
            } else if (h_opt->count() > 0) {
                emit.single("divisor", {{"n", num(n)}, {"h", num(h)}}, [&](CommandResult& r) {
                    const BoxParam box(n);
                    r.value = str(r_value(box, h));
                    if (h != 0 && std::abs(h) <= 2 * n * n) {
                        r.add("divisor_sum", str(restricted_divisor_sum(h, n)));
                        const ExactRatio ratio = divisor_bound_check(box, h);
                        r.add("bound_ratio", str(ratio));
                        r.add("bound_ratio_decimal", fmt(ratio.get_d()));
                    }
                });
            } else {
                emit.single("divisor", {{"n", num(n)}, {"h", "0"}, {"method", "zero"}}, [&](CommandResult& r) {
                    const ExactCount r0 = r_zero(BoxParam(n), budget);
                    r.value = str(r0);
                    if (n > 1) {
                        const double nn = static_cast<double>(n);
                        const double c = constants().r0_constant.get_d();
                        r.add("leading_constant", fmt(c));
                        r.add("normalized_deviation",
                              fmt((ExactRatio(r0).get_d() - c * nn * nn * std::log(nn)) / (nn * nn)));
                    }
                });
            }
        } else if (*moments) {
            emit.single("moments", {{"n", num(n)}, {"k", num(k)}}, [&](CommandResult& r) {
                const BoxParam box(n);
                const ExactCount value = moment(box, k, budget);
                r.value = str(value);
                if (n > 0) {
                    const auto e = 2UL * k + 2;
                    r.add("normalized_N", fmt(make_ratio(value, ipow(ExactCount(static_cast<long>(n)), e)).get_d()));
                    r.add("normalized_2N",
                          fmt(make_ratio(value, ipow(ExactCount(static_cast<long>(2 * n)), e)).get_d()));
                }
            });
        } else if (*dx) {
            emit.single("dx", {{"x", num(x)}, {"h", num(h)}}, [&](CommandResult& r) {
                r.value = str(classic_divisor_correlation(x, h));
                const auto root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(x))));
                if (root * root == x && root <= 7071 && h <= 2 * root * root) {
                    r.add("r_N(h)", str(r_value(BoxParam(root), h)));
                }
            });
        } else if (*doubling) {
            emit.single(
                "doubling", {{"set_file", set_file}, {"lemma61", str(lemma)}},
                [&](CommandResult& r) {
                    const FiniteRealSet set = read_set_file(set_file);
                    const DoublingReport rep = doubling_report(set);
                    r.value = str(rep.doubling);
                    r.add("set_size", num(rep.set_size));
                    r.add("sumset_size", num(rep.sumset_size));
                    if (lemma) {
                        const Lemma61Report l = lemma61_check(set, budget);
                        r.add("sup_r", str(l.sup_r));
                        r.add("r0", str(l.r0));
                        r.add("i3", str(l.i3));
                        r.add("sup_le_r0", str(l.sup_r <= l.r0));
                        r.add("small_doubling_ratio", fmt(small_doubling_ratio(l, rep)));
                    }
                },
                false);
        } else if (*lowerbound) {
            emit.single("lowerbound", {{"d", num(d)}, {"n", num(n)}}, [&](CommandResult& r) {
                const BoxParam box(n);
                const ExactCount cert = lower_bound_certificate(d, box);
                const ExactCount e = lower_bound_E(d, box);
                r.value = str(cert);
                r.add("E_d", str(e));
                if (n > 0) {
                    const auto pow2n = ipow(ExactCount(static_cast<long>(2 * n)), static_cast<unsigned long>(d + 1));
                    r.add("E_d_ratio", fmt(make_ratio(e * (d + 1), 2 * pow2n).get_d()));
                }
                if (d == 2) {
                    const ExactCount count = count_commuting_2x2(box, budget);
                    r.add("c2", str(count));
                    r.add("certificate_holds", str(cert <= count));
                }
            });
        } else if (*demo) {
            std::map<std::string, std::string> params;
            if (seed_opt->count() > 0) params["seed"] = num(seed);
            emit.single("demo4x4", params, [&](CommandResult& r) {
                DemoInputs in;
                if (seed_opt->count() > 0) {
                    std::mt19937_64 rng(seed);
                    std::uniform_int_distribution<std::int64_t> pick(-3, 3);
                    for (auto* v : {&in.a1, &in.a6, &in.a11, &in.a16, &in.b1, &in.b6, &in.b11, &in.b16}) *v = pick(rng);
                }
                const DemoReport rep = inconsistency_demo_4x4(in);
                r.value = num(rep.seventh_y);
                r.add("diagonal", num(in.a1) + "," + num(in.a6) + "," + num(in.a11) + "," + num(in.a16) + ";" +
                                      num(in.b1) + "," + num(in.b6) + "," + num(in.b11) + "," + num(in.b16));
                r.add("diagonal_vanishes", str(rep.diagonal_vanishes));
                r.add("seventh_row_zero", str(rep.seventh_row_zero));
                r.add("seventh_y", num(rep.seventh_y));
                r.add("first_six_det", str(rep.first_six_det));
                r.add("rank_m", num(rep.rank_m));
                r.add("rank_augmented", num(rep.rank_augmented));
                r.add("infeasible", str(rep.infeasible));
            });
        } else if (*verify) {
            const VerifySummary summary = run_verify(suite == "full" ? Suite::full : Suite::quick, only, out);
            out << summary.passed << " passed, " << summary.failed << " failed\n";
            if (summary.failed > 0) {
                err << "verify: failed criteria:";
                for (int id : summary.failed_ids) err << " " << id;
                err << "\n";
                return kExitVerifyFailed;
            }
        }
    } catch (const InvalidInput& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const NotPrime& e) {
        err << "error: " << e.what() << "\n";
        return kExitNotPrime;
    } catch (const UnsupportedDimension& e) {
        err << "error: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitComputation;
    }
    return kExitOk;
}

}  // namespace commucount::cli
