#include "commucount/cli/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include "commucount/count2.hpp"
#include "commucount/divisor.hpp"
#include "commucount/oracle.hpp"
#include "commucount/padic.hpp"
#include "commucount/rank3.hpp"

namespace commucount::cli {

void CriterionOutcome::check(bool ok, const std::string& message) {
    if (!ok) passed = false;
    lines.push_back(std::string(ok ? "ok    " : "FAIL  ") + message);
}

void CriterionOutcome::note(const std::string& message) { lines.push_back("info  " + message); }

namespace {

constexpr std::uint64_t kQuickBudget = 100'000'000ULL;
constexpr std::uint64_t kFullBudget = 10'000'000'000ULL;

WorkBudget budget_for(Suite suite) { return WorkBudget{suite == Suite::quick ? kQuickBudget : kFullBudget}; }

std::string fmt(double x, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

std::string str(const ExactCount& x) { return to_decimal(x); }
std::string str(const ExactRatio& x) { return to_string(x); }

ExactCount pow_u(std::uint64_t base, unsigned long e) {
    return ipow(ExactCount(static_cast<unsigned long>(base)), e);
}

double k_constant() { return constants().k2.get_d(); }

/// Independent classification of all 2x2 pairs with entries in [-N, N].
std::pair<std::uint64_t, std::uint64_t> brute_split_2x2(std::int64_t n) {
    std::uint64_t degenerate = 0, nondegenerate = 0;
    const std::int64_t side = 2 * n + 1;
    const std::int64_t per = side * side * side * side;
    for (std::int64_t ia = 0; ia < per; ++ia) {
        std::int64_t a[4], x = ia;
        for (int i = 3; i >= 0; --i, x /= side) a[i] = x % side - n;
        for (std::int64_t ib = 0; ib < per; ++ib) {
            std::int64_t b[4], y = ib;
            for (int i = 3; i >= 0; --i, y /= side) b[i] = y % side - n;
            const IntMatrix am(2, {a[0], a[1], a[2], a[3]}), bm(2, {b[0], b[1], b[2], b[3]});
            if (!(am * bm == bm * am)) continue;
            if (a[1] * b[1] * a[2] * b[2] == 0) {
                ++degenerate;
            } else {
                ++nondegenerate;
            }
        }
    }
    return {degenerate, nondegenerate};
}

// ---- criteria ----------------------------------------------------------------

CriterionOutcome oracle_2x2(Suite suite) {
    CriterionOutcome out;
    for (std::int64_t n = 0; n <= 4; ++n) {
        const BoxParam box(n);
        const ExactCount fast = count_commuting_2x2(box);
        const ExactCount brute = oracle::brute_commuting_count(2, box, budget_for(suite));
        out.check(fast == brute, "N=" + std::to_string(n) + ": fast " + str(fast) + " vs brute " + str(brute));
    }
    return out;
}

CriterionOutcome constant_k(Suite suite) {
    CriterionOutcome out;
    const double k = k_constant();
    out.note("K = 10 zeta(2) / (3 zeta(3)) = " + fmt(k, 10));
    std::vector<std::int64_t> ns = {100, 1000};
    if (suite == Suite::full) ns.push_back(10000);
    double previous = INFINITY;
    for (auto n : ns) {
        const BoxParam box(n);
        const double ratio = normalized_2x2(count_commuting_2x2(box), box);
        const double dev = std::fabs(ratio - k);
        out.check(dev < previous, "N=" + std::to_string(n) + ": c2/(2N)^5 = " + fmt(ratio, 8) + ", |. - K| = " +
                                      fmt(dev, 8) + " (strictly below previous)");
        previous = dev;
        if (n == 10000) {
            out.check(std::fabs(ratio - 4.561447) <= 0.01, "N=10000: |c2/(2N)^5 - 4.561447| = " +
                                                               fmt(std::fabs(ratio - 4.561447), 8) + " <= 0.01");
            out.check(dev <= 0.01, "N=10000: |c2/(2N)^5 - K| <= 0.01");
        }
    }
    if (suite == Suite::quick) out.note("N=10000 runs in the full suite");
    return out;
}

CriterionOutcome gamma(Suite) {
    CriterionOutcome out;
    for (std::int64_t n : {1, 2, 3}) {
        const GammaSplit split = gamma_split(BoxParam(n));
        const auto [deg, nondeg] = brute_split_2x2(n);
        out.check(split.degenerate == static_cast<unsigned long>(deg) &&
                      split.nondegenerate == static_cast<unsigned long>(nondeg),
                  "N=" + std::to_string(n) + ": split (" + str(split.degenerate) + ", " + str(split.nondegenerate) +
                      ") matches brute classification");
    }
    for (std::int64_t n : {1, 2, 3, 10, 100, 1000}) {
        const BoxParam box(n);
        const GammaSplit split = gamma_split(box);
        out.check(split.total() == count_commuting_2x2(box),
                  "N=" + std::to_string(n) + ": degenerate + nondegenerate = c2(N)");
    }
    const BoxParam box(1000);
    const GammaSplit split = gamma_split(box);
    const double deg = normalized_2x2(split.degenerate, box);
    const double nondeg = normalized_2x2(split.nondegenerate, box);
    out.check(std::fabs(deg - 2) <= 0.05, "N=1000: degenerate/(2N)^5 = " + fmt(deg) + ", within 0.05 of 2");
    out.check(std::fabs(nondeg - (k_constant() - 2)) <= 0.05,
              "N=1000: nondegenerate/(2N)^5 = " + fmt(nondeg) + ", within 0.05 of K - 2 = " + fmt(k_constant() - 2));
    return out;
}

/// r_N(0) from sum_{a, b, c, d in [1, N], ab = cd} = sum_m floor(N/m)^2 (2 phi(m) - [m = 1]).
ExactCount r_zero_totient(std::int64_t n) {
    const auto phi = totient_table(n);
    ExactCount s = 0;
    for (std::int64_t m = 1; m <= n; ++m) {
        const std::int64_t f = n / m;
        s += ExactCount(static_cast<long>(f * f)) * (2 * phi[static_cast<std::size_t>(m)] - (m == 1 ? 1 : 0));
    }
    const ExactCount z = 4 * n + 1;
    return z * z + 8 * s;
}

CriterionOutcome r_tables(Suite suite) {
    CriterionOutcome out;
    for (std::int64_t n = 1; n <= 6; ++n) {
        const BoxParam box(n);
        out.check(r_table(box) == oracle::brute_r_table(box, budget_for(suite)),
                  "N=" + std::to_string(n) + ": r-table matches brute force entry for entry");
    }
    for (std::int64_t n : {1, 2, 3, 4, 5, 6, 50, 100, 200}) {
        const BoxParam box(n);
        const RTable table = r_table(box);
        bool symmetric = true;
        for (const auto& [h, r] : table.values) symmetric = symmetric && table.at(-h) == r;
        out.check(table.total() == ipow(ExactCount(static_cast<long>(box.side())), 4) && symmetric,
                  "N=" + std::to_string(n) + ": sum r(h) = (2N+1)^4 and r(h) = r(-h)");
        out.check(r_zero(box) == table.at(0), "N=" + std::to_string(n) + ": streamed r(0) = table r(0) = " +
                                                  str(table.at(0)));
    }
    const double c = constants().r0_constant.get_d();
    std::vector<std::int64_t> ns = {2000};
    if (suite == Suite::full) ns.push_back(10000);
    for (auto n : ns) {
        const ExactCount r0 = r_zero(BoxParam(n));
        out.check(r0 == r_zero_totient(n), "N=" + std::to_string(n) + ": r(0) = " + str(r0) + " matches totient sum");
        const double nn = static_cast<double>(n);
        const double dev = (ExactRatio(r0).get_d() - c * nn * nn * std::log(nn)) / (nn * nn);
        const std::string msg = "N=" + std::to_string(n) + ": (r(0) - (16/zeta(2)) N^2 ln N) / N^2 = " + fmt(dev, 4);
        if (n == 2000) {
            out.check(std::fabs(dev) <= 20, msg + ", |.| <= 20");
        } else {
            out.note(msg);
        }
    }
    return out;
}

CriterionOutcome moments(Suite) {
    CriterionOutcome out;
    const ExactCount i2 = moment(BoxParam(1), 2);
    out.check(i2 == 1921 && moment(oracle::brute_r_table(BoxParam(1)), 2) == i2, "I_2(1) = " + str(i2));
    double lo = INFINITY, hi = 0;
    for (std::int64_t n : {50, 100, 200}) {
        const ExactCount i3 = moment(BoxParam(n), 3);
        const double scaled = make_ratio(i3, ipow(ExactCount(static_cast<long>(n)), 8)).get_d();
        const double scaled_2n = make_ratio(i3, ipow(ExactCount(static_cast<long>(2 * n)), 8)).get_d();
        lo = std::min(lo, scaled);
        hi = std::max(hi, scaled);
        out.check(scaled <= 50, "N=" + std::to_string(n) + ": I_3(N)/N^8 = " + fmt(scaled, 2) + " <= 50");
        out.note("N=" + std::to_string(n) + ": I_3(N)/(2N)^8 = " + fmt(scaled_2n, 4));
    }
    out.check(hi <= 2 * lo, "max/min of I_3(N)/N^8 over N in {50, 100, 200} = " + fmt(hi / lo, 4) + " <= 2");
    return out;
}

struct PadicCase {
    std::uint64_t p;
    unsigned n;
};

std::vector<PadicCase> gate_cases(std::uint64_t limit) {
    std::vector<PadicCase> out;
    for (std::uint64_t p = 2; p <= 200; ++p) {
        if (!is_prime(p)) continue;
        for (unsigned n = 1; pow_u(p, 6UL * n) <= ExactCount(static_cast<unsigned long>(limit)); ++n) {
            out.push_back({p, n});
        }
    }
    return out;
}

std::string pn(const PadicCase& c) { return "(" + std::to_string(c.p) + "," + std::to_string(c.n) + ")"; }

CriterionOutcome padic_exact(Suite suite) {
    CriterionOutcome out;
    const std::uint64_t limit = suite == Suite::quick ? kQuickBudget : 1'000'000'000ULL;
    auto cases = gate_cases(limit);
    if (suite == Suite::full) {
        cases.push_back({2, 5});
        cases.push_back({7, 2});
    } else {
        out.note("quick suite gates p^(6n) <= 10^8; the full suite covers p^(6n) <= 10^9 plus (2,5) and (7,2)");
    }
    const WorkBudget wide{100'000'000'000ULL};
    for (const auto& c : cases) {
        const PadicParams params(c.p, c.n);
        const ExactCount fast = fast_padic_count(params);
        const ExactCount brute = pow_u(c.p, 2UL * c.n) * oracle::brute_padic_solutions(c.p, c.n, wide);
        out.check(fast == brute, pn(c) + ": fast " + str(fast) + " = p^(2n) * brute");
    }
    out.check(fast_padic_count(PadicParams(2, 1)) == 88, "(2,1) -> 88");
    out.check(fast_padic_count(PadicParams(2, 2)) == 6400, "(2,2) -> 6400");
    for (const auto& c : cases) {
        if (pow_u(c.p, 6UL * c.n) > 10'000'000) continue;
        const auto brute = oracle::brute_valuation_classes(c.p, c.n, wide);
        const auto fast = valuation_classes_fast(PadicParams(c.p, c.n));
        bool same = true;
        ExactCount tail = 0;
        for (std::size_t h = 0; h < brute.classes.size(); ++h) {
            if (h < fast.classes.size()) {
                same = same && brute.classes[h] == fast.classes[h];
            } else {
                tail += brute.classes[h];
            }
        }
        out.check(same && tail == *fast.residual, pn(c) + ": closed-form classes and residual match brute histogram");
    }
    return out;
}

CriterionOutcome padic_main_term(Suite) {
    CriterionOutcome out;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
        for (unsigned n = 1; n <= 12; ++n) {
            const PadicParams params(p, n);
            const ExactRatio density = make_ratio(fast_padic_count(params), pow_u(p, 6UL * n));
            ExactRatio diff = density - theorem13_main(params);
            diff = abs(diff);
            // |diff| <= 4 n^2 p^(-n/2)  <=>  diff^2 p^n <= 16 n^4.
            const bool ok = diff * diff * ExactRatio(pow_u(p, n)) <= ExactRatio(16UL * n * n * n * n);
            const double bound = 4.0 * n * n * std::pow(static_cast<double>(p), -0.5 * n);
            out.check(ok, "(" + std::to_string(p) + "," + std::to_string(n) + "): |density - main| = " +
                              str(diff) + " <= 4 n^2 p^(-n/2) = " + fmt(bound, 8));
        }
    }
    out.check(sigma_p(2) == ExactRatio(7, 4), "sigma_2 = " + str(sigma_p(2)));
    out.check(sigma_p(3) == ExactRatio(13, 9), "sigma_3 = " + str(sigma_p(3)));
    for (std::uint64_t p : {2, 3, 5}) {
        bool ok = true;
        ExactRatio previous = 1;
        for (unsigned n = 1; n <= 20; ++n) {
            const ExactRatio gap = sigma_p(p) - theorem13_main(PadicParams(p, n));
            ok = ok && gap == sigma_p(p) / ExactRatio(pow_u(p, 2UL * ((n + 1) / 2))) && gap > 0 && gap <= previous;
            previous = gap;
        }
        out.check(ok, "p=" + std::to_string(p) + ": sigma_p - main = sigma_p p^(-2 ceil(n/2)), nonincreasing to 0");
    }
    double worst = 0;
    for (const auto& c : gate_cases(10'000'000)) {
        const PadicParams params(c.p, c.n);
        const double q = static_cast<double>(params.q());
        const double ratio = ExactRatio(degenerate_padic_count(params)).get_d() / (c.n * c.n * std::pow(q, 3.5));
        worst = std::max(worst, ratio);
    }
    out.check(worst <= 4, "degenerate solutions / (n^2 q^(7/2)) <= " + fmt(worst, 4) + " <= 4 over p^(6n) <= 10^7");
    return out;
}

CriterionOutcome lifting(Suite) {
    CriterionOutcome out;
    const WorkBudget wide{100'000'000'000ULL};
    for (const PadicCase c : {PadicCase{2, 2}, PadicCase{2, 3}, PadicCase{3, 2}}) {
        const auto classes = oracle::brute_valuation_classes(c.p, c.n, wide);
        for (unsigned h = 0; 2 * h < c.n; ++h) {
            const ExactCount base = oracle::brute_valuation_classes(c.p, c.n - 2 * h, wide).classes[0];
            const ExactCount lifted = pow_u(c.p, 6UL * h) * base;
            out.check(classes.classes[h] == lifted, pn(c) + ", h=" + std::to_string(h) + ": |S(n,h)| = " +
                                                        str(classes.classes[h]) + " = p^(6h) |S(n-2h,0)|");
            out.check(base == s_n0_formula(PadicParams(c.p, c.n - 2 * h)),
                      pn(c) + ", h=" + std::to_string(h) + ": |S(n-2h,0)| = closed form " + str(base));
        }
    }
    return out;
}

CriterionOutcome classification(Suite suite) {
    CriterionOutcome out;
    std::vector<std::int64_t> ns = {0, 1};
    if (suite == Suite::full) ns.push_back(2);
    for (auto n : ns) {
        const BoxParam box(n);
        const auto t0 = std::chrono::steady_clock::now();
        const ExactCount brute = oracle::brute_commuting_count(3, box, budget_for(suite));
        const ClassificationReport report = classify_commuting_3x3(box, budget_for(suite));
        const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const auto& s = report.counts.s;
        const std::string tag = "N=" + std::to_string(n) + ": ";
        out.note(tag + "|S_0..S_4| = " + str(s[0]) + ", " + str(s[1]) + ", " + str(s[2]) + ", " + str(s[3]) + ", " +
                 str(s[4]) + " (" + fmt(secs, 1) + " s)");
        out.check(report.counts.total() == brute, tag + "sum |S_i| = brute c3(N) = " + str(brute));
        out.check(s[0] == ipow(ExactCount(static_cast<long>(box.side())), 6),
                  tag + "|S_0| = (2N+1)^6 = " + str(s[0]));
        out.check(report.system_violations == 0, tag + "M X = Y for every commuting pair");
        out.check(report.constraint_violations == 0, tag + "cross-determinant constraints hold by rank class");
    }
    if (suite == Suite::quick) out.note("N=2 runs in the full suite");
    return out;
}

CriterionOutcome lower_bounds(Suite suite) {
    CriterionOutcome out;
    for (int d : {2, 3, 4}) {
        bool ok = true;
        for (std::int64_t n = 1; n <= 100; ++n) {
            const ExactCount e = lower_bound_E(d, BoxParam(n));
            ok = ok && (d + 1) * e >= 2 * ipow(ExactCount(static_cast<long>(2 * n)), static_cast<unsigned long>(d + 1));
        }
        out.check(ok, "d=" + std::to_string(d) + ": E_d(N) >= (2/(d+1)) (2N)^(d+1) for N <= 100");
    }
    for (int d : {2, 3}) {
        const BoxParam box(100);
        const double ratio =
            make_ratio(lower_bound_E(d, box) * (d + 1), 2 * ipow(ExactCount(200), static_cast<unsigned long>(d + 1)))
                .get_d();
        out.check(std::fabs(ratio - 1) <= 0.05, "d=" + std::to_string(d) + ", N=100: E_d (d+1) / (2 (2N)^(d+1)) = " +
                                                    fmt(ratio));
    }
    for (std::int64_t n = 0; n <= 4; ++n) {
        const BoxParam box(n);
        const ExactCount cert = lower_bound_certificate(2, box);
        const ExactCount count = oracle::brute_commuting_count(2, box, budget_for(suite));
        out.check(cert <= count, "N=" + std::to_string(n) + ": certificate(2) = " + str(cert) + " <= c2 = " + str(count));
    }
    bool ok = true;
    for (std::int64_t n = 5; n <= 100; ++n) {
        ok = ok && lower_bound_certificate(2, BoxParam(n)) <= count_commuting_2x2(BoxParam(n));
    }
    out.check(ok, "certificate(2) <= c2(N) for 5 <= N <= 100");
    const ExactCount cert3 = lower_bound_certificate(3, BoxParam(1));
    const ExactCount c3 = oracle::brute_commuting_count(3, BoxParam(1), budget_for(suite));
    out.check(cert3 <= c3, "N=1: certificate(3) = " + str(cert3) + " <= c3 = " + str(c3));
    return out;
}

CriterionOutcome lemma61(Suite) {
    CriterionOutcome out;
    std::mt19937_64 rng(20240611);
    int good = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t size = std::uniform_int_distribution<std::size_t>(1, 100)(rng);
        std::set<std::int64_t> values;
        std::uniform_int_distribution<std::int64_t> pick(-1000, 1000);
        while (values.size() < size) values.insert(pick(rng));
        std::vector<ExactRatio> elems;
        for (auto v : values) elems.emplace_back(static_cast<long>(v));
        const FiniteRealSet set(elems);
        const Lemma61Report report = lemma61_check(set);
        if (report.sup_r <= report.r0 && report.r0 == r_set(set, 0)) ++good;
    }
    out.check(good == 50, "random integer sets (size <= 100, entries in [-1000, 1000]): sup_n r(n) <= r(0) in " +
                              std::to_string(good) + "/50");
    struct Named {
        std::string name;
        FiniteRealSet set;
    };
    std::vector<Named> structured;
    for (std::size_t len : {1, 10, 100, 500}) {
        structured.push_back({"AP 1.." + std::to_string(len), FiniteRealSet::arithmetic_progression(1, 1, len)});
    }
    structured.push_back({"AP -7 + 3k, 200 terms", FiniteRealSet::arithmetic_progression(-7, 3, 200)});
    structured.push_back({"AP k/3, 300 terms", [] {
                              std::vector<ExactRatio> v;
                              for (int k = 1; k <= 300; ++k) v.emplace_back(k, 3);
                              return FiniteRealSet(v);
                          }()});
    for (std::size_t len : {10, 100, 500}) {
        structured.push_back({"GP 2^k, " + std::to_string(len) + " terms",
                              FiniteRealSet::geometric_progression(1, 2, len)});
    }
    structured.push_back({"GP (3/2)^k, 60 terms", FiniteRealSet::geometric_progression(1, ExactRatio(3, 2), 60)});
    for (const auto& [name, set] : structured) {
        const Lemma61Report report = lemma61_check(set);
        const DoublingReport doubling = doubling_report(set);
        const double ratio = small_doubling_ratio(report, doubling);
        out.check(report.sup_r <= report.r0, name + ": sup r = " + str(report.sup_r) + " <= r(0) = " + str(report.r0));
        out.check(ratio <= 10, name + ": K = " + fmt(doubling.doubling.get_d(), 3) +
                                   ", r(0) / (K^2 |A|^2 ln(2|A|)) = " + fmt(ratio, 4) + " <= 10");
    }
    return out;
}

CriterionOutcome demo_4x4(Suite) {
    CriterionOutcome out;
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> pick(-3, 3);
    int diagonal = 0, infeasible = 0, witness = 0, det = 0;
    for (int trial = 0; trial < 100; ++trial) {
        DemoInputs in;
        for (auto* x : {&in.a1, &in.a6, &in.a11, &in.a16, &in.b1, &in.b6, &in.b11, &in.b16}) *x = pick(rng);
        const DemoReport r = inconsistency_demo_4x4(in);
        diagonal += r.diagonal_vanishes;
        infeasible += r.infeasible;
        witness += r.seventh_row_zero && r.seventh_y == 1;
        det += r.first_six_det == -2;
    }
    out.check(diagonal == 100, "diagonal of AB - BA vanishes in " + std::to_string(diagonal) + "/100 samples");
    out.check(infeasible == 100, "rank [M|Y] > rank M in " + std::to_string(infeasible) + "/100 samples");
    out.check(witness == 100, "row 7 (entry (2,3)) of M is zero with Y_7 = 1 in " + std::to_string(witness) +
                                  "/100 samples");
    out.check(det == 100, "first six rows have determinant -2 in " + std::to_string(det) + "/100 samples");
    const DemoReport zero = inconsistency_demo_4x4({});
    out.note("witness at zero diagonals: row 7 = 0, Y_7 = " + std::to_string(zero.seventh_y) + ", rank M = " +
             std::to_string(zero.rank_m) + ", rank [M|Y] = " + std::to_string(zero.rank_augmented));
    return out;
}

}  // namespace

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = {
        {1, "2x2 oracle equivalence", oracle_2x2},
        {2, "2x2 leading constant K", constant_k},
        {3, "degenerate / nondegenerate split", gamma},
        {4, "restricted divisor correlation table", r_tables},
        {5, "moments I_2 and I_3", moments},
        {6, "p-adic exact counts", padic_exact},
        {7, "p-adic main term and sigma_p", padic_main_term},
        {8, "valuation-class lifting", lifting},
        {9, "3x3 rank classification", classification},
        {10, "lower bounds", lower_bounds},
        {11, "finite-set correlation sup bound", lemma61},
        {12, "4x4 inconsistent system", demo_4x4},
    };
    return list;
}

VerifySummary run_verify(Suite suite, const std::vector<int>& only, std::ostream& out) {
    VerifySummary summary;
    for (const auto& c : criteria()) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        CriterionOutcome outcome;
        try {
            outcome = c.run(suite);
        } catch (const std::exception& e) {
            outcome.check(false, std::string("error: ") + e.what());
        }
        const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (const auto& line : outcome.lines) out << "    " << line << "\n";
        out << (outcome.passed ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << fmt(secs, 1) << " s)\n";
        out.flush();
        if (outcome.passed) {
            ++summary.passed;
        } else {
            ++summary.failed;
            summary.failed_ids.push_back(c.id);
        }
    }
    return summary;
}

}  // namespace commucount::cli
