#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <set>

#include "commucount/divisor.hpp"
#include "commucount/oracle.hpp"

using namespace commucount;

TEST_CASE("r-table examples") {
    const RTable t = r_table(BoxParam(1));
    CHECK(t.values == std::map<std::int64_t, ExactCount>{{-2, 4}, {-1, 20}, {0, 33}, {1, 20}, {2, 4}});
    CHECK(t.total() == 81);
    for (std::int64_t n = 1; n <= 6; ++n) {
        const BoxParam box(n);
        const RTable fast = r_table(box);
        CHECK(fast == oracle::brute_r_table(box));
        CHECK(fast.at(2 * n * n) == 4);
    }
}

TEST_CASE("r-table symmetry and total mass") {
    for (std::int64_t n : {7, 30, 80}) {
        const RTable t = r_table(BoxParam(n));
        CHECK(t.total() == ipow(ExactCount(static_cast<long>(2 * n + 1)), 4));
        bool symmetric = true;
        for (const auto& [h, r] : t.values) symmetric = symmetric && t.at(-h) == r;
        CHECK(symmetric);
        CHECK(t.values.begin()->first >= -2 * n * n);
    }
    CHECK_THROWS_AS(r_table(BoxParam(300), WorkBudget{1000}), BudgetExceeded);
}

TEST_CASE("single r values and r(0)") {
    const BoxParam box(9);
    const RTable t = r_table(box);
    for (std::int64_t h = -170; h <= 170; h += 7) CHECK(r_value(box, h) == t.at(h));
    CHECK(r_zero(BoxParam(1)) == 33);
    CHECK(r_zero(BoxParam(2)) == 129);
    CHECK(r_zero(BoxParam(2)) == oracle::brute_r_table(BoxParam(2)).at(0));
    for (std::int64_t n : {3, 17, 64, 150}) CHECK(r_zero(BoxParam(n)) == r_table(BoxParam(n)).at(0));
}

TEST_CASE("moments") {
    CHECK(moment(BoxParam(1), 2) == 1921);
    CHECK(moment(BoxParam(5), 1) == ipow(ExactCount(11), 4));
    const RTable t = r_table(BoxParam(12));
    CHECK(moment(t, 1) == t.total());
    ExactCount reverse = 0;
    for (auto it = t.values.rbegin(); it != t.values.rend(); ++it) reverse += it->second * it->second * it->second;
    CHECK(moment(t, 3) == reverse);
    CHECK_THROWS_AS(moment(t, 0), InvalidInput);
    for (std::int64_t n = 1; n <= 6; ++n) {
        ExactCount cubes = 0;
        for (const auto& [h, r] : oracle::brute_r_table(BoxParam(n)).values) cubes += r * r * r;
        CHECK(moment(BoxParam(n), 3) == cubes);
    }
}

TEST_CASE("divisor bound ratio") {
    CHECK(divisor_bound_check(BoxParam(1), 1) == 20);
    CHECK(divisor_bound_check(BoxParam(1), 2) == 4);
    CHECK(restricted_divisor_sum(12, 3) == ExactRatio(11, 6));
    CHECK(restricted_divisor_sum(-12, 100) == ExactRatio(7, 3));
    CHECK_THROWS_AS(divisor_bound_check(BoxParam(1), 0), InvalidInput);
    CHECK_THROWS_AS(divisor_bound_check(BoxParam(1), 3), InvalidInput);
    const RTable t = r_table(BoxParam(10));
    for (std::int64_t h : {1, 7, 12, 199, 200}) CHECK(divisor_bound_check(t, h) == divisor_bound_check(BoxParam(10), h));
}

TEST_CASE("classical divisor correlation") {
    CHECK(classic_divisor_correlation(5, 0) == 22);
    CHECK(classic_divisor_correlation(1, 0) == 1);
    CHECK(classic_divisor_correlation(5, 1) == 26);
    std::int64_t brute = 0;
    for (std::int64_t k = 1; k <= 300; ++k) brute += divisor_tau(k) * divisor_tau(k + 11);
    CHECK(classic_divisor_correlation(300, 11) == brute);
    CHECK_THROWS_AS(classic_divisor_correlation(10'000'000, 1), BudgetExceeded);
}

TEST_CASE("partial sums of (sigma(n)/n)^k") {
    CHECK(partial_sum_check(5, 1) == ExactRatio(407, 300));
    CHECK(partial_sum_check(1, 3) == 1);
    ExactRatio direct = 0;
    for (std::int64_t n = 1; n <= 60; ++n) {
        ExactRatio s = 0;
        for (std::int64_t d = 1; d <= n; ++d)
            if (n % d == 0) s += ExactRatio(1, d);
        direct += s * s * s;
    }
    direct /= 60;
    CHECK(partial_sum_check(60, 3) == direct);
    CHECK(static_cast<double>(partial_sum_approx(60, 3)) == doctest::Approx(direct.get_d()).epsilon(1e-14));
    CHECK_THROWS_AS(partial_sum_check(1'000'000, 3, WorkBudget{1'000'000}), BudgetExceeded);
    CHECK_THROWS_AS(partial_sum_check(10, 5), InvalidInput);
}

TEST_CASE("finite sets") {
    const FiniteRealSet s({3, 1, 2});
    CHECK(s.elements() == std::vector<ExactRatio>{1, 2, 3});
    CHECK_THROWS_AS(FiniteRealSet({1, 2, 1}), InvalidInput);
    CHECK_THROWS_AS(FiniteRealSet({}), InvalidInput);
    CHECK(r_set(s, 0) == 15);
    CHECK(r_set(FiniteRealSet({1, 2, 4}), 0) == 19);
    CHECK(r_set(FiniteRealSet({1}), 0) == 1);
    CHECK(r_set(s, ExactRatio(1, 2)) == 0);

    const DoublingReport d = doubling_report(s);
    CHECK(d.sumset_size == 5);
    CHECK(d.doubling == ExactRatio(5, 3));
    CHECK(doubling_report(FiniteRealSet({0})).doubling == 1);
    CHECK(doubling_report(FiniteRealSet({1, 2, 4})).sumset_size == 6);
    CHECK(doubling_report(FiniteRealSet({1, 2, 4})).doubling == 2);

    const Lemma61Report l = lemma61_check(s);
    CHECK(l.sup_r == 15);
    CHECK(l.r0 == 15);
    const Lemma61Report one = lemma61_check(FiniteRealSet({ExactRatio(7, 3)}));
    CHECK(one.sup_r == 1);
    CHECK(one.r0 == 1);
    CHECK(one.i3 == 1);
}

TEST_CASE("finite-set correlations agree with brute force") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        std::set<std::int64_t> values;
        const std::size_t size = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
        while (values.size() < size) values.insert(std::uniform_int_distribution<std::int64_t>(-30, 30)(rng));
        std::vector<std::int64_t> v(values.begin(), values.end());
        std::map<std::int64_t, std::uint64_t> table;
        for (auto a : v)
            for (auto b : v)
                for (auto c : v)
                    for (auto d : v) ++table[a * b - c * d];
        std::vector<ExactRatio> elems(v.begin(), v.end());
        const FiniteRealSet set(elems);
        const Lemma61Report rep = lemma61_check(set);
        ExactCount i3 = 0, sup = 0;
        for (const auto& [n, r] : table) {
            const ExactCount x = static_cast<unsigned long>(r);
            i3 += x * x * x;
            if (x > sup) sup = x;
            CHECK(r_set(set, n) == x);
        }
        CHECK(rep.i3 == i3);
        CHECK(rep.sup_r == sup);
        CHECK(rep.r0 == static_cast<unsigned long>(table[0]));
        CHECK(rep.sup_r <= rep.r0);
    }
}

TEST_CASE("rational and geometric sets") {
    // {1/2, 1, 3/2}: scaling by 2 gives {1, 2, 3}.
    const FiniteRealSet half({ExactRatio(1, 2), 1, ExactRatio(3, 2)});
    CHECK(r_set(half, 0) == 15);
    CHECK(doubling_report(half).doubling == ExactRatio(5, 3));
    const FiniteRealSet gp = FiniteRealSet::geometric_progression(1, 2, 80);
    const Lemma61Report l = lemma61_check(gp);
    CHECK(l.sup_r <= l.r0);
    CHECK(l.r0 == r_set(gp, 0));
    CHECK(doubling_report(gp).sumset_size == 80 * 81 / 2);
    const FiniteRealSet ap = FiniteRealSet::arithmetic_progression(1, 1, 40);
    CHECK(doubling_report(ap).sumset_size == 79);
}

TEST_CASE("set file parsing") {
    const FiniteRealSet s = parse_set("# header\n3\n\n -1/2 \n4/6\n");
    CHECK(s.elements() == std::vector<ExactRatio>{ExactRatio(-1, 2), ExactRatio(2, 3), 3});
    CHECK_THROWS_AS(parse_set("1\n2/4\n1/2\n"), InvalidInput);
    CHECK_THROWS_AS(parse_set("1.5\n"), InvalidInput);
    CHECK_THROWS_AS(parse_set("1/0\n"), InvalidInput);
    CHECK_THROWS_AS(parse_set("# nothing\n"), InvalidInput);
    const std::string path = "test_divisor_set.txt";
    {
        std::ofstream out(path);
        out << "1\n2\n3\n";
    }
    CHECK(read_set_file(path).size() == 3);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_set_file("/nonexistent/set.txt"), InvalidInput);
}
