#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gsgp/stats.hpp"

using namespace gsgp;

namespace {

// Independent oracle: exact two-sided rank-sum p by enumerating every
// subset of ranks via combination masks.
double enumeration_oracle(const std::vector<double>& a, const std::vector<double>& b) {
    std::size_t n = a.size(), m = b.size(), total = n + m;
    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double w_obs = 0;
    for (double v : a) {
        w_obs += static_cast<double>(std::find(sorted.begin(), sorted.end(), v) - sorted.begin()) + 1;
    }
    std::vector<bool> mask(total, false);
    std::fill(mask.end() - static_cast<std::ptrdiff_t>(n), mask.end(), true);
    double count = 0, le = 0, ge = 0;
    do {
        double w = 0;
        for (std::size_t i = 0; i < total; ++i) {
            if (mask[i]) w += static_cast<double>(i + 1);
        }
        count += 1;
        if (w <= w_obs) le += 1;
        if (w >= w_obs) ge += 1;
    } while (std::next_permutation(mask.begin(), mask.end()));
    return std::min(1.0, 2.0 * std::min(le, ge) / count);
}

} // namespace

TEST_CASE("five_number_summary") {
    FiveNumberSummary s = five_number_summary({1, 2, 3, 4, 5});
    CHECK(s.min == 1);
    CHECK(s.q1 == 2);
    CHECK(s.median == 3);
    CHECK(s.q3 == 4);
    CHECK(s.max == 5);

    FiveNumberSummary one = five_number_summary({7});
    CHECK(one.min == 7);
    CHECK(one.q1 == 7);
    CHECK(one.median == 7);
    CHECK(one.q3 == 7);
    CHECK(one.max == 7);
    CHECK(one.iqr() == 0);

    // hand-applied interpolation rule at p*(n-1)
    FiveNumberSummary four = five_number_summary({1, 2, 3, 4});
    CHECK(four.q1 == doctest::Approx(1.75));
    CHECK(four.median == doctest::Approx(2.5));
    CHECK(four.q3 == doctest::Approx(3.25));

    CHECK_THROWS_AS(five_number_summary({}), std::invalid_argument);
}

TEST_CASE("five_number_summary ordering invariant on random vectors") {
    Rng rng(17);
    for (int i = 0; i < 10000; ++i) {
        std::vector<double> xs(1 + rng.below(20));
        for (double& x : xs) x = rng.uniform(-100, 100);
        FiveNumberSummary s = five_number_summary(xs);
        CHECK(s.min <= s.q1);
        CHECK(s.q1 <= s.median);
        CHECK(s.median <= s.q3);
        CHECK(s.q3 <= s.max);
        CHECK(s.iqr() >= 0);
    }
}

TEST_CASE("wilcoxon exact case [1,2,3] vs [4,5,6]") {
    CHECK(wilcoxon_rank_sum({1, 2, 3}, {4, 5, 6}) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("wilcoxon on identical samples approaches 1") {
    std::vector<double> a{1.5, 2.5, 3.5, 4.5, 5.5};
    CHECK(wilcoxon_rank_sum(a, a) >= 0.95); // ties force the approximation path
}

TEST_CASE("wilcoxon matches the enumeration oracle on small tie-free samples") {
    Rng rng(23);
    for (std::size_t n = 1; n <= 5; ++n) {
        for (std::size_t m = n; m <= 6; ++m) {
            for (int rep = 0; rep < 20; ++rep) {
                std::vector<double> a(n), b(m);
                for (double& v : a) v = rng.uniform01();
                for (double& v : b) v = rng.uniform01();
                CHECK(wilcoxon_rank_sum(a, b) ==
                      doctest::Approx(enumeration_oracle(a, b)).epsilon(1e-12));
            }
        }
    }
}

namespace {

// Normal approximation with continuity correction, reimplemented here as
// the cross-method oracle for tie-free data.
double normal_approximation(const std::vector<double>& a, const std::vector<double>& b) {
    std::size_t n = a.size(), m = b.size(), total = n + m;
    std::vector<double> sorted(a);
    sorted.insert(sorted.end(), b.begin(), b.end());
    std::sort(sorted.begin(), sorted.end());
    double w = 0;
    for (double v : a) {
        w += static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(), v) -
                                 sorted.begin()) +
             1;
    }
    double dn = static_cast<double>(n), dm = static_cast<double>(m), dt = static_cast<double>(total);
    double mean = dn * (dt + 1.0) / 2.0;
    double var = dn * dm * (dt + 1.0) / 12.0;
    double z = std::max(0.0, std::fabs(w - mean) - 0.5) / std::sqrt(var);
    return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

} // namespace

TEST_CASE("wilcoxon exact path agrees with the normal approximation on n=m=8") {
    Rng rng(29);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> a(8), b(8);
        for (double& v : a) v = rng.uniform(0, 1);
        for (double& v : b) v = rng.uniform(0.2, 1.2);
        double exact = wilcoxon_rank_sum(a, b); // min(n,m)=8 takes the exact path
        CHECK(std::fabs(exact - normal_approximation(a, b)) < 0.02);
    }
}

TEST_CASE("wilcoxon symmetry and shift sensitivity") {
    Rng rng(31);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> a(4 + rng.below(10)), b(4 + rng.below(10));
        for (double& v : a) v = rng.uniform(-5, 5);
        for (double& v : b) v = rng.uniform(-5, 5);
        CHECK(wilcoxon_rank_sum(a, b) == doctest::Approx(wilcoxon_rank_sum(b, a)).epsilon(1e-12));
    }

    std::vector<double> base(20), shifted(20);
    for (int i = 0; i < 20; ++i) {
        base[i] = i + 1;
        shifted[i] = i + 101;
    }
    CHECK(wilcoxon_rank_sum(base, shifted) < 0.001);
}

TEST_CASE("run_comparison") {
    const SlopeDataset& ds = embedded_dataset();
    DataSplit split = head_split(ds, 40);

    GsgpConfig gcfg;
    gcfg.population_size = 30;
    gcfg.generations = 0;
    gcfg.task = Task::Regression;
    StgpConfig scfg{gcfg};

    SUBCASE("generations=0 with shared seeds gives identical RMSE pairs") {
        // both engines draw the same initial trees from the same stream
        ComparisonStats stats = run_comparison(2, 5, gcfg, scfg, ds, split);
        REQUIRE(stats.gsgp.test_rmse.size() == 2);
        CHECK(stats.gsgp.test_rmse[0] == stats.stgp.test_rmse[0]);
        CHECK(stats.gsgp.test_rmse[1] == stats.stgp.test_rmse[1]);
    }

    SUBCASE("deterministic given base seed") {
        gcfg.generations = 3;
        scfg.common.generations = 3;
        ComparisonStats a = run_comparison(3, 11, gcfg, scfg, ds, split);
        ComparisonStats b = run_comparison(3, 11, gcfg, scfg, ds, split);
        CHECK(a.runs_csv() == b.runs_csv());
        CHECK(a.summary_csv() == b.summary_csv());
        CHECK(a.wilcoxon_p == b.wilcoxon_p);
    }

    SUBCASE("fewer than 2 runs rejected") {
        CHECK_THROWS_AS(run_comparison(1, 5, gcfg, scfg, ds, split), std::invalid_argument);
    }

    SUBCASE("classification configs rejected") {
        gcfg.task = Task::Classification;
        CHECK_THROWS_AS(run_comparison(2, 5, gcfg, scfg, ds, split), MetricError);
    }
}
