#include "gsgp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "gsgp/detail/format.hpp"
#include "gsgp/parallel.hpp"

namespace gsgp {

namespace {

double interpolate(const std::vector<double>& sorted, double p) {
    double pos = p * static_cast<double>(sorted.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double normal_two_sided(double z_abs) { return std::erfc(z_abs / std::sqrt(2.0)); }

} // namespace

FiveNumberSummary five_number_summary(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("five_number_summary: empty input");
    std::vector<double> sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    return {sorted.front(), interpolate(sorted, 0.25), interpolate(sorted, 0.5),
            interpolate(sorted, 0.75), sorted.back()};
}

double wilcoxon_rank_sum(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("wilcoxon_rank_sum: empty sample");
    std::size_t n = a.size(), m = b.size(), total = n + m;

    // Midranks over the pooled sample.
    std::vector<std::pair<double, int>> pooled; // value, group (0 = a)
    pooled.reserve(total);
    for (double v : a) pooled.emplace_back(v, 0);
    for (double v : b) pooled.emplace_back(v, 1);
    std::sort(pooled.begin(), pooled.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    double rank_sum_a = 0;
    double tie_term = 0; // sum of t^3 - t over tie groups
    bool has_ties = false;
    for (std::size_t i = 0; i < total;) {
        std::size_t j = i;
        while (j < total && pooled[j].first == pooled[i].first) ++j;
        double t = static_cast<double>(j - i);
        double midrank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        for (std::size_t k = i; k < j; ++k) {
            if (pooled[k].second == 0) rank_sum_a += midrank;
        }
        if (t > 1) {
            has_ties = true;
            tie_term += t * t * t - t;
        }
        i = j;
    }

    if (!has_ties && std::min(n, m) <= 8) {
        // Exact null distribution of the rank sum: count subsets of size n
        // of the ranks 1..total by sum.
        std::size_t w_obs = static_cast<std::size_t>(std::llround(rank_sum_a));
        std::size_t max_sum = 0;
        for (std::size_t r = total; r > total - n; --r) max_sum += r;
        // dp[k][s]: subsets of size k summing to s
        std::vector<std::vector<double>> dp(n + 1, std::vector<double>(max_sum + 1, 0.0));
        dp[0][0] = 1.0;
        for (std::size_t rank = 1; rank <= total; ++rank) {
            for (std::size_t k = std::min(n, rank); k >= 1; --k) {
                for (std::size_t s = max_sum; s >= rank; --s) {
                    dp[k][s] += dp[k - 1][s - rank];
                }
            }
        }
        double count_total = 0, count_le = 0, count_ge = 0;
        for (std::size_t s = 0; s <= max_sum; ++s) {
            count_total += dp[n][s];
            if (s <= w_obs) count_le += dp[n][s];
            if (s >= w_obs) count_ge += dp[n][s];
        }
        double p = 2.0 * std::min(count_le, count_ge) / count_total;
        return std::clamp(p, 1e-300, 1.0);
    }

    // Normal approximation with tie and continuity corrections.
    double dn = static_cast<double>(n), dm = static_cast<double>(m), dt = static_cast<double>(total);
    double mean = dn * (dt + 1.0) / 2.0;
    double var = dn * dm / 12.0 * ((dt + 1.0) - tie_term / (dt * (dt - 1.0)));
    if (var <= 0) return 1.0;
    double z = std::max(0.0, std::fabs(rank_sum_a - mean) - 0.5) / std::sqrt(var);
    double p = normal_two_sided(z);
    return std::clamp(p, 1e-300, 1.0);
}

std::string ComparisonStats::runs_csv() const {
    std::ostringstream out;
    out << "algorithm,run_index,seed,test_rmse\n";
    for (const AlgorithmSummary* alg : {&gsgp, &stgp}) {
        for (std::size_t r = 0; r < alg->test_rmse.size(); ++r) {
            out << alg->name << ',' << r << ',' << base_seed + r << ','
                << detail::format_double(alg->test_rmse[r]) << "\n";
        }
    }
    return out.str();
}

std::string ComparisonStats::summary_csv() const {
    std::ostringstream out;
    out << "algorithm,min,q1,median,q3,max,iqr\n";
    for (const AlgorithmSummary* alg : {&gsgp, &stgp}) {
        const FiveNumberSummary& s = alg->summary;
        out << alg->name << ',' << detail::format_double(s.min) << ',' << detail::format_double(s.q1)
            << ',' << detail::format_double(s.median) << ',' << detail::format_double(s.q3) << ','
            << detail::format_double(s.max) << ',' << detail::format_double(s.iqr()) << "\n";
    }
    return out.str();
}

ComparisonStats run_comparison(std::size_t runs, std::uint64_t base_seed, const GsgpConfig& gsgp_cfg,
                               const StgpConfig& stgp_cfg, const SlopeDataset& ds,
                               const DataSplit& split) {
    if (runs < 2) throw std::invalid_argument("run_comparison: need at least 2 runs");
    if (gsgp_cfg.task != Task::Regression || stgp_cfg.common.task != Task::Regression) {
        throw MetricError("comparison metric is test RMSE; both configs must be regression");
    }
    // Fail config/label problems here, not inside worker threads.
    gsgp_cfg.validate();
    stgp_cfg.common.validate();
    if (!ds.has_fs()) throw DataError("comparison dataset lacks the FS column");

    DatasetView train(ds, split.train_indices);
    DatasetView test(ds, split.test_indices);

    std::vector<double> gsgp_rmse(runs), stgp_rmse(runs);
    // Runs are independent (each owns its seeded generator); collection is
    // slot-indexed so concurrency cannot reorder results.
    parallel_for(2 * runs, [&](std::size_t i) {
        std::size_t r = i % runs;
        if (i < runs) {
            GsgpConfig cfg = gsgp_cfg;
            cfg.seed = base_seed + r;
            RunResult result = run_gsgp(cfg, train, test);
            gsgp_rmse[r] = result.test_metrics.rmse.value();
        } else {
            StgpConfig cfg = stgp_cfg;
            cfg.common.seed = base_seed + r;
            RunResult result = run_stgp(cfg, train, test);
            stgp_rmse[r] = result.test_metrics.rmse.value();
        }
    });

    ComparisonStats stats;
    stats.base_seed = base_seed;
    stats.gsgp = {"gsgp", gsgp_rmse, five_number_summary(gsgp_rmse)};
    stats.stgp = {"stgp", stgp_rmse, five_number_summary(stgp_rmse)};
    stats.wilcoxon_p = wilcoxon_rank_sum(gsgp_rmse, stgp_rmse);
    return stats;
}

} // namespace gsgp
