#pragma once

#include <array>

#include "gsgp/engine.hpp"

namespace gsgp {

struct FiveNumberSummary {
    double min, q1, median, q3, max;
    double iqr() const { return q3 - q1; }
};

/// Quartiles by linear interpolation of order statistics at position
/// p*(n-1), zero-based.
FiveNumberSummary five_number_summary(const std::vector<double>& xs);

/// Two-sided rank-sum p-value: exact enumeration when min(|a|,|b|) <= 8 and
/// there are no ties, otherwise normal approximation with tie and
/// continuity corrections. Clamped to (0, 1].
double wilcoxon_rank_sum(const std::vector<double>& a, const std::vector<double>& b);

struct AlgorithmSummary {
    std::string name;
    std::vector<double> test_rmse; // one entry per run, ordered by run index
    FiveNumberSummary summary;
};

struct ComparisonStats {
    AlgorithmSummary gsgp;
    AlgorithmSummary stgp;
    double wilcoxon_p;

    std::string runs_csv() const;    // algorithm,run_index,seed,test_rmse
    std::string summary_csv() const; // algorithm,min,q1,median,q3,max,iqr
    std::uint64_t base_seed = 0;
};

/// Repeated-seed comparison experiment: each algorithm runs with seeds
/// base_seed + run_index on the regression task; the metric is the test
/// RMSE of the run's best individual.
ComparisonStats run_comparison(std::size_t runs, std::uint64_t base_seed, const GsgpConfig& gsgp_cfg,
                               const StgpConfig& stgp_cfg, const SlopeDataset& ds,
                               const DataSplit& split);

} // namespace gsgp
