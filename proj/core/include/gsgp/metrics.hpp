#pragma once

#include <optional>
#include <string>

#include "gsgp/semantics.hpp"

namespace gsgp {

enum class Task { Classification, Regression };

std::string task_name(Task t);
Task task_from_name(std::string_view name);

struct MetricsReport {
    Task task;
    std::optional<double> accuracy_percent;
    std::optional<double> pearson_r;
    std::optional<double> rmse;
    double raw_fitness;
    std::size_t n;

    std::string to_text() const;
    std::string to_csv_row() const; // task,n,raw_fitness,accuracy,pearson,rmse
};

class MetricError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Sum of absolute errors (L1), the regression selection objective.
double regression_fitness(const Semantics& s, const std::vector<double>& targets);

/// Threshold a real output to a class label; ties go to +1.
int classify(double value, double cutoff = 0.0);

/// Classification error rate 1 - correct/total, the classification
/// selection objective.
double classification_fitness(const Semantics& s, const std::vector<int>& labels,
                              double cutoff = 0.0);

double accuracy_percent(const std::vector<int>& pred, const std::vector<int>& actual);

/// Standard Pearson correlation coefficient.
double pearson_r(const std::vector<double>& y, const std::vector<double>& y_hat);

double rmse(const std::vector<double>& pred, const std::vector<double>& actual);

} // namespace gsgp
