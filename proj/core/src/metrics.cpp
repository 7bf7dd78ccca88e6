#include "gsgp/metrics.hpp"

#include <cmath>
#include <sstream>

namespace gsgp {

std::string task_name(Task t) {
    return t == Task::Classification ? "classification" : "regression";
}

Task task_from_name(std::string_view name) {
    if (name == "classification") return Task::Classification;
    if (name == "regression") return Task::Regression;
    throw MetricError("unknown task '" + std::string(name) + "'");
}

std::string MetricsReport::to_text() const {
    std::ostringstream out;
    out << "task=" << task_name(task) << "\n";
    out << "n=" << n << "\n";
    out << "raw_fitness=" << raw_fitness << "\n";
    if (accuracy_percent) out << "accuracy_percent=" << *accuracy_percent << "\n";
    if (pearson_r) out << "pearson_r=" << *pearson_r << "\n";
    if (rmse) out << "rmse=" << *rmse << "\n";
    return out.str();
}

std::string MetricsReport::to_csv_row() const {
    std::ostringstream out;
    out << task_name(task) << ',' << n << ',' << raw_fitness << ',';
    if (accuracy_percent) out << *accuracy_percent;
    out << ',';
    if (pearson_r) out << *pearson_r;
    out << ',';
    if (rmse) out << *rmse;
    return out.str();
}

double regression_fitness(const Semantics& s, const std::vector<double>& targets) {
    if (s.empty() || s.size() != targets.size()) {
        throw MetricError("regression_fitness: empty or mismatched vectors");
    }
    double sum = 0;
    for (std::size_t i = 0; i < s.size(); ++i) sum += std::fabs(s[i] - targets[i]);
    return sum;
}

int classify(double value, double cutoff) { return value >= cutoff ? 1 : -1; }

double classification_fitness(const Semantics& s, const std::vector<int>& labels, double cutoff) {
    if (s.empty() || s.size() != labels.size()) {
        throw MetricError("classification_fitness: empty or mismatched vectors");
    }
    std::size_t correct = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (classify(s[i], cutoff) == labels[i]) ++correct;
    }
    return 1.0 - static_cast<double>(correct) / static_cast<double>(s.size());
}

double accuracy_percent(const std::vector<int>& pred, const std::vector<int>& actual) {
    if (pred.empty() || pred.size() != actual.size()) {
        throw MetricError("accuracy_percent: empty or mismatched vectors");
    }
    std::size_t matches = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (pred[i] == actual[i]) ++matches;
    }
    return 100.0 * static_cast<double>(matches) / static_cast<double>(pred.size());
}

double pearson_r(const std::vector<double>& y, const std::vector<double>& y_hat) {
    if (y.size() < 2 || y.size() != y_hat.size()) {
        throw MetricError("pearson_r: need equal lengths >= 2");
    }
    double n = static_cast<double>(y.size());
    double sy = 0, syh = 0, syy = 0, shh = 0, syh2 = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        sy += y[i];
        syh += y_hat[i];
        syy += y[i] * y[i];
        shh += y_hat[i] * y_hat[i];
        syh2 += y[i] * y_hat[i];
    }
    double var_y = n * syy - sy * sy;
    double var_yh = n * shh - syh * syh;
    if (var_y <= 0 || var_yh <= 0) {
        throw MetricError("pearson_r: undefined correlation (constant vector)");
    }
    double r = (n * syh2 - sy * syh) / (std::sqrt(var_y) * std::sqrt(var_yh));
    return std::clamp(r, -1.0, 1.0);
}

double rmse(const std::vector<double>& pred, const std::vector<double>& actual) {
    if (pred.empty() || pred.size() != actual.size()) {
        throw MetricError("rmse: empty or mismatched vectors");
    }
    double sum = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        double d = pred[i] - actual[i];
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(pred.size()));
}

} // namespace gsgp
