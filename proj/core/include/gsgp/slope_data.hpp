#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gsgp {

/// One slope case: six geotechnical inputs plus optional labels.
/// status is the binary stability label (+1 stable / -1 unstable),
/// fs the safety factor.
struct SlopeSample {
    double gamma;    ///< unit weight, kN/m^3 (Table 1 prints kN/m)
    double cohesion; ///< kPa
    double phi;      ///< internal friction angle, degrees
    double beta;     ///< slope angle, degrees
    double height;   ///< m
    double ru;       ///< pore pressure coefficient, dimensionless
    std::optional<int> status;
    std::optional<double> fs;

    std::array<double, 6> features() const { return {gamma, cohesion, phi, beta, height, ru}; }
};

constexpr std::size_t kFeatureCount = 6;
inline const std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "gamma", "c", "phi", "beta", "H", "ru"};

class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Ordered sample collection. Order is load order and is semantically
/// meaningful: the train/test split is positional.
class SlopeDataset {
  public:
    SlopeDataset() = default;
    explicit SlopeDataset(std::vector<SlopeSample> samples);

    const std::vector<SlopeSample>& samples() const { return samples_; }
    const SlopeSample& operator[](std::size_t i) const { return samples_[i]; }
    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }

    bool has_status() const;
    bool has_fs() const;

  private:
    std::vector<SlopeSample> samples_;
};

/// Positional split: indices [0, n_train) train, the rest test.
struct DataSplit {
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
};

DataSplit head_split(const SlopeDataset& ds, std::size_t n_train);

/// The 52-row study corpus together with the published reference
/// predictions ("Computational" S and FS columns), kept separate from the
/// actual labels so metric checks can replay the reported figures.
struct EmbeddedTable {
    SlopeDataset data;
    std::vector<int> computational_s;    // 52 entries
    std::vector<double> computational_fs; // 52 entries
};

const EmbeddedTable& embedded_table();

/// Convenience accessor for the dataset alone.
inline const SlopeDataset& embedded_dataset() { return embedded_table().data; }

/// CSV with header gamma,c,phi,beta,H,ru[,S][,FS]. LF or CRLF.
SlopeDataset parse_csv(std::string_view text);
std::string to_csv(const SlopeDataset& ds);

} // namespace gsgp
