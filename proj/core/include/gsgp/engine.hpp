#pragma once

#include <memory>

#include "gsgp/lineage.hpp"
#include "gsgp/metrics.hpp"

namespace gsgp {

enum class MutationMode { Scalar, Tree };

struct GsgpConfig {
    std::size_t population_size = 500;
    std::size_t generations = 50;
    double mutation_step = 0.1;
    double crossover_probability = 0.7;
    double mutation_probability = 0.3;
    std::size_t tournament_size = 4;
    std::size_t elitism_count = 1;
    MutationMode mutation_mode = MutationMode::Scalar;
    TreeGenConfig tree_gen;
    std::uint64_t seed = 0;
    Task task = Task::Regression;

    /// Offspring come from exactly one operator, so the probabilities must
    /// sum to 1.
    void validate() const;
};

struct GenerationStat {
    std::size_t generation;
    double best_fitness;
    double median_fitness;
};

struct RunResult {
    IndividualId best;
    std::shared_ptr<LineageStore> store;
    std::vector<GenerationStat> per_generation;
    MetricsReport train_metrics;
    MetricsReport test_metrics;
};

/// Dataset view bound to one side of a split, with the targets the task
/// needs already extracted.
class DatasetView {
  public:
    DatasetView(const SlopeDataset& ds, std::vector<std::size_t> indices);

    const SlopeDataset& dataset() const { return *ds_; }
    const std::vector<std::size_t>& indices() const { return indices_; }
    std::size_t size() const { return indices_.size(); }

    const std::vector<int>& labels() const { return labels_; }       // S, may be empty
    const std::vector<double>& fs_targets() const { return fs_; }    // FS, may be empty

  private:
    const SlopeDataset* ds_;
    std::vector<std::size_t> indices_;
    std::vector<int> labels_;
    std::vector<double> fs_;
};

struct PopulationMember {
    IndividualId id;
    double fitness;
};

/// Winner of k uniform draws with replacement; ties go to the lower id.
IndividualId tournament_select(const std::vector<PopulationMember>& population, std::size_t k,
                               Rng& rng);

/// Initial population of `population_size` tree individuals with cached
/// train/test semantics and fitness.
std::vector<PopulationMember> initialize(const GsgpConfig& cfg, const DatasetView& train,
                                         const DatasetView& test, LineageStore& store, Rng& rng);

/// One generational replacement step: elites copied, the rest produced by
/// geometric crossover or mutation in semantic space.
std::vector<PopulationMember> step_generation(const std::vector<PopulationMember>& population,
                                              const GsgpConfig& cfg, const DatasetView& train,
                                              const DatasetView& test, LineageStore& store,
                                              Rng& rng);

RunResult run_gsgp(const GsgpConfig& cfg, const DatasetView& train, const DatasetView& test);

struct StgpConfig {
    GsgpConfig common;           // mutation_step / mutation_mode unused
    std::size_t max_depth = 17;  // offspring over the cap revert to a parent copy
};

/// Standard tree GP baseline with subtree crossover/mutation; shares the
/// fitness and metrics contracts of run_gsgp. The result's store holds a
/// single Init individual: the best evolved tree.
RunResult run_stgp(const StgpConfig& cfg, const DatasetView& train, const DatasetView& test);

} // namespace gsgp
