#pragma once

#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <variant>

#include "gsgp/semantics.hpp"

namespace gsgp {

using IndividualId = std::uint32_t;

/// How an individual was built. Random elements (t_r, r1/r2, mutation
/// trees) are stored so prediction on unseen inputs replays the exact
/// same randomness.
struct InitLineage {
    ExpressionTree tree;
};
struct CrossoverLineage {
    IndividualId parent1;
    IndividualId parent2;
    double t_r; // in [0, 1]
};
struct MutationScalarLineage {
    IndividualId parent;
    double m_s;
    double r1;
    double r2;
};
struct MutationTreeLineage {
    IndividualId parent;
    double m_s;
    ExpressionTree tree1;
    ExpressionTree tree2;
};
using Lineage =
    std::variant<InitLineage, CrossoverLineage, MutationScalarLineage, MutationTreeLineage>;

struct Individual {
    IndividualId id;
    Lineage lineage;
    Semantics train_semantics;
    Semantics test_semantics;
    double train_fitness;
};

/// Append-only record of every individual ever created; ids are dense and
/// increasing, parents always precede children. Reads may run concurrently
/// with appends.
class LineageStore {
  public:
    IndividualId append(Lineage lineage, Semantics train, Semantics test, double fitness);

    const Individual& at(IndividualId id) const;
    std::size_t size() const;

  private:
    mutable std::shared_mutex mutex_;
    std::vector<std::unique_ptr<Individual>> individuals_;
};

/// Replays the lineage of `id` on one feature vector; each ancestor is
/// evaluated once per call.
double predict(const LineageStore& store, IndividualId id, std::span<const double, 6> features);

/// Symbolic expansion refused above the node budget: carries the count at
/// which expansion stopped.
struct SizeExceeded {
    std::size_t node_count;
};

constexpr std::size_t kDefaultMaterializeBudget = 100000;

/// Expands the lineage into a single expression tree whose evaluate agrees
/// with predict, or refuses when the result would exceed `node_budget`.
std::variant<ExpressionTree, SizeExceeded> materialize(
    const LineageStore& store, IndividualId id,
    std::size_t node_budget = kDefaultMaterializeBudget);

} // namespace gsgp
