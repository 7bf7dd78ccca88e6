#pragma once

#include "gsgp/engine.hpp"

namespace gsgp {

class ModelError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A trained model: the winner's reachable lineage subgraph plus the run
/// configuration. Individuals in a loaded model carry no cached semantics;
/// prediction replays the lineage.
struct Model {
    Task task;
    GsgpConfig config;
    std::shared_ptr<LineageStore> store;
    IndividualId best;
};

/// JSON serialization of the best individual's reachable lineage subgraph,
/// ids renumbered densely in creation order. save(load(s)) == s, byte for
/// byte.
std::string save_model(const RunResult& result, const GsgpConfig& cfg);
Model load_model(std::string_view json_text);

double model_predict(const Model& model, std::span<const double, 6> features);

} // namespace gsgp
