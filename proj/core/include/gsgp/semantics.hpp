#pragma once

#include <vector>

#include "gsgp/expr_tree.hpp"
#include "gsgp/slope_data.hpp"

namespace gsgp {

/// A program's output vector over a fixed instance list.
using Semantics = std::vector<double>;

/// Tree outputs over the selected dataset rows, in index order.
Semantics evaluate_on_dataset(const ExpressionTree& tree, const SlopeDataset& ds,
                              std::span<const std::size_t> indices);

/// Convex combination t_r*s1 + (1-t_r)*s2 (geometric crossover).
Semantics crossover_semantics(const Semantics& s1, const Semantics& s2, double t_r);

/// s + m_s*(r1 - r2) with scalar random numbers; shifts every coordinate
/// by the same amount.
Semantics mutation_semantics_scalar(const Semantics& s, double m_s, double r1, double r2);

/// s + m_s*(sem1 - sem2) where sem1/sem2 are logistic-squashed random-tree
/// semantics, so each coordinate moves by less than m_s.
Semantics mutation_semantics_tree(const Semantics& s, double m_s, const Semantics& sem1,
                                  const Semantics& sem2);

inline double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

} // namespace gsgp
