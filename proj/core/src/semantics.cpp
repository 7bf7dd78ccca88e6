#include "gsgp/semantics.hpp"

namespace gsgp {

Semantics evaluate_on_dataset(const ExpressionTree& tree, const SlopeDataset& ds,
                              std::span<const std::size_t> indices) {
    Semantics out;
    out.reserve(indices.size());
    for (std::size_t idx : indices) {
        std::array<double, 6> f = ds[idx].features();
        out.push_back(tree.evaluate(f));
    }
    return out;
}

Semantics crossover_semantics(const Semantics& s1, const Semantics& s2, double t_r) {
    if (s1.size() != s2.size()) throw std::invalid_argument("semantics length mismatch");
    Semantics out(s1.size());
    for (std::size_t i = 0; i < s1.size(); ++i) out[i] = t_r * s1[i] + (1.0 - t_r) * s2[i];
    return out;
}

Semantics mutation_semantics_scalar(const Semantics& s, double m_s, double r1, double r2) {
    Semantics out(s.size());
    double shift = m_s * (r1 - r2);
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i] + shift;
    return out;
}

Semantics mutation_semantics_tree(const Semantics& s, double m_s, const Semantics& sem1,
                                  const Semantics& sem2) {
    if (s.size() != sem1.size() || s.size() != sem2.size()) {
        throw std::invalid_argument("semantics length mismatch");
    }
    Semantics out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i] + m_s * (sem1[i] - sem2[i]);
    return out;
}

} // namespace gsgp
