#include "gsgp/lineage.hpp"

#include <mutex>
#include <unordered_map>

namespace gsgp {

IndividualId LineageStore::append(Lineage lineage, Semantics train, Semantics test,
                                  double fitness) {
    std::unique_lock lock(mutex_);
    IndividualId id = static_cast<IndividualId>(individuals_.size());
    std::visit(
        [&](const auto& lin) {
            using T = std::decay_t<decltype(lin)>;
            auto check = [&](IndividualId parent) {
                if (parent >= id) throw std::invalid_argument("parent must precede child");
            };
            if constexpr (std::is_same_v<T, CrossoverLineage>) {
                check(lin.parent1);
                check(lin.parent2);
            } else if constexpr (std::is_same_v<T, MutationScalarLineage> ||
                                 std::is_same_v<T, MutationTreeLineage>) {
                check(lin.parent);
            }
        },
        lineage);
    individuals_.push_back(std::make_unique<Individual>(
        Individual{id, std::move(lineage), std::move(train), std::move(test), fitness}));
    return id;
}

const Individual& LineageStore::at(IndividualId id) const {
    std::shared_lock lock(mutex_);
    if (id >= individuals_.size()) {
        throw std::out_of_range("unknown individual id " + std::to_string(id));
    }
    return *individuals_[id];
}

std::size_t LineageStore::size() const {
    std::shared_lock lock(mutex_);
    return individuals_.size();
}

namespace {

double predict_rec(const LineageStore& store, IndividualId id,
                   std::span<const double, 6> features,
                   std::unordered_map<IndividualId, double>& memo) {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const Individual& ind = store.at(id);
    double value = std::visit(
        [&](const auto& lin) -> double {
            using T = std::decay_t<decltype(lin)>;
            if constexpr (std::is_same_v<T, InitLineage>) {
                return lin.tree.evaluate(features);
            } else if constexpr (std::is_same_v<T, CrossoverLineage>) {
                double p1 = predict_rec(store, lin.parent1, features, memo);
                double p2 = predict_rec(store, lin.parent2, features, memo);
                return lin.t_r * p1 + (1.0 - lin.t_r) * p2;
            } else if constexpr (std::is_same_v<T, MutationScalarLineage>) {
                double p = predict_rec(store, lin.parent, features, memo);
                return p + lin.m_s * (lin.r1 - lin.r2);
            } else {
                double p = predict_rec(store, lin.parent, features, memo);
                return p + lin.m_s * (logistic(lin.tree1.evaluate(features)) -
                                      logistic(lin.tree2.evaluate(features)));
            }
        },
        ind.lineage);
    memo.emplace(id, value);
    return value;
}

} // namespace

double predict(const LineageStore& store, IndividualId id, std::span<const double, 6> features) {
    std::unordered_map<IndividualId, double> memo;
    return predict_rec(store, id, features, memo);
}

namespace {

struct Budget {
    std::size_t limit;
    std::size_t refused_at = 0;
};

// Materialized trees strictly contain their ancestors' trees, so exceeding
// the budget at any ancestor implies the final tree exceeds it too.
const ExpressionTree* materialize_rec(const LineageStore& store, IndividualId id, Budget& budget,
                                      std::unordered_map<IndividualId, ExpressionTree>& memo) {
    if (auto it = memo.find(id); it != memo.end()) return &it->second;
    const Individual& ind = store.at(id);
    ExpressionTree result;
    bool ok = std::visit(
        [&](const auto& lin) -> bool {
            using T = std::decay_t<decltype(lin)>;
            if constexpr (std::is_same_v<T, InitLineage>) {
                result = lin.tree;
                return true;
            } else if constexpr (std::is_same_v<T, CrossoverLineage>) {
                const ExpressionTree* t1 = materialize_rec(store, lin.parent1, budget, memo);
                if (!t1) return false;
                const ExpressionTree* t2 = materialize_rec(store, lin.parent2, budget, memo);
                if (!t2) return false;
                std::size_t total = t1->node_count() + t2->node_count() + 5;
                if (total > budget.limit) {
                    budget.refused_at = total;
                    return false;
                }
                result = ExpressionTree::binary(
                    Op::Add,
                    ExpressionTree::binary(Op::Mul, *t1, ExpressionTree::constant(lin.t_r)),
                    ExpressionTree::binary(Op::Mul, ExpressionTree::constant(1.0 - lin.t_r), *t2));
                return true;
            } else if constexpr (std::is_same_v<T, MutationScalarLineage>) {
                const ExpressionTree* t = materialize_rec(store, lin.parent, budget, memo);
                if (!t) return false;
                std::size_t total = t->node_count() + 2;
                if (total > budget.limit) {
                    budget.refused_at = total;
                    return false;
                }
                result = ExpressionTree::binary(
                    Op::Add, *t, ExpressionTree::constant(lin.m_s * (lin.r1 - lin.r2)));
                return true;
            } else {
                const ExpressionTree* t = materialize_rec(store, lin.parent, budget, memo);
                if (!t) return false;
                std::size_t total =
                    t->node_count() + lin.tree1.node_count() + lin.tree2.node_count() + 6;
                if (total > budget.limit) {
                    budget.refused_at = total;
                    return false;
                }
                result = ExpressionTree::binary(
                    Op::Add, *t,
                    ExpressionTree::binary(
                        Op::Mul, ExpressionTree::constant(lin.m_s),
                        ExpressionTree::binary(Op::Sub, ExpressionTree::logistic(lin.tree1),
                                               ExpressionTree::logistic(lin.tree2))));
                return true;
            }
        },
        ind.lineage);
    if (!ok) return nullptr;
    auto [it, inserted] = memo.emplace(id, std::move(result));
    return &it->second;
}

} // namespace

std::variant<ExpressionTree, SizeExceeded> materialize(const LineageStore& store, IndividualId id,
                                                       std::size_t node_budget) {
    Budget budget{node_budget};
    std::unordered_map<IndividualId, ExpressionTree> memo;
    const ExpressionTree* tree = materialize_rec(store, id, budget, memo);
    if (!tree) return SizeExceeded{budget.refused_at};
    return *tree;
}

} // namespace gsgp
