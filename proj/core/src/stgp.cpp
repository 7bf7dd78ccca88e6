#include <algorithm>
#include <cmath>

#include "gsgp/engine.hpp"
#include "gsgp/parallel.hpp"

namespace gsgp {

namespace {

struct TreeMember {
    ExpressionTree tree;
    double fitness = 0;
    std::uint64_t order = 0; // creation ordinal, tie-breaker
};

bool better(const TreeMember& a, const TreeMember& b) {
    return a.fitness != b.fitness ? a.fitness < b.fitness : a.order < b.order;
}

const TreeMember& tournament(const std::vector<TreeMember>& pop, std::size_t k, Rng& rng) {
    const TreeMember* winner = &pop[rng.below(pop.size())];
    for (std::size_t i = 1; i < k; ++i) {
        const TreeMember* candidate = &pop[rng.below(pop.size())];
        if (better(*candidate, *winner)) winner = candidate;
    }
    return *winner;
}

double fitness_of(const Semantics& s, const DatasetView& view, Task task) {
    return task == Task::Classification ? classification_fitness(s, view.labels())
                                        : regression_fitness(s, view.fs_targets());
}

GenerationStat make_stat(std::size_t gen, const std::vector<TreeMember>& pop) {
    std::vector<double> fits;
    fits.reserve(pop.size());
    for (const auto& m : pop) fits.push_back(m.fitness);
    std::sort(fits.begin(), fits.end());
    double median = fits.size() % 2 == 1
                        ? fits[fits.size() / 2]
                        : 0.5 * (fits[fits.size() / 2 - 1] + fits[fits.size() / 2]);
    return GenerationStat{gen, fits.front(), median};
}

MetricsReport report_for(const Semantics& s, const DatasetView& view, Task task) {
    MetricsReport r{};
    r.task = task;
    r.n = view.size();
    r.raw_fitness = fitness_of(s, view, task);
    if (task == Task::Classification) {
        std::vector<int> pred;
        pred.reserve(s.size());
        for (double v : s) pred.push_back(classify(v));
        r.accuracy_percent = accuracy_percent(pred, view.labels());
    } else {
        try {
            r.pearson_r = pearson_r(view.fs_targets(), s);
        } catch (const MetricError&) {
        }
        r.rmse = rmse(s, view.fs_targets());
    }
    return r;
}

} // namespace

RunResult run_stgp(const StgpConfig& cfg, const DatasetView& train, const DatasetView& test) {
    const GsgpConfig& c = cfg.common;
    c.validate();
    if (c.task == Task::Classification && train.labels().size() != train.size()) {
        throw DataError("train data lacks the S column required for classification");
    }
    if (c.task == Task::Regression && train.fs_targets().size() != train.size()) {
        throw DataError("train data lacks the FS column required for regression");
    }
    if (train.size() == 0) throw DataError("train view is empty");

    Rng rng(c.seed);
    TreeGenConfig subtree_gen = c.tree_gen;
    subtree_gen.min_depth = 1;
    subtree_gen.max_depth = 4;
    subtree_gen.method = GenMethod::Grow;

    std::uint64_t next_order = 0;
    auto evaluate_all = [&](std::vector<TreeMember>& pop) {
        parallel_for(pop.size(), [&](std::size_t i) {
            Semantics s = evaluate_on_dataset(pop[i].tree, train.dataset(), train.indices());
            pop[i].fitness = fitness_of(s, train, c.task);
        });
    };

    std::vector<TreeMember> population;
    population.reserve(c.population_size);
    for (std::size_t i = 0; i < c.population_size; ++i) {
        population.push_back({random_tree(c.tree_gen, rng), 0, next_order++});
    }
    evaluate_all(population);

    TreeMember best = *std::min_element(population.begin(), population.end(),
                                        [](const auto& a, const auto& b) { return better(a, b); });

    RunResult result;
    result.per_generation.push_back(make_stat(0, population));

    for (std::size_t gen = 1; gen <= c.generations; ++gen) {
        std::vector<const TreeMember*> ranked;
        ranked.reserve(population.size());
        for (const auto& m : population) ranked.push_back(&m);
        std::sort(ranked.begin(), ranked.end(),
                  [](const auto* a, const auto* b) { return better(*a, *b); });

        std::vector<TreeMember> next;
        next.reserve(population.size());
        for (std::size_t e = 0; e < c.elitism_count; ++e) {
            next.push_back({ranked[e]->tree, ranked[e]->fitness, next_order++});
        }

        // Offspring trees are built sequentially (all RNG here), then the
        // batch is evaluated in parallel.
        std::size_t first_offspring = next.size();
        while (next.size() < population.size()) {
            bool do_crossover = rng.uniform01() < c.crossover_probability;
            ExpressionTree child;
            if (do_crossover) {
                const TreeMember& p1 = tournament(population, c.tournament_size, rng);
                const TreeMember& p2 = tournament(population, c.tournament_size, rng);
                std::size_t i = rng.below(p1.tree.node_count());
                std::size_t j = rng.below(p2.tree.node_count());
                child = p1.tree.replace_subtree(i, p2.tree.subtree(j));
                if (child.depth() > cfg.max_depth) child = p1.tree;
            } else {
                const TreeMember& p = tournament(population, c.tournament_size, rng);
                std::size_t i = rng.below(p.tree.node_count());
                child = p.tree.replace_subtree(i, random_tree(subtree_gen, rng));
                if (child.depth() > cfg.max_depth) child = p.tree;
            }
            next.push_back({std::move(child), 0, next_order++});
        }
        parallel_for(next.size() - first_offspring, [&](std::size_t k) {
            TreeMember& m = next[first_offspring + k];
            Semantics s = evaluate_on_dataset(m.tree, train.dataset(), train.indices());
            m.fitness = fitness_of(s, train, c.task);
        });

        population = std::move(next);
        for (const auto& m : population) {
            if (better(m, best)) best = m;
        }
        result.per_generation.push_back(make_stat(gen, population));
    }

    Semantics best_train = evaluate_on_dataset(best.tree, train.dataset(), train.indices());
    Semantics best_test = evaluate_on_dataset(best.tree, test.dataset(), test.indices());
    result.train_metrics = report_for(best_train, train, c.task);
    result.test_metrics = report_for(best_test, test, c.task);

    auto store = std::make_shared<LineageStore>();
    result.best = store->append(InitLineage{best.tree}, std::move(best_train),
                                std::move(best_test), best.fitness);
    result.store = std::move(store);
    return result;
}

} // namespace gsgp
