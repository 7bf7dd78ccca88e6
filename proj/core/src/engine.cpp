#include "gsgp/engine.hpp"

#include <algorithm>
#include <cmath>

#include "gsgp/parallel.hpp"

namespace gsgp {

void GsgpConfig::validate() const {
    if (population_size == 0) throw std::invalid_argument("population_size must be positive");
    if (std::fabs(crossover_probability + mutation_probability - 1.0) > 1e-12 ||
        crossover_probability < 0 || mutation_probability < 0) {
        throw std::invalid_argument("crossover and mutation probabilities must sum to 1");
    }
    if (tournament_size == 0 || tournament_size > population_size) {
        throw std::invalid_argument("tournament_size must be in [1, population_size]");
    }
    if (elitism_count >= population_size) {
        throw std::invalid_argument("elitism_count must be below population_size");
    }
    if (mutation_step <= 0) throw std::invalid_argument("mutation_step must be positive");
}

DatasetView::DatasetView(const SlopeDataset& ds, std::vector<std::size_t> indices)
    : ds_(&ds), indices_(std::move(indices)) {
    for (std::size_t i : indices_) {
        if (i >= ds.size()) throw std::out_of_range("split index out of range");
        if (ds[i].status) labels_.push_back(*ds[i].status);
        if (ds[i].fs) fs_.push_back(*ds[i].fs);
    }
}

namespace {

double fitness_of(const Semantics& s, const DatasetView& view, Task task) {
    return task == Task::Classification ? classification_fitness(s, view.labels())
                                        : regression_fitness(s, view.fs_targets());
}

void require_labels(const DatasetView& view, Task task, const char* which) {
    if (view.size() == 0) throw DataError(std::string(which) + " view is empty");
    if (task == Task::Classification && view.labels().size() != view.size()) {
        throw DataError(std::string(which) + " data lacks the S column required for classification");
    }
    if (task == Task::Regression && view.fs_targets().size() != view.size()) {
        throw DataError(std::string(which) + " data lacks the FS column required for regression");
    }
}

MetricsReport make_report(const Semantics& s, const DatasetView& view, Task task) {
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
            // constant predictions: correlation undefined, leave empty
        }
        r.rmse = rmse(s, view.fs_targets());
    }
    return r;
}

GenerationStat make_stat(std::size_t gen, const std::vector<PopulationMember>& pop) {
    std::vector<double> fits;
    fits.reserve(pop.size());
    for (const auto& m : pop) fits.push_back(m.fitness);
    std::sort(fits.begin(), fits.end());
    double median = fits.size() % 2 == 1
                        ? fits[fits.size() / 2]
                        : 0.5 * (fits[fits.size() / 2 - 1] + fits[fits.size() / 2]);
    return GenerationStat{gen, fits.front(), median};
}

struct BestTracker {
    IndividualId id = 0;
    double fitness = std::numeric_limits<double>::infinity();

    void offer(IndividualId candidate, double fit) {
        if (fit < fitness || (fit == fitness && candidate < id)) {
            id = candidate;
            fitness = fit;
        }
    }
};

} // namespace

IndividualId tournament_select(const std::vector<PopulationMember>& population, std::size_t k,
                               Rng& rng) {
    if (k == 0 || k > population.size()) throw std::invalid_argument("bad tournament size");
    const PopulationMember* winner = &population[rng.below(population.size())];
    for (std::size_t i = 1; i < k; ++i) {
        const PopulationMember* candidate = &population[rng.below(population.size())];
        if (candidate->fitness < winner->fitness ||
            (candidate->fitness == winner->fitness && candidate->id < winner->id)) {
            winner = candidate;
        }
    }
    return winner->id;
}

std::vector<PopulationMember> initialize(const GsgpConfig& cfg, const DatasetView& train,
                                         const DatasetView& test, LineageStore& store, Rng& rng) {
    // All RNG draws happen here, sequentially; evaluation fans out after.
    std::vector<ExpressionTree> trees;
    trees.reserve(cfg.population_size);
    for (std::size_t i = 0; i < cfg.population_size; ++i) trees.push_back(random_tree(cfg.tree_gen, rng));

    std::vector<Semantics> train_sem(cfg.population_size), test_sem(cfg.population_size);
    parallel_for(cfg.population_size, [&](std::size_t i) {
        train_sem[i] = evaluate_on_dataset(trees[i], train.dataset(), train.indices());
        test_sem[i] = evaluate_on_dataset(trees[i], test.dataset(), test.indices());
    });

    std::vector<PopulationMember> population;
    population.reserve(cfg.population_size);
    for (std::size_t i = 0; i < cfg.population_size; ++i) {
        double fit = fitness_of(train_sem[i], train, cfg.task);
        IndividualId id = store.append(InitLineage{std::move(trees[i])}, std::move(train_sem[i]),
                                       std::move(test_sem[i]), fit);
        population.push_back({id, fit});
    }
    return population;
}

std::vector<PopulationMember> step_generation(const std::vector<PopulationMember>& population,
                                              const GsgpConfig& cfg, const DatasetView& train,
                                              const DatasetView& test, LineageStore& store,
                                              Rng& rng) {
    std::vector<PopulationMember> sorted = population;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        return a.fitness != b.fitness ? a.fitness < b.fitness : a.id < b.id;
    });

    std::vector<PopulationMember> next(sorted.begin(),
                                       sorted.begin() + static_cast<std::ptrdiff_t>(cfg.elitism_count));

    // Per offspring the draw order is fixed: operator choice, parent
    // selection(s), then the operator's own randomness.
    while (next.size() < population.size()) {
        bool do_crossover = rng.uniform01() < cfg.crossover_probability;
        if (do_crossover) {
            IndividualId p1 = tournament_select(population, cfg.tournament_size, rng);
            IndividualId p2 = tournament_select(population, cfg.tournament_size, rng);
            double t_r = rng.uniform01();
            const Individual& a = store.at(p1);
            const Individual& b = store.at(p2);
            Semantics tr = crossover_semantics(a.train_semantics, b.train_semantics, t_r);
            Semantics te = crossover_semantics(a.test_semantics, b.test_semantics, t_r);
            double fit = fitness_of(tr, train, cfg.task);
            IndividualId id =
                store.append(CrossoverLineage{p1, p2, t_r}, std::move(tr), std::move(te), fit);
            next.push_back({id, fit});
        } else if (cfg.mutation_mode == MutationMode::Scalar) {
            IndividualId p = tournament_select(population, cfg.tournament_size, rng);
            double r1 = rng.uniform01();
            double r2 = rng.uniform01();
            const Individual& parent = store.at(p);
            Semantics tr = mutation_semantics_scalar(parent.train_semantics, cfg.mutation_step, r1, r2);
            Semantics te = mutation_semantics_scalar(parent.test_semantics, cfg.mutation_step, r1, r2);
            double fit = fitness_of(tr, train, cfg.task);
            IndividualId id = store.append(MutationScalarLineage{p, cfg.mutation_step, r1, r2},
                                           std::move(tr), std::move(te), fit);
            next.push_back({id, fit});
        } else {
            IndividualId p = tournament_select(population, cfg.tournament_size, rng);
            ExpressionTree t1 = random_tree(cfg.tree_gen, rng);
            ExpressionTree t2 = random_tree(cfg.tree_gen, rng);
            auto squashed = [](Semantics s) {
                for (double& v : s) v = logistic(v);
                return s;
            };
            Semantics m1_tr = squashed(evaluate_on_dataset(t1, train.dataset(), train.indices()));
            Semantics m2_tr = squashed(evaluate_on_dataset(t2, train.dataset(), train.indices()));
            Semantics m1_te = squashed(evaluate_on_dataset(t1, test.dataset(), test.indices()));
            Semantics m2_te = squashed(evaluate_on_dataset(t2, test.dataset(), test.indices()));
            const Individual& parent = store.at(p);
            Semantics tr =
                mutation_semantics_tree(parent.train_semantics, cfg.mutation_step, m1_tr, m2_tr);
            Semantics te =
                mutation_semantics_tree(parent.test_semantics, cfg.mutation_step, m1_te, m2_te);
            double fit = fitness_of(tr, train, cfg.task);
            IndividualId id =
                store.append(MutationTreeLineage{p, cfg.mutation_step, std::move(t1), std::move(t2)},
                             std::move(tr), std::move(te), fit);
            next.push_back({id, fit});
        }
    }
    return next;
}

RunResult run_gsgp(const GsgpConfig& cfg, const DatasetView& train, const DatasetView& test) {
    cfg.validate();
    require_labels(train, cfg.task, "train");
    require_labels(test, cfg.task, "test");

    Rng rng(cfg.seed);
    auto store = std::make_shared<LineageStore>();
    std::vector<PopulationMember> population = initialize(cfg, train, test, *store, rng);

    BestTracker best;
    for (const auto& m : population) best.offer(m.id, m.fitness);

    RunResult result;
    result.per_generation.push_back(make_stat(0, population));
    for (std::size_t gen = 1; gen <= cfg.generations; ++gen) {
        population = step_generation(population, cfg, train, test, *store, rng);
        for (const auto& m : population) best.offer(m.id, m.fitness);
        result.per_generation.push_back(make_stat(gen, population));
    }

    const Individual& winner = store->at(best.id);
    result.best = best.id;
    result.train_metrics = make_report(winner.train_semantics, train, cfg.task);
    result.test_metrics = make_report(winner.test_semantics, test, cfg.task);
    result.store = std::move(store);
    return result;
}

} // namespace gsgp
