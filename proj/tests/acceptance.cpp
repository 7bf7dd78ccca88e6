// Acceptance suite: exercises the headline behaviors end to end and prints
// one pass/fail line per criterion. Returns the number of failures.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "gsgp/model_io.hpp"
#include "gsgp/stats.hpp"

using namespace gsgp;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << criterion << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++g_failures;
}

// The evolution setup used for the stochastic criteria. Population size,
// generation count, mutation step, and the 40/12 head split are the study
// settings; the remaining knobs (selection pressure, operator mix, tree
// mutation) are the tuned defaults of this implementation and are pinned
// here so results are reproducible.
GsgpConfig experiment_config(Task task, std::uint64_t seed) {
    GsgpConfig cfg;
    cfg.population_size = 500;
    cfg.generations = 50;
    cfg.mutation_step = 0.1;
    cfg.crossover_probability = 0.1;
    cfg.mutation_probability = 0.9;
    cfg.tournament_size = 8;
    cfg.elitism_count = 1;
    cfg.mutation_mode = MutationMode::Tree;
    cfg.task = task;
    cfg.seed = seed;
    return cfg;
}

double median_of(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    std::size_t n = xs.size();
    return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

struct Views {
    DatasetView train;
    DatasetView test;
};

Views standard_views() {
    const SlopeDataset& ds = embedded_dataset();
    DataSplit split = head_split(ds, 40);
    return {DatasetView(ds, split.train_indices), DatasetView(ds, split.test_indices)};
}

// ---- criterion 1: deterministic metric reproduction from the table -------

void criterion_1() {
    const EmbeddedTable& t = embedded_table();
    std::vector<int> as_tr, as_te, cs_tr, cs_te;
    std::vector<double> af_tr, af_te, cf_tr, cf_te;
    for (std::size_t i = 0; i < 52; ++i) {
        bool train = i < 40;
        (train ? as_tr : as_te).push_back(*t.data[i].status);
        (train ? cs_tr : cs_te).push_back(t.computational_s[i]);
        (train ? af_tr : af_te).push_back(*t.data[i].fs);
        (train ? cf_tr : cf_te).push_back(t.computational_fs[i]);
    }
    double acc_tr = accuracy_percent(cs_tr, as_tr);
    double acc_te = accuracy_percent(cs_te, as_te);
    double r_tr = pearson_r(af_tr, cf_tr);
    double r_te = pearson_r(af_te, cf_te);

    std::ostringstream d;
    d << "acc " << acc_tr << "/" << acc_te << ", R " << r_tr << "/" << r_te;
    report(1, "table metric reproduction",
           acc_tr == 97.5 && acc_te == 100.0 * 11 / 12 && std::fabs(r_tr - 0.958) <= 0.01 &&
               std::fabs(r_te - 0.934) <= 0.01,
           d.str());
}

// ---- criterion 2: stochastic training quality over 50 seeded runs --------

void criterion_2() {
    Views v = standard_views();

    std::vector<double> cls_train_acc, cls_test_acc;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        RunResult r = run_gsgp(experiment_config(Task::Classification, seed), v.train, v.test);
        cls_train_acc.push_back(*r.train_metrics.accuracy_percent);
        cls_test_acc.push_back(*r.test_metrics.accuracy_percent);
    }
    double best_cls_train = *std::max_element(cls_train_acc.begin(), cls_train_acc.end());
    double median_cls_test = median_of(cls_test_acc);

    std::vector<double> reg_train_r, reg_test_r;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        RunResult r = run_gsgp(experiment_config(Task::Regression, seed), v.train, v.test);
        reg_train_r.push_back(r.train_metrics.pearson_r.value_or(0.0));
        reg_test_r.push_back(r.test_metrics.pearson_r.value_or(0.0));
    }
    double best_reg_train = *std::max_element(reg_train_r.begin(), reg_train_r.end());
    double median_reg_test = median_of(reg_test_r);

    std::ostringstream d;
    d << "cls best-train " << best_cls_train << "%, cls median-test " << median_cls_test
      << "%, reg best-train R " << best_reg_train << ", reg median-test R " << median_reg_test;
    report(2, "50-run training quality",
           best_cls_train >= 95.0 && median_cls_test >= 75.0 && best_reg_train >= 0.95 &&
               median_reg_test >= 0.80,
           d.str());
}

// ---- criterion 3: 50-run GSGP vs STGP comparison --------------------------

void criterion_3() {
    const SlopeDataset& ds = embedded_dataset();
    DataSplit split = head_split(ds, 40);
    GsgpConfig gcfg = experiment_config(Task::Regression, 0);
    StgpConfig scfg{gcfg};
    ComparisonStats stats = run_comparison(50, 1, gcfg, scfg, ds, split);

    std::ostringstream d;
    d << "median " << stats.gsgp.summary.median << " vs " << stats.stgp.summary.median << ", IQR "
      << stats.gsgp.summary.iqr() << " vs " << stats.stgp.summary.iqr() << ", p "
      << stats.wilcoxon_p;
    report(3, "comparison: GSGP beats STGP",
           stats.gsgp.summary.median < stats.stgp.summary.median &&
               stats.gsgp.summary.iqr() <= stats.stgp.summary.iqr() && stats.wilcoxon_p < 0.05,
           d.str());
}

// ---- criterion 4: property suites -----------------------------------------

void criterion_4a() {
    Rng rng(101);
    std::vector<double> targets{1.0, -0.5, 2.0, 0.0, 3.5};
    bool ok = true;
    for (int i = 0; i < 10000 && ok; ++i) {
        Semantics a(5), b(5);
        for (std::size_t k = 0; k < 5; ++k) {
            a[k] = rng.uniform(-10, 10);
            b[k] = rng.uniform(-10, 10);
        }
        double t = rng.uniform01();
        Semantics c = crossover_semantics(a, b, t);
        for (std::size_t k = 0; k < 5; ++k) {
            if (c[k] < std::min(a[k], b[k]) - 1e-12 || c[k] > std::max(a[k], b[k]) + 1e-12) ok = false;
        }
        double worst = std::max(regression_fitness(a, targets), regression_fitness(b, targets));
        if (regression_fitness(c, targets) > worst + 1e-9) ok = false;
    }
    report(4, "a: crossover betweenness and L1 bound", ok);
}

void criterion_4b() {
    Rng rng(102);
    bool ok = true;
    for (int i = 0; i < 10000 && ok; ++i) {
        Semantics s(4);
        for (double& v : s) v = rng.uniform(-10, 10);
        double m_s = rng.uniform(0.01, 1.0);
        Semantics sc = mutation_semantics_scalar(s, m_s, rng.uniform01(), rng.uniform01());
        Semantics t1(4), t2(4);
        for (std::size_t k = 0; k < 4; ++k) {
            t1[k] = logistic(rng.uniform(-30, 30));
            t2[k] = logistic(rng.uniform(-30, 30));
        }
        Semantics tm = mutation_semantics_tree(s, m_s, t1, t2);
        for (std::size_t k = 0; k < 4; ++k) {
            if (std::fabs(sc[k] - s[k]) > m_s + 1e-12) ok = false;
            if (std::fabs(tm[k] - s[k]) > m_s + 1e-12) ok = false;
        }
    }
    report(4, "b: mutation sup-norm bound", ok);
}

void criterion_4c() {
    Views v = standard_views();
    const SlopeDataset& ds = embedded_dataset();
    bool ok = true;
    double worst = 0;
    for (MutationMode mode : {MutationMode::Scalar, MutationMode::Tree}) {
        GsgpConfig cfg = experiment_config(Task::Regression, 13);
        cfg.population_size = 50;
        cfg.generations = 20;
        cfg.mutation_mode = mode;
        RunResult r = run_gsgp(cfg, v.train, v.test);
        for (IndividualId id = 0; id < r.store->size(); ++id) {
            const Individual& ind = r.store->at(id);
            for (std::size_t k = 0; k < 40; ++k) {
                std::array<double, 6> f = ds[k].features();
                double err = std::fabs(predict(*r.store, id, f) - ind.train_semantics[k]);
                worst = std::max(worst, err);
            }
            for (std::size_t k = 0; k < 12; ++k) {
                std::array<double, 6> f = ds[40 + k].features();
                double err = std::fabs(predict(*r.store, id, f) - ind.test_semantics[k]);
                worst = std::max(worst, err);
            }
        }
    }
    ok = worst <= 1e-9;
    std::ostringstream d;
    d << "max |cached - replayed| = " << worst;
    report(4, "c: lineage consistency on a full run", ok, d.str());
}

void criterion_4d() {
    Rng rng(104);
    const SlopeDataset& ds = embedded_dataset();
    TreeGenConfig gen{2, 4, GenMethod::RampedHalfAndHalf};
    bool ok = true;
    for (int trial = 0; trial < 100 && ok; ++trial) {
        LineageStore store;
        for (int i = 0; i < 3; ++i) store.append(InitLineage{random_tree(gen, rng)}, {}, {}, 0);
        for (int i = 0; i < 6; ++i) {
            IndividualId last = static_cast<IndividualId>(store.size());
            switch (rng.below(3)) {
                case 0:
                    store.append(CrossoverLineage{static_cast<IndividualId>(rng.below(last)),
                                                  static_cast<IndividualId>(rng.below(last)),
                                                  rng.uniform01()},
                                 {}, {}, 0);
                    break;
                case 1:
                    store.append(MutationScalarLineage{static_cast<IndividualId>(rng.below(last)),
                                                       0.1, rng.uniform01(), rng.uniform01()},
                                 {}, {}, 0);
                    break;
                default:
                    store.append(MutationTreeLineage{static_cast<IndividualId>(rng.below(last)), 0.1,
                                                     random_tree(gen, rng), random_tree(gen, rng)},
                                 {}, {}, 0);
            }
        }
        IndividualId id = static_cast<IndividualId>(store.size() - 1);
        auto result = materialize(store, id);
        if (!std::holds_alternative<ExpressionTree>(result)) {
            ok = false;
            break;
        }
        const ExpressionTree& tree = std::get<ExpressionTree>(result);
        for (const SlopeSample& s : ds.samples()) {
            std::array<double, 6> f = s.features();
            if (std::fabs(tree.evaluate(f) - predict(store, id, f)) > 1e-9) ok = false;
        }
    }
    report(4, "d: materialize agrees with predict", ok);
}

void criterion_4e() {
    Rng rng(105);
    const SlopeDataset& ds = embedded_dataset();
    TreeGenConfig gen{2, 12, GenMethod::RampedHalfAndHalf};
    bool ok = true;
    for (int i = 0; i < 300 && ok; ++i) {
        ExpressionTree t = random_tree(gen, rng);
        for (const SlopeSample& s : ds.samples()) {
            std::array<double, 6> f = s.features();
            if (!std::isfinite(t.evaluate(f))) ok = false;
        }
    }
    report(4, "e: protected-division totality fuzz", ok);
}

void criterion_4f() {
    // exact-enumeration oracle over all sample-size pairs with min(n,m) <= 5
    Rng rng(106);
    bool ok = std::fabs(wilcoxon_rank_sum({1, 2, 3}, {4, 5, 6}) - 0.1) < 1e-12;
    for (std::size_t n = 1; n <= 5 && ok; ++n) {
        for (std::size_t m = n; m <= 7 && ok; ++m) {
            for (int rep = 0; rep < 10 && ok; ++rep) {
                std::vector<double> a(n), b(m);
                for (double& x : a) x = rng.uniform01();
                for (double& x : b) x = rng.uniform01();
                // oracle: enumerate rank subsets directly
                std::size_t total = n + m;
                std::vector<double> sorted(a);
                sorted.insert(sorted.end(), b.begin(), b.end());
                std::sort(sorted.begin(), sorted.end());
                double w_obs = 0;
                for (double x : a) {
                    w_obs += static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(), x) -
                                                 sorted.begin()) +
                             1;
                }
                std::vector<bool> mask(total, false);
                std::fill(mask.end() - static_cast<std::ptrdiff_t>(n), mask.end(), true);
                double count = 0, le = 0, ge = 0;
                do {
                    double w = 0;
                    for (std::size_t i = 0; i < total; ++i) {
                        if (mask[i]) w += static_cast<double>(i + 1);
                    }
                    count += 1;
                    if (w <= w_obs) le += 1;
                    if (w >= w_obs) ge += 1;
                } while (std::next_permutation(mask.begin(), mask.end()));
                double oracle = std::min(1.0, 2.0 * std::min(le, ge) / count);
                if (std::fabs(wilcoxon_rank_sum(a, b) - oracle) > 1e-12) ok = false;
            }
        }
    }
    report(4, "f: Wilcoxon exact-enumeration oracle", ok);
}

void criterion_4g() {
    Views v = standard_views();
    GsgpConfig cfg = experiment_config(Task::Regression, 21);
    cfg.population_size = 60;
    cfg.generations = 10;

    auto run_with_threads = [&](const char* threads) {
        setenv("GSGP_THREADS", threads, 1);
        return run_gsgp(cfg, v.train, v.test);
    };
    RunResult one = run_with_threads("1");
    RunResult one_again = run_with_threads("1");
    RunResult four = run_with_threads("4");
    unsetenv("GSGP_THREADS");

    auto identical = [](const RunResult& a, const RunResult& b) {
        if (a.best != b.best || a.store->size() != b.store->size()) return false;
        for (IndividualId id = 0; id < a.store->size(); ++id) {
            const Individual& x = a.store->at(id);
            const Individual& y = b.store->at(id);
            if (x.train_fitness != y.train_fitness || x.train_semantics != y.train_semantics ||
                x.test_semantics != y.test_semantics) {
                return false;
            }
        }
        return true;
    };
    report(4, "g: bit-identical runs across seeds repeats and thread counts",
           identical(one, one_again) && identical(one, four));
}

// ---- criterion 5: round-trips ---------------------------------------------

void criterion_5() {
    const SlopeDataset& ds = embedded_dataset();
    bool csv_ok = true;
    SlopeDataset back = parse_csv(to_csv(ds));
    if (back.size() != ds.size()) {
        csv_ok = false;
    } else {
        for (std::size_t i = 0; i < ds.size(); ++i) {
            if (back[i].gamma != ds[i].gamma || back[i].cohesion != ds[i].cohesion ||
                back[i].phi != ds[i].phi || back[i].beta != ds[i].beta ||
                back[i].height != ds[i].height || back[i].ru != ds[i].ru ||
                back[i].status != ds[i].status || back[i].fs != ds[i].fs) {
                csv_ok = false;
            }
        }
    }

    Views v = standard_views();
    GsgpConfig cfg = experiment_config(Task::Regression, 33);
    cfg.population_size = 40;
    cfg.generations = 10;
    RunResult r = run_gsgp(cfg, v.train, v.test);
    std::string text = save_model(r, cfg);
    Model model = load_model(text);
    bool model_ok = save_model(RunResult{model.best, model.store, {}, {}, {}}, model.config) == text;

    bool predict_ok = true;
    const Semantics& cached = r.store->at(r.best).train_semantics;
    for (std::size_t i = 0; i < 40; ++i) {
        std::array<double, 6> f = ds[i].features();
        if (std::fabs(model_predict(model, f) - cached[i]) > 1e-9) predict_ok = false;
    }

    report(5, "round-trips: CSV, model file, predict vs stored semantics",
           csv_ok && model_ok && predict_ok);
}

} // namespace

int main() {
    criterion_1();
    criterion_4a();
    criterion_4b();
    criterion_4c();
    criterion_4d();
    criterion_4e();
    criterion_4f();
    criterion_4g();
    criterion_5();
    criterion_2();
    criterion_3();
    std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES PRESENT") << "\n";
    return g_failures;
}
