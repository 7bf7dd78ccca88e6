// gsgp: slope-stability modeling CLI.
//
// Subcommands: dataset, train, predict, evaluate, compare.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 runtime error.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gsgp/detail/format.hpp"
#include "gsgp/model_io.hpp"
#include "gsgp/parallel.hpp"
#include "gsgp/stats.hpp"

namespace {

using namespace gsgp;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitRuntime = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << content;
    if (!out) throw DataError("write failed for '" + path + "'");
}

SlopeDataset load_data(const std::string& spec) {
    if (spec == "builtin") return embedded_dataset();
    return parse_csv(read_file(spec));
}

struct NormalizationInfo {
    std::array<double, 6> mins{};
    std::array<double, 6> maxs{};
};

SlopeDataset min_max_normalize(const SlopeDataset& ds, NormalizationInfo& info) {
    for (std::size_t f = 0; f < 6; ++f) {
        info.mins[f] = std::numeric_limits<double>::infinity();
        info.maxs[f] = -std::numeric_limits<double>::infinity();
    }
    for (const SlopeSample& s : ds.samples()) {
        auto feats = s.features();
        for (std::size_t f = 0; f < 6; ++f) {
            info.mins[f] = std::min(info.mins[f], feats[f]);
            info.maxs[f] = std::max(info.maxs[f], feats[f]);
        }
    }
    std::vector<SlopeSample> out;
    out.reserve(ds.size());
    for (const SlopeSample& s : ds.samples()) {
        auto feats = s.features();
        for (std::size_t f = 0; f < 6; ++f) {
            double range = info.maxs[f] - info.mins[f];
            feats[f] = range > 0 ? (feats[f] - info.mins[f]) / range : 0.0;
        }
        // Validation floor: keep strictly positive where the schema demands it.
        SlopeSample n{std::max(feats[0], 1e-12), feats[1], feats[2], feats[3],
                      std::max(feats[4], 1e-12), feats[5], s.status, s.fs};
        out.push_back(n);
    }
    return SlopeDataset(std::move(out));
}

DataSplit make_split(const SlopeDataset& ds, std::size_t n_train, std::optional<std::uint64_t> shuffle_seed) {
    DataSplit split = head_split(ds, n_train);
    if (shuffle_seed) {
        std::vector<std::size_t> order(ds.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        Rng rng(*shuffle_seed);
        for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
        split.train_indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
        split.test_indices.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
    }
    return split;
}

void print_config(const GsgpConfig& cfg, const std::string& data, std::size_t n_train,
                  std::optional<std::uint64_t> shuffle_seed) {
    std::cout << "config: task=" << task_name(cfg.task) << " data=" << data
              << " train_n=" << n_train
              << " shuffle_seed=" << (shuffle_seed ? std::to_string(*shuffle_seed) : "none")
              << " pop=" << cfg.population_size << " gens=" << cfg.generations
              << " ms=" << cfg.mutation_step << " cx_prob=" << cfg.crossover_probability
              << " mut_prob=" << cfg.mutation_probability
              << " tournament=" << cfg.tournament_size << " elitism=" << cfg.elitism_count
              << " mutation_mode=" << (cfg.mutation_mode == MutationMode::Scalar ? "scalar" : "tree")
              << " init_depths=" << cfg.tree_gen.min_depth << ".." << cfg.tree_gen.max_depth
              << " erc=" << (cfg.tree_gen.constants_enabled
                                 ? detail::format_double(cfg.tree_gen.constant_low) + "," +
                                       detail::format_double(cfg.tree_gen.constant_high)
                                 : "off")
              << " seed=" << cfg.seed << " threads=" << worker_thread_count() << "\n";
}

std::string scatter_csv(const Semantics& predicted, const std::vector<double>& actual) {
    std::ostringstream out;
    out << "actual,predicted\n";
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        out << detail::format_double(actual[i]) << ',' << detail::format_double(predicted[i]) << "\n";
    }
    return out.str();
}

std::string generation_log_csv(const std::vector<GenerationStat>& stats) {
    std::ostringstream out;
    out << "generation,best_fitness,median_fitness\n";
    for (const GenerationStat& g : stats) {
        out << g.generation << ',' << detail::format_double(g.best_fitness) << ','
            << detail::format_double(g.median_fitness) << "\n";
    }
    return out.str();
}

// ---- shared flag bundles -------------------------------------------------

struct EngineFlags {
    std::string task = "regression";
    std::string data = "builtin";
    std::size_t train_n = 40;
    std::optional<std::uint64_t> shuffle_seed;
    bool normalize = false;
    GsgpConfig cfg;
    std::string erc; // "low,high"
    std::string mutation_mode = "scalar";

    void attach(CLI::App* app, bool with_task = true) {
        if (with_task) {
            app->add_option("--task", task, "classification or regression")
                ->check(CLI::IsMember({"classification", "regression"}));
        }
        app->add_option("--data", data, "dataset CSV path or 'builtin'")->capture_default_str();
        app->add_option("--train-n", train_n, "head-split training row count")->capture_default_str();
        app->add_option("--shuffle-seed", shuffle_seed, "randomize the split with this seed");
        app->add_flag("--normalize", normalize, "min-max normalize features");
        app->add_option("--pop", cfg.population_size, "population size")->capture_default_str();
        app->add_option("--gens", cfg.generations, "generations")->capture_default_str();
        app->add_option("--ms", cfg.mutation_step, "mutation step")->capture_default_str();
        app->add_option("--cx-prob", cfg.crossover_probability, "crossover probability")
            ->capture_default_str();
        app->add_option("--mut-prob", cfg.mutation_probability, "mutation probability")
            ->capture_default_str();
        app->add_option("--tournament", cfg.tournament_size, "tournament size")->capture_default_str();
        app->add_option("--elitism", cfg.elitism_count, "elite count")->capture_default_str();
        app->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
        app->add_option("--mutation-mode", mutation_mode, "scalar or tree")
            ->check(CLI::IsMember({"scalar", "tree"}))
            ->capture_default_str();
        app->add_option("--erc", erc, "enable ephemeral constants, range 'low,high'");
        app->add_option("--init-depth-min", cfg.tree_gen.min_depth, "initial tree depth lower bound")
            ->capture_default_str();
        app->add_option("--init-depth-max", cfg.tree_gen.max_depth, "initial tree depth upper bound")
            ->capture_default_str();
    }

    void resolve() {
        cfg.task = task_from_name(task);
        cfg.mutation_mode = mutation_mode == "tree" ? MutationMode::Tree : MutationMode::Scalar;
        if (!erc.empty()) {
            auto comma = erc.find(',');
            if (comma == std::string::npos) throw UsageError("--erc expects 'low,high'");
            cfg.tree_gen.constants_enabled = true;
            cfg.tree_gen.constant_low = std::stod(erc.substr(0, comma));
            cfg.tree_gen.constant_high = std::stod(erc.substr(comma + 1));
        }
    }
};

// ---- subcommands ---------------------------------------------------------

int cmd_dataset(const std::string& mode, const std::string& out_path) {
    const EmbeddedTable& table = embedded_table();
    if (mode == "show") {
        std::cout << to_csv(table.data);
        return kExitOk;
    }
    write_file(out_path, to_csv(table.data));
    // Reference predictions from the study, kept apart from the actual labels.
    std::ostringstream ref;
    ref << "computational_S,computational_FS\n";
    for (std::size_t i = 0; i < table.data.size(); ++i) {
        ref << table.computational_s[i] << ',' << detail::format_double(table.computational_fs[i])
            << "\n";
    }
    std::string ref_path = out_path + ".reference.csv";
    write_file(ref_path, ref.str());
    std::cout << "wrote " << table.data.size() << " rows to " << out_path << " (reference columns: "
              << ref_path << ")\n";
    return kExitOk;
}

int cmd_train(EngineFlags& flags, const std::string& out_path, const std::string& log_path,
              const std::string& scatter_prefix) {
    flags.resolve();
    SlopeDataset ds = load_data(flags.data);
    NormalizationInfo norm;
    if (flags.normalize) ds = min_max_normalize(ds, norm);
    DataSplit split = make_split(ds, flags.train_n, flags.shuffle_seed);
    print_config(flags.cfg, flags.data, flags.train_n, flags.shuffle_seed);

    DatasetView train(ds, split.train_indices);
    DatasetView test(ds, split.test_indices);
    RunResult result = run_gsgp(flags.cfg, train, test);

    std::cout << "--- train metrics ---\n" << result.train_metrics.to_text();
    std::cout << "--- test metrics ---\n" << result.test_metrics.to_text();

    if (!out_path.empty()) {
        std::string model = save_model(result, flags.cfg);
        if (flags.normalize) {
            // Record feature scaling so predict can replay it.
            nlohmann::ordered_json doc = nlohmann::ordered_json::parse(model);
            doc["normalization"] = {{"mins", norm.mins}, {"maxs", norm.maxs}};
            model = doc.dump(2) + "\n";
        }
        write_file(out_path, model);
        std::cout << "model written to " << out_path << "\n";
    }
    if (!log_path.empty()) write_file(log_path, generation_log_csv(result.per_generation));

    std::string prefix = !scatter_prefix.empty() ? scatter_prefix : out_path;
    if (!prefix.empty() && flags.cfg.task == Task::Regression) {
        const Individual& best = result.store->at(result.best);
        write_file(prefix + ".train_scatter.csv",
                   scatter_csv(best.train_semantics, train.fs_targets()));
        write_file(prefix + ".test_scatter.csv",
                   scatter_csv(best.test_semantics, test.fs_targets()));
    }
    return kExitOk;
}

std::array<double, 6> parse_features(const std::string& csv) {
    std::array<double, 6> out{};
    std::stringstream ss(csv);
    std::string tok;
    std::size_t i = 0;
    while (std::getline(ss, tok, ',')) {
        if (i >= 6) throw UsageError("expected exactly 6 features");
        out[i++] = std::stod(tok);
    }
    if (i != 6) throw UsageError("expected exactly 6 features, got " + std::to_string(i));
    return out;
}

Model load_model_file(const std::string& path, std::optional<NormalizationInfo>& norm) {
    std::string text = read_file(path);
    Model model = load_model(text);
    auto doc = nlohmann::json::parse(text);
    if (doc.contains("normalization")) {
        NormalizationInfo n;
        for (std::size_t f = 0; f < 6; ++f) {
            n.mins[f] = doc["normalization"]["mins"][f].get<double>();
            n.maxs[f] = doc["normalization"]["maxs"][f].get<double>();
        }
        norm = n;
    }
    return model;
}

std::array<double, 6> apply_norm(const std::optional<NormalizationInfo>& norm,
                                 std::array<double, 6> feats) {
    if (!norm) return feats;
    for (std::size_t f = 0; f < 6; ++f) {
        double range = norm->maxs[f] - norm->mins[f];
        feats[f] = range > 0 ? (feats[f] - norm->mins[f]) / range : 0.0;
    }
    return feats;
}

int cmd_predict(const std::string& model_path, const std::string& input_path,
                const std::string& features_csv) {
    std::optional<NormalizationInfo> norm;
    Model model = load_model_file(model_path, norm);
    std::cout << "model: task=" << task_name(model.task) << " seed=" << model.config.seed
              << " individuals=" << model.store->size() << "\n";

    std::vector<std::array<double, 6>> rows;
    if (!features_csv.empty()) {
        rows.push_back(parse_features(features_csv));
    } else if (!input_path.empty()) {
        SlopeDataset ds = parse_csv(read_file(input_path));
        for (const SlopeSample& s : ds.samples()) rows.push_back(s.features());
    } else {
        throw UsageError("predict needs --input or --features");
    }

    for (const auto& row : rows) {
        double raw = model_predict(model, apply_norm(norm, row));
        if (model.task == Task::Classification) {
            std::cout << "raw=" << detail::format_double(raw) << " S=" << classify(raw) << "\n";
        } else {
            std::cout << "FS=" << detail::format_double(raw) << "\n";
        }
    }
    return kExitOk;
}

int cmd_evaluate(const std::string& model_path, const std::string& data, std::size_t train_n,
                 const std::string& split_name, bool use_reference) {
    SlopeDataset ds = load_data(data);
    DataSplit split = head_split(ds, train_n);

    std::vector<std::size_t> indices;
    if (split_name == "train") {
        indices = split.train_indices;
    } else if (split_name == "test") {
        indices = split.test_indices;
    } else {
        indices = split.train_indices;
        indices.insert(indices.end(), split.test_indices.begin(), split.test_indices.end());
    }
    DatasetView view(ds, indices);

    if (use_reference) {
        if (data != "builtin") throw UsageError("--reference requires --data builtin");
        const EmbeddedTable& table = embedded_table();
        std::vector<int> pred_s;
        std::vector<double> pred_fs;
        for (std::size_t i : indices) {
            pred_s.push_back(table.computational_s[i]);
            pred_fs.push_back(table.computational_fs[i]);
        }
        std::cout << "split=" << split_name << " n=" << indices.size() << " (reference columns)\n";
        std::cout << "accuracy_percent=" << accuracy_percent(pred_s, view.labels()) << "\n";
        std::cout << "pearson_r=" << pearson_r(view.fs_targets(), pred_fs) << "\n";
        std::cout << "rmse=" << rmse(pred_fs, view.fs_targets()) << "\n";
        return kExitOk;
    }

    std::optional<NormalizationInfo> norm;
    Model model = load_model_file(model_path, norm);
    Semantics predicted;
    for (std::size_t i : indices) {
        predicted.push_back(model_predict(model, apply_norm(norm, ds[i].features())));
    }

    MetricsReport report{};
    report.task = model.task;
    report.n = indices.size();
    if (model.task == Task::Classification) {
        if (view.labels().size() != indices.size()) throw DataError("data lacks the S column");
        std::vector<int> pred;
        for (double v : predicted) pred.push_back(classify(v));
        report.raw_fitness = classification_fitness(predicted, view.labels());
        report.accuracy_percent = accuracy_percent(pred, view.labels());
    } else {
        if (view.fs_targets().size() != indices.size()) throw DataError("data lacks the FS column");
        report.raw_fitness = regression_fitness(predicted, view.fs_targets());
        report.pearson_r = pearson_r(view.fs_targets(), predicted);
        report.rmse = rmse(predicted, view.fs_targets());
    }
    std::cout << "split=" << split_name << "\n" << report.to_text();
    return kExitOk;
}

int cmd_compare(EngineFlags& flags, std::size_t runs, const std::string& algorithms,
                const std::string& out_dir) {
    if (algorithms != "gsgp,stgp" && algorithms != "stgp,gsgp") {
        throw UsageError("comparison needs both algorithms: --algorithms gsgp,stgp");
    }
    flags.task = "regression";
    flags.resolve();
    SlopeDataset ds = load_data(flags.data);
    DataSplit split = make_split(ds, flags.train_n, flags.shuffle_seed);
    print_config(flags.cfg, flags.data, flags.train_n, flags.shuffle_seed);
    std::cout << "runs=" << runs << " algorithms=" << algorithms << "\n";

    StgpConfig stgp_cfg{flags.cfg};
    ComparisonStats stats = run_comparison(runs, flags.cfg.seed, flags.cfg, stgp_cfg, ds, split);

    std::filesystem::create_directories(out_dir);
    write_file(out_dir + "/comparison_runs.csv", stats.runs_csv());
    write_file(out_dir + "/comparison_summary.csv", stats.summary_csv());
    write_file(out_dir + "/wilcoxon_p.txt",
               "wilcoxon_p=" + detail::format_double(stats.wilcoxon_p) + "\n");

    std::cout << stats.summary_csv();
    std::cout << "wilcoxon_p=" << detail::format_double(stats.wilcoxon_p) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geometric semantic GP for slope stability classification and regression"};
    app.require_subcommand(1);

    // dataset
    auto* dataset = app.add_subcommand("dataset", "export or show the built-in 52-row corpus");
    std::string ds_out;
    auto* ds_export = dataset->add_subcommand("export", "write the corpus as CSV");
    ds_export->add_option("--out", ds_out, "output CSV path")->required();
    dataset->add_subcommand("show", "print the corpus as CSV");
    dataset->require_subcommand(1);

    // train
    auto* train = app.add_subcommand("train", "run GSGP and write a model file");
    EngineFlags train_flags;
    train_flags.attach(train);
    train->get_option("--task")->required();
    std::string train_out, train_log, train_scatter;
    train->add_option("--out", train_out, "model file path");
    train->add_option("--log", train_log, "per-generation CSV log path");
    train->add_option("--scatter", train_scatter, "scatter CSV path prefix");

    // predict
    auto* predict_cmd = app.add_subcommand("predict", "predict with a trained model");
    std::string pr_model, pr_input, pr_features;
    predict_cmd->add_option("--model", pr_model, "model file")->required();
    predict_cmd->add_option("--input", pr_input, "CSV of input rows");
    predict_cmd->add_option("--features", pr_features, "six comma-separated feature values");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "evaluate a model (or the reference columns)");
    std::string ev_model, ev_data = "builtin", ev_split = "all";
    std::size_t ev_train_n = 40;
    bool ev_reference = false;
    evaluate->add_option("--model", ev_model, "model file");
    evaluate->add_option("--data", ev_data, "dataset CSV path or 'builtin'")->capture_default_str();
    evaluate->add_option("--train-n", ev_train_n, "head-split boundary")->capture_default_str();
    evaluate->add_option("--split", ev_split, "train, test, or all")
        ->check(CLI::IsMember({"train", "test", "all"}))
        ->capture_default_str();
    evaluate->add_flag("--reference", ev_reference,
                       "evaluate the built-in reference prediction columns");

    // compare
    auto* compare = app.add_subcommand("compare", "repeated-run GSGP vs STGP comparison");
    EngineFlags cmp_flags;
    cmp_flags.attach(compare, /*with_task=*/false);
    std::size_t cmp_runs = 50;
    std::string cmp_algorithms = "gsgp,stgp", cmp_out_dir = ".";
    compare->add_option("--runs", cmp_runs, "runs per algorithm")->capture_default_str();
    compare->add_option("--algorithms", cmp_algorithms, "comma-separated algorithm list")
        ->capture_default_str();
    compare->add_option("--out-dir", cmp_out_dir, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (dataset->parsed()) {
            return cmd_dataset(ds_export->parsed() ? "export" : "show", ds_out);
        }
        if (train->parsed()) return cmd_train(train_flags, train_out, train_log, train_scatter);
        if (predict_cmd->parsed()) {
            if (!pr_features.empty() && !pr_input.empty()) {
                throw UsageError("give either --input or --features, not both");
            }
            return cmd_predict(pr_model, pr_input, pr_features);
        }
        if (evaluate->parsed()) {
            if (!ev_reference && ev_model.empty()) throw UsageError("evaluate needs --model or --reference");
            return cmd_evaluate(ev_model, ev_data, ev_train_n, ev_split, ev_reference);
        }
        if (compare->parsed()) {
            if (cmp_runs < 2) throw UsageError("--runs must be at least 2");
            return cmd_compare(cmp_flags, cmp_runs, cmp_algorithms, cmp_out_dir);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const ModelError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const MetricError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const TreeParseError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
