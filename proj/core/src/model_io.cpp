#include "gsgp/model_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <unordered_map>

namespace gsgp {

namespace {

using Json = nlohmann::ordered_json;

const char* mutation_mode_name(MutationMode m) {
    return m == MutationMode::Scalar ? "scalar" : "tree";
}

MutationMode mutation_mode_from(const std::string& s) {
    if (s == "scalar") return MutationMode::Scalar;
    if (s == "tree") return MutationMode::Tree;
    throw ModelError("unknown mutation mode '" + s + "'");
}

const char* gen_method_name(GenMethod m) {
    switch (m) {
        case GenMethod::Grow: return "grow";
        case GenMethod::Full: return "full";
        default: return "ramped";
    }
}

GenMethod gen_method_from(const std::string& s) {
    if (s == "grow") return GenMethod::Grow;
    if (s == "full") return GenMethod::Full;
    if (s == "ramped") return GenMethod::RampedHalfAndHalf;
    throw ModelError("unknown generation method '" + s + "'");
}

Json config_json(const GsgpConfig& cfg) {
    return Json{{"population_size", cfg.population_size},
                {"generations", cfg.generations},
                {"mutation_step", cfg.mutation_step},
                {"crossover_probability", cfg.crossover_probability},
                {"mutation_probability", cfg.mutation_probability},
                {"tournament_size", cfg.tournament_size},
                {"elitism_count", cfg.elitism_count},
                {"mutation_mode", mutation_mode_name(cfg.mutation_mode)},
                {"tree_gen",
                 Json{{"min_depth", cfg.tree_gen.min_depth},
                      {"max_depth", cfg.tree_gen.max_depth},
                      {"method", gen_method_name(cfg.tree_gen.method)},
                      {"constants_enabled", cfg.tree_gen.constants_enabled},
                      {"constant_low", cfg.tree_gen.constant_low},
                      {"constant_high", cfg.tree_gen.constant_high}}}};
}

GsgpConfig config_from_json(const Json& j) {
    GsgpConfig cfg;
    cfg.population_size = j.at("population_size").get<std::size_t>();
    cfg.generations = j.at("generations").get<std::size_t>();
    cfg.mutation_step = j.at("mutation_step").get<double>();
    cfg.crossover_probability = j.at("crossover_probability").get<double>();
    cfg.mutation_probability = j.at("mutation_probability").get<double>();
    cfg.tournament_size = j.at("tournament_size").get<std::size_t>();
    cfg.elitism_count = j.at("elitism_count").get<std::size_t>();
    cfg.mutation_mode = mutation_mode_from(j.at("mutation_mode").get<std::string>());
    const Json& tg = j.at("tree_gen");
    cfg.tree_gen.min_depth = tg.at("min_depth").get<std::size_t>();
    cfg.tree_gen.max_depth = tg.at("max_depth").get<std::size_t>();
    cfg.tree_gen.method = gen_method_from(tg.at("method").get<std::string>());
    cfg.tree_gen.constants_enabled = tg.at("constants_enabled").get<bool>();
    cfg.tree_gen.constant_low = tg.at("constant_low").get<double>();
    cfg.tree_gen.constant_high = tg.at("constant_high").get<double>();
    return cfg;
}

void collect_reachable(const LineageStore& store, IndividualId id, std::vector<bool>& seen) {
    if (seen[id]) return;
    seen[id] = true;
    std::visit(
        [&](const auto& lin) {
            using T = std::decay_t<decltype(lin)>;
            if constexpr (std::is_same_v<T, CrossoverLineage>) {
                collect_reachable(store, lin.parent1, seen);
                collect_reachable(store, lin.parent2, seen);
            } else if constexpr (std::is_same_v<T, MutationScalarLineage> ||
                                 std::is_same_v<T, MutationTreeLineage>) {
                collect_reachable(store, lin.parent, seen);
            }
        },
        store.at(id).lineage);
}

} // namespace

std::string save_model(const RunResult& result, const GsgpConfig& cfg) {
    const LineageStore& store = *result.store;
    std::vector<bool> seen(store.size(), false);
    collect_reachable(store, result.best, seen);

    // Dense renumbering in creation order keeps parents before children and
    // makes save(load(s)) reproduce s exactly.
    std::unordered_map<IndividualId, IndividualId> remap;
    std::vector<IndividualId> order;
    for (IndividualId id = 0; id < store.size(); ++id) {
        if (seen[id]) {
            remap[id] = static_cast<IndividualId>(order.size());
            order.push_back(id);
        }
    }

    Json individuals = Json::array();
    for (IndividualId id : order) {
        Json rec;
        rec["id"] = remap[id];
        std::visit(
            [&](const auto& lin) {
                using T = std::decay_t<decltype(lin)>;
                if constexpr (std::is_same_v<T, InitLineage>) {
                    rec["kind"] = "init";
                    rec["tree"] = to_text(lin.tree);
                } else if constexpr (std::is_same_v<T, CrossoverLineage>) {
                    rec["kind"] = "crossover";
                    rec["parent1"] = remap[lin.parent1];
                    rec["parent2"] = remap[lin.parent2];
                    rec["t_r"] = lin.t_r;
                } else if constexpr (std::is_same_v<T, MutationScalarLineage>) {
                    rec["kind"] = "mutation_scalar";
                    rec["parent"] = remap[lin.parent];
                    rec["m_s"] = lin.m_s;
                    rec["r1"] = lin.r1;
                    rec["r2"] = lin.r2;
                } else {
                    rec["kind"] = "mutation_tree";
                    rec["parent"] = remap[lin.parent];
                    rec["m_s"] = lin.m_s;
                    rec["tree1"] = to_text(lin.tree1);
                    rec["tree2"] = to_text(lin.tree2);
                }
            },
            store.at(id).lineage);
        individuals.push_back(std::move(rec));
    }

    Json doc{{"format", "gsgp-model"},
             {"version", 1},
             {"task", task_name(cfg.task)},
             {"seed", cfg.seed},
             {"config", config_json(cfg)},
             {"best", remap[result.best]},
             {"individuals", std::move(individuals)}};
    return doc.dump(2) + "\n";
}

Model load_model(std::string_view json_text) {
    Json doc;
    try {
        doc = Json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ModelError(std::string("malformed model file: ") + e.what());
    }
    try {
        if (doc.at("format") != "gsgp-model") throw ModelError("not a gsgp model file");
        Model model;
        model.task = task_from_name(doc.at("task").get<std::string>());
        model.config = config_from_json(doc.at("config"));
        model.config.seed = doc.at("seed").get<std::uint64_t>();
        model.config.task = model.task;
        model.store = std::make_shared<LineageStore>();
        IndividualId expected = 0;
        for (const Json& rec : doc.at("individuals")) {
            if (rec.at("id").get<IndividualId>() != expected) {
                throw ModelError("individual ids must be dense and increasing");
            }
            std::string kind = rec.at("kind").get<std::string>();
            Lineage lineage;
            if (kind == "init") {
                lineage = InitLineage{parse_text(rec.at("tree").get<std::string>())};
            } else if (kind == "crossover") {
                lineage = CrossoverLineage{rec.at("parent1").get<IndividualId>(),
                                           rec.at("parent2").get<IndividualId>(),
                                           rec.at("t_r").get<double>()};
            } else if (kind == "mutation_scalar") {
                lineage = MutationScalarLineage{rec.at("parent").get<IndividualId>(),
                                                rec.at("m_s").get<double>(),
                                                rec.at("r1").get<double>(), rec.at("r2").get<double>()};
            } else if (kind == "mutation_tree") {
                lineage = MutationTreeLineage{rec.at("parent").get<IndividualId>(),
                                              rec.at("m_s").get<double>(),
                                              parse_text(rec.at("tree1").get<std::string>()),
                                              parse_text(rec.at("tree2").get<std::string>())};
            } else {
                throw ModelError("unknown lineage kind '" + kind + "'");
            }
            model.store->append(std::move(lineage), {}, {}, 0.0);
            ++expected;
        }
        model.best = doc.at("best").get<IndividualId>();
        if (model.best >= model.store->size()) throw ModelError("best id out of range");
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw ModelError(std::string("malformed model file: ") + e.what());
    } catch (const TreeParseError& e) {
        throw ModelError(std::string("malformed model tree: ") + e.what());
    }
}

double model_predict(const Model& model, std::span<const double, 6> features) {
    return predict(*model.store, model.best, features);
}

} // namespace gsgp
