#include "argew/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "argew/augment.hpp"
#include "argew/rng.hpp"

namespace argew {

namespace {

// Per-stage seed tags, fanned out from the root seed.
constexpr std::uint64_t kWalkStage = 1;
constexpr std::uint64_t kTrainStage = 2;
constexpr std::uint64_t kSimilarityStage = 3;
constexpr std::uint64_t kClassifyStage = 4;

[[noreturn]] void bad_value(const std::string& where, const std::string& key,
                            const std::string& value) {
    throw std::runtime_error(where + ": invalid value '" + value + "' for " + key);
}

double to_double(const std::string& value, const std::string& where, const std::string& key) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(where, key, value);
    return out;
}

template <typename Int>
Int to_integer(const std::string& value, const std::string& where, const std::string& key) {
    Int out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(where, key, value);
    return out;
}

bool to_bool(const std::string& value, const std::string& where, const std::string& key) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    bad_value(where, key, value);
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename Fn>
auto stage(const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string(name) + ": " + e.what());
    }
}

}  // namespace

void apply_config_entry(PipelineConfig& config, const std::string& key, const std::string& value,
                        const std::string& where) {
    if (key == "edges") config.edges_path = value;
    else if (key == "labels") config.labels_path = value;
    else if (key == "strategy") {
        if (value == "node2vec") config.strategy = WalkStrategy::Node2vec;
        else if (value == "node2vec+") config.strategy = WalkStrategy::Node2vecPlus;
        else bad_value(where, key, value);
    }
    else if (key == "p") config.p = to_double(value, where, key);
    else if (key == "q") config.q = to_double(value, where, key);
    else if (key == "walk_length") config.walk_length = to_integer<int>(value, where, key);
    else if (key == "walks_per_node") config.walks_per_node = to_integer<int>(value, where, key);
    else if (key == "context_size") config.context_size = to_integer<int>(value, where, key);
    else if (key == "use_argew") config.use_argew = to_bool(value, where, key);
    else if (key == "low") config.low = to_double(value, where, key);
    else if (key == "high") config.high = to_double(value, where, key);
    else if (key == "dim") config.dim = to_integer<int>(value, where, key);
    else if (key == "negatives") config.negatives = to_integer<int>(value, where, key);
    else if (key == "learning_rate") config.learning_rate = to_double(value, where, key);
    else if (key == "epochs") config.max_epochs = to_integer<int>(value, where, key);
    else if (key == "batch_size") config.batch_size = to_integer<int>(value, where, key);
    else if (key == "bins") config.n_bins = to_integer<int>(value, where, key);
    else if (key == "nonedge_cap") {
        config.nonedge_cap = to_integer<std::uint64_t>(value, where, key);
    }
    else if (key == "l2_strength") config.l2_strength = to_double(value, where, key);
    else if (key == "splits") config.splits = to_integer<int>(value, where, key);
    else if (key == "train_fraction") config.train_fraction = to_double(value, where, key);
    else if (key == "seed") config.seed = to_integer<std::uint64_t>(value, where, key);
    else if (key == "corpus_out") config.corpus_out = value;
    else if (key == "embeddings_out") config.embeddings_out = value;
    else if (key == "sim_report_out") config.sim_report_out = value;
    else if (key == "clf_report_out") config.clf_report_out = value;
    else throw std::runtime_error(where + ": unknown config key '" + key + "'");
}

PipelineConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
    PipelineConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = trim(line);
        if (body.empty() || body[0] == '#') continue;
        const std::size_t eq = body.find('=');
        const std::string where = path.string() + ":" + std::to_string(line_no);
        if (eq == std::string::npos) {
            throw std::runtime_error(where + ": expected 'key = value'");
        }
        apply_config_entry(config, trim(body.substr(0, eq)), trim(body.substr(eq + 1)), where);
    }
    return config;
}

PipelineResult run_pipeline(const PipelineConfig& config) {
    if (config.edges_path.empty()) throw std::runtime_error("load: no edge list given");

    const LoadedGraph loaded =
        stage("load", [&] { return load_edge_list(config.edges_path); });
    // Classification inputs are validated before the expensive stages run.
    std::optional<LoadedLabels> labels;
    if (!config.labels_path.empty()) {
        labels = stage("load", [&] {
            return load_labels(config.labels_path, loaded.node_names, loaded.node_index);
        });
    }
    const WeightedGraph& g = loaded.graph;

    WalkConfig walk_params;
    walk_params.strategy = config.strategy;
    walk_params.p = config.p;
    walk_params.q = config.q;
    walk_params.walk_length = config.walk_length;
    walk_params.walks_per_node = config.resolved_walks_per_node();
    walk_params.context_size = config.context_size;
    walk_params.seed = rng::mix(config.seed, kWalkStage);

    const Corpus corpus = stage("walk", [&] {
        std::vector<Window> windows;
        for (const Walk& walk : sample_walks(g, walk_params)) {
            for (Window& w : split_windows(walk, walk_params.context_size)) {
                windows.push_back(std::move(w));
            }
        }
        if (windows.empty()) {
            throw std::runtime_error("no training windows; every node is isolated");
        }
        return config.use_argew ? augment_corpus(g, windows, config.low, config.high)
                                : corpus_from_windows(std::move(windows));
    });
    if (!config.corpus_out.empty()) {
        stage("walk", [&] { save_corpus(config.corpus_out, corpus); return 0; });
    }

    SgnsConfig train_params;
    train_params.dim = config.dim;
    train_params.negatives_per_positive = config.negatives;
    train_params.learning_rate = config.learning_rate;
    train_params.max_epochs = config.max_epochs;
    train_params.batch_size = config.resolved_batch_size();
    train_params.seed = rng::mix(config.seed, kTrainStage);

    TrainResult trained = stage("train", [&] {
        return train(corpus, g.node_count(), walk_params.context_size, train_params);
    });
    if (!config.embeddings_out.empty()) {
        stage("train", [&] {
            save_embeddings(config.embeddings_out, trained.embeddings, loaded.node_names);
            return 0;
        });
    }

    PipelineResult result;
    result.node_count = g.node_count();
    result.corpus_windows = corpus.total_windows();
    result.train_report = trained.report;

    result.similarity = stage("similarity", [&] {
        return similarity_by_weight_bin(g, trained.embeddings, config.n_bins, config.nonedge_cap,
                                        rng::mix(config.seed, kSimilarityStage));
    });
    if (!config.sim_report_out.empty()) {
        stage("similarity", [&] {
            write_similarity_report(config.sim_report_out, result.similarity);
            return 0;
        });
    }

    if (labels) {
        result.classification = stage("classify", [&] {
            return classification_protocol(trained.embeddings, labels->labels,
                                           rng::mix(config.seed, kClassifyStage),
                                           config.l2_strength, config.splits,
                                           config.train_fraction);
        });
        if (!config.clf_report_out.empty()) {
            stage("classify", [&] {
                write_classification_report(config.clf_report_out, *result.classification);
                return 0;
            });
        }
    }
    return result;
}

std::vector<SweepRow> run_sweep(const std::string& parameter, const std::vector<double>& values,
                                const PipelineConfig& base) {
    static const std::vector<std::string> kSweepable = {
        "p", "q", "dim", "walk_length", "context_size", "low", "high",
    };
    if (std::find(kSweepable.begin(), kSweepable.end(), parameter) == kSweepable.end()) {
        std::string known;
        for (const auto& k : kSweepable) known += (known.empty() ? "" : ", ") + k;
        throw std::invalid_argument("cannot sweep parameter '" + parameter + "' (choose from " +
                                    known + ")");
    }
    if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
    if (base.labels_path.empty()) {
        throw std::invalid_argument("sweep scores classification and needs a label file");
    }
    const bool integer_valued =
        parameter == "dim" || parameter == "walk_length" || parameter == "context_size";
    for (double value : values) {
        if (integer_valued && value != std::floor(value)) {
            throw std::invalid_argument("sweep parameter '" + parameter +
                                        "' needs integer values, got " + format_double(value));
        }
    }

    std::vector<SweepRow> rows;
    for (double value : values) {
        SweepRow row;
        row.value = value;
        for (bool use_argew : {false, true}) {
            PipelineConfig config = base;
            config.use_argew = use_argew;
            // Reports/artifacts are not written during a sweep.
            config.corpus_out.clear();
            config.embeddings_out.clear();
            config.sim_report_out.clear();
            config.clf_report_out.clear();
            if (integer_valued) {
                apply_config_entry(config, parameter, std::to_string(std::int64_t(value)),
                                   "sweep");
            } else {
                apply_config_entry(config, parameter, format_double(value), "sweep");
            }
            try {
                const PipelineResult result = run_pipeline(config);
                const double micro = result.classification->micro_f1;
                (use_argew ? row.micro_f1_argew : row.micro_f1_plain) = micro;
            } catch (const std::exception& e) {
                (use_argew ? row.error_argew : row.error_plain) = e.what();
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_sweep_report(std::ostream& out, const std::string& parameter,
                        const std::vector<SweepRow>& rows) {
    out << parameter << "\tmicro_f1_plain\tmicro_f1_argew\n";
    for (const SweepRow& row : rows) {
        out << format_double(row.value) << '\t';
        if (row.micro_f1_plain) out << format_double(*row.micro_f1_plain);
        else out << "error: " << row.error_plain;
        out << '\t';
        if (row.micro_f1_argew) out << format_double(*row.micro_f1_argew);
        else out << "error: " << row.error_argew;
        out << '\n';
    }
}

void write_sweep_report(const std::filesystem::path& path, const std::string& parameter,
                        const std::vector<SweepRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_sweep_report(out, parameter, rows);
    if (!out) throw std::runtime_error("failed to write " + path.string());
}

}  // namespace argew
