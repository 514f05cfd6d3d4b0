// Command-line front end: walk sampling, corpus augmentation, embedding
// training, evaluation reports, the built-in roles benchmark, and the
// end-to-end pipeline. Every stochastic command takes a mandatory --seed and
// is bit-for-bit reproducible; commands exit 0 on success and 1 with a
// one-line diagnostic on stderr otherwise.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "argew/augment.hpp"
#include "argew/eval.hpp"
#include "argew/graph.hpp"
#include "argew/io.hpp"
#include "argew/pipeline.hpp"
#include "argew/roles.hpp"
#include "argew/sgns.hpp"
#include "argew/walks.hpp"

namespace {

using namespace argew;

const std::map<std::string, WalkStrategy> kStrategyNames{
    {"node2vec", WalkStrategy::Node2vec},
    {"node2vec+", WalkStrategy::Node2vecPlus},
};

std::vector<std::string> role_names() {
    std::vector<std::string> names;
    names.reserve(kRoleTypeCount);
    for (int t = 0; t < kRoleTypeCount; ++t) {
        names.emplace_back(role_type_name(RoleType(t)));
    }
    return names;
}

// Rebuilds an EmbeddingSet whose row v matches the graph's dense node v.
EmbeddingSet align_embeddings(const LoadedEmbeddings& file, const LoadedGraph& graph) {
    if (file.node_count != graph.node_names.size()) {
        throw std::runtime_error("embeddings cover " + std::to_string(file.node_count) +
                                 " nodes but the graph has " +
                                 std::to_string(graph.node_names.size()));
    }
    std::map<std::string, std::size_t> row_of;
    for (std::size_t r = 0; r < file.node_names.size(); ++r) {
        if (!row_of.emplace(file.node_names[r], r).second) {
            throw std::runtime_error("embeddings list node '" + file.node_names[r] + "' twice");
        }
    }
    EmbeddingSet emb;
    emb.node_count = file.node_count;
    emb.dim = file.dim;
    emb.center.resize(file.center.size());
    emb.context.assign(file.center.size(), 0.0);
    const std::size_t d = std::size_t(file.dim);
    for (NodeId v = 0; v < graph.node_names.size(); ++v) {
        const auto it = row_of.find(graph.node_names[v]);
        if (it == row_of.end()) {
            throw std::runtime_error("embeddings have no row for node '" + graph.node_names[v] +
                                     "'");
        }
        std::copy_n(file.center.begin() + std::ptrdiff_t(it->second * d), d,
                    emb.center.begin() + std::ptrdiff_t(std::size_t(v) * d));
    }
    return emb;
}

struct SynthOpts {
    std::string edges_out;
    std::string labels_out;
};

void run_synth(const SynthOpts& o) {
    const WeightedGraph g = build_roles_graph();
    {
        std::ofstream out(o.edges_out);
        if (!out) throw std::runtime_error("cannot open " + o.edges_out + " for writing");
        for (NodeId u = 0; u < g.node_count(); ++u) {
            for (const auto& nb : g.neighbors(u)) {
                if (nb.id < u) continue;
                out << u << ' ' << nb.id << ' ' << format_double(nb.weight) << '\n';
            }
        }
        if (!out) throw std::runtime_error("failed to write " + o.edges_out);
    }
    std::cout << "wrote " << o.edges_out << " (" << g.node_count() << " nodes, "
              << g.edge_count() << " edges)\n";
    if (!o.labels_out.empty()) {
        std::ofstream out(o.labels_out);
        if (!out) throw std::runtime_error("cannot open " + o.labels_out + " for writing");
        for (NodeId v = 0; v < g.node_count(); ++v) {
            out << v << '\t' << role_type_name(node_role(v)) << '\n';
        }
        if (!out) throw std::runtime_error("failed to write " + o.labels_out);
        std::cout << "wrote " << o.labels_out << '\n';
    }
}

struct WalkOpts {
    std::string edges;
    std::string out;
    WalkConfig params;
};

void run_walk(const WalkOpts& o) {
    const LoadedGraph loaded = load_edge_list(o.edges);
    std::vector<Window> windows;
    for (const Walk& walk : sample_walks(loaded.graph, o.params)) {
        for (Window& w : split_windows(walk, o.params.context_size)) {
            windows.push_back(std::move(w));
        }
    }
    const Corpus corpus = corpus_from_windows(std::move(windows));
    save_corpus(o.out, corpus);
    std::cout << "wrote " << corpus.entries.size() << " windows to " << o.out << '\n';
}

struct AugmentOpts {
    std::string edges;
    std::string corpus;
    std::string out;
    double low = 1.0;
    double high = 9.0;
};

void run_augment(const AugmentOpts& o) {
    const LoadedGraph loaded = load_edge_list(o.edges);
    const Corpus input = load_corpus(o.corpus);
    std::vector<Window> windows;
    windows.reserve(input.entries.size());
    std::uint64_t flattened = 0;
    for (const CorpusEntry& e : input.entries) {
        // Augmentation works on plain windows; expand any counted entries.
        flattened += e.count;
        for (std::uint64_t r = 0; r < e.count; ++r) windows.push_back(e.window);
    }
    if (flattened > 10'000'000) {
        throw std::runtime_error("input corpus expands to " + std::to_string(flattened) +
                                 " windows; too large to augment");
    }
    const Corpus corpus = augment_corpus(loaded.graph, windows, o.low, o.high);
    save_corpus(o.out, corpus);
    std::cout << "wrote " << corpus.entries.size() << " entries ("
              << corpus.total_windows() << " windows) to " << o.out << '\n';
}

struct TrainOpts {
    std::string edges;
    std::string corpus;
    std::string out;
    int context_size = 10;
    SgnsConfig params;
};

void run_train(const TrainOpts& o) {
    const LoadedGraph loaded = load_edge_list(o.edges);
    const Corpus corpus = load_corpus(o.corpus);
    const TrainResult result = train(corpus, loaded.graph.node_count(), o.context_size, o.params);
    save_embeddings(o.out, result.embeddings, loaded.node_names);
    std::cout << "trained " << o.params.dim << "-dim embeddings for "
              << loaded.graph.node_count() << " nodes in " << result.report.epochs_run
              << " epochs (final mean loss "
              << format_double(result.report.epoch_mean_loss.back()) << "); wrote " << o.out
              << '\n';
}

struct EvalSimOpts {
    std::string edges;
    std::string embeddings;
    std::string out;
    int bins = 5;
    std::uint64_t nonedge_cap = 1'000'000;
    std::uint64_t seed = 0;
};

void run_eval_sim(const EvalSimOpts& o) {
    const LoadedGraph loaded = load_edge_list(o.edges);
    const EmbeddingSet emb = align_embeddings(load_embeddings(o.embeddings), loaded);
    const SimilarityBinReport report =
        similarity_by_weight_bin(loaded.graph, emb, o.bins, o.nonedge_cap, o.seed);
    if (o.out.empty()) {
        write_similarity_report(std::cout, report);
    } else {
        write_similarity_report(std::filesystem::path(o.out), report);
        std::cout << "wrote " << o.out << '\n';
    }
}

struct EvalClfOpts {
    std::string embeddings;
    std::string labels;
    std::string out;
    double l2_strength = 1.0;
    int splits = 10;
    double train_fraction = 0.5;
    std::uint64_t seed = 0;
};

void run_eval_clf(const EvalClfOpts& o) {
    const LoadedEmbeddings file = load_embeddings(o.embeddings);
    std::unordered_map<std::string, NodeId> index;
    for (std::size_t r = 0; r < file.node_names.size(); ++r) {
        if (!index.emplace(file.node_names[r], NodeId(r)).second) {
            throw std::runtime_error("embeddings list node '" + file.node_names[r] + "' twice");
        }
    }
    const LoadedLabels labels = load_labels(o.labels, file.node_names, index);
    EmbeddingSet emb;
    emb.node_count = file.node_count;
    emb.dim = file.dim;
    emb.center = file.center;
    emb.context.assign(file.center.size(), 0.0);
    const ClassificationReport report = classification_protocol(
        emb, labels.labels, o.seed, o.l2_strength, o.splits, o.train_fraction);
    if (o.out.empty()) {
        write_classification_report(std::cout, report);
    } else {
        write_classification_report(std::filesystem::path(o.out), report);
        std::cout << "wrote " << o.out << '\n';
    }
}

struct CoappearOpts {
    std::string out;
    double p = 1.0;
    double q = 1.0;
    bool use_argew = false;
    std::uint64_t seed = 0;
};

void run_coappear(const CoappearOpts& o) {
    const CoappearanceTable table = run_coappearance_experiment(o.use_argew, o.p, o.q, o.seed);
    if (o.out.empty()) {
        write_coappearance_report(std::cout, table, role_names());
    } else {
        write_coappearance_report(std::filesystem::path(o.out), table, role_names());
        std::cout << "wrote " << o.out << '\n';
    }
}

// Optional overrides layered over config-file values.
struct PipelineOpts {
    std::string config;
    std::string outdir;
    std::optional<std::string> edges;
    std::optional<std::string> labels;
    std::optional<std::string> strategy;
    std::optional<double> p, q, low, high, learning_rate, l2_strength, train_fraction;
    std::optional<int> walk_length, walks_per_node, context_size, dim, negatives, epochs,
        batch_size, bins, splits;
    std::optional<std::uint64_t> nonedge_cap;
    bool flag_argew = false;
    bool flag_no_argew = false;
    std::uint64_t seed = 0;
};

PipelineConfig build_pipeline_config(const PipelineOpts& o) {
    PipelineConfig config;
    if (!o.config.empty()) config = parse_config_file(o.config);
    if (o.edges) config.edges_path = *o.edges;
    if (o.labels) config.labels_path = *o.labels;
    if (o.strategy) config.strategy = kStrategyNames.at(*o.strategy);
    if (o.p) config.p = *o.p;
    if (o.q) config.q = *o.q;
    if (o.walk_length) config.walk_length = *o.walk_length;
    if (o.walks_per_node) config.walks_per_node = *o.walks_per_node;
    if (o.context_size) config.context_size = *o.context_size;
    if (o.flag_argew) config.use_argew = true;
    if (o.flag_no_argew) config.use_argew = false;
    if (o.low) config.low = *o.low;
    if (o.high) config.high = *o.high;
    if (o.dim) config.dim = *o.dim;
    if (o.negatives) config.negatives = *o.negatives;
    if (o.learning_rate) config.learning_rate = *o.learning_rate;
    if (o.epochs) config.max_epochs = *o.epochs;
    if (o.batch_size) config.batch_size = *o.batch_size;
    if (o.bins) config.n_bins = *o.bins;
    if (o.nonedge_cap) config.nonedge_cap = *o.nonedge_cap;
    if (o.l2_strength) config.l2_strength = *o.l2_strength;
    if (o.splits) config.splits = *o.splits;
    if (o.train_fraction) config.train_fraction = *o.train_fraction;
    config.seed = o.seed;
    if (!o.outdir.empty()) {
        std::filesystem::create_directories(o.outdir);
        const std::filesystem::path dir(o.outdir);
        if (config.corpus_out.empty()) config.corpus_out = (dir / "corpus.tsv").string();
        if (config.embeddings_out.empty()) {
            config.embeddings_out = (dir / "embeddings.tsv").string();
        }
        if (config.sim_report_out.empty()) {
            config.sim_report_out = (dir / "similarity.tsv").string();
        }
        if (!config.labels_path.empty() && config.clf_report_out.empty()) {
            config.clf_report_out = (dir / "classification.tsv").string();
        }
    }
    return config;
}

void run_pipeline_cmd(const PipelineOpts& o) {
    const PipelineConfig config = build_pipeline_config(o);
    const PipelineResult result = run_pipeline(config);
    std::cout << "nodes\t" << result.node_count << '\n'
              << "corpus_windows\t" << result.corpus_windows << '\n'
              << "epochs\t" << result.train_report.epochs_run << '\n'
              << "final_mean_loss\t"
              << format_double(result.train_report.epoch_mean_loss.back()) << '\n';
    if (result.classification) {
        std::cout << "micro_f1\t" << format_double(result.classification->micro_f1) << '\n'
                  << "macro_f1\t" << format_double(result.classification->macro_f1) << '\n';
    }
    for (const std::string& written :
         {config.corpus_out, config.embeddings_out, config.sim_report_out,
          config.clf_report_out}) {
        if (!written.empty()) std::cout << "wrote " << written << '\n';
    }
}

struct SweepOpts {
    PipelineOpts pipeline;
    std::string parameter;
    std::vector<double> values;
    std::string out;
};

void run_sweep_cmd(const SweepOpts& o) {
    const PipelineConfig base = build_pipeline_config(o.pipeline);
    const std::vector<SweepRow> rows = run_sweep(o.parameter, o.values, base);
    if (o.out.empty()) {
        write_sweep_report(std::cout, o.parameter, rows);
    } else {
        write_sweep_report(std::filesystem::path(o.out), o.parameter, rows);
        std::cout << "wrote " << o.out << '\n';
    }
}

void add_pipeline_options(CLI::App* cmd, PipelineOpts& o, bool outdir_required) {
    cmd->add_option("--config", o.config, "key = value config file");
    cmd->add_option("--edges", o.edges, "edge list file (source target weight)");
    cmd->add_option("--labels", o.labels, "node label file enabling classification");
    auto* outdir = cmd->add_option("--outdir", o.outdir,
                                   "directory for corpus/embeddings/report files");
    if (outdir_required) outdir->required();
    cmd->add_option("--strategy", o.strategy, "walk bias rule")
        ->check(CLI::IsMember({"node2vec", "node2vec+"}));
    cmd->add_option("--p", o.p, "return bias");
    cmd->add_option("--q", o.q, "in-out bias");
    cmd->add_option("--walk-length", o.walk_length, "nodes per walk");
    cmd->add_option("--walks-per-node", o.walks_per_node,
                    "walks per start node (default 10, or 1 when augmenting)");
    cmd->add_option("--context-size", o.context_size, "window size");
    cmd->add_flag("--use-argew", o.flag_argew, "augment the window corpus");
    cmd->add_flag("--no-argew", o.flag_no_argew, "disable augmentation (overrides config)");
    cmd->add_option("--low", o.low, "rescale range lower end");
    cmd->add_option("--high", o.high, "rescale range upper end");
    cmd->add_option("--dim", o.dim, "embedding dimension");
    cmd->add_option("--negatives", o.negatives, "negative samples per positive pair");
    cmd->add_option("--learning-rate", o.learning_rate, "SGD step size");
    cmd->add_option("--epochs", o.epochs, "maximum training epochs");
    cmd->add_option("--batch-size", o.batch_size,
                    "pairs per SGD batch (default 1024, or 256 when augmenting)");
    cmd->add_option("--bins", o.bins, "weight bins in the similarity report");
    cmd->add_option("--nonedge-cap", o.nonedge_cap, "max sampled non-edge pairs");
    cmd->add_option("--l2", o.l2_strength, "logistic regression L2 strength");
    cmd->add_option("--splits", o.splits, "stratified evaluation splits");
    cmd->add_option("--train-fraction", o.train_fraction, "per-category training fraction");
    cmd->add_option("--seed", o.seed, "root RNG seed")->required();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"node embeddings on weighted graphs: biased walks, corpus augmentation, "
                 "skip-gram training, and evaluation"};
    app.require_subcommand(1);

    SynthOpts synth_opts;
    auto* synth = app.add_subcommand("synth", "write the built-in 19-node roles benchmark graph");
    synth->add_option("--edges-out", synth_opts.edges_out, "edge list destination")->required();
    synth->add_option("--labels-out", synth_opts.labels_out, "role label destination");
    synth->callback([&] { run_synth(synth_opts); });

    WalkOpts walk_opts;
    auto* walk = app.add_subcommand("walk", "sample biased walks into a window corpus");
    walk->add_option("--edges", walk_opts.edges, "edge list file")->required();
    walk->add_option("--out", walk_opts.out, "corpus destination")->required();
    walk->add_option("--strategy", walk_opts.params.strategy, "walk bias rule")
        ->transform(CLI::CheckedTransformer(kStrategyNames));
    walk->add_option("--p", walk_opts.params.p, "return bias");
    walk->add_option("--q", walk_opts.params.q, "in-out bias");
    walk->add_option("--walk-length", walk_opts.params.walk_length, "nodes per walk");
    walk->add_option("--walks-per-node", walk_opts.params.walks_per_node, "walks per start node");
    walk->add_option("--context-size", walk_opts.params.context_size, "window size");
    walk->add_option("--seed", walk_opts.params.seed, "RNG seed")->required();
    walk->callback([&] { run_walk(walk_opts); });

    AugmentOpts augment_opts;
    auto* augment = app.add_subcommand("augment", "expand a window corpus by edge weight");
    augment->add_option("--edges", augment_opts.edges, "edge list file")->required();
    augment->add_option("--corpus", augment_opts.corpus, "window corpus to augment")->required();
    augment->add_option("--out", augment_opts.out, "augmented corpus destination")->required();
    augment->add_option("--low", augment_opts.low, "rescale range lower end");
    augment->add_option("--high", augment_opts.high, "rescale range upper end");
    augment->callback([&] { run_augment(augment_opts); });

    TrainOpts train_opts;
    auto* train_cmd = app.add_subcommand("train", "train skip-gram embeddings on a corpus");
    train_cmd->add_option("--edges", train_opts.edges, "edge list file")->required();
    train_cmd->add_option("--corpus", train_opts.corpus, "window corpus")->required();
    train_cmd->add_option("--out", train_opts.out, "embeddings destination")->required();
    train_cmd->add_option("--context-size", train_opts.context_size,
                          "maximum window length accepted");
    train_cmd->add_option("--dim", train_opts.params.dim, "embedding dimension");
    train_cmd->add_option("--negatives", train_opts.params.negatives_per_positive,
                          "negative samples per positive pair");
    train_cmd->add_option("--learning-rate", train_opts.params.learning_rate, "SGD step size");
    train_cmd->add_option("--epochs", train_opts.params.max_epochs, "maximum training epochs");
    train_cmd->add_option("--batch-size", train_opts.params.batch_size, "pairs per SGD batch");
    train_cmd->add_option("--seed", train_opts.params.seed, "RNG seed")->required();
    train_cmd->callback([&] { run_train(train_opts); });

    EvalSimOpts eval_sim_opts;
    auto* eval_sim = app.add_subcommand("eval-sim", "cosine similarity by edge weight bin");
    eval_sim->add_option("--edges", eval_sim_opts.edges, "edge list file")->required();
    eval_sim->add_option("--embeddings", eval_sim_opts.embeddings, "embeddings file")->required();
    eval_sim->add_option("--out", eval_sim_opts.out, "report destination (default stdout)");
    eval_sim->add_option("--bins", eval_sim_opts.bins, "number of weight bins");
    eval_sim->add_option("--nonedge-cap", eval_sim_opts.nonedge_cap,
                         "max sampled non-edge pairs");
    eval_sim->add_option("--seed", eval_sim_opts.seed, "RNG seed")->required();
    eval_sim->callback([&] { run_eval_sim(eval_sim_opts); });

    EvalClfOpts eval_clf_opts;
    auto* eval_clf = app.add_subcommand("eval-clf",
                                        "logistic regression label prediction from embeddings");
    eval_clf->add_option("--embeddings", eval_clf_opts.embeddings, "embeddings file")->required();
    eval_clf->add_option("--labels", eval_clf_opts.labels, "node label file")->required();
    eval_clf->add_option("--out", eval_clf_opts.out, "report destination (default stdout)");
    eval_clf->add_option("--l2", eval_clf_opts.l2_strength, "L2 strength");
    eval_clf->add_option("--splits", eval_clf_opts.splits, "stratified splits");
    eval_clf->add_option("--train-fraction", eval_clf_opts.train_fraction,
                         "per-category training fraction");
    eval_clf->add_option("--seed", eval_clf_opts.seed, "RNG seed")->required();
    eval_clf->callback([&] { run_eval_clf(eval_clf_opts); });

    CoappearOpts coappear_opts;
    auto* coappear = app.add_subcommand(
        "coappear", "role coappearance distribution on the built-in roles benchmark");
    coappear->add_option("--out", coappear_opts.out, "report destination (default stdout)");
    coappear->add_option("--p", coappear_opts.p, "return bias");
    coappear->add_option("--q", coappear_opts.q, "in-out bias");
    coappear->add_flag("--use-argew", coappear_opts.use_argew, "augment the window corpus");
    coappear->add_option("--seed", coappear_opts.seed, "RNG seed")->required();
    coappear->callback([&] { run_coappear(coappear_opts); });

    PipelineOpts pipeline_opts;
    auto* pipeline = app.add_subcommand("pipeline",
                                        "walk, optionally augment, train, and evaluate");
    add_pipeline_options(pipeline, pipeline_opts, /*outdir_required=*/false);
    pipeline->callback([&] { run_pipeline_cmd(pipeline_opts); });

    SweepOpts sweep_opts;
    auto* sweep = app.add_subcommand(
        "sweep", "pipeline grid over one parameter, with and without augmentation");
    add_pipeline_options(sweep, sweep_opts.pipeline, /*outdir_required=*/false);
    sweep->add_option("--param", sweep_opts.parameter,
                      "parameter to vary (p, q, dim, walk_length, context_size, low, high)")
        ->required();
    sweep->add_option("--values", sweep_opts.values, "comma-separated values")
        ->required()
        ->delimiter(',');
    sweep->add_option("--out", sweep_opts.out, "report destination (default stdout)");
    sweep->callback([&] { run_sweep_cmd(sweep_opts); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
