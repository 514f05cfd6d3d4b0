#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "argew/eval.hpp"
#include "argew/io.hpp"
#include "argew/sgns.hpp"
#include "argew/walks.hpp"

namespace argew {

// End-to-end run: load graph (and labels when classification is wanted),
// sample walks, optionally augment the window corpus, train embeddings,
// write the similarity-by-weight report and, with labels, the
// classification report. One root seed fans out into per-stage streams, so
// e.g. toggling augmentation does not change the sampled walks.
struct PipelineConfig {
    std::string edges_path;
    std::string labels_path;  // empty: skip classification

    WalkStrategy strategy = WalkStrategy::Node2vec;
    double p = 1.0;
    double q = 1.0;
    int walk_length = 80;
    int walks_per_node = 0;  // 0: 10 plain, 1 with augmentation
    int context_size = 10;

    bool use_argew = false;
    double low = 1.0;
    double high = 9.0;

    int dim = 128;
    int negatives = 1;
    double learning_rate = 0.01;
    int max_epochs = 10;
    int batch_size = 0;  // 0: 1024 plain, 256 with augmentation

    int n_bins = 5;
    std::uint64_t nonedge_cap = 1'000'000;
    double l2_strength = 1.0;
    int splits = 10;
    double train_fraction = 0.5;

    std::uint64_t seed = 0;

    std::string corpus_out;
    std::string embeddings_out;
    std::string sim_report_out;
    std::string clf_report_out;

    int resolved_walks_per_node() const {
        return walks_per_node > 0 ? walks_per_node : (use_argew ? 1 : 10);
    }
    int resolved_batch_size() const {
        return batch_size > 0 ? batch_size : (use_argew ? 256 : 1024);
    }
};

// Flat "key = value" file ('#' comments). Unknown keys are rejected with
// their line number. Values override the defaults above.
PipelineConfig parse_config_file(const std::filesystem::path& path);

// Applies one "key=value" assignment (same keys as the config file).
void apply_config_entry(PipelineConfig& config, const std::string& key, const std::string& value,
                        const std::string& where);

struct PipelineResult {
    std::size_t node_count = 0;
    std::uint64_t corpus_windows = 0;
    TrainReport train_report;
    SimilarityBinReport similarity;
    std::optional<ClassificationReport> classification;
};

// Any stage failure is rethrown with the stage name prefixed.
PipelineResult run_pipeline(const PipelineConfig& config);

// Grid run of the full pipeline, with and without augmentation, for each
// value of one numeric parameter (p, q, dim, walk_length, context_size,
// low, or high). Cells that fail record the error instead of aborting the
// sweep.
struct SweepRow {
    double value = 0.0;
    std::optional<double> micro_f1_plain;
    std::optional<double> micro_f1_argew;
    std::string error_plain;
    std::string error_argew;
};

std::vector<SweepRow> run_sweep(const std::string& parameter, const std::vector<double>& values,
                                const PipelineConfig& base);

void write_sweep_report(std::ostream& out, const std::string& parameter,
                        const std::vector<SweepRow>& rows);
void write_sweep_report(const std::filesystem::path& path, const std::string& parameter,
                        const std::vector<SweepRow>& rows);

}  // namespace argew
