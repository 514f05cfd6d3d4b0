#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "argew/augment.hpp"
#include "argew/eval.hpp"
#include "argew/graph.hpp"
#include "argew/sgns.hpp"

namespace argew {

// Graph plus the mapping between the file's node names and dense ids
// (assigned in order of first appearance).
struct LoadedGraph {
    WeightedGraph graph;
    std::vector<std::string> node_names;
    std::unordered_map<std::string, NodeId> node_index;
};

// Whitespace-separated "source target weight" lines; blank lines and lines
// starting with '#' are skipped. All structural errors report the offending
// line number.
LoadedGraph load_edge_list(const std::filesystem::path& path);

struct LoadedLabels {
    std::vector<int> labels;              // per dense node id
    std::vector<std::string> categories;  // category index -> name, sorted by name
};

// Whitespace-separated "node-id label" lines against a loaded graph's node
// set. Every node must be labeled exactly once; unknown ids are rejected.
LoadedLabels load_labels(const std::filesystem::path& path,
                         const std::vector<std::string>& node_names,
                         const std::unordered_map<std::string, NodeId>& node_index);

// One "count<TAB>id id id ..." line per corpus entry.
void save_corpus(const std::filesystem::path& path, const Corpus& corpus);
Corpus load_corpus(const std::filesystem::path& path);

struct LoadedEmbeddings {
    std::vector<std::string> node_names;
    std::size_t node_count = 0;
    int dim = 0;
    std::vector<double> center;  // row-major
};

// Header "n dim", then one "name v1 ... vdim" row per node. Values are
// written with 17 significant digits, so a save/load round trip reproduces
// every double exactly.
void save_embeddings(const std::filesystem::path& path, const EmbeddingSet& emb,
                     const std::vector<std::string>& node_names);
LoadedEmbeddings load_embeddings(const std::filesystem::path& path);

// Deterministic TSV report writers (same inputs -> identical bytes).
void write_similarity_report(std::ostream& out, const SimilarityBinReport& report);
void write_similarity_report(const std::filesystem::path& path,
                             const SimilarityBinReport& report);
void write_classification_report(std::ostream& out, const ClassificationReport& report);
void write_classification_report(const std::filesystem::path& path,
                                 const ClassificationReport& report);
void write_coappearance_report(std::ostream& out, const CoappearanceTable& table,
                               const std::vector<std::string>& type_names);
void write_coappearance_report(const std::filesystem::path& path, const CoappearanceTable& table,
                               const std::vector<std::string>& type_names);

// Shortest-width decimal encoding with 17 significant digits.
std::string format_double(double x);

}  // namespace argew
