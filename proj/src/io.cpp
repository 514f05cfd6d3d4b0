#include "argew/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace argew {

namespace {

std::string where(const std::filesystem::path& path, std::size_t line) {
    return path.string() + ":" + std::to_string(line);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) fields.push_back(tok);
    return fields;
}

bool is_comment_or_blank(const std::string& line) {
    for (char c : line) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '#';
    }
    return true;
}

double parse_double(const std::string& tok, const std::filesystem::path& path,
                    std::size_t line) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw std::runtime_error(where(path, line) + ": '" + tok + "' is not a number");
    }
    return value;
}

template <typename Int>
Int parse_integer(const std::string& tok, const std::filesystem::path& path, std::size_t line) {
    Int value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw std::runtime_error(where(path, line) + ": '" + tok + "' is not a valid integer");
    }
    return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

void check_write(const std::ofstream& out, const std::filesystem::path& path) {
    if (!out) throw std::runtime_error("failed to write " + path.string());
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

LoadedGraph load_edge_list(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    LoadedGraph loaded;
    auto intern = [&loaded](const std::string& name) {
        auto [it, inserted] = loaded.node_index.try_emplace(name, NodeId(loaded.node_names.size()));
        if (inserted) loaded.node_names.push_back(name);
        return it->second;
    };

    struct FirstSeen {
        double weight;
        std::size_t line;
    };
    std::map<std::pair<NodeId, NodeId>, FirstSeen> seen;
    std::vector<WeightedEdge> edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 3) {
            throw std::runtime_error(where(path, line_no) +
                                     ": expected 3 fields (source target weight), got " +
                                     std::to_string(fields.size()));
        }
        if (fields[0] == fields[1]) {
            throw std::runtime_error(where(path, line_no) + ": self-loop at node '" + fields[0] +
                                     "'");
        }
        const double weight = parse_double(fields[2], path, line_no);
        if (!std::isfinite(weight) || weight <= 0.0) {
            throw std::runtime_error(where(path, line_no) +
                                     ": edge weight must be positive and finite, got " +
                                     fields[2]);
        }
        NodeId u = intern(fields[0]);
        NodeId v = intern(fields[1]);
        auto key = std::minmax(u, v);
        auto [it, inserted] = seen.try_emplace({key.first, key.second}, FirstSeen{weight, line_no});
        if (!inserted) {
            if (it->second.weight != weight) {
                throw std::runtime_error(where(path, line_no) + ": edge '" + fields[0] + "'-'" +
                                         fields[1] + "' with weight " + fields[2] +
                                         " conflicts with line " +
                                         std::to_string(it->second.line) + " (weight " +
                                         format_double(it->second.weight) + ")");
            }
            continue;
        }
        edges.push_back({u, v, weight});
    }
    if (edges.empty()) {
        throw std::runtime_error(path.string() + ": no edges found");
    }
    loaded.graph = build_graph(edges);
    return loaded;
}

LoadedLabels load_labels(const std::filesystem::path& path,
                         const std::vector<std::string>& node_names,
                         const std::unordered_map<std::string, NodeId>& node_index) {
    std::ifstream in = open_input(path);
    std::vector<std::string> raw(node_names.size());
    std::vector<std::size_t> line_of(node_names.size(), 0);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 2) {
            throw std::runtime_error(where(path, line_no) +
                                     ": expected 2 fields (node-id label), got " +
                                     std::to_string(fields.size()));
        }
        const auto it = node_index.find(fields[0]);
        if (it == node_index.end()) {
            throw std::runtime_error(where(path, line_no) + ": unknown node '" + fields[0] + "'");
        }
        const NodeId v = it->second;
        if (line_of[v] != 0) {
            throw std::runtime_error(where(path, line_no) + ": node '" + fields[0] +
                                     "' already labeled at line " + std::to_string(line_of[v]));
        }
        line_of[v] = line_no;
        raw[v] = fields[1];
    }
    for (NodeId v = 0; v < node_names.size(); ++v) {
        if (line_of[v] == 0) {
            throw std::runtime_error(path.string() + ": node '" + node_names[v] +
                                     "' has no label");
        }
    }

    LoadedLabels out;
    out.categories = raw;
    std::sort(out.categories.begin(), out.categories.end());
    out.categories.erase(std::unique(out.categories.begin(), out.categories.end()),
                         out.categories.end());
    out.labels.resize(raw.size());
    for (std::size_t v = 0; v < raw.size(); ++v) {
        const auto it = std::lower_bound(out.categories.begin(), out.categories.end(), raw[v]);
        out.labels[v] = int(it - out.categories.begin());
    }
    return out;
}

void save_corpus(const std::filesystem::path& path, const Corpus& corpus) {
    std::ofstream out = open_output(path);
    for (const CorpusEntry& e : corpus.entries) {
        out << e.count << '\t';
        for (std::size_t i = 0; i < e.window.size(); ++i) {
            if (i > 0) out << ' ';
            out << e.window[i];
        }
        out << '\n';
    }
    check_write(out, path);
}

Corpus load_corpus(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    Corpus corpus;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) continue;
        const auto fields = split_fields(line);
        const std::uint64_t count = parse_integer<std::uint64_t>(fields[0], path, line_no);
        if (count < 1) {
            throw std::runtime_error(where(path, line_no) + ": window count must be at least 1");
        }
        if (fields.size() < 2) {
            throw std::runtime_error(where(path, line_no) + ": window has no nodes");
        }
        Window window;
        window.reserve(fields.size() - 1);
        for (std::size_t i = 1; i < fields.size(); ++i) {
            window.push_back(parse_integer<NodeId>(fields[i], path, line_no));
        }
        corpus.entries.push_back({std::move(window), count});
    }
    if (corpus.entries.empty()) {
        throw std::runtime_error(path.string() + ": no corpus entries found");
    }
    return corpus;
}

void save_embeddings(const std::filesystem::path& path, const EmbeddingSet& emb,
                     const std::vector<std::string>& node_names) {
    if (node_names.size() != emb.node_count) {
        throw std::invalid_argument("embedding rows (" + std::to_string(emb.node_count) +
                                    ") and node names (" + std::to_string(node_names.size()) +
                                    ") differ");
    }
    std::ofstream out = open_output(path);
    out << emb.node_count << ' ' << emb.dim << '\n';
    for (NodeId v = 0; v < emb.node_count; ++v) {
        out << node_names[v];
        for (double x : emb.center_row(v)) out << ' ' << format_double(x);
        out << '\n';
    }
    check_write(out, path);
}

LoadedEmbeddings load_embeddings(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw std::runtime_error(path.string() + ": missing header line");
    }
    ++line_no;
    const auto header = split_fields(line);
    if (header.size() != 2) {
        throw std::runtime_error(where(path, line_no) + ": header must be 'node-count dim'");
    }
    LoadedEmbeddings out;
    out.node_count = parse_integer<std::size_t>(header[0], path, line_no);
    out.dim = parse_integer<int>(header[1], path, line_no);
    if (out.node_count == 0 || out.dim < 1) {
        throw std::runtime_error(where(path, line_no) + ": header declares an empty embedding");
    }
    out.center.reserve(out.node_count * std::size_t(out.dim));
    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) continue;
        const auto fields = split_fields(line);
        if (fields.size() != std::size_t(out.dim) + 1) {
            throw std::runtime_error(where(path, line_no) + ": row '" + fields[0] + "' has " +
                                     std::to_string(fields.size() - 1) + " values, header says " +
                                     std::to_string(out.dim));
        }
        out.node_names.push_back(fields[0]);
        for (std::size_t i = 1; i < fields.size(); ++i) {
            out.center.push_back(parse_double(fields[i], path, line_no));
        }
    }
    if (out.node_names.size() != out.node_count) {
        throw std::runtime_error(path.string() + ": header declares " +
                                 std::to_string(out.node_count) + " rows, found " +
                                 std::to_string(out.node_names.size()));
    }
    return out;
}

void write_similarity_report(std::ostream& out, const SimilarityBinReport& report) {
    out << "bin\tweight_lo\tweight_hi\tpairs\tmedian_cosine\tmean_cosine\n";
    for (std::size_t b = 0; b < report.bins.size(); ++b) {
        const SimilarityBin& bin = report.bins[b];
        out << (b == 0 ? "non-edge" : std::to_string(b)) << '\t' << format_double(bin.weight_lo)
            << '\t' << format_double(bin.weight_hi) << '\t' << bin.pair_count << '\t'
            << format_double(bin.median_cosine) << '\t' << format_double(bin.mean_cosine) << '\n';
    }
}

void write_similarity_report(const std::filesystem::path& path,
                             const SimilarityBinReport& report) {
    std::ofstream out = open_output(path);
    write_similarity_report(out, report);
    check_write(out, path);
}

void write_classification_report(std::ostream& out, const ClassificationReport& report) {
    out << "micro_f1\t" << format_double(report.micro_f1) << '\n';
    out << "macro_f1\t" << format_double(report.macro_f1) << '\n';
    out << "split\tmicro\tmacro\n";
    for (std::size_t s = 0; s < report.per_split.size(); ++s) {
        out << s << '\t' << format_double(report.per_split[s].micro) << '\t'
            << format_double(report.per_split[s].macro) << '\n';
    }
}

void write_classification_report(const std::filesystem::path& path,
                                 const ClassificationReport& report) {
    std::ofstream out = open_output(path);
    write_classification_report(out, report);
    check_write(out, path);
}

void write_coappearance_report(std::ostream& out, const CoappearanceTable& table,
                               const std::vector<std::string>& type_names) {
    if (int(type_names.size()) != table.type_count) {
        throw std::invalid_argument("type name count does not match table width");
    }
    out << "type";
    for (const std::string& name : type_names) out << '\t' << name;
    out << '\n';
    for (std::size_t r = 0; r < table.row_types.size(); ++r) {
        out << type_names[std::size_t(table.row_types[r])];
        for (double p : table.proportions[r]) out << '\t' << format_double(p);
        out << '\n';
    }
}

void write_coappearance_report(const std::filesystem::path& path, const CoappearanceTable& table,
                               const std::vector<std::string>& type_names) {
    std::ofstream out = open_output(path);
    write_coappearance_report(out, table, type_names);
    check_write(out, path);
}

}  // namespace argew
