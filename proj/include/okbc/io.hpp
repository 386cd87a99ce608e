// File formats: triple and source TSVs, word-vector and embedding files,
// cluster files, benchmark CSVs.
#ifndef OKBC_IO_HPP
#define OKBC_IO_HPP

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "okbc/types.hpp"

namespace okbc {

// Warnings (duplicate tokens, fallback vectors, ...) are reported through
// this hook; default prints to stderr.
using WarnFn = std::function<void(const std::string&)>;
void set_warn_handler(WarnFn fn);
void warn(const std::string& msg);

// Triple records, one per line:
//   triple_id \t subject \t relation \t object \t source_id [\t gold_subj [\t gold_obj]]
// Source texts in a companion file: source_id \t text.
Dataset load_dataset(const std::string& triples_path, const std::string& sources_path);

struct WordVectors {
    std::size_t dim = 0;
    std::vector<std::string> tokens;                       // insertion order
    std::unordered_map<std::string, std::size_t> index;
    Matrix data;

    bool has(const std::string& token) const { return index.count(token) > 0; }
    std::span<const double> vec(const std::string& token) const;
};

// Header "n p", then "token v1 ... vp" per line. A duplicate token keeps
// the last occurrence and emits a warning.
WordVectors load_word_vectors(const std::string& path);

// Mean of the phrase-token vectors present in the table; unknown tokens are
// skipped. If nothing is found the fallback is returned and flagged.
Vec embed_phrase_avg(const Phrase& phrase, const WordVectors& wv,
                     const Vec& fallback, bool* used_fallback = nullptr);

// Seeded unit vector under the given norm (for out-of-vocabulary phrases).
Vec random_unit_vec(std::size_t dim, std::uint64_t seed, Norm norm);

// Embedding persistence: header "n p", rows "id v1 ... vp".
void save_embeddings(const EmbeddingTable& table, const std::string& path);
EmbeddingTable load_embeddings(const std::string& path, View view);

// Cluster file: one line per cluster, "cluster_id \t member \t member ...".
void save_clusters(const Clustering& c,
                   const std::function<std::string(PhraseId)>& surface_of,
                   const std::string& path);
// Returns per-cluster member surfaces in file order.
std::vector<std::vector<std::string>> load_cluster_file(const std::string& path);

struct BenchmarkData {
    Matrix features;
    std::vector<std::string> labels;
    int gold_k = 0;
};

// CSV with feature columns and a final gold-label column. An optional
// header row is detected by its non-numeric first field.
BenchmarkData load_benchmark_csv(const std::string& path);

// Zero-mean unit-variance per feature column (constant columns untouched).
void standardize_columns(Matrix& m);

std::string format_double(double v);  // round-trip precision

} // namespace okbc

#endif
