// Context-view embeddings: source contexts with the phrase occurrence
// removed, a frozen token-average base embedding behind a trainable tanh
// projection with a softmax classifier head, and the iterative clustering
// procedure that alternates clustering, pseudo-labeling and head training.
#ifndef OKBC_CONTEXT_VIEW_HPP
#define OKBC_CONTEXT_VIEW_HPP

#include <vector>

#include "okbc/clustering.hpp"
#include "okbc/io.hpp"
#include "okbc/kselect.hpp"
#include "okbc/seeds.hpp"
#include "okbc/types.hpp"

namespace okbc {

struct Context {
    PhraseId phrase_id = -1;
    std::string text;            // source text with the first occurrence removed
    bool surface_found = true;   // false -> text left unchanged
};

// Removes the first case-insensitive occurrence of the phrase surface.
Context build_context(const Phrase& phrase, const SourceText& source);

// One context per phrase, taken from the first triple (in file order) the
// phrase participates in, with the frozen token-average base embedding.
struct ContextSet {
    std::vector<PhraseId> ids;
    std::vector<Context> contexts;
    Matrix bases;  // frozen, row per context
};

ContextSet build_context_set(const Dataset& ds, PhraseKind kind, const WordVectors& wv,
                             std::uint64_t seed);

struct EncoderParams {
    Matrix proj;          // h x p
    Vec proj_bias;        // h
    Matrix cls;           // C x h
    Vec cls_bias;         // C
    std::size_t in_dim = 0;
    std::size_t hidden = 0;
    std::size_t classes = 0;
};

EncoderParams init_encoder_params(std::size_t in_dim, std::size_t hidden,
                                  std::size_t classes, std::uint64_t seed);

// tanh(proj * base + bias), unit-normalized.
Vec encode_context(std::span<const double> base, const EncoderParams& params, Norm norm);

// Batch variant over all rows (parallel kernel behind it).
Matrix encode_all(const Matrix& bases, const EncoderParams& params, Norm norm);

// Softmax cross-entropy of the classifier over the projected base; fills
// parameter gradients when grads is non-null.
struct HeadGradients {
    Matrix proj;
    Vec proj_bias;
    Matrix cls;
    Vec cls_bias;
};
double head_loss(const EncoderParams& params, std::span<const double> base, int label,
                 HeadGradients* grads = nullptr);

// Pseudo-labels from the connected components of the seed graph.
std::vector<int> initial_pseudo_labels(const std::vector<PhraseId>& universe,
                                       const SeedPairSet& seeds, int* num_labels = nullptr);

// Cyclic per-sample SGD over the contexts; returns the mean loss of the
// final epoch (0 epochs leaves the parameters untouched and returns the
// current mean loss).
double train_head(EncoderParams& params, const Matrix& bases, const std::vector<int>& labels,
                  int epochs, double learning_rate);

struct IcpConfig {
    int rounds = 5;
    std::size_t hidden = 300;
    double learning_rate = 0.005;
    int epochs = 100;
    Norm norm = Norm::L1;
    double early_stop_changed = 0.01;  // stop when fewer assignments change
    KRegime k_regime = KRegime::LargeK;
    KmeansOpts kmeans;
    Linkage linkage = Linkage::Average;
};

struct IcpRoundLog {
    int round = 0;
    int labels = 0;
    double train_loss = 0.0;
    int hac_k = 0;              // 0 in the final round (no reclustering)
    double changed_frac = -1.0; // vs previous round's clustering, -1 if n/a
};

struct IcpResult {
    EmbeddingTable embeddings;  // View::Context
    std::vector<IcpRoundLog> log;
    EncoderParams params;
};

// Round 1 trains on seed-component pseudo-labels; each later round
// re-clusters the current embeddings with HAC (K from the log-jump
// estimator), relabels, retrains the head and re-encodes. The projection
// resumes across rounds; the classifier is re-initialized whenever the
// label set changes. Stops early when the relabeling changes fewer than
// early_stop_changed of the assignments.
IcpResult icp_run(const ContextSet& ctx, const SeedPairSet& seeds, const IcpConfig& cfg,
                  std::uint64_t seed);

} // namespace okbc

#endif
