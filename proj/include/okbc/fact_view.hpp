// Fact-view embeddings: a translational model over <subject, relation,
// object> triples trained with a margin loss and negative sampling, plus
// the seed-pair data augmentation operator and alternating-phase training.
#ifndef OKBC_FACT_VIEW_HPP
#define OKBC_FACT_VIEW_HPP

#include <vector>

#include "okbc/io.hpp"
#include "okbc/rng.hpp"
#include "okbc/seeds.hpp"
#include "okbc/types.hpp"

namespace okbc {

struct KemConfig {
    std::size_t dim = 300;
    double margin = 12.0;       // gamma
    double learning_rate = 0.0001;
    int epochs_per_phase = 100;
    int phases = 4;
    int negatives_per_positive = 1;
    Norm score_norm = Norm::L1;  // translational distance
    Norm unit_norm = Norm::L1;   // embedding renormalization
    bool parallel = false;       // shard positives per epoch, average updates
};

struct KemParams {
    Matrix entities;   // NP id -> row
    Matrix relations;  // RP id -> row
    std::size_t dim = 0;

    std::span<const double> entity(PhraseId id) const;
    std::span<const double> relation(PhraseId id) const;
};

// Averaged base word vectors padded or truncated to dim, then normalized.
// Out-of-vocabulary phrases get a seeded random unit vector.
KemParams init_kem_params(const PhraseTable& phrases, const WordVectors& wv,
                          const KemConfig& cfg, std::uint64_t seed);

// Translational dissimilarity |h + r - o| under the configured norm.
double score(const TrainTriple& t, const KemParams& params, const KemConfig& cfg);

// Exactly one of subject/object replaced by a different uniformly drawn NP.
TrainTriple negative_sample(const TrainTriple& t, const std::vector<PhraseId>& np_universe,
                            Rng& rng);

// The data augmentation operator: for every seed pair and every triple in
// which one counterpart appears as subject or object, emit the triple with
// that occurrence swapped. Deduplicated; triples already in the original
// set are excluded.
std::vector<TrainTriple> augment(const std::vector<TrainTriple>& original,
                                 const SeedPairSet& seeds);

// Hinge loss [margin + f(pos) - f(neg)]_+ and its gradient step.
double hinge_loss(double pos_score, double neg_score, double margin);

// Gradient of the hinge loss for one (positive, negative) sample with
// respect to every involved embedding; zero when the hinge is inactive.
// Gradient matrices must match the parameter shapes and arrive zeroed at
// the touched rows.
double hinge_gradient(const KemParams& params, const KemConfig& cfg, const TrainTriple& pos,
                      const TrainTriple& neg, Matrix& ent_grad, Matrix& rel_grad);

// One SGD pass over the (shuffled) positives with one sampled negative per
// positive; touched embeddings are renormalized after every update.
// Returns the mean per-sample loss.
double train_epoch(KemParams& params, const std::vector<TrainTriple>& positives,
                   const std::vector<PhraseId>& np_universe, Rng& rng, const KemConfig& cfg);

struct FactTrainLogEntry {
    int phase = 0;
    int epoch = 0;
    double mean_loss = 0.0;
};

struct FactResult {
    KemParams params;
    std::vector<FactTrainLogEntry> log;
};

// Odd phases train on the original triples, even phases on the augmented
// set; an empty augmented set degenerates to original-only training with a
// warning. Embeddings are normalized on output.
FactResult train_alternating(const std::vector<TrainTriple>& original,
                             const std::vector<TrainTriple>& augmented, KemParams params,
                             const KemConfig& cfg, std::uint64_t seed);

// Fact-view tables for both phrase kinds (relations come from the same
// trained relation table).
EmbeddingTable fact_np_table(const KemParams& params);
EmbeddingTable fact_rp_table(const KemParams& params);

} // namespace okbc

#endif
