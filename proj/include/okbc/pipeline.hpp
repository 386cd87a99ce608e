// Pipeline configuration and the operations behind the CLI subcommands:
// seed generation, per-view training, cluster-count estimation on
// benchmark data, the full canonicalization run, and cluster-file
// evaluation.
#ifndef OKBC_PIPELINE_HPP
#define OKBC_PIPELINE_HPP

#include <optional>
#include <string>

#include "okbc/context_view.hpp"
#include "okbc/eval.hpp"
#include "okbc/fact_view.hpp"
#include "okbc/kselect.hpp"

namespace okbc {

struct PipelineConfig {
    // inputs
    std::string triples;
    std::string sources;
    std::string word_vectors;
    std::string mention_dict;       // optional
    std::string url_profiles_np;    // optional
    std::string url_profiles_rp;    // optional
    std::string np_seed_pairs;      // optional
    std::string rp_seed_pairs;      // optional
    std::string context_np_embeddings;  // optional import (replaces ICP)
    std::string context_rp_embeddings;  // optional import
    std::string out_dir = "out";

    std::uint64_t seed = 7;
    int threads = 0;
    Norm norm = Norm::L1;

    // fact view
    std::size_t fact_dim = 300;
    double margin = 12.0;
    double lr_fact = 0.0001;
    int epochs_per_phase = 100;
    int phases = 4;
    int negatives = 1;
    Norm score_norm = Norm::L1;
    bool fact_parallel = false;

    // context view
    std::size_t ctx_hidden = 300;
    double lr_ctx = 0.005;
    int ctx_epochs = 100;
    int icp_rounds = 5;
    Linkage hac_linkage = Linkage::Average;

    // fusion
    int mvc_iters = 10;
    double mvc_tol = 1e-4;

    // k selection
    int kmeans_restarts = 10;
    int kmeans_iters = 50;
    KRegime k_regime = KRegime::LargeK;
    double url_jaccard = 0.015;

    KemConfig kem() const;
    IcpConfig icp() const;
    MvOptions mv() const;
    KmeansOpts kmeans() const;
};

PipelineConfig load_config(const std::string& path);
void save_config(const PipelineConfig& cfg, const std::string& path);
// Applies one key=value assignment; unknown keys are a config error.
void apply_config_entry(PipelineConfig& cfg, const std::string& key, const std::string& value);

struct SeedBundle {
    SeedPairSet np;
    SeedPairSet rp;
};

// Dictionary seeds (NPs only), URL-Jaccard seeds and pair files, merged.
SeedBundle collect_seeds(const PipelineConfig& cfg, const Dataset& ds);

struct SeedsOutput {
    std::string np_path, rp_path;
    std::size_t np_pairs = 0, rp_pairs = 0;
    int np_components = 0, rp_components = 0;
};
SeedsOutput cmd_seeds(const PipelineConfig& cfg);

struct TrainFactOutput {
    std::string np_path, rp_path, log_path;
    double final_loss = 0.0;
};
TrainFactOutput cmd_train_fact(const PipelineConfig& cfg);

struct TrainContextOutput {
    std::string np_path, rp_path;
};
TrainContextOutput cmd_train_context(const PipelineConfig& cfg);

struct EstimateKOutput {
    int log_jump_k = 0;
    int jump_k = 0;
    int gold_k = 0;
    double log_jump_error = 0.0;
    double jump_error = 0.0;
    std::string curve_path;
};
// Benchmark CSV path; standardize applies per-column z-scoring first.
EstimateKOutput cmd_estimate_k(const PipelineConfig& cfg, const std::string& dataset_path,
                               bool standardize, KRegime regime);

struct CanonicalizeOutput {
    std::string np_clusters, rp_clusters;
    int np_k = 0, rp_k = 0;
    std::optional<MetricReport> np_report;
    std::string config_path;
};
CanonicalizeOutput cmd_canonicalize(const PipelineConfig& cfg);

MetricReport cmd_evaluate(const std::string& pred_path, const std::string& gold_path);

// Gold NP labels carried by the triple file (first annotation wins;
// conflicts warn).
GoldLabels gold_np_labels(const Dataset& ds);

} // namespace okbc

#endif
