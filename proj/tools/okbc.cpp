// okbc: canonicalizes open-knowledge-base triples by clustering synonymous
// noun and relation phrases with two fused views, and predicts cluster
// counts from data.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "okbc/pipeline.hpp"

namespace {

// Option callbacks run in registration order, so the config file is applied
// first and explicit flags override it.
struct Cli {
    okbc::PipelineConfig cfg;

    void add_common(CLI::App* cmd) {
        cmd->add_option_function<std::string>(
            "--config",
            [this](const std::string& path) { cfg = okbc::load_config(path); },
            "key=value config file (flags override it)");
        auto opt = [&](const char* flag, const char* key, const char* help) {
            cmd->add_option_function<std::string>(
                flag,
                [this, key](const std::string& v) { okbc::apply_config_entry(cfg, key, v); },
                help);
        };
        opt("--triples", "triples", "triple records (TSV)");
        opt("--sources", "sources", "source texts (TSV)");
        opt("--word-vectors", "word_vectors", "word vector file");
        opt("--mention-dict", "mention_dict", "mention->entity dictionary");
        opt("--url-profiles-np", "url_profiles_np", "NP URL profile file");
        opt("--url-profiles-rp", "url_profiles_rp", "RP URL profile file");
        opt("--np-seed-pairs", "np_seed_pairs", "NP seed pair file");
        opt("--rp-seed-pairs", "rp_seed_pairs", "RP seed pair file");
        opt("--context-np-embeddings", "context_np_embeddings",
            "import NP context embeddings instead of training");
        opt("--context-rp-embeddings", "context_rp_embeddings",
            "import RP context embeddings instead of training");
        opt("--out-dir", "out_dir", "output directory");
        opt("--seed", "seed", "RNG seed");
        opt("--threads", "threads", "worker threads (0 = default)");
        opt("--norm", "norm", "unit norm: l1 or l2");
        opt("--fact-dim", "fact_dim", "fact embedding dimension");
        opt("--margin", "margin", "margin hyperparameter");
        opt("--lr-fact", "lr_fact", "fact-view learning rate");
        opt("--epochs-per-phase", "epochs_per_phase", "epochs per training phase");
        opt("--phases", "phases", "alternating training phases");
        opt("--negatives", "negatives", "negatives per positive");
        opt("--score-norm", "score_norm", "translational distance norm");
        opt("--fact-parallel", "fact_parallel", "sharded fact training (true/false)");
        opt("--ctx-hidden", "ctx_hidden", "context embedding dimension");
        opt("--lr-ctx", "lr_ctx", "context-view learning rate");
        opt("--ctx-epochs", "ctx_epochs", "head training epochs per round");
        opt("--icp-rounds", "icp_rounds", "iterative clustering rounds");
        opt("--hac-linkage", "hac_linkage", "single/complete/average");
        opt("--mvc-iters", "mvc_iters", "fusion view-steps (T)");
        opt("--mvc-tol", "mvc_tol", "fusion loss tolerance");
        opt("--kmeans-restarts", "kmeans_restarts", "k-means restarts");
        opt("--kmeans-iters", "kmeans_iters", "k-means iteration cap");
        opt("--k-regime", "k_regime", "candidate range regime: traditional or large");
        opt("--url-jaccard", "url_jaccard", "URL-Jaccard seed threshold");
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"open knowledge base canonicalization"};
    app.require_subcommand(1);

    Cli canon, estimate, trainf, trainc, seedsc;
    std::string dataset_path;
    bool standardize = true;
    std::string regime = "traditional";
    std::string pred_path, gold_path;

    auto* c_canon = app.add_subcommand("canonicalize", "run the full pipeline");
    canon.add_common(c_canon);

    auto* c_est = app.add_subcommand("estimate-k", "predict the cluster count of a dataset");
    estimate.add_common(c_est);
    c_est->add_option("dataset", dataset_path, "benchmark CSV (features + gold label)")
        ->required();
    c_est->add_flag("--standardize,!--no-standardize", standardize,
                    "z-score feature columns first (default on)");
    c_est->add_option("--regime", regime, "candidate range regime (traditional|large)");

    auto* c_tf = app.add_subcommand("train-fact", "train fact-view embeddings only");
    trainf.add_common(c_tf);

    auto* c_tc = app.add_subcommand("train-context", "train context-view embeddings only");
    trainc.add_common(c_tc);

    auto* c_seeds = app.add_subcommand("seeds", "generate seed pairs from local resources");
    seedsc.add_common(c_seeds);

    auto* c_eval = app.add_subcommand("evaluate", "score a prediction against gold clusters");
    std::string eval_out;
    c_eval->add_option("pred", pred_path, "predicted cluster file")->required();
    c_eval->add_option("gold", gold_path, "gold cluster file")->required();
    c_eval->add_option("--out-dir", eval_out, "also write report.txt and report.json here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_canon->parsed()) {
            auto out = okbc::cmd_canonicalize(canon.cfg);
            std::cout << "np_clusters=" << out.np_clusters << " (k=" << out.np_k << ")\n"
                      << "rp_clusters=" << out.rp_clusters << " (k=" << out.rp_k << ")\n"
                      << "config=" << out.config_path << "\n";
            if (out.np_report)
                std::cout << "np_average_f1=" << out.np_report->average_f1 << "\n";
        } else if (c_est->parsed()) {
            okbc::KRegime r = regime == "large" ? okbc::KRegime::LargeK
                                                : okbc::KRegime::Traditional;
            auto out = okbc::cmd_estimate_k(estimate.cfg, dataset_path, standardize, r);
            std::cout << "gold_k=" << out.gold_k << "\n"
                      << "log_jump_k=" << out.log_jump_k
                      << " relative_error=" << out.log_jump_error << "\n"
                      << "jump_k=" << out.jump_k << " relative_error=" << out.jump_error
                      << "\n"
                      << "curve=" << out.curve_path << "\n";
        } else if (c_tf->parsed()) {
            auto out = okbc::cmd_train_fact(trainf.cfg);
            std::cout << "fact_np=" << out.np_path << "\nfact_rp=" << out.rp_path
                      << "\nlog=" << out.log_path << "\nfinal_mean_loss=" << out.final_loss
                      << "\n";
        } else if (c_tc->parsed()) {
            auto out = okbc::cmd_train_context(trainc.cfg);
            std::cout << "ctx_np=" << out.np_path << "\nctx_rp=" << out.rp_path << "\n";
        } else if (c_seeds->parsed()) {
            auto out = okbc::cmd_seeds(seedsc.cfg);
            std::cout << "np_seeds=" << out.np_path << " pairs=" << out.np_pairs
                      << " components=" << out.np_components << "\n"
                      << "rp_seeds=" << out.rp_path << " pairs=" << out.rp_pairs
                      << " components=" << out.rp_components << "\n";
        } else if (c_eval->parsed()) {
            auto rep = okbc::cmd_evaluate(pred_path, gold_path);
            std::cout << rep.to_kv_text();
            if (!eval_out.empty()) {
                std::filesystem::create_directories(eval_out);
                std::ofstream txt(eval_out + "/report.txt");
                txt << rep.to_kv_text();
                std::ofstream js(eval_out + "/report.json");
                js << rep.to_json() << '\n';
            }
        }
    } catch (const okbc::Error& e) {
        std::cerr << "error[" << e.category() << "]: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
