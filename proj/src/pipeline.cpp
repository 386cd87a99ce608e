#include "okbc/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "okbc/kernels.hpp"

namespace okbc {

namespace fs = std::filesystem;

KemConfig PipelineConfig::kem() const {
    KemConfig k;
    k.dim = fact_dim;
    k.margin = margin;
    k.learning_rate = lr_fact;
    k.epochs_per_phase = epochs_per_phase;
    k.phases = phases;
    k.negatives_per_positive = negatives;
    k.score_norm = score_norm;
    k.unit_norm = norm;
    k.parallel = fact_parallel;
    return k;
}

IcpConfig PipelineConfig::icp() const {
    IcpConfig c;
    c.rounds = icp_rounds;
    c.hidden = ctx_hidden;
    c.learning_rate = lr_ctx;
    c.epochs = ctx_epochs;
    c.norm = norm;
    c.k_regime = k_regime;
    c.kmeans = kmeans();
    c.linkage = hac_linkage;
    return c;
}

MvOptions PipelineConfig::mv() const {
    MvOptions m;
    m.max_steps = mvc_iters;
    m.tol = mvc_tol;
    m.norm = norm;
    return m;
}

KmeansOpts PipelineConfig::kmeans() const {
    KmeansOpts k;
    k.restarts = kmeans_restarts;
    k.max_iters = kmeans_iters;
    k.norm = norm;
    return k;
}

namespace {

std::string norm_name(Norm n) { return n == Norm::L1 ? "l1" : "l2"; }
Norm parse_norm(const std::string& v, const std::string& key) {
    if (v == "l1") return Norm::L1;
    if (v == "l2") return Norm::L2;
    throw ConfigError(key + ": expected l1 or l2, got '" + v + "'");
}

std::string linkage_name(Linkage l) {
    switch (l) {
        case Linkage::Single: return "single";
        case Linkage::Complete: return "complete";
        default: return "average";
    }
}
Linkage parse_linkage(const std::string& v) {
    if (v == "single") return Linkage::Single;
    if (v == "complete") return Linkage::Complete;
    if (v == "average") return Linkage::Average;
    throw ConfigError("hac_linkage: expected single/complete/average, got '" + v + "'");
}

std::string regime_name(KRegime r) {
    return r == KRegime::Traditional ? "traditional" : "large";
}
KRegime parse_regime(const std::string& v) {
    if (v == "traditional") return KRegime::Traditional;
    if (v == "large") return KRegime::LargeK;
    throw ConfigError("k_regime: expected traditional or large, got '" + v + "'");
}

long long parse_ll(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        long long x = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected integer, got '" + v + "'");
    }
}

double parse_d(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected number, got '" + v + "'");
    }
}

bool parse_b(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError(key + ": expected true/false, got '" + v + "'");
}

void require(const std::string& value, const std::string& field) {
    if (value.empty()) throw ConfigError("missing required config field: " + field);
}

std::vector<TrainTriple> train_triples(const Dataset& ds) {
    std::vector<TrainTriple> out;
    out.reserve(ds.triples.size());
    for (const auto& t : ds.triples) out.push_back({t.subject, t.relation, t.object});
    return out;
}

} // namespace

void apply_config_entry(PipelineConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "triples") cfg.triples = value;
    else if (key == "sources") cfg.sources = value;
    else if (key == "word_vectors") cfg.word_vectors = value;
    else if (key == "mention_dict") cfg.mention_dict = value;
    else if (key == "url_profiles_np") cfg.url_profiles_np = value;
    else if (key == "url_profiles_rp") cfg.url_profiles_rp = value;
    else if (key == "np_seed_pairs") cfg.np_seed_pairs = value;
    else if (key == "rp_seed_pairs") cfg.rp_seed_pairs = value;
    else if (key == "context_np_embeddings") cfg.context_np_embeddings = value;
    else if (key == "context_rp_embeddings") cfg.context_rp_embeddings = value;
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_ll(value, key));
    else if (key == "threads") cfg.threads = static_cast<int>(parse_ll(value, key));
    else if (key == "norm") cfg.norm = parse_norm(value, key);
    else if (key == "fact_dim") cfg.fact_dim = static_cast<std::size_t>(parse_ll(value, key));
    else if (key == "margin") cfg.margin = parse_d(value, key);
    else if (key == "lr_fact") cfg.lr_fact = parse_d(value, key);
    else if (key == "epochs_per_phase") cfg.epochs_per_phase = static_cast<int>(parse_ll(value, key));
    else if (key == "phases") cfg.phases = static_cast<int>(parse_ll(value, key));
    else if (key == "negatives") cfg.negatives = static_cast<int>(parse_ll(value, key));
    else if (key == "score_norm") cfg.score_norm = parse_norm(value, key);
    else if (key == "fact_parallel") cfg.fact_parallel = parse_b(value, key);
    else if (key == "ctx_hidden") cfg.ctx_hidden = static_cast<std::size_t>(parse_ll(value, key));
    else if (key == "lr_ctx") cfg.lr_ctx = parse_d(value, key);
    else if (key == "ctx_epochs") cfg.ctx_epochs = static_cast<int>(parse_ll(value, key));
    else if (key == "icp_rounds") cfg.icp_rounds = static_cast<int>(parse_ll(value, key));
    else if (key == "hac_linkage") cfg.hac_linkage = parse_linkage(value);
    else if (key == "mvc_iters") cfg.mvc_iters = static_cast<int>(parse_ll(value, key));
    else if (key == "mvc_tol") cfg.mvc_tol = parse_d(value, key);
    else if (key == "kmeans_restarts") cfg.kmeans_restarts = static_cast<int>(parse_ll(value, key));
    else if (key == "kmeans_iters") cfg.kmeans_iters = static_cast<int>(parse_ll(value, key));
    else if (key == "k_regime") cfg.k_regime = parse_regime(value);
    else if (key == "url_jaccard") cfg.url_jaccard = parse_d(value, key);
    else throw ConfigError("unknown config key: " + key);
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    PipelineConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + " line " + std::to_string(lineno) + ": expected key=value");
        apply_config_entry(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
    return cfg;
}

void save_config(const PipelineConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "triples=" << cfg.triples << '\n'
        << "sources=" << cfg.sources << '\n'
        << "word_vectors=" << cfg.word_vectors << '\n'
        << "mention_dict=" << cfg.mention_dict << '\n'
        << "url_profiles_np=" << cfg.url_profiles_np << '\n'
        << "url_profiles_rp=" << cfg.url_profiles_rp << '\n'
        << "np_seed_pairs=" << cfg.np_seed_pairs << '\n'
        << "rp_seed_pairs=" << cfg.rp_seed_pairs << '\n'
        << "context_np_embeddings=" << cfg.context_np_embeddings << '\n'
        << "context_rp_embeddings=" << cfg.context_rp_embeddings << '\n'
        << "out_dir=" << cfg.out_dir << '\n'
        << "seed=" << cfg.seed << '\n'
        << "threads=" << cfg.threads << '\n'
        << "norm=" << norm_name(cfg.norm) << '\n'
        << "fact_dim=" << cfg.fact_dim << '\n'
        << "margin=" << format_double(cfg.margin) << '\n'
        << "lr_fact=" << format_double(cfg.lr_fact) << '\n'
        << "epochs_per_phase=" << cfg.epochs_per_phase << '\n'
        << "phases=" << cfg.phases << '\n'
        << "negatives=" << cfg.negatives << '\n'
        << "score_norm=" << norm_name(cfg.score_norm) << '\n'
        << "fact_parallel=" << (cfg.fact_parallel ? "true" : "false") << '\n'
        << "ctx_hidden=" << cfg.ctx_hidden << '\n'
        << "lr_ctx=" << format_double(cfg.lr_ctx) << '\n'
        << "ctx_epochs=" << cfg.ctx_epochs << '\n'
        << "icp_rounds=" << cfg.icp_rounds << '\n'
        << "hac_linkage=" << linkage_name(cfg.hac_linkage) << '\n'
        << "mvc_iters=" << cfg.mvc_iters << '\n'
        << "mvc_tol=" << format_double(cfg.mvc_tol) << '\n'
        << "kmeans_restarts=" << cfg.kmeans_restarts << '\n'
        << "kmeans_iters=" << cfg.kmeans_iters << '\n'
        << "k_regime=" << regime_name(cfg.k_regime) << '\n'
        << "url_jaccard=" << format_double(cfg.url_jaccard) << '\n';
}

SeedBundle collect_seeds(const PipelineConfig& cfg, const Dataset& ds) {
    SeedBundle bundle;
    bundle.np.kind = PhraseKind::NP;
    bundle.rp.kind = PhraseKind::RP;

    if (!cfg.mention_dict.empty()) {
        auto dict = load_mention_dictionary(cfg.mention_dict);
        bundle.np.merge(seeds_from_dictionary(ds.phrases.all(PhraseKind::NP), dict,
                                              PhraseKind::NP));
    }
    if (!cfg.url_profiles_np.empty()) {
        auto prof = load_url_profiles(cfg.url_profiles_np, ds.phrases, PhraseKind::NP);
        bundle.np.merge(seeds_from_urls(ds.phrases.all(PhraseKind::NP), prof, PhraseKind::NP,
                                        cfg.url_jaccard));
    }
    if (!cfg.url_profiles_rp.empty()) {
        auto prof = load_url_profiles(cfg.url_profiles_rp, ds.phrases, PhraseKind::RP);
        bundle.rp.merge(seeds_from_urls(ds.phrases.all(PhraseKind::RP), prof, PhraseKind::RP,
                                        cfg.url_jaccard));
    }
    if (!cfg.np_seed_pairs.empty())
        bundle.np.merge(load_seed_pair_file(cfg.np_seed_pairs, ds.phrases, PhraseKind::NP));
    if (!cfg.rp_seed_pairs.empty())
        bundle.rp.merge(load_seed_pair_file(cfg.rp_seed_pairs, ds.phrases, PhraseKind::RP));
    return bundle;
}

SeedsOutput cmd_seeds(const PipelineConfig& cfg) {
    require(cfg.triples, "triples");
    require(cfg.sources, "sources");
    set_threads(cfg.threads);
    Dataset ds = load_dataset(cfg.triples, cfg.sources);
    SeedBundle bundle = collect_seeds(cfg, ds);

    fs::create_directories(cfg.out_dir);
    SeedsOutput out;
    out.np_path = (fs::path(cfg.out_dir) / "np_seeds.tsv").string();
    out.rp_path = (fs::path(cfg.out_dir) / "rp_seeds.tsv").string();
    save_seed_pairs(bundle.np, ds.phrases, out.np_path);
    save_seed_pairs(bundle.rp, ds.phrases, out.rp_path);
    out.np_pairs = bundle.np.size();
    out.rp_pairs = bundle.rp.size();

    std::vector<PhraseId> np_ids, rp_ids;
    for (const auto& p : ds.phrases.all(PhraseKind::NP)) np_ids.push_back(p.id);
    for (const auto& p : ds.phrases.all(PhraseKind::RP)) rp_ids.push_back(p.id);
    out.np_components = seed_components(np_ids, bundle.np).k;
    out.rp_components = seed_components(rp_ids, bundle.rp).k;
    return out;
}

namespace {

void write_fact_log(const std::vector<FactTrainLogEntry>& log, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "phase,epoch,mean_loss\n";
    for (const auto& e : log)
        out << e.phase << ',' << e.epoch << ',' << format_double(e.mean_loss) << '\n';
}

FactResult run_fact_training(const PipelineConfig& cfg, const Dataset& ds,
                             const WordVectors& wv, const SeedPairSet& np_seeds) {
    auto original = train_triples(ds);
    auto augmented = augment(original, np_seeds);
    KemConfig kc = cfg.kem();
    KemParams init = init_kem_params(ds.phrases, wv, kc, cfg.seed);
    return train_alternating(original, augmented, std::move(init), kc, cfg.seed);
}

} // namespace

TrainFactOutput cmd_train_fact(const PipelineConfig& cfg) {
    require(cfg.triples, "triples");
    require(cfg.sources, "sources");
    require(cfg.word_vectors, "word_vectors");
    set_threads(cfg.threads);

    Dataset ds = load_dataset(cfg.triples, cfg.sources);
    WordVectors wv = load_word_vectors(cfg.word_vectors);
    SeedBundle bundle = collect_seeds(cfg, ds);
    FactResult res = run_fact_training(cfg, ds, wv, bundle.np);

    fs::create_directories(cfg.out_dir);
    TrainFactOutput out;
    out.np_path = (fs::path(cfg.out_dir) / "fact_np.emb").string();
    out.rp_path = (fs::path(cfg.out_dir) / "fact_rp.emb").string();
    out.log_path = (fs::path(cfg.out_dir) / "fact_train_log.csv").string();
    save_embeddings(fact_np_table(res.params), out.np_path);
    save_embeddings(fact_rp_table(res.params), out.rp_path);
    write_fact_log(res.log, out.log_path);
    out.final_loss = res.log.empty() ? 0.0 : res.log.back().mean_loss;
    return out;
}

TrainContextOutput cmd_train_context(const PipelineConfig& cfg) {
    require(cfg.triples, "triples");
    require(cfg.sources, "sources");
    require(cfg.word_vectors, "word_vectors");
    set_threads(cfg.threads);

    Dataset ds = load_dataset(cfg.triples, cfg.sources);
    WordVectors wv = load_word_vectors(cfg.word_vectors);
    SeedBundle bundle = collect_seeds(cfg, ds);

    fs::create_directories(cfg.out_dir);
    TrainContextOutput out;
    out.np_path = (fs::path(cfg.out_dir) / "ctx_np.emb").string();
    out.rp_path = (fs::path(cfg.out_dir) / "ctx_rp.emb").string();

    ContextSet np_ctx = build_context_set(ds, PhraseKind::NP, wv, cfg.seed);
    IcpResult np_res = icp_run(np_ctx, bundle.np, cfg.icp(), cfg.seed + 11);
    save_embeddings(np_res.embeddings, out.np_path);

    ContextSet rp_ctx = build_context_set(ds, PhraseKind::RP, wv, cfg.seed);
    IcpResult rp_res = icp_run(rp_ctx, bundle.rp, cfg.icp(), cfg.seed + 13);
    save_embeddings(rp_res.embeddings, out.rp_path);
    return out;
}

EstimateKOutput cmd_estimate_k(const PipelineConfig& cfg, const std::string& dataset_path,
                               bool standardize, KRegime regime) {
    set_threads(cfg.threads);
    BenchmarkData bd = load_benchmark_csv(dataset_path);
    if (bd.features.rows < 2) throw DomainError("estimate-k: need at least 2 rows");
    if (standardize) standardize_columns(bd.features);

    Rng rng(cfg.seed);
    KCandidateRange range = candidate_range(bd.features.rows, regime);
    DistortionCurve curve = distortion_curve(bd.features, range, rng, cfg.kmeans());

    EstimateKOutput out;
    out.jump_k = jump_from_curve(curve).k_star;
    // log-jump continues through the refinement rounds
    int k = log_jump_from_curve(curve).k_star;
    DistortionCurve last = curve;
    int gap = range.gap;
    for (;;) {
        auto next = refine_range(k, gap, bd.features.rows);
        if (!next) break;
        last = distortion_curve(bd.features, *next, rng, cfg.kmeans());
        k = log_jump_from_curve(last).k_star;
        gap = next->gap;
    }
    out.log_jump_k = k;
    out.gold_k = bd.gold_k;
    out.log_jump_error = relative_error(out.log_jump_k, bd.gold_k);
    out.jump_error = relative_error(out.jump_k, bd.gold_k);

    fs::create_directories(cfg.out_dir);
    out.curve_path = (fs::path(cfg.out_dir) / "k_curve.csv").string();
    curve.dump_csv(out.curve_path);
    return out;
}

GoldLabels gold_np_labels(const Dataset& ds) {
    GoldLabels gold;
    int conflicts = 0;
    auto note = [&](PhraseId id, const std::optional<std::string>& label) {
        if (!label) return;
        auto [it, inserted] = gold.emplace(id, *label);
        if (!inserted && it->second != *label) ++conflicts;  // first annotation wins
    };
    for (const auto& t : ds.triples) {
        note(t.subject, t.gold_subject);
        note(t.object, t.gold_object);
    }
    if (conflicts > 0)
        warn(std::to_string(conflicts) + " conflicting gold annotations; first kept");
    return gold;
}

namespace {

struct KindRun {
    Clustering clusters;
    int k = 0;
    FusionResult fusion;
};

void write_loss_trace(const FusionResult& fusion, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "iter,view,loss\n";
    for (const auto& e : fusion.loss_trace)
        out << e.step << ',' << e.view << ',' << format_double(e.loss) << '\n';
}

KindRun fuse_kind(const PipelineConfig& cfg, const Dataset& ds, const WordVectors& wv,
                  PhraseKind kind, const EmbeddingTable& fact, const EmbeddingTable& context,
                  Rng& rng) {
    const auto& phrases = ds.phrases.all(kind);
    std::vector<PhraseId> universe;
    for (const auto& p : phrases) universe.push_back(p.id);

    KindRun run;
    run.clusters.element_ids = universe;
    if (universe.size() < 2) {
        run.clusters.assign.assign(universe.size(), 0);
        run.clusters.k = universe.empty() ? 0 : 1;
        run.k = run.clusters.k;
        return run;
    }

    // K estimated on the base (word-vector average) embeddings
    Matrix base(universe.size(), wv.dim);
    for (std::size_t i = 0; i < universe.size(); ++i) {
        const Phrase& p = phrases[universe[i]];
        std::uint64_t vec_seed = cfg.seed ^ (static_cast<std::uint64_t>(p.id) * 0x9e3779b9ULL) ^
                                 (kind == PhraseKind::RP ? 0xf00dULL : 0);
        Vec fallback = random_unit_vec(wv.dim, vec_seed, Norm::L2);
        base.set_row(i, embed_phrase_avg(p, wv, fallback));
    }
    EstimateResult est = estimate_k(base, cfg.k_regime, rng.derive(1), cfg.kmeans());
    int k = est.k_star;
    if (k < 2) {
        warn("estimated K below 2; clamped");
        k = 2;
    }
    if (static_cast<std::size_t>(k) > universe.size()) k = static_cast<int>(universe.size());
    run.k = k;

    Matrix fact_m = fact.to_matrix(universe);
    Matrix ctx_m = context.to_matrix(universe);
    Rng fuse_rng = rng.derive(2);
    run.fusion = mv_ch_kmeans(fact_m, ctx_m, k, fuse_rng, cfg.mv());

    run.clusters.assign = run.fusion.final_assign;
    run.clusters.k = k;
    run.clusters = run.clusters.compacted();
    return run;
}

} // namespace

CanonicalizeOutput cmd_canonicalize(const PipelineConfig& cfg) {
    require(cfg.triples, "triples");
    require(cfg.sources, "sources");
    require(cfg.word_vectors, "word_vectors");
    set_threads(cfg.threads);

    Dataset ds = load_dataset(cfg.triples, cfg.sources);
    WordVectors wv = load_word_vectors(cfg.word_vectors);
    SeedBundle bundle = collect_seeds(cfg, ds);

    fs::create_directories(cfg.out_dir);
    CanonicalizeOutput out;
    out.config_path = (fs::path(cfg.out_dir) / "config.txt").string();
    save_config(cfg, out.config_path);

    // fact view: one training run yields both NP and RP tables
    FactResult fact = run_fact_training(cfg, ds, wv, bundle.np);
    write_fact_log(fact.log, (fs::path(cfg.out_dir) / "fact_train_log.csv").string());
    EmbeddingTable fact_np = fact_np_table(fact.params);
    EmbeddingTable fact_rp = fact_rp_table(fact.params);

    // context view: imported tables replace the internal procedure
    EmbeddingTable ctx_np, ctx_rp;
    if (!cfg.context_np_embeddings.empty()) {
        ctx_np = load_embeddings(cfg.context_np_embeddings, View::Context);
    } else {
        ContextSet np_ctx = build_context_set(ds, PhraseKind::NP, wv, cfg.seed);
        ctx_np = icp_run(np_ctx, bundle.np, cfg.icp(), cfg.seed + 11).embeddings;
    }
    if (!cfg.context_rp_embeddings.empty()) {
        ctx_rp = load_embeddings(cfg.context_rp_embeddings, View::Context);
    } else {
        ContextSet rp_ctx = build_context_set(ds, PhraseKind::RP, wv, cfg.seed);
        ctx_rp = icp_run(rp_ctx, bundle.rp, cfg.icp(), cfg.seed + 13).embeddings;
    }

    Rng master(cfg.seed);
    Rng np_rng = master.derive(100);
    KindRun np_run = fuse_kind(cfg, ds, wv, PhraseKind::NP, fact_np, ctx_np, np_rng);
    Rng rp_rng = master.derive(200);
    KindRun rp_run = fuse_kind(cfg, ds, wv, PhraseKind::RP, fact_rp, ctx_rp, rp_rng);

    auto np_surface = [&](PhraseId id) { return ds.phrases.get(PhraseKind::NP, id).surface; };
    auto rp_surface = [&](PhraseId id) { return ds.phrases.get(PhraseKind::RP, id).surface; };
    out.np_clusters = (fs::path(cfg.out_dir) / "np_clusters.tsv").string();
    out.rp_clusters = (fs::path(cfg.out_dir) / "rp_clusters.tsv").string();
    save_clusters(np_run.clusters, np_surface, out.np_clusters);
    save_clusters(rp_run.clusters, rp_surface, out.rp_clusters);
    out.np_k = np_run.clusters.k;
    out.rp_k = rp_run.clusters.k;
    if (!np_run.fusion.loss_trace.empty())
        write_loss_trace(np_run.fusion, (fs::path(cfg.out_dir) / "np_loss_trace.csv").string());
    if (!rp_run.fusion.loss_trace.empty())
        write_loss_trace(rp_run.fusion, (fs::path(cfg.out_dir) / "rp_loss_trace.csv").string());

    GoldLabels gold = gold_np_labels(ds);
    if (!gold.empty()) {
        MetricReport rep = evaluate(np_run.clusters, gold);
        out.np_report = rep;
        std::ofstream txt((fs::path(cfg.out_dir) / "np_report.txt").string());
        txt << rep.to_kv_text();
        std::ofstream js((fs::path(cfg.out_dir) / "np_report.json").string());
        js << rep.to_json() << '\n';
    }
    return out;
}

MetricReport cmd_evaluate(const std::string& pred_path, const std::string& gold_path) {
    auto pred_clusters = load_cluster_file(pred_path);
    auto gold_clusters = load_cluster_file(gold_path);
    if (pred_clusters.empty()) throw DomainError("evaluate: empty prediction file");
    if (gold_clusters.empty()) throw DomainError("evaluate: empty gold file");

    // surfaces -> dense ids over the prediction file
    std::unordered_map<std::string, PhraseId> ids;
    Clustering pred;
    pred.k = static_cast<int>(pred_clusters.size());
    for (std::size_t j = 0; j < pred_clusters.size(); ++j) {
        for (const auto& s : pred_clusters[j]) {
            std::string key = lowercase(s);
            auto [it, inserted] = ids.emplace(key, static_cast<PhraseId>(ids.size()));
            if (!inserted) {
                warn("duplicate member '" + key + "' in prediction; first kept");
                continue;
            }
            pred.element_ids.push_back(it->second);
            pred.assign.push_back(static_cast<int>(j));
        }
    }

    GoldLabels gold;
    for (std::size_t j = 0; j < gold_clusters.size(); ++j) {
        for (const auto& s : gold_clusters[j]) {
            auto it = ids.find(lowercase(s));
            if (it == ids.end()) continue;
            gold.emplace(it->second, "g" + std::to_string(j));
        }
    }
    return evaluate(pred, gold);
}

} // namespace okbc
