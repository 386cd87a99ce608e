#include "okbc/context_view.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "okbc/kernels.hpp"

namespace okbc {

Context build_context(const Phrase& phrase, const SourceText& source) {
    Context ctx;
    ctx.phrase_id = phrase.id;
    std::string lower = lowercase(source.text);
    std::size_t pos = lower.find(phrase.surface);
    if (pos == std::string::npos) {
        ctx.text = source.text;
        ctx.surface_found = false;
    } else {
        ctx.text = source.text.substr(0, pos) + source.text.substr(pos + phrase.surface.size());
        ctx.surface_found = true;
    }
    return ctx;
}

ContextSet build_context_set(const Dataset& ds, PhraseKind kind, const WordVectors& wv,
                             std::uint64_t seed) {
    const auto& phrases = ds.phrases.all(kind);
    // first source (triple order) in which each phrase occurs
    std::vector<int> first_source(phrases.size(), -1);
    for (const auto& t : ds.triples) {
        auto note = [&](PhraseId id, PhraseKind k) {
            if (k != kind) return;
            if (first_source[id] < 0) first_source[id] = t.source_id;
        };
        note(t.subject, PhraseKind::NP);
        note(t.object, PhraseKind::NP);
        note(t.relation, PhraseKind::RP);
    }

    ContextSet out;
    out.bases = Matrix(phrases.size(), wv.dim);
    int fallbacks = 0, missing = 0;
    for (const auto& p : phrases) {
        out.ids.push_back(p.id);
        Context ctx;
        if (first_source[p.id] < 0) {
            // phrase never occurs in a triple; context is empty
            ctx.phrase_id = p.id;
            ctx.surface_found = false;
        } else {
            ctx = build_context(p, ds.source(first_source[p.id]));
        }
        if (!ctx.surface_found) ++missing;

        std::uint64_t vec_seed = seed ^ 0x7f4a7c15ULL ^
                                 (static_cast<std::uint64_t>(p.id) * 0x9e3779b97f4a7c15ULL) ^
                                 (kind == PhraseKind::RP ? 0x5851f42d4c957f2dULL : 0);
        Vec fallback = random_unit_vec(wv.dim, vec_seed, Norm::L2);
        Phrase pseudo;  // tokenization of the context text drives the average
        pseudo.tokens = tokenize_lower(ctx.text);
        bool fell_back = false;
        Vec base = pseudo.tokens.empty()
                       ? fallback
                       : embed_phrase_avg(pseudo, wv, fallback, &fell_back);
        if (pseudo.tokens.empty() || fell_back) ++fallbacks;
        out.bases.set_row(out.contexts.size(), base);
        out.contexts.push_back(std::move(ctx));
    }
    if (missing > 0)
        warn(std::to_string(missing) + " contexts did not contain the phrase surface");
    if (fallbacks > 0)
        warn(std::to_string(fallbacks) + " contexts had no known tokens; random base used");
    return out;
}

EncoderParams init_encoder_params(std::size_t in_dim, std::size_t hidden,
                                  std::size_t classes, std::uint64_t seed) {
    EncoderParams p;
    p.in_dim = in_dim;
    p.hidden = hidden;
    p.classes = classes;
    p.proj = Matrix(hidden, in_dim);
    p.proj_bias.assign(hidden, 0.0);
    p.cls = Matrix(classes, hidden);
    p.cls_bias.assign(classes, 0.0);
    Rng rng(seed);
    double scale = std::sqrt(6.0 / static_cast<double>(in_dim + hidden));
    for (double& w : p.proj.data) w = (2.0 * rng.uniform() - 1.0) * scale;
    // classifier starts at zero: uniform logits, initial loss ln C
    return p;
}

Vec encode_context(std::span<const double> base, const EncoderParams& params, Norm norm) {
    if (base.size() != params.in_dim) throw DomainError("encode_context: dimension mismatch");
    Vec hidden(params.hidden);
    for (std::size_t h = 0; h < params.hidden; ++h) {
        const double* w = params.proj.row(h);
        double s = params.proj_bias[h];
        for (std::size_t d = 0; d < params.in_dim; ++d) s += w[d] * base[d];
        hidden[h] = std::tanh(s);
    }
    normalize_in_place(hidden, norm);  // zero vector -> domain error
    return hidden;
}

Matrix encode_all(const Matrix& bases, const EncoderParams& params, Norm norm) {
    Matrix out;
    kernels::project_tanh_rows(bases, params.proj, params.proj_bias, out);
    for (std::size_t i = 0; i < out.rows; ++i) normalize_in_place(out.row_span(i), norm);
    return out;
}

double head_loss(const EncoderParams& params, std::span<const double> base, int label,
                 HeadGradients* grads) {
    if (label < 0 || static_cast<std::size_t>(label) >= params.classes)
        throw DomainError("head_loss: label out of range");

    Vec hidden(params.hidden);
    for (std::size_t h = 0; h < params.hidden; ++h) {
        const double* w = params.proj.row(h);
        double s = params.proj_bias[h];
        for (std::size_t d = 0; d < params.in_dim; ++d) s += w[d] * base[d];
        hidden[h] = std::tanh(s);
    }
    Vec logits(params.classes);
    double maxlog = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < params.classes; ++c) {
        const double* v = params.cls.row(c);
        double s = params.cls_bias[c];
        for (std::size_t h = 0; h < params.hidden; ++h) s += v[h] * hidden[h];
        logits[c] = s;
        maxlog = std::max(maxlog, s);
    }
    double z = 0.0;
    for (double l : logits) z += std::exp(l - maxlog);
    double logz = std::log(z) + maxlog;
    double loss = logz - logits[label];

    if (grads) {
        grads->proj = Matrix(params.hidden, params.in_dim);
        grads->proj_bias.assign(params.hidden, 0.0);
        grads->cls = Matrix(params.classes, params.hidden);
        grads->cls_bias.assign(params.classes, 0.0);

        Vec dlogits(params.classes);
        for (std::size_t c = 0; c < params.classes; ++c) {
            double p = std::exp(logits[c] - logz);
            dlogits[c] = p - (static_cast<int>(c) == label ? 1.0 : 0.0);
        }
        Vec dhidden(params.hidden, 0.0);
        for (std::size_t c = 0; c < params.classes; ++c) {
            double* g = grads->cls.row(c);
            const double* v = params.cls.row(c);
            for (std::size_t h = 0; h < params.hidden; ++h) {
                g[h] = dlogits[c] * hidden[h];
                dhidden[h] += dlogits[c] * v[h];
            }
            grads->cls_bias[c] = dlogits[c];
        }
        for (std::size_t h = 0; h < params.hidden; ++h) {
            double dpre = dhidden[h] * (1.0 - hidden[h] * hidden[h]);
            double* g = grads->proj.row(h);
            for (std::size_t d = 0; d < params.in_dim; ++d) g[d] = dpre * base[d];
            grads->proj_bias[h] = dpre;
        }
    }
    return loss;
}

std::vector<int> initial_pseudo_labels(const std::vector<PhraseId>& universe,
                                       const SeedPairSet& seeds, int* num_labels) {
    Clustering c = seed_components(universe, seeds);
    if (num_labels) *num_labels = c.k;
    return c.assign;
}

double train_head(EncoderParams& params, const Matrix& bases, const std::vector<int>& labels,
                  int epochs, double learning_rate) {
    if (labels.size() != bases.rows) throw DomainError("train_head: label count mismatch");
    if (epochs < 0) throw DomainError("train_head: negative epochs");

    auto mean_loss_now = [&]() {
        double total = 0.0;
        for (std::size_t i = 0; i < bases.rows; ++i)
            total += head_loss(params, bases.row_span(i), labels[i]);
        return bases.rows ? total / static_cast<double>(bases.rows) : 0.0;
    };
    if (epochs == 0) return mean_loss_now();

    double mean = 0.0;
    HeadGradients grads;
    for (int e = 0; e < epochs; ++e) {
        double total = 0.0;
        for (std::size_t i = 0; i < bases.rows; ++i) {
            total += head_loss(params, bases.row_span(i), labels[i], &grads);
            for (std::size_t j = 0; j < params.proj.data.size(); ++j)
                params.proj.data[j] -= learning_rate * grads.proj.data[j];
            for (std::size_t h = 0; h < params.hidden; ++h)
                params.proj_bias[h] -= learning_rate * grads.proj_bias[h];
            for (std::size_t j = 0; j < params.cls.data.size(); ++j)
                params.cls.data[j] -= learning_rate * grads.cls.data[j];
            for (std::size_t c = 0; c < params.classes; ++c)
                params.cls_bias[c] -= learning_rate * grads.cls_bias[c];
        }
        mean = bases.rows ? total / static_cast<double>(bases.rows) : 0.0;
    }
    return mean;
}

namespace {
double changed_fraction(const std::vector<int>& a, const std::vector<int>& b) {
    // canonical first-appearance relabeling makes partitions comparable
    auto canon = [](const std::vector<int>& v) {
        std::vector<int> remap(v.size() + 1, -1);
        std::vector<int> out(v.size());
        int next = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            int c = v[i];
            if (c >= static_cast<int>(remap.size())) remap.resize(c + 1, -1);
            if (remap[c] < 0) remap[c] = next++;
            out[i] = remap[c];
        }
        return out;
    };
    auto ca = canon(a), cb = canon(b);
    std::size_t diff = 0;
    for (std::size_t i = 0; i < ca.size(); ++i) diff += ca[i] != cb[i];
    return ca.empty() ? 0.0 : static_cast<double>(diff) / static_cast<double>(ca.size());
}
} // namespace

IcpResult icp_run(const ContextSet& ctx, const SeedPairSet& seeds, const IcpConfig& cfg,
                  std::uint64_t seed) {
    if (cfg.rounds < 1) throw DomainError("icp_run: rounds must be >= 1");
    const std::size_t n = ctx.ids.size();
    if (n == 0) throw DomainError("icp_run: empty context set");

    int num_labels = 0;
    std::vector<int> labels = initial_pseudo_labels(ctx.ids, seeds, &num_labels);

    Rng master(seed);
    EncoderParams params = init_encoder_params(ctx.bases.cols, cfg.hidden,
                                               static_cast<std::size_t>(num_labels),
                                               master.derive(0).next_u64());
    IcpResult res;
    Matrix encoded;
    std::vector<int> prev_hac;

    for (int round = 1; round <= cfg.rounds; ++round) {
        IcpRoundLog log;
        log.round = round;
        log.labels = num_labels;
        log.train_loss = train_head(params, ctx.bases, labels, cfg.epochs, cfg.learning_rate);
        encoded = encode_all(ctx.bases, params, cfg.norm);

        if (round == cfg.rounds) {
            res.log.push_back(log);
            break;
        }

        // next round's pseudo-labels from HAC over the fresh embeddings
        EstimateResult est =
            estimate_k(encoded, cfg.k_regime, master.derive(100 + round), cfg.kmeans);
        int k = std::max(1, std::min(est.k_star, static_cast<int>(n)));
        std::vector<int> clusters = hac(encoded, k, cfg.linkage);
        log.hac_k = k;
        if (!prev_hac.empty()) {
            log.changed_frac = changed_fraction(prev_hac, clusters);
            if (log.changed_frac < cfg.early_stop_changed) {
                res.log.push_back(log);
                break;
            }
        }
        prev_hac = clusters;
        labels = clusters;
        // classifier restarts for the new label set; projection resumes
        num_labels = *std::max_element(clusters.begin(), clusters.end()) + 1;
        params.cls = Matrix(num_labels, params.hidden);
        params.cls_bias.assign(num_labels, 0.0);
        params.classes = static_cast<std::size_t>(num_labels);
        res.log.push_back(log);
    }

    res.embeddings = EmbeddingTable(View::Context, cfg.hidden);
    for (std::size_t i = 0; i < n; ++i) res.embeddings.add(ctx.ids[i], encoded.row_span(i));
    res.params = std::move(params);
    return res;
}

} // namespace okbc
