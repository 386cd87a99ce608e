#include "okbc/fact_view.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "okbc/kernels.hpp"

namespace okbc {

std::span<const double> KemParams::entity(PhraseId id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= entities.rows)
        throw LookupError("no entity embedding for id " + std::to_string(id));
    return entities.row_span(id);
}

std::span<const double> KemParams::relation(PhraseId id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= relations.rows)
        throw LookupError("no relation embedding for id " + std::to_string(id));
    return relations.row_span(id);
}

namespace {

Vec sized_to(const Vec& v, std::size_t dim) {
    Vec out(dim, 0.0);
    for (std::size_t i = 0; i < std::min(dim, v.size()); ++i) out[i] = v[i];
    return out;
}

void fill_table(Matrix& table, const std::vector<Phrase>& phrases, const WordVectors& wv,
                const KemConfig& cfg, std::uint64_t seed, std::uint64_t kind_tag) {
    table = Matrix(phrases.size(), cfg.dim);
    int fallbacks = 0;
    for (const auto& p : phrases) {
        std::uint64_t vec_seed = seed ^ (kind_tag * 0x100000001b3ULL) ^
                                 (static_cast<std::uint64_t>(p.id) * 0x9e3779b97f4a7c15ULL);
        Vec fallback = random_unit_vec(wv.dim ? wv.dim : cfg.dim, vec_seed, cfg.unit_norm);
        bool fell_back = false;
        Vec base = embed_phrase_avg(p, wv, fallback, &fell_back);
        if (fell_back) ++fallbacks;
        Vec sized = sized_to(base, cfg.dim);
        if (norm_of(sized, cfg.unit_norm) == 0.0)
            sized = random_unit_vec(cfg.dim, vec_seed, cfg.unit_norm);
        else
            normalize_in_place(sized, cfg.unit_norm);
        table.set_row(p.id, sized);
    }
    if (fallbacks > 0)
        warn(std::to_string(fallbacks) + " phrases had no known tokens; random init used");
}

} // namespace

KemParams init_kem_params(const PhraseTable& phrases, const WordVectors& wv,
                          const KemConfig& cfg, std::uint64_t seed) {
    KemParams params;
    params.dim = cfg.dim;
    fill_table(params.entities, phrases.all(PhraseKind::NP), wv, cfg, seed, 1);
    fill_table(params.relations, phrases.all(PhraseKind::RP), wv, cfg, seed, 2);
    return params;
}

double score(const TrainTriple& t, const KemParams& params, const KemConfig& cfg) {
    auto h = params.entity(t.subject);
    auto r = params.relation(t.relation);
    auto o = params.entity(t.object);
    double s = 0.0;
    if (cfg.score_norm == Norm::L1) {
        for (std::size_t d = 0; d < params.dim; ++d) s += std::fabs(h[d] + r[d] - o[d]);
    } else {
        for (std::size_t d = 0; d < params.dim; ++d) {
            double diff = h[d] + r[d] - o[d];
            s += diff * diff;
        }
        s = std::sqrt(s);
    }
    return s;
}

TrainTriple negative_sample(const TrainTriple& t, const std::vector<PhraseId>& np_universe,
                            Rng& rng) {
    if (np_universe.size() < 2)
        throw SamplingError("negative_sample: universe needs at least 2 NPs");
    bool replace_subject = rng.uniform() < 0.5;
    PhraseId current = replace_subject ? t.subject : t.object;
    PhraseId pick = current;
    for (int tries = 0; pick == current; ++tries) {
        if (tries > 1000)
            throw SamplingError("negative_sample: universe has no alternative NP");
        pick = np_universe[rng.index(np_universe.size())];
    }
    TrainTriple out = t;
    (replace_subject ? out.subject : out.object) = pick;
    return out;
}

std::vector<TrainTriple> augment(const std::vector<TrainTriple>& original,
                                 const SeedPairSet& seeds) {
    std::set<TrainTriple> seen(original.begin(), original.end());
    std::set<TrainTriple> out;
    auto emit = [&](TrainTriple t) {
        if (!seen.count(t)) out.insert(t);
    };
    for (const auto& [ui, uj] : seeds.pairs) {
        for (const auto& t : original) {
            if (t.subject == ui) emit({uj, t.relation, t.object});
            if (t.object == ui) emit({t.subject, t.relation, uj});
            if (t.subject == uj) emit({ui, t.relation, t.object});
            if (t.object == uj) emit({t.subject, t.relation, ui});
        }
    }
    return {out.begin(), out.end()};
}

double hinge_loss(double pos_score, double neg_score, double margin) {
    return std::max(0.0, margin + pos_score - neg_score);
}

namespace {

// d/dx of |h + r - o| contributions for one triple, weighted by sign.
// Accumulates into the gradient rows for h, r and o.
void accumulate_score_grad(const KemParams& params, const KemConfig& cfg,
                           const TrainTriple& t, double weight, Matrix& ent_grad,
                           Matrix& rel_grad) {
    auto h = params.entity(t.subject);
    auto r = params.relation(t.relation);
    auto o = params.entity(t.object);
    double* gh = ent_grad.row(t.subject);
    double* gr = rel_grad.row(t.relation);
    double* go = ent_grad.row(t.object);
    if (cfg.score_norm == Norm::L1) {
        for (std::size_t d = 0; d < params.dim; ++d) {
            double diff = h[d] + r[d] - o[d];
            double s = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
            gh[d] += weight * s;
            gr[d] += weight * s;
            go[d] -= weight * s;
        }
    } else {
        double nrm = 0.0;
        for (std::size_t d = 0; d < params.dim; ++d) {
            double diff = h[d] + r[d] - o[d];
            nrm += diff * diff;
        }
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) return;
        for (std::size_t d = 0; d < params.dim; ++d) {
            double g = (h[d] + r[d] - o[d]) / nrm;
            gh[d] += weight * g;
            gr[d] += weight * g;
            go[d] -= weight * g;
        }
    }
}

struct TouchSet {
    std::vector<PhraseId> entities;
    std::vector<PhraseId> relations;

    void add_entity(PhraseId id) {
        if (std::find(entities.begin(), entities.end(), id) == entities.end())
            entities.push_back(id);
    }
    void add_relation(PhraseId id) {
        if (std::find(relations.begin(), relations.end(), id) == relations.end())
            relations.push_back(id);
    }
};

} // namespace

double hinge_gradient(const KemParams& params, const KemConfig& cfg, const TrainTriple& pos,
                      const TrainTriple& neg, Matrix& ent_grad, Matrix& rel_grad) {
    double loss = hinge_loss(score(pos, params, cfg), score(neg, params, cfg), cfg.margin);
    if (loss <= 0.0) return loss;
    accumulate_score_grad(params, cfg, pos, 1.0, ent_grad, rel_grad);
    accumulate_score_grad(params, cfg, neg, -1.0, ent_grad, rel_grad);
    return loss;
}

namespace {

double train_epoch_serial(KemParams& params, const std::vector<TrainTriple>& positives,
                          const std::vector<PhraseId>& np_universe, Rng& rng,
                          const KemConfig& cfg) {
    std::vector<std::size_t> order(positives.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);

    // sparse gradient buffers reused across samples
    Matrix ent_grad(params.entities.rows, params.dim);
    Matrix rel_grad(params.relations.rows, params.dim);

    double total = 0.0;
    std::size_t samples = 0;
    for (std::size_t i : order) {
        const TrainTriple& pos = positives[i];
        for (int nneg = 0; nneg < cfg.negatives_per_positive; ++nneg) {
            TrainTriple neg = negative_sample(pos, np_universe, rng);
            double f_pos = score(pos, params, cfg);
            double f_neg = score(neg, params, cfg);
            double loss = hinge_loss(f_pos, f_neg, cfg.margin);
            total += loss;
            ++samples;
            if (loss <= 0.0) continue;

            TouchSet touched;
            touched.add_entity(pos.subject);
            touched.add_entity(pos.object);
            touched.add_entity(neg.subject);
            touched.add_entity(neg.object);
            touched.add_relation(pos.relation);

            for (PhraseId id : touched.entities)
                std::fill_n(ent_grad.row(id), params.dim, 0.0);
            for (PhraseId id : touched.relations)
                std::fill_n(rel_grad.row(id), params.dim, 0.0);

            hinge_gradient(params, cfg, pos, neg, ent_grad, rel_grad);

            for (PhraseId id : touched.entities) {
                double* x = params.entities.row(id);
                const double* g = ent_grad.row(id);
                for (std::size_t d = 0; d < params.dim; ++d)
                    x[d] -= cfg.learning_rate * g[d];
                normalize_in_place(params.entities.row_span(id), cfg.unit_norm);
            }
            for (PhraseId id : touched.relations) {
                double* x = params.relations.row(id);
                const double* g = rel_grad.row(id);
                for (std::size_t d = 0; d < params.dim; ++d)
                    x[d] -= cfg.learning_rate * g[d];
                normalize_in_place(params.relations.row_span(id), cfg.unit_norm);
            }
        }
    }
    return samples ? total / static_cast<double>(samples) : 0.0;
}

// Opt-in sharded epoch: shards train on copies, updates are averaged.
// Deterministic for a fixed shard count, not bitwise across counts.
double train_epoch_sharded(KemParams& params, const std::vector<TrainTriple>& positives,
                           const std::vector<PhraseId>& np_universe, Rng& rng,
                           const KemConfig& cfg) {
    int shards = std::max(1, thread_count());
    if (shards == 1 || positives.size() < static_cast<std::size_t>(shards) * 2)
        return train_epoch_serial(params, positives, np_universe, rng, cfg);

    std::vector<std::size_t> order(positives.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);

    std::vector<KemParams> copies(shards, params);
    std::vector<double> losses(shards, 0.0);
    std::vector<std::vector<TrainTriple>> parts(shards);
    for (std::size_t i = 0; i < order.size(); ++i)
        parts[i % shards].push_back(positives[order[i]]);

    std::vector<Rng> shard_rngs;
    for (int s = 0; s < shards; ++s) shard_rngs.push_back(rng.derive(1000 + s));

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int s = 0; s < shards; ++s)
        losses[s] = train_epoch_serial(copies[s], parts[s], np_universe, shard_rngs[s], cfg);

    auto average_into = [&](Matrix& dst, auto member) {
        std::fill(dst.data.begin(), dst.data.end(), 0.0);
        for (const auto& c : copies) {
            const Matrix& src = c.*member;
            for (std::size_t i = 0; i < dst.data.size(); ++i) dst.data[i] += src.data[i];
        }
        for (double& x : dst.data) x /= static_cast<double>(shards);
        for (std::size_t i = 0; i < dst.rows; ++i) {
            if (norm_of(dst.row_span(i), cfg.unit_norm) > 0.0)
                normalize_in_place(dst.row_span(i), cfg.unit_norm);
        }
    };
    average_into(params.entities, &KemParams::entities);
    average_into(params.relations, &KemParams::relations);

    double total = 0.0;
    std::size_t samples = 0;
    for (int s = 0; s < shards; ++s) {
        total += losses[s] * static_cast<double>(parts[s].size());
        samples += parts[s].size();
    }
    return samples ? total / static_cast<double>(samples) : 0.0;
}

std::vector<PhraseId> np_universe_of(const std::vector<TrainTriple>& triples) {
    std::set<PhraseId> ids;
    for (const auto& t : triples) {
        ids.insert(t.subject);
        ids.insert(t.object);
    }
    return {ids.begin(), ids.end()};
}

} // namespace

double train_epoch(KemParams& params, const std::vector<TrainTriple>& positives,
                   const std::vector<PhraseId>& np_universe, Rng& rng, const KemConfig& cfg) {
    if (positives.empty()) throw DomainError("train_epoch: no positive triples");
    if (cfg.parallel) return train_epoch_sharded(params, positives, np_universe, rng, cfg);
    return train_epoch_serial(params, positives, np_universe, rng, cfg);
}

FactResult train_alternating(const std::vector<TrainTriple>& original,
                             const std::vector<TrainTriple>& augmented, KemParams params,
                             const KemConfig& cfg, std::uint64_t seed) {
    if (cfg.phases < 1) throw DomainError("train_alternating: phases must be >= 1");
    if (original.empty()) throw DomainError("train_alternating: no original triples");

    FactResult res;
    bool warned = false;
    Rng master(seed);
    for (int phase = 1; phase <= cfg.phases; ++phase) {
        bool odd = phase % 2 == 1;
        const auto& positives = odd ? original : augmented;
        if (!odd && augmented.empty()) {
            if (!warned) {
                warn("augmented set is empty; even phases are skipped");
                warned = true;
            }
            continue;
        }
        auto universe = np_universe_of(positives);
        Rng phase_rng = master.derive(static_cast<std::uint64_t>(phase));
        for (int epoch = 1; epoch <= cfg.epochs_per_phase; ++epoch) {
            double mean = train_epoch(params, positives, universe, phase_rng, cfg);
            res.log.push_back({phase, epoch, mean});
        }
    }
    for (std::size_t i = 0; i < params.entities.rows; ++i)
        normalize_in_place(params.entities.row_span(i), cfg.unit_norm);
    for (std::size_t i = 0; i < params.relations.rows; ++i)
        normalize_in_place(params.relations.row_span(i), cfg.unit_norm);
    res.params = std::move(params);
    return res;
}

EmbeddingTable fact_np_table(const KemParams& params) {
    EmbeddingTable t(View::Fact, params.dim);
    for (std::size_t i = 0; i < params.entities.rows; ++i)
        t.add(static_cast<PhraseId>(i), params.entities.row_span(i));
    return t;
}

EmbeddingTable fact_rp_table(const KemParams& params) {
    EmbeddingTable t(View::Fact, params.dim);
    for (std::size_t i = 0; i < params.relations.rows; ++i)
        t.add(static_cast<PhraseId>(i), params.relations.row_span(i));
    return t;
}

} // namespace okbc
