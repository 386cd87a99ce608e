// Acceptance suite: each case prints one pass/fail line. Tolerances and
// thresholds are pinned in code.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>

#include <algorithm>

#include "okbc/clustering.hpp"
#include "okbc/context_view.hpp"
#include "okbc/eval.hpp"
#include "okbc/fact_view.hpp"
#include "okbc/io.hpp"
#include "okbc/kernels.hpp"
#include "okbc/kselect.hpp"
#include "test_util.hpp"

using namespace okbc;

namespace {

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s  (%s)\n", criterion, pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

MetricReport score_against(const std::vector<int>& assign, const std::vector<int>& gold) {
    Clustering pred;
    pred.k = *std::max_element(assign.begin(), assign.end()) + 1;
    GoldLabels labels;
    for (std::size_t i = 0; i < assign.size(); ++i) {
        pred.element_ids.push_back(static_cast<PhraseId>(i));
        pred.assign.push_back(assign[i]);
        labels[static_cast<PhraseId>(i)] = "g" + std::to_string(gold[i]);
    }
    return evaluate(pred.compacted(), labels);
}

} // namespace

// Log-Jump on the bundled Iris data: relative error <= 0.334, single
// thread, under 10 seconds.
TEST_CASE("criterion 1: iris cluster-count prediction") {
    set_threads(1);
    auto t0 = std::chrono::steady_clock::now();

    BenchmarkData iris = load_benchmark_csv(testutil::data_dir() + "/iris.csv");
    REQUIRE(iris.features.rows == 150);
    REQUIRE(iris.features.cols == 4);
    REQUIRE(iris.gold_k == 3);
    standardize_columns(iris.features);

    KCandidateRange range = candidate_range(150, KRegime::Traditional);  // [1, 6]
    int k = log_jump(iris.features, range, Rng(7));
    double err = relative_error(k, iris.gold_k);
    double elapsed = seconds_since(t0);

    bool pass = err <= 0.334 && elapsed < 10.0;
    report(1, pass, "k=" + std::to_string(k) + " rel_err=" + std::to_string(err) +
                        " time=" + std::to_string(elapsed) + "s");
    CHECK(err <= 0.334);
    CHECK(elapsed < 10.0);
    set_threads(0);
}

// Log-Jump vs Jump over 30 planted mixtures (G in {3, 6, 10}, p=16, n=300,
// 10 seeds each): strictly lower mean relative error, under 2 minutes.
TEST_CASE("criterion 2: log-jump beats jump on planted mixtures") {
    auto t0 = std::chrono::steady_clock::now();
    KCandidateRange range{1, 15, 1};
    double lj_total = 0.0, jump_total = 0.0;
    int runs = 0;
    for (int g : {3, 6, 10}) {
        for (int seed = 0; seed < 10; ++seed) {
            Rng gen(1000 + 97 * g + seed);
            auto planted = testutil::planted_lines(g, 16, 300, 0.2, 0.05, gen);
            DistortionCurve curve =
                distortion_curve(planted.points, range, Rng(2000 + 11 * g + seed));
            lj_total += relative_error(log_jump_from_curve(curve).k_star, g);
            jump_total += relative_error(jump_from_curve(curve).k_star, g);
            ++runs;
        }
    }
    double lj_mean = lj_total / runs, jump_mean = jump_total / runs;
    double elapsed = seconds_since(t0);
    bool pass = lj_mean < jump_mean && elapsed < 120.0;
    report(2, pass, "log_jump_mean=" + std::to_string(lj_mean) +
                        " jump_mean=" + std::to_string(jump_mean) +
                        " time=" + std::to_string(elapsed) + "s");
    CHECK(lj_mean < jump_mean);
    CHECK(elapsed < 120.0);
}

namespace {

// Complementary two-view data: six clusters; each view only separates the
// three merged super-groups it sees, and the pair (view-1 group, view-2
// group) identifies the cluster uniquely.
struct TwoView {
    Matrix view1, view2;
    std::vector<int> gold;
};

TwoView complementary_views(std::size_t n, double sigma, Rng& rng) {
    auto d1 = testutil::spread_directions(3, 16, rng, 0.15);
    auto d2 = testutil::spread_directions(3, 16, rng, 0.15);
    TwoView out;
    out.view1 = Matrix(n, 16);
    out.view2 = Matrix(n, 16);
    out.gold.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        int c = static_cast<int>(i % 6);
        out.gold[i] = c;
        int g1 = c / 2;                // merges (0,1) (2,3) (4,5)
        int g2 = ((c + 1) % 6) / 2;    // merges (1,2) (3,4) (5,0)
        for (std::size_t d = 0; d < 16; ++d) {
            out.view1.row(i)[d] = d1[g1][d] + sigma * rng.gaussian();
            out.view2.row(i)[d] = d2[g2][d] + sigma * rng.gaussian();
        }
    }
    return out;
}

} // namespace

// Fusion on complementary views: average F1 at least the best single view
// minus 0.02 on every seed, strictly better in at least 7 of 10.
TEST_CASE("criterion 3: fusion beats the single views") {
    int ok = 0, wins = 0;
    double fused_sum = 0, best_sum = 0;
    for (int seed = 0; seed < 10; ++seed) {
        Rng gen(400 + seed);
        TwoView data = complementary_views(300, 0.25, gen);
        Rng fuse_rng(900 + seed);
        FusionResult fusion = mv_ch_kmeans(data.view1, data.view2, 6, fuse_rng);
        double fused = score_against(fusion.final_assign, data.gold).average_f1;

        Rng r1(900 + seed), r2(901 + seed);
        double f1 = score_against(spherical_kmeans(data.view1, 6, r1).assign,
                                  data.gold).average_f1;
        double f2 = score_against(spherical_kmeans(data.view2, 6, r2).assign,
                                  data.gold).average_f1;
        double best = std::max(f1, f2);
        fused_sum += fused;
        best_sum += best;
        ok += fused >= best - 0.02;
        wins += fused > best;
    }
    bool pass = ok == 10 && wins >= 7;
    report(3, pass, "within_margin=" + std::to_string(ok) + "/10 strict_wins=" +
                        std::to_string(wins) + "/10 fused_mean=" +
                        std::to_string(fused_sum / 10) + " best_single_mean=" +
                        std::to_string(best_sum / 10));
    CHECK(ok == 10);
    CHECK(wins >= 7);
}

namespace {

// Toy KG: 12 entity groups of aliases, relations connecting groups; the
// augmented run sees 6 alias pairs as seeds.
struct ToyKg {
    std::vector<TrainTriple> triples;
    SeedPairSet seeds;
    std::vector<std::pair<PhraseId, PhraseId>> synonyms;
    int np_count = 0;
    int rp_count = 4;
};

ToyKg make_toy_kg(Rng& rng) {
    ToyKg kg;
    kg.seeds.kind = PhraseKind::NP;
    // 18 base entities; entities 0..5 have an alias each (ids 18..23)
    kg.np_count = 24;
    for (int e = 0; e < 6; ++e) {
        kg.synonyms.emplace_back(e, 18 + e);
        kg.seeds.insert(e, 18 + e);
    }
    // 60 triples over the base entities
    for (int i = 0; i < 60; ++i) {
        PhraseId s = static_cast<PhraseId>(rng.index(18));
        PhraseId o = static_cast<PhraseId>(rng.index(18));
        while (o == s) o = static_cast<PhraseId>(rng.index(18));
        kg.triples.push_back({s, static_cast<PhraseId>(rng.index(4)), o});
    }
    // aliases appear in a few triples of their own so they hold embeddings
    for (int e = 0; e < 6; ++e) {
        PhraseId alias = 18 + e;
        PhraseId other = static_cast<PhraseId>(6 + rng.index(12));
        kg.triples.push_back({alias, static_cast<PhraseId>(rng.index(4)), other});
    }
    return kg;
}

double mean_synonym_cosine(const KemParams& params,
                           const std::vector<std::pair<PhraseId, PhraseId>>& pairs) {
    double total = 0.0;
    for (auto [a, b] : pairs) total += cosine_sim(params.entity(a), params.entity(b));
    return total / static_cast<double>(pairs.size());
}

KemParams random_kem(int nps, int rps, std::size_t dim, Norm norm, Rng& rng) {
    KemParams p;
    p.dim = dim;
    p.entities = testutil::random_rows(nps, dim, rng);
    p.relations = testutil::random_rows(rps, dim, rng);
    for (std::size_t i = 0; i < p.entities.rows; ++i)
        normalize_in_place(p.entities.row_span(i), norm);
    for (std::size_t i = 0; i < p.relations.rows; ++i)
        normalize_in_place(p.relations.row_span(i), norm);
    return p;
}

} // namespace

// Augmented alternating training raises the mean synonym cosine over the
// originals-only run in at least 8 of 10 seeds, under a minute.
TEST_CASE("criterion 4: data augmentation direction") {
    auto t0 = std::chrono::steady_clock::now();
    KemConfig cfg;
    cfg.dim = 16;
    cfg.margin = 2.0;
    cfg.learning_rate = 0.002;  // sign gradients: keep steps well under the coordinate scale
    cfg.epochs_per_phase = 25;
    cfg.phases = 4;

    int better = 0;
    double aug_sum = 0, plain_sum = 0;
    for (int seed = 0; seed < 10; ++seed) {
        Rng gen(4000 + seed);
        ToyKg kg = make_toy_kg(gen);
        auto augmented = augment(kg.triples, kg.seeds);
        REQUIRE(!augmented.empty());

        Rng pinit(5000 + seed);
        KemParams init = random_kem(kg.np_count, kg.rp_count, cfg.dim, cfg.unit_norm, pinit);

        FactResult with_aug = train_alternating(kg.triples, augmented, init, cfg, 600 + seed);
        FactResult plain = train_alternating(kg.triples, {}, init, cfg, 600 + seed);

        double a = mean_synonym_cosine(with_aug.params, kg.synonyms);
        double p = mean_synonym_cosine(plain.params, kg.synonyms);
        aug_sum += a;
        plain_sum += p;
        better += a > p;
    }
    double elapsed = seconds_since(t0);
    bool pass = better >= 8 && elapsed < 60.0;
    report(4, pass, "better=" + std::to_string(better) + "/10 aug_mean=" +
                        std::to_string(aug_sum / 10) + " plain_mean=" +
                        std::to_string(plain_sum / 10) + " time=" +
                        std::to_string(elapsed) + "s");
    CHECK(better >= 8);
    CHECK(elapsed < 60.0);
}

namespace {

ContextSet planted_contexts(int entities, int per_entity, std::size_t dim, double sigma,
                            Rng& rng) {
    ContextSet ctx;
    auto dirs = testutil::spread_directions(entities, dim, rng, 0.2);
    int n = entities * per_entity;
    ctx.bases = Matrix(n, dim);
    for (int i = 0; i < n; ++i) {
        int e = i % entities;
        ctx.ids.push_back(i);
        Context c;
        c.phrase_id = i;
        ctx.contexts.push_back(c);
        for (std::size_t d = 0; d < dim; ++d)
            ctx.bases.row(i)[d] = dirs[e][d] + sigma * rng.gaussian();
    }
    return ctx;
}

double same_entity_cosine(const Matrix& emb, int entities) {
    double total = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < emb.rows; ++i)
        for (std::size_t j = i + 1; j < emb.rows; ++j) {
            if (static_cast<int>(i % entities) != static_cast<int>(j % entities)) continue;
            total += cosine_sim(emb.row_span(i), emb.row_span(j));
            ++count;
        }
    return total / count;
}

} // namespace

// Iterative clustering on planted contexts with 20% seed coverage: the
// final-round same-entity mean cosine beats the round-0 value in at least
// 8 of 10 seeds.
TEST_CASE("criterion 5: iterative clustering direction") {
    const int entities = 6, per_entity = 8;
    int better = 0;
    double final_sum = 0, round0_sum = 0;
    for (int seed = 0; seed < 10; ++seed) {
        Rng gen(7000 + seed);
        ContextSet ctx = planted_contexts(entities, per_entity, 16, 0.35, gen);

        // 20% of the same-entity pairs become seeds
        SeedPairSet seeds;
        seeds.kind = PhraseKind::NP;
        std::vector<std::pair<PhraseId, PhraseId>> same;
        for (int i = 0; i < entities * per_entity; ++i)
            for (int j = i + 1; j < entities * per_entity; ++j)
                if (i % entities == j % entities) same.emplace_back(i, j);
        Rng pick(7100 + seed);
        for (const auto& pr : same)
            if (pick.uniform() < 0.20) seeds.insert(pr.first, pr.second);

        IcpConfig cfg;
        cfg.rounds = 4;
        cfg.hidden = 16;
        cfg.epochs = 60;
        cfg.learning_rate = 0.05;
        cfg.k_regime = KRegime::Traditional;

        // round-0 embeddings: the untrained encoder
        int labels = 0;
        auto l0 = initial_pseudo_labels(ctx.ids, seeds, &labels);
        (void)l0;
        Rng master(7200 + seed);
        EncoderParams init = init_encoder_params(16, cfg.hidden, labels,
                                                 master.derive(0).next_u64());
        Matrix round0 = encode_all(ctx.bases, init, cfg.norm);
        double before = same_entity_cosine(round0, entities);

        IcpResult res = icp_run(ctx, seeds, cfg, 7200 + seed);
        Matrix final_emb = res.embeddings.to_matrix(ctx.ids);
        double after = same_entity_cosine(final_emb, entities);

        final_sum += after;
        round0_sum += before;
        better += after > before;
    }
    bool pass = better >= 8;
    report(5, pass, "better=" + std::to_string(better) + "/10 final_mean=" +
                        std::to_string(final_sum / 10) + " round0_mean=" +
                        std::to_string(round0_sum / 10));
    CHECK(better >= 8);
}

namespace {

Prf pairwise_oracle(const std::vector<int>& pred, const std::vector<int>& gold) {
    long hits = 0, pp = 0, gp = 0;
    for (std::size_t i = 0; i < pred.size(); ++i)
        for (std::size_t j = i + 1; j < pred.size(); ++j) {
            bool sp = pred[i] == pred[j];
            bool sg = gold[i] == gold[j];
            pp += sp;
            gp += sg;
            hits += sp && sg;
        }
    Prf out;
    if (pp == 0 && gp == 0) {
        out.precision = out.recall = out.f1 = 1.0;
        return out;
    }
    out.precision = pp ? double(hits) / pp : 0.0;
    out.recall = gp ? double(hits) / gp : 0.0;
    out.f1 = out.precision + out.recall > 0
                 ? 2 * out.precision * out.recall / (out.precision + out.recall)
                 : 0.0;
    return out;
}

Prf macro_oracle(const std::vector<int>& pred, const std::vector<int>& gold, int kp, int kg) {
    std::vector<int> pred_pure(kp, 1), seen_pred(kp, -1);
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (seen_pred[pred[i]] < 0) seen_pred[pred[i]] = gold[i];
        else if (seen_pred[pred[i]] != gold[i]) pred_pure[pred[i]] = 0;
    }
    std::vector<int> gold_pure(kg, 1), seen_gold(kg, -1);
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (seen_gold[gold[i]] < 0) seen_gold[gold[i]] = pred[i];
        else if (seen_gold[gold[i]] != pred[i]) gold_pure[gold[i]] = 0;
    }
    int used_p = 0, pure_p = 0, used_g = 0, pure_g = 0;
    for (int j = 0; j < kp; ++j)
        if (seen_pred[j] >= 0) {
            ++used_p;
            pure_p += pred_pure[j];
        }
    for (int j = 0; j < kg; ++j)
        if (seen_gold[j] >= 0) {
            ++used_g;
            pure_g += gold_pure[j];
        }
    Prf out;
    out.precision = double(pure_p) / used_p;
    out.recall = double(pure_g) / used_g;
    out.f1 = out.precision + out.recall > 0
                 ? 2 * out.precision * out.recall / (out.precision + out.recall)
                 : 0.0;
    return out;
}

Prf micro_oracle(const std::vector<int>& pred, const std::vector<int>& gold, int kp, int kg) {
    std::vector<std::vector<int>> overlap(kp, std::vector<int>(kg, 0));
    for (std::size_t i = 0; i < pred.size(); ++i) overlap[pred[i]][gold[i]]++;
    double p = 0, r = 0;
    for (int a = 0; a < kp; ++a) {
        int best = 0;
        for (int b = 0; b < kg; ++b) best = std::max(best, overlap[a][b]);
        p += best;
    }
    for (int b = 0; b < kg; ++b) {
        int best = 0;
        for (int a = 0; a < kp; ++a) best = std::max(best, overlap[a][b]);
        r += best;
    }
    Prf out;
    out.precision = p / pred.size();
    out.recall = r / pred.size();
    out.f1 = out.precision + out.recall > 0
                 ? 2 * out.precision * out.recall / (out.precision + out.recall)
                 : 0.0;
    return out;
}

} // namespace

// 500 random clusterings of up to 12 elements: implementation equals the
// brute-force oracles exactly.
TEST_CASE("criterion 6: metric oracle equivalence") {
    Rng rng(6001);
    bool all_equal = true;
    for (int it = 0; it < 500; ++it) {
        int n = 2 + static_cast<int>(rng.index(11));  // 2..12 elements
        int kp = 1 + static_cast<int>(rng.index(5));
        int kg = 1 + static_cast<int>(rng.index(5));
        std::vector<int> pred(n), gold(n);
        for (int i = 0; i < n; ++i) pred[i] = static_cast<int>(rng.index(kp));
        for (int i = 0; i < n; ++i) gold[i] = static_cast<int>(rng.index(kg));

        Clustering pc;
        GoldLabels gl;
        for (int i = 0; i < n; ++i) {
            pc.element_ids.push_back(i);
            pc.assign.push_back(pred[i]);
            gl[i] = "g" + std::to_string(gold[i]);
        }
        pc.k = kp;
        pc = pc.compacted();

        Prf pw = pairwise_f1(pc, gl);
        Prf pwo = pairwise_oracle(pred, gold);
        Prf ma = macro_f1(pc, gl);
        Prf mao = macro_oracle(pred, gold, kp, kg);
        Prf mi = micro_f1(pc, gl);
        Prf mio = micro_oracle(pred, gold, kp, kg);
        bool same = pw.precision == pwo.precision && pw.recall == pwo.recall &&
                    pw.f1 == pwo.f1 && ma.precision == mao.precision &&
                    ma.recall == mao.recall && mi.precision == mio.precision &&
                    mi.recall == mio.recall;
        all_equal = all_equal && same;
        CHECK(same);
    }
    report(6, all_equal, "500 random instances, exact match");
}

// Pinned formula hand-checks, exact to 1e-9.
TEST_CASE("criterion 7: formula hand checks") {
    bool pass = true;
    auto expect = [&](double got, double want, const char* what) {
        bool ok = std::fabs(got - want) <= 1e-9;
        pass = pass && ok;
        CHECK_MESSAGE(ok, what, " got=", got, " want=", want);
    };

    // distortion example
    Matrix x = testutil::make_matrix({{1, 0}, {0, 1}});
    Matrix xi = testutil::make_matrix({{1, 0}});
    expect(distortion(x, xi), 0.25, "distortion");

    // hinge examples
    expect(hinge_loss(0.0, 13.0, 12.0), 0.0, "hinge inactive");
    expect(hinge_loss(5.0, 5.0, 12.0), 12.0, "hinge at margin");

    // centroid example
    Matrix emb = testutil::make_matrix({{1, 0}, {0, 1}});
    Matrix c = m_step(emb, {0, 0}, 1, Norm::L1);
    expect(c.row(0)[0], 0.5, "centroid x");
    expect(c.row(0)[1], 0.5, "centroid y");

    // weighted-argmax example: scores 2.0 vs 1.0
    Matrix x1 = testutil::make_matrix({{1, 0}});
    Matrix m1 = testutil::make_matrix({{0.9, std::sqrt(1 - 0.81)},
                                       {0.1, std::sqrt(1 - 0.01)}});
    Matrix m2 = testutil::make_matrix({{0.2, std::sqrt(1 - 0.04)},
                                       {0.8, std::sqrt(1 - 0.64)}});
    auto assign = final_assign(x1, m1, 2.0, x1, m2, 1.0);
    bool argmax_ok = assign[0] == 0;
    pass = pass && argmax_ok;
    CHECK(argmax_ok);

    // candidate range for n = 20000
    KCandidateRange r = candidate_range(20000, KRegime::LargeK);
    bool range_ok = r.lo == 4000 && r.hi == 9000 && r.gap == 1000;
    pass = pass && range_ok;
    CHECK(range_ok);

    report(7, pass, "distortion/hinge/centroid/argmax/range");
}

// Fusion convergence: loss at termination no higher than after the first
// full iteration, and termination within T steps or under the tolerance.
TEST_CASE("criterion 8: fusion convergence") {
    bool pass = true;
    int runs = 0;
    // agreeing-geometry two-view runs (the Fig. 2 regime)
    for (int seed = 0; seed < 10; ++seed) {
        Rng gen(8800 + seed);
        auto d1 = testutil::spread_directions(6, 16, gen, 0.2);
        auto d2 = testutil::spread_directions(6, 16, gen, 0.2);
        Matrix v1(300, 16), v2(300, 16);
        for (int i = 0; i < 300; ++i) {
            int c = i % 6;
            for (int d = 0; d < 16; ++d) {
                v1.row(i)[d] = d1[c][d] + 0.2 * gen.gaussian();
                v2.row(i)[d] = d2[c][d] + 0.2 * gen.gaussian();
            }
        }
        Rng rng(8900 + seed);
        MvOptions opt;  // T=10, tol=1e-4
        FusionResult res = mv_ch_kmeans(v1, v2, 6, rng, opt);
        ++runs;
        REQUIRE(!res.iteration_loss.empty());
        bool converged = res.iteration_loss.back() <= res.iteration_loss.front() + 1e-12;
        bool terminated = res.steps <= opt.max_steps ||
                          res.iteration_loss.back() < opt.tol;
        pass = pass && converged && terminated;
        CHECK(converged);
        CHECK(terminated);
    }
    report(8, pass, std::to_string(runs) + " seeded fusion runs");
}

// Gradient checks against central finite differences at 10 random points
// each, relative error 1e-4.
TEST_CASE("criterion 9: gradient checks") {
    bool pass = true;

    // fact-view hinge
    KemConfig cfg;
    cfg.dim = 6;
    cfg.margin = 4.0;
    Rng gen(9900);
    int checked = 0;
    while (checked < 10) {
        KemParams p;
        p.dim = 6;
        p.entities = testutil::random_rows(4, 6, gen);
        p.relations = testutil::random_rows(2, 6, gen);
        TrainTriple pos{0, 1, 1};
        TrainTriple neg{2, 1, 3};
        if (hinge_loss(score(pos, p, cfg), score(neg, p, cfg), cfg.margin) <= 1e-6) continue;
        bool kink = false;
        for (const TrainTriple& t : {pos, neg})
            for (std::size_t d = 0; d < p.dim; ++d) {
                double diff = p.entities.row(t.subject)[d] + p.relations.row(t.relation)[d] -
                              p.entities.row(t.object)[d];
                kink = kink || std::fabs(diff) < 1e-3;
            }
        if (kink) continue;
        ++checked;

        Matrix eg(4, 6), rg(2, 6);
        hinge_gradient(p, cfg, pos, neg, eg, rg);
        const double h = 1e-6;
        auto loss_at = [&]() {
            return hinge_loss(score(pos, p, cfg), score(neg, p, cfg), cfg.margin);
        };
        for (std::size_t row = 0; row < 4 && pass; ++row)
            for (std::size_t d = 0; d < 6; ++d) {
                double saved = p.entities.row(row)[d];
                p.entities.row(row)[d] = saved + h;
                double up = loss_at();
                p.entities.row(row)[d] = saved - h;
                double down = loss_at();
                p.entities.row(row)[d] = saved;
                double fd = (up - down) / (2 * h);
                if (std::fabs(eg.row(row)[d] - fd) > 1e-4 * std::max(1.0, std::fabs(fd)))
                    pass = false;
            }
    }
    CHECK(pass);

    // context-view cross entropy
    Rng gen2(9950);
    for (int point = 0; point < 10; ++point) {
        EncoderParams p = init_encoder_params(4, 3, 3, 300 + point);
        for (auto& w : p.cls.data) w = 0.5 * gen2.gaussian();
        Vec base(4);
        for (auto& x : base) x = gen2.gaussian();
        int label = static_cast<int>(gen2.index(3));
        HeadGradients g;
        head_loss(p, base, label, &g);
        const double h = 1e-6;
        auto fd_of = [&](double* param) {
            double saved = *param;
            *param = saved + h;
            double up = head_loss(p, base, label);
            *param = saved - h;
            double down = head_loss(p, base, label);
            *param = saved;
            return (up - down) / (2 * h);
        };
        for (std::size_t i = 0; i < p.proj.data.size(); ++i) {
            double fd = fd_of(&p.proj.data[i]);
            if (std::fabs(g.proj.data[i] - fd) > 1e-4 * std::max(1.0, std::fabs(fd)))
                pass = false;
        }
        for (std::size_t i = 0; i < p.cls.data.size(); ++i) {
            double fd = fd_of(&p.cls.data[i]);
            if (std::fabs(g.cls.data[i] - fd) > 1e-4 * std::max(1.0, std::fabs(fd)))
                pass = false;
        }
    }
    CHECK(pass);
    report(9, pass, "hinge and cross-entropy gradients vs central differences");
}
