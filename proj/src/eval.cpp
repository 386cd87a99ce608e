#include "okbc/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

#include "okbc/error.hpp"
#include "okbc/io.hpp"

#include <json.hpp>

namespace okbc {

namespace {

// Predicted clusters and gold clusters over the evaluated elements, as
// element-position sets. Gold cluster key is the label string.
struct Restricted {
    std::vector<std::vector<int>> pred;              // nonempty
    std::vector<std::vector<int>> gold;
    std::vector<int> gold_of;                        // per element, gold cluster index
    std::size_t n = 0;
};

Restricted restrict_to_gold(const Clustering& pred, const GoldLabels& gold) {
    Restricted r;
    std::vector<std::vector<int>> pred_raw(pred.k);
    std::map<std::string, std::vector<int>> gold_map;
    std::vector<std::pair<int, std::string>> kept;  // (pred cluster, label) per element

    for (std::size_t i = 0; i < pred.element_ids.size(); ++i) {
        auto it = gold.find(pred.element_ids[i]);
        if (it == gold.end()) continue;
        kept.emplace_back(pred.assign[i], it->second);
    }
    if (kept.empty()) throw DomainError("evaluate: no elements with gold labels");

    r.n = kept.size();
    r.gold_of.resize(r.n);
    std::map<std::string, int> gold_index;
    for (std::size_t e = 0; e < kept.size(); ++e) {
        pred_raw[kept[e].first].push_back(static_cast<int>(e));
        auto [it, inserted] = gold_index.emplace(kept[e].second, static_cast<int>(gold_index.size()));
        r.gold_of[e] = it->second;
    }
    r.gold.resize(gold_index.size());
    for (std::size_t e = 0; e < kept.size(); ++e) r.gold[r.gold_of[e]].push_back(static_cast<int>(e));
    for (auto& c : pred_raw)
        if (!c.empty()) r.pred.push_back(std::move(c));
    return r;
}

double harmonic(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

// fraction of clusters in A fully contained in some cluster of B
double purity_fraction(const std::vector<std::vector<int>>& a,
                       const std::vector<int>& b_of) {
    std::size_t pure = 0;
    for (const auto& c : a) {
        bool ok = true;
        for (std::size_t i = 1; i < c.size(); ++i)
            if (b_of[c[i]] != b_of[c[0]]) {
                ok = false;
                break;
            }
        pure += ok;
    }
    return static_cast<double>(pure) / static_cast<double>(a.size());
}

std::size_t intra_pairs(const std::vector<std::vector<int>>& clusters) {
    std::size_t total = 0;
    for (const auto& c : clusters) total += c.size() * (c.size() - 1) / 2;
    return total;
}

} // namespace

Prf macro_f1(const Clustering& pred, const GoldLabels& gold) {
    Restricted r = restrict_to_gold(pred, gold);
    std::vector<int> pred_of(r.n);
    for (std::size_t j = 0; j < r.pred.size(); ++j)
        for (int e : r.pred[j]) pred_of[e] = static_cast<int>(j);
    Prf out;
    out.precision = purity_fraction(r.pred, r.gold_of);
    out.recall = purity_fraction(r.gold, pred_of);
    out.f1 = harmonic(out.precision, out.recall);
    return out;
}

Prf micro_f1(const Clustering& pred, const GoldLabels& gold) {
    Restricted r = restrict_to_gold(pred, gold);
    std::vector<int> pred_of(r.n);
    for (std::size_t j = 0; j < r.pred.size(); ++j)
        for (int e : r.pred[j]) pred_of[e] = static_cast<int>(j);

    auto best_overlap_sum = [&](const std::vector<std::vector<int>>& a,
                                const std::vector<int>& b_of) {
        double total = 0.0;
        for (const auto& c : a) {
            std::map<int, std::size_t> counts;
            for (int e : c) counts[b_of[e]]++;
            std::size_t best = 0;
            for (auto& [_, cnt] : counts) best = std::max(best, cnt);
            total += static_cast<double>(best);
        }
        return total;
    };
    Prf out;
    out.precision = best_overlap_sum(r.pred, r.gold_of) / static_cast<double>(r.n);
    out.recall = best_overlap_sum(r.gold, pred_of) / static_cast<double>(r.n);
    out.f1 = harmonic(out.precision, out.recall);
    return out;
}

Prf pairwise_f1(const Clustering& pred, const GoldLabels& gold) {
    Restricted r = restrict_to_gold(pred, gold);
    std::size_t hits = 0;
    for (const auto& c : r.pred)
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j)
                hits += r.gold_of[c[i]] == r.gold_of[c[j]];
    std::size_t pred_pairs = intra_pairs(r.pred);
    std::size_t gold_pairs = intra_pairs(r.gold);

    Prf out;
    if (pred_pairs == 0 && gold_pairs == 0) {
        out.precision = out.recall = out.f1 = 1.0;  // vacuous on both sides
        return out;
    }
    out.precision = pred_pairs ? static_cast<double>(hits) / static_cast<double>(pred_pairs) : 0.0;
    out.recall = gold_pairs ? static_cast<double>(hits) / static_cast<double>(gold_pairs) : 0.0;
    out.f1 = harmonic(out.precision, out.recall);
    return out;
}

MetricReport evaluate(const Clustering& pred, const GoldLabels& gold) {
    MetricReport rep;
    rep.macro = macro_f1(pred, gold);
    rep.micro = micro_f1(pred, gold);
    rep.pairwise = pairwise_f1(pred, gold);
    rep.average_f1 = (rep.macro.f1 + rep.micro.f1 + rep.pairwise.f1) / 3.0;
    Restricted r = restrict_to_gold(pred, gold);
    rep.evaluated = r.n;
    return rep;
}

std::string MetricReport::to_kv_text() const {
    std::ostringstream out;
    out << "macro_precision=" << format_double(macro.precision) << '\n'
        << "macro_recall=" << format_double(macro.recall) << '\n'
        << "macro_f1=" << format_double(macro.f1) << '\n'
        << "micro_precision=" << format_double(micro.precision) << '\n'
        << "micro_recall=" << format_double(micro.recall) << '\n'
        << "micro_f1=" << format_double(micro.f1) << '\n'
        << "pairwise_precision=" << format_double(pairwise.precision) << '\n'
        << "pairwise_recall=" << format_double(pairwise.recall) << '\n'
        << "pairwise_f1=" << format_double(pairwise.f1) << '\n'
        << "average_f1=" << format_double(average_f1) << '\n'
        << "evaluated=" << evaluated << '\n';
    return out.str();
}

std::string MetricReport::to_json() const {
    nlohmann::json j;
    j["macro"] = {{"precision", macro.precision}, {"recall", macro.recall}, {"f1", macro.f1}};
    j["micro"] = {{"precision", micro.precision}, {"recall", micro.recall}, {"f1", micro.f1}};
    j["pairwise"] = {{"precision", pairwise.precision},
                     {"recall", pairwise.recall},
                     {"f1", pairwise.f1}};
    j["average_f1"] = average_f1;
    j["evaluated"] = evaluated;
    return j.dump(2);
}

double relative_error(int predicted, int gold) {
    if (gold < 1) throw DomainError("relative_error: gold count must be >= 1");
    return std::abs(predicted - gold) / static_cast<double>(gold);
}

RankAggregate rank_aggregate(const std::vector<std::vector<double>>& errors) {
    if (errors.empty()) throw DomainError("rank_aggregate: no methods");
    std::size_t methods = errors.size();
    std::size_t datasets = errors[0].size();
    if (datasets == 0) throw DomainError("rank_aggregate: no datasets");
    for (const auto& row : errors)
        if (row.size() != datasets) throw DomainError("rank_aggregate: ragged error table");

    RankAggregate agg;
    agg.average_rank.assign(methods, 0.0);
    agg.average_relative_error.assign(methods, 0.0);
    for (std::size_t d = 0; d < datasets; ++d) {
        for (std::size_t m = 0; m < methods; ++m) {
            // competition rank: 1 + number of strictly better methods
            int rank = 1;
            for (std::size_t o = 0; o < methods; ++o)
                if (errors[o][d] < errors[m][d]) ++rank;
            agg.average_rank[m] += rank;
            agg.average_relative_error[m] += errors[m][d];
        }
    }
    for (std::size_t m = 0; m < methods; ++m) {
        agg.average_rank[m] /= static_cast<double>(datasets);
        agg.average_relative_error[m] /= static_cast<double>(datasets);
    }
    return agg;
}

} // namespace okbc
