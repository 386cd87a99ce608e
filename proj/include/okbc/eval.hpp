// Canonicalization metrics (macro, micro and pairwise precision/recall/F1
// and their average) plus relative error and average-rank aggregation for
// cluster-count prediction.
#ifndef OKBC_EVAL_HPP
#define OKBC_EVAL_HPP

#include <string>
#include <vector>

#include "okbc/types.hpp"

namespace okbc {

struct Prf {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct MetricReport {
    Prf macro, micro, pairwise;
    double average_f1 = 0.0;
    std::size_t evaluated = 0;  // elements with gold labels

    std::string to_kv_text() const;
    std::string to_json() const;
};

// Evaluation is restricted to elements present in the gold map; clusters
// that become empty after the restriction are dropped. An empty
// intersection is a domain error.
//
// macro: fraction of predicted clusters pure w.r.t. gold, and vice versa.
// micro: sum over predicted clusters of the best gold overlap, over N.
// pairwise: same-cluster pairs that are also same-gold; when neither side
// has any intra-cluster pair the metric is vacuously 1, otherwise an empty
// denominator scores 0.
Prf macro_f1(const Clustering& pred, const GoldLabels& gold);
Prf micro_f1(const Clustering& pred, const GoldLabels& gold);
Prf pairwise_f1(const Clustering& pred, const GoldLabels& gold);
MetricReport evaluate(const Clustering& pred, const GoldLabels& gold);

double relative_error(int predicted, int gold);

struct RankAggregate {
    std::vector<double> average_rank;           // per method
    std::vector<double> average_relative_error; // per method
};

// errors[m][d] = relative error of method m on dataset d. Competition
// ranks per dataset (ties share the minimum rank), averaged per method.
RankAggregate rank_aggregate(const std::vector<std::vector<double>>& errors);

} // namespace okbc

#endif
