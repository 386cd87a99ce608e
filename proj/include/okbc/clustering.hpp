// Spherical K-Means machinery, hierarchical agglomerative clustering, the
// Calinski-Harabasz index, and the two-view co-EM fusion algorithm that
// alternates M/E steps between views and resolves conflicts through
// CH-weighted consensus assignment.
#ifndef OKBC_CLUSTERING_HPP
#define OKBC_CLUSTERING_HPP

#include <optional>
#include <vector>

#include "okbc/rng.hpp"
#include "okbc/types.hpp"

namespace okbc {

enum class Linkage { Single, Complete, Average };

struct LossEntry {
    int step = 0;   // view-steps completed
    int view = 0;   // 1 or 2
    double loss = 0.0;
};

struct FusionResult {
    std::vector<int> final_assign;          // per element of the input order
    Matrix consensus_means[2];              // per view, K x dim
    double ch_weight[2] = {1.0, 1.0};
    std::vector<int> view_assign[2];        // final per-view clusterings
    std::vector<LossEntry> loss_trace;      // loss after every view-step
    std::vector<double> iteration_loss;     // loss after each full (both-view) pass
    int steps = 0;
};

struct MvOptions {
    int max_steps = 10;      // T, counted per view-step
    double tol = 1e-4;
    Norm norm = Norm::L1;
};

// Centroids from the other view's clustering (normalized sums). Clusters
// that are empty, or whose member sum cancels to zero, are reseeded with
// the globally worst-fit element; each reseed consumes a distinct element
// and donor centroids are recomputed.
Matrix m_step(const Matrix& emb, const std::vector<int>& assign, int k, Norm norm);

// Nearest-centroid assignment under cosine similarity; ties -> lowest index.
std::vector<int> e_step(const Matrix& emb, const Matrix& centroids);

// Sum over views/clusters/members of (1 - cos(emb_i, centroid)).
double view_loss(const Matrix& emb, const Matrix& centroids, const std::vector<int>& assign);

// Per-cluster normalized sums over elements assigned to the same index in
// both views; empty agreement falls back to the view's own centroid row.
Matrix consensus_means(const Matrix& emb, const std::vector<int>& a1,
                       const std::vector<int>& a2, const Matrix& own_centroids, Norm norm);

// Between/within dispersion ratio with squared Euclidean distances;
// centroids are the normalized cluster sums and the global center is the
// plain mean. Computed over nonempty clusters; their count stands in for K.
// Within-dispersion is floored at 1e-12. K < 2 or |S| <= K is a domain error.
double ch_index(const Matrix& emb, const std::vector<int>& assign, Norm norm);

// Element -> argmax_j of ch1*cos(x1, m1_j) + ch2*cos(x2, m2_j); ties -> lowest.
std::vector<int> final_assign(const Matrix& x1, const Matrix& m1, double ch1,
                              const Matrix& x2, const Matrix& m2, double ch2);

// Single-view spherical K-Means sharing the same step functions: centers
// start from k distinct sampled elements, then E, then (M, E) per step.
struct KmeansResult {
    Matrix centroids;
    std::vector<int> assign;
    double loss = 0.0;
    int steps = 0;
};
KmeansResult spherical_kmeans(const Matrix& emb, int k, Rng& rng, const MvOptions& opt = {});

// The two-view fusion: initialize view-2 centers from k distinct sampled
// elements, E-step in view 2, then alternate (M from the other view's
// clustering, E) across views until max_steps or loss < tol; finish with
// consensus means, CH weights and the weighted final assignment. When the
// CH index is undefined for a view (k >= |S| or k < 2) both weights fall
// back to 1.
FusionResult mv_ch_kmeans(const Matrix& view1, const Matrix& view2, int k, Rng& rng,
                          const MvOptions& opt = {});

// Agglomerative clustering under cosine distance until k clusters remain.
// Lance-Williams updates; merge ties -> lexicographically smallest pair of
// active cluster ids. Returned cluster ids follow first appearance in
// element order.
std::vector<int> hac(const Matrix& emb, int k, Linkage linkage = Linkage::Average);

} // namespace okbc

#endif
