// Data-driven cluster-count prediction: the log-jump estimator over a
// cosine distortion curve, the classic transformed-distortion jump
// baseline, and the candidate-range heuristic with step refinement.
#ifndef OKBC_KSELECT_HPP
#define OKBC_KSELECT_HPP

#include <optional>
#include <string>
#include <vector>

#include "okbc/clustering.hpp"
#include "okbc/rng.hpp"
#include "okbc/vec.hpp"

namespace okbc {

struct KCandidateRange {
    int lo = 1;
    int hi = 1;
    int gap = 1;

    std::vector<int> values() const;  // lo, lo+gap, ..., <= hi
};

enum class KRegime { Traditional, LargeK };

// Traditional: [1, max(2, floor(sqrt(n)/2))], step 1.
// LargeK: gap = 10^(digits(n)-2) floored at 1; n > 10000 -> [4*gap, 9*gap],
// otherwise [2*gap, 9*gap]. Bounds are clamped to [1, n].
KCandidateRange candidate_range(std::size_t n, KRegime regime);

// Next refinement round: gap/10 step over [k_star - gap, k_star + gap]
// clamped to [1, n]; a gap below 10 signals completion.
std::optional<KCandidateRange> refine_range(int k_star, int gap, std::size_t n);

struct KmeansOpts {
    int restarts = 10;
    int max_iters = 50;
    Norm norm = Norm::L1;
};

// Average cosine distance per dimension to the nearest centroid.
double distortion(const Matrix& emb, const Matrix& centroids);

// K-Means with the cosine objective: k-means++-style seeding under cosine
// distance, Lloyd iterations until assignments stabilize, best restart by
// within-cluster cosine loss.
KmeansResult kmeans_cosine(const Matrix& emb, int k, Rng rng, const KmeansOpts& opts = {});

struct DistortionCurve {
    std::vector<int> k_values;
    std::vector<double> d;       // same length as k_values
    std::size_t n = 0;
    std::size_t dim = 0;

    void dump_csv(const std::string& path) const;  // K,d_K,LJ_K rows
};

// One K-Means per candidate with a per-candidate derived seed; candidates
// are independent, so results do not depend on evaluation order.
DistortionCurve distortion_curve(const Matrix& emb, const KCandidateRange& range,
                                 const Rng& rng, const KmeansOpts& opts = {});

struct KEstimate {
    int k_star = 0;
    std::vector<double> scores;  // per consecutive candidate pair
};

// argmax over consecutive candidates of log d_{next} - log d_{cur},
// attributed to the left candidate; distortions are floored at 1e-12
// before the logarithm. Fewer than two candidates is a domain error.
KEstimate log_jump_from_curve(const DistortionCurve& curve);

// argmax of the first difference of d^(-p/2), attributed to the right
// candidate. The transform is rescaled when it would overflow; rescaling
// preserves the argmax.
KEstimate jump_from_curve(const DistortionCurve& curve);

int log_jump(const Matrix& emb, const KCandidateRange& range, const Rng& rng,
             const KmeansOpts& opts = {});
int jump_baseline(const Matrix& emb, const KCandidateRange& range, const Rng& rng,
                  const KmeansOpts& opts = {});

struct EstimateResult {
    int k_star = 0;
    DistortionCurve last_curve;
    int rounds = 0;
};

// Full range heuristic: evaluate, then refine the step until gap < 10.
EstimateResult estimate_k(const Matrix& emb, KRegime regime, const Rng& rng,
                          const KmeansOpts& opts = {});

} // namespace okbc

#endif
