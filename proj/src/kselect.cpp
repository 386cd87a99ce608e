#include "okbc/kselect.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include "okbc/error.hpp"
#include "okbc/io.hpp"
#include "okbc/kernels.hpp"

namespace okbc {

namespace {
constexpr double kDistortionFloor = 1e-12;
}

std::vector<int> KCandidateRange::values() const {
    if (lo < 1 || hi < lo || gap < 1) throw DomainError("bad candidate range");
    std::vector<int> out;
    for (int k = lo; k <= hi; k += gap) out.push_back(k);
    return out;
}

KCandidateRange candidate_range(std::size_t n, KRegime regime) {
    if (n < 2) throw DomainError("candidate_range: need at least 2 elements");
    KCandidateRange r;
    if (regime == KRegime::Traditional) {
        r.lo = 1;
        r.hi = std::max(2, static_cast<int>(std::sqrt(static_cast<double>(n)) / 2.0));
        r.gap = 1;
    } else {
        int digits = static_cast<int>(std::to_string(n).size());
        long long gap = 1;
        for (int i = 0; i < digits - 2; ++i) gap *= 10;
        gap = std::max<long long>(gap, 1);
        r.gap = static_cast<int>(gap);
        r.lo = static_cast<int>(n > 10000 ? 4 * gap : 2 * gap);
        r.hi = static_cast<int>(9 * gap);
    }
    r.hi = std::min<int>(r.hi, static_cast<int>(n));
    r.lo = std::max(1, std::min(r.lo, r.hi));
    return r;
}

std::optional<KCandidateRange> refine_range(int k_star, int gap, std::size_t n) {
    if (gap < 10) return std::nullopt;
    KCandidateRange r;
    r.gap = gap / 10;
    r.lo = std::max(1, k_star - gap);
    r.hi = std::min(static_cast<int>(n), k_star + gap);
    return r;
}

double distortion(const Matrix& emb, const Matrix& centroids) {
    if (centroids.rows == 0) throw DomainError("distortion: no centroids");
    std::vector<double> dist;
    kernels::nearest_cosine_distance(emb, centroids, dist);
    double total = 0.0;
    for (double d : dist) total += d;
    return total / (static_cast<double>(emb.rows) * static_cast<double>(emb.cols));
}

namespace {

// k-means++-style seeding with squared cosine distance weights.
Matrix seed_centers(const Matrix& emb, int k, Rng& rng, Norm norm) {
    const std::size_t n = emb.rows;
    std::vector<std::size_t> chosen;
    chosen.push_back(rng.index(n));
    std::vector<double> best_dist(n, 2.0);
    Matrix centers(k, emb.cols);
    centers.set_row(0, normalize(emb.row_span(chosen[0]), norm));

    for (int j = 1; j < k; ++j) {
        // update distances against the most recent center
        {
            Matrix last(1, emb.cols);
            last.set_row(0, centers.row_span(j - 1));
            std::vector<double> d;
            kernels::nearest_cosine_distance(emb, last, d);
            for (std::size_t i = 0; i < n; ++i) best_dist[i] = std::min(best_dist[i], d[i]);
        }
        double total = 0.0;
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i) {
            double d = std::max(best_dist[i], 0.0);
            w[i] = d * d;
            total += w[i];
        }
        std::size_t pick;
        if (total <= 0.0) {
            // all points covered: fall back to a uniform unused element
            std::vector<bool> used(n, false);
            for (auto c : chosen) used[c] = true;
            std::vector<std::size_t> free;
            for (std::size_t i = 0; i < n; ++i)
                if (!used[i]) free.push_back(i);
            if (free.empty()) throw SamplingError("kmeans seeding: fewer distinct points than k");
            pick = free[rng.index(free.size())];
        } else {
            double r = rng.uniform() * total;
            double acc = 0.0;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                acc += w[i];
                if (r < acc) {
                    pick = i;
                    break;
                }
            }
        }
        chosen.push_back(pick);
        centers.set_row(j, normalize(emb.row_span(pick), norm));
    }
    return centers;
}

} // namespace

KmeansResult kmeans_cosine(const Matrix& emb, int k, Rng rng, const KmeansOpts& opts) {
    if (k < 1) throw DomainError("kmeans_cosine: k must be positive");
    if (static_cast<std::size_t>(k) > emb.rows)
        throw DomainError("kmeans_cosine: k exceeds element count");

    KmeansResult best;
    bool have = false;
    for (int r = 0; r < opts.restarts; ++r) {
        Rng restart_rng = rng.derive(static_cast<std::uint64_t>(r));
        Matrix centers = seed_centers(emb, k, restart_rng, opts.norm);
        std::vector<int> assign = e_step(emb, centers);
        for (int it = 0; it < opts.max_iters; ++it) {
            centers = m_step(emb, assign, k, opts.norm);
            std::vector<int> next = e_step(emb, centers);
            bool stable = next == assign;
            assign = std::move(next);
            if (stable) break;
        }
        double loss = view_loss(emb, centers, assign);
        if (!have || loss < best.loss) {
            best.centroids = std::move(centers);
            best.assign = std::move(assign);
            best.loss = loss;
            have = true;
        }
    }
    return best;
}

DistortionCurve distortion_curve(const Matrix& emb, const KCandidateRange& range,
                                 const Rng& rng, const KmeansOpts& opts) {
    DistortionCurve curve;
    curve.k_values = range.values();
    curve.n = emb.rows;
    curve.dim = emb.cols;
    curve.d.assign(curve.k_values.size(), 0.0);

    const std::int64_t m = static_cast<std::int64_t>(curve.k_values.size());
    for (std::int64_t i = 0; i < m; ++i) {
        int k = curve.k_values[i];
        if (static_cast<std::size_t>(k) > emb.rows)
            throw DomainError("distortion_curve: candidate k exceeds element count");
        KmeansResult res =
            kmeans_cosine(emb, k, rng.derive(static_cast<std::uint64_t>(k)), opts);
        curve.d[i] = distortion(emb, res.centroids);
    }
    return curve;
}

void DistortionCurve::dump_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "K,d_K,LJ_K\n";
    for (std::size_t i = 0; i < k_values.size(); ++i) {
        out << k_values[i] << ',' << format_double(d[i]) << ',';
        if (i + 1 < k_values.size()) {
            double lj = std::log(std::max(d[i + 1], kDistortionFloor)) -
                        std::log(std::max(d[i], kDistortionFloor));
            out << format_double(lj);
        }
        out << '\n';
    }
}

KEstimate log_jump_from_curve(const DistortionCurve& curve) {
    if (curve.k_values.size() < 2)
        throw DomainError("log_jump: need at least 2 candidates");
    KEstimate est;
    est.scores.resize(curve.k_values.size() - 1);
    std::size_t best = 0;
    for (std::size_t i = 0; i + 1 < curve.k_values.size(); ++i) {
        est.scores[i] = std::log(std::max(curve.d[i + 1], kDistortionFloor)) -
                        std::log(std::max(curve.d[i], kDistortionFloor));
        if (est.scores[i] > est.scores[best]) best = i;
    }
    est.k_star = curve.k_values[best];
    return est;
}

KEstimate jump_from_curve(const DistortionCurve& curve) {
    if (curve.k_values.size() < 2)
        throw DomainError("jump: need at least 2 candidates");
    const double y = static_cast<double>(curve.dim) / 2.0;
    std::vector<double> t(curve.d.size());
    double tmax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < curve.d.size(); ++i) {
        t[i] = -y * std::log(std::max(curve.d[i], kDistortionFloor));
        tmax = std::max(tmax, t[i]);
    }
    // keep exp() in range; a uniform positive rescale preserves the argmax
    double shift = tmax > 700.0 ? tmax - 700.0 : 0.0;

    KEstimate est;
    est.scores.resize(curve.k_values.size() - 1);
    std::size_t best = 0;
    for (std::size_t i = 1; i < curve.k_values.size(); ++i) {
        double diff = std::exp(t[i] - shift) - std::exp(t[i - 1] - shift);
        est.scores[i - 1] = diff;
        if (diff > est.scores[best]) best = i - 1;
    }
    est.k_star = curve.k_values[best + 1];
    return est;
}

int log_jump(const Matrix& emb, const KCandidateRange& range, const Rng& rng,
             const KmeansOpts& opts) {
    return log_jump_from_curve(distortion_curve(emb, range, rng, opts)).k_star;
}

int jump_baseline(const Matrix& emb, const KCandidateRange& range, const Rng& rng,
                  const KmeansOpts& opts) {
    return jump_from_curve(distortion_curve(emb, range, rng, opts)).k_star;
}

EstimateResult estimate_k(const Matrix& emb, KRegime regime, const Rng& rng,
                          const KmeansOpts& opts) {
    EstimateResult res;
    KCandidateRange range = candidate_range(emb.rows, regime);
    for (;;) {
        ++res.rounds;
        res.last_curve = distortion_curve(emb, range, rng, opts);
        res.k_star = log_jump_from_curve(res.last_curve).k_star;
        auto next = refine_range(res.k_star, range.gap, emb.rows);
        if (!next) break;
        range = *next;
    }
    return res;
}

} // namespace okbc
