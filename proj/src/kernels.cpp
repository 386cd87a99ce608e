#include "okbc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace okbc {

namespace {
int g_threads = 0;
}

void set_threads(int n) {
    g_threads = n;
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#endif
}

int thread_count() {
#ifdef _OPENMP
    return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
    return 1;
#endif
}

namespace kernels {

namespace {

std::vector<double> row_l2_norms(const Matrix& m, const char* what, bool reject_zero) {
    std::vector<double> out(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) {
        out[i] = l2_norm(m.row_span(i));
        if (reject_zero && out[i] == 0.0)
            throw DomainError(std::string(what) + ": zero vector at row " + std::to_string(i));
    }
    return out;
}

// One point row against all centers. Centers with zero norm are skipped.
inline void nearest_for_row(const double* x, double xn, const Matrix& centers,
                            const std::vector<double>& cn, int& best_j, double& best_s) {
    best_j = -1;
    best_s = -2.0;
    for (std::size_t j = 0; j < centers.rows; ++j) {
        if (cn[j] == 0.0) continue;
        const double* c = centers.row(j);
        double d = 0.0;
        for (std::size_t k = 0; k < centers.cols; ++k) d += x[k] * c[k];
        double s = d / (xn * cn[j]);
        if (s > best_s) {
            best_s = s;
            best_j = static_cast<int>(j);
        }
    }
    if (best_j < 0) throw DomainError("assign_nearest: all centers are zero");
}

void assign_nearest_impl(const Matrix& points, const Matrix& centers,
                         std::vector<int>& assign, std::vector<double>& best_sim,
                         bool parallel) {
    if (points.cols != centers.cols) throw DomainError("assign_nearest: dimension mismatch");
    auto pn = row_l2_norms(points, "assign_nearest(points)", true);
    auto cn = row_l2_norms(centers, "assign_nearest(centers)", false);
    assign.assign(points.rows, 0);
    best_sim.assign(points.rows, 0.0);
    const std::int64_t n = static_cast<std::int64_t>(points.rows);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        int j;
        double s;
        nearest_for_row(points.row(i), pn[i], centers, cn, j, s);
        assign[i] = j;
        best_sim[i] = s;
    }
    (void)parallel;
}

void nearest_dist_impl(const Matrix& points, const Matrix& centers,
                       std::vector<double>& dist, bool parallel) {
    std::vector<int> assign;
    assign_nearest_impl(points, centers, assign, dist, parallel);
    for (double& d : dist) d = 1.0 - d;
}

void weighted_assign_impl(const Matrix& x1, const Matrix& m1, double w1,
                          const Matrix& x2, const Matrix& m2, double w2,
                          std::vector<int>& assign, bool parallel) {
    if (x1.rows != x2.rows || m1.rows != m2.rows)
        throw DomainError("weighted_two_view_assign: shape mismatch");
    auto n1 = row_l2_norms(x1, "weighted_two_view_assign(view1)", true);
    auto n2 = row_l2_norms(x2, "weighted_two_view_assign(view2)", true);
    auto c1 = row_l2_norms(m1, "weighted_two_view_assign(means1)", false);
    auto c2 = row_l2_norms(m2, "weighted_two_view_assign(means2)", false);
    assign.assign(x1.rows, 0);
    const std::int64_t n = static_cast<std::int64_t>(x1.rows);
    const std::size_t K = m1.rows;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        const double* a = x1.row(i);
        const double* b = x2.row(i);
        int best_j = 0;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < K; ++j) {
            double s = 0.0;
            if (c1[j] > 0.0) {
                double d = 0.0;
                const double* c = m1.row(j);
                for (std::size_t k = 0; k < m1.cols; ++k) d += a[k] * c[k];
                s += w1 * d / (n1[i] * c1[j]);
            }
            if (c2[j] > 0.0) {
                double d = 0.0;
                const double* c = m2.row(j);
                for (std::size_t k = 0; k < m2.cols; ++k) d += b[k] * c[k];
                s += w2 * d / (n2[i] * c2[j]);
            }
            if (s > best) {
                best = s;
                best_j = static_cast<int>(j);
            }
        }
        assign[i] = best_j;
    }
    (void)parallel;
}

void project_tanh_impl(const Matrix& in, const Matrix& weight,
                       const std::vector<double>& bias, Matrix& out, bool parallel) {
    if (weight.cols != in.cols) throw DomainError("project_tanh_rows: dimension mismatch");
    if (bias.size() != weight.rows) throw DomainError("project_tanh_rows: bias size mismatch");
    out = Matrix(in.rows, weight.rows);
    const std::int64_t n = static_cast<std::int64_t>(in.rows);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        const double* x = in.row(i);
        double* y = out.row(i);
        for (std::size_t h = 0; h < weight.rows; ++h) {
            const double* w = weight.row(h);
            double s = bias[h];
            for (std::size_t k = 0; k < weight.cols; ++k) s += w[k] * x[k];
            y[h] = std::tanh(s);
        }
    }
    (void)parallel;
}

double jaccard(const std::unordered_set<std::string>& a,
               const std::unordered_set<std::string>& b) {
    if (a.empty() && b.empty()) return -1.0;  // empty union: caller skips
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    std::size_t inter = 0;
    for (const auto& x : small)
        if (large.count(x)) ++inter;
    std::size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

void jaccard_pairs_impl(const std::vector<std::unordered_set<std::string>>& sets,
                        double threshold, std::vector<std::pair<int, int>>& pairs,
                        bool parallel) {
    const std::int64_t n = static_cast<std::int64_t>(sets.size());
    std::vector<std::vector<std::pair<int, int>>> per_row(sets.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        auto& out = per_row[i];
        for (std::int64_t j = i + 1; j < n; ++j) {
            double s = jaccard(sets[i], sets[j]);
            if (s > threshold)
                out.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }
    pairs.clear();
    for (auto& row : per_row)
        pairs.insert(pairs.end(), row.begin(), row.end());
    (void)parallel;
}

} // namespace

void assign_nearest(const Matrix& points, const Matrix& centers,
                    std::vector<int>& assign, std::vector<double>& best_sim) {
    assign_nearest_impl(points, centers, assign, best_sim, true);
}

void nearest_cosine_distance(const Matrix& points, const Matrix& centers,
                             std::vector<double>& dist) {
    nearest_dist_impl(points, centers, dist, true);
}

void weighted_two_view_assign(const Matrix& x1, const Matrix& m1, double w1,
                              const Matrix& x2, const Matrix& m2, double w2,
                              std::vector<int>& assign) {
    weighted_assign_impl(x1, m1, w1, x2, m2, w2, assign, true);
}

void project_tanh_rows(const Matrix& in, const Matrix& weight,
                       const std::vector<double>& bias, Matrix& out) {
    project_tanh_impl(in, weight, bias, out, true);
}

void jaccard_pairs(const std::vector<std::unordered_set<std::string>>& sets,
                   double threshold, std::vector<std::pair<int, int>>& pairs) {
    jaccard_pairs_impl(sets, threshold, pairs, true);
}

namespace serial {

void assign_nearest(const Matrix& points, const Matrix& centers,
                    std::vector<int>& assign, std::vector<double>& best_sim) {
    assign_nearest_impl(points, centers, assign, best_sim, false);
}

void nearest_cosine_distance(const Matrix& points, const Matrix& centers,
                             std::vector<double>& dist) {
    nearest_dist_impl(points, centers, dist, false);
}

void weighted_two_view_assign(const Matrix& x1, const Matrix& m1, double w1,
                              const Matrix& x2, const Matrix& m2, double w2,
                              std::vector<int>& assign) {
    weighted_assign_impl(x1, m1, w1, x2, m2, w2, assign, false);
}

void project_tanh_rows(const Matrix& in, const Matrix& weight,
                       const std::vector<double>& bias, Matrix& out) {
    project_tanh_impl(in, weight, bias, out, false);
}

void jaccard_pairs(const std::vector<std::unordered_set<std::string>>& sets,
                   double threshold, std::vector<std::pair<int, int>>& pairs) {
    jaccard_pairs_impl(sets, threshold, pairs, false);
}

} // namespace serial
} // namespace kernels
} // namespace okbc
