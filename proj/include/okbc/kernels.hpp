// Data-parallel inner loops used by clustering, k-selection, seed
// generation and context encoding. Every kernel has an OpenMP variant
// (the default entry point) and a serial reference implementation under
// kernels::serial. Both compute per-element results in identical order,
// so outputs are bitwise equal and reductions stay deterministic across
// thread counts: kernels fill per-element buffers, callers accumulate
// serially.
#ifndef OKBC_KERNELS_HPP
#define OKBC_KERNELS_HPP

#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "okbc/vec.hpp"

namespace okbc {

void set_threads(int n);   // 0 = library default
int thread_count();

namespace kernels {

// Cosine similarity of every point row against every center row; for each
// point writes the argmax index (ties -> lowest) and the best similarity.
// Zero-norm centers are never selected; zero-norm points are a domain error.
void assign_nearest(const Matrix& points, const Matrix& centers,
                    std::vector<int>& assign, std::vector<double>& best_sim);

// Per-point min_j (1 - cos(x_i, c_j)).
void nearest_cosine_distance(const Matrix& points, const Matrix& centers,
                             std::vector<double>& dist);

// Per-point argmax_j of w1*cos(x1_i, m1_j) + w2*cos(x2_i, m2_j).
void weighted_two_view_assign(const Matrix& x1, const Matrix& m1, double w1,
                              const Matrix& x2, const Matrix& m2, double w2,
                              std::vector<int>& assign);

// out.row(i) = tanh(W * in.row(i) + bias); W is h x p, bias length h.
void project_tanh_rows(const Matrix& in, const Matrix& weight,
                       const std::vector<double>& bias, Matrix& out);

// All unordered pairs (i, j), i < j, with Jaccard(sets[i], sets[j]) strictly
// above the threshold. Pairs with an empty union are skipped. Output is in
// (i, j) lexicographic order regardless of thread count.
void jaccard_pairs(const std::vector<std::unordered_set<std::string>>& sets,
                   double threshold, std::vector<std::pair<int, int>>& pairs);

namespace serial {
void assign_nearest(const Matrix& points, const Matrix& centers,
                    std::vector<int>& assign, std::vector<double>& best_sim);
void nearest_cosine_distance(const Matrix& points, const Matrix& centers,
                             std::vector<double>& dist);
void weighted_two_view_assign(const Matrix& x1, const Matrix& m1, double w1,
                              const Matrix& x2, const Matrix& m2, double w2,
                              std::vector<int>& assign);
void project_tanh_rows(const Matrix& in, const Matrix& weight,
                       const std::vector<double>& bias, Matrix& out);
void jaccard_pairs(const std::vector<std::unordered_set<std::string>>& sets,
                   double threshold, std::vector<std::pair<int, int>>& pairs);
} // namespace serial

} // namespace kernels
} // namespace okbc

#endif
