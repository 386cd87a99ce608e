#include <doctest.h>

#include "okbc/kernels.hpp"
#include "test_util.hpp"

using namespace okbc;

// The OpenMP kernels must match the serial reference bitwise: identical
// per-element arithmetic, deterministic accumulation.
TEST_CASE("assign_nearest matches the serial reference bitwise") {
    Rng rng(101);
    for (int it = 0; it < 5; ++it) {
        Matrix pts = testutil::random_rows(137, 9, rng);
        Matrix ctr = testutil::random_rows(11, 9, rng);
        std::vector<int> a1, a2;
        std::vector<double> s1, s2;
        kernels::assign_nearest(pts, ctr, a1, s1);
        kernels::serial::assign_nearest(pts, ctr, a2, s2);
        CHECK(a1 == a2);
        CHECK(s1 == s2);
    }
}

TEST_CASE("nearest_cosine_distance matches serial reference") {
    Rng rng(102);
    Matrix pts = testutil::random_rows(64, 6, rng);
    Matrix ctr = testutil::random_rows(7, 6, rng);
    std::vector<double> d1, d2;
    kernels::nearest_cosine_distance(pts, ctr, d1);
    kernels::serial::nearest_cosine_distance(pts, ctr, d2);
    CHECK(d1 == d2);
}

TEST_CASE("weighted_two_view_assign matches serial reference and brute force") {
    Rng rng(103);
    Matrix x1 = testutil::random_rows(50, 5, rng);
    Matrix x2 = testutil::random_rows(50, 4, rng);
    Matrix m1 = testutil::random_rows(6, 5, rng);
    Matrix m2 = testutil::random_rows(6, 4, rng);
    double w1 = 2.3, w2 = 0.7;
    std::vector<int> a1, a2;
    kernels::weighted_two_view_assign(x1, m1, w1, x2, m2, w2, a1);
    kernels::serial::weighted_two_view_assign(x1, m1, w1, x2, m2, w2, a2);
    CHECK(a1 == a2);

    // brute-force oracle
    for (std::size_t i = 0; i < x1.rows; ++i) {
        int best = 0;
        double best_s = -1e300;
        for (std::size_t j = 0; j < m1.rows; ++j) {
            double s = w1 * cosine_sim(x1.row_span(i), m1.row_span(j)) +
                       w2 * cosine_sim(x2.row_span(i), m2.row_span(j));
            if (s > best_s) {
                best_s = s;
                best = static_cast<int>(j);
            }
        }
        CHECK(a1[i] == best);
    }
}

TEST_CASE("project_tanh_rows matches serial reference") {
    Rng rng(104);
    Matrix in = testutil::random_rows(33, 8, rng);
    Matrix w = testutil::random_rows(5, 8, rng, 0.3);
    std::vector<double> bias(5);
    for (auto& b : bias) b = rng.gaussian();
    Matrix out1, out2;
    kernels::project_tanh_rows(in, w, bias, out1);
    kernels::serial::project_tanh_rows(in, w, bias, out2);
    CHECK(out1.data == out2.data);
}

TEST_CASE("jaccard_pairs matches serial reference and is ordered") {
    std::vector<std::unordered_set<std::string>> sets;
    Rng rng(105);
    for (int i = 0; i < 40; ++i) {
        std::unordered_set<std::string> s;
        int m = 1 + static_cast<int>(rng.index(8));
        for (int j = 0; j < m; ++j) s.insert("u" + std::to_string(rng.index(30)));
        sets.push_back(std::move(s));
    }
    std::vector<std::pair<int, int>> p1, p2;
    kernels::jaccard_pairs(sets, 0.2, p1);
    kernels::serial::jaccard_pairs(sets, 0.2, p2);
    CHECK(p1 == p2);
    for (std::size_t i = 1; i < p1.size(); ++i) CHECK(p1[i - 1] < p1[i]);
}

TEST_CASE("zero-norm point is a domain error") {
    Matrix pts = testutil::make_matrix({{0, 0}, {1, 0}});
    Matrix ctr = testutil::make_matrix({{1, 0}});
    std::vector<int> a;
    std::vector<double> s;
    CHECK_THROWS_AS(kernels::assign_nearest(pts, ctr, a, s), DomainError);
}
