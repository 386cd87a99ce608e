// Dense vectors and row-major matrices plus the small amount of vector
// math the rest of the library is built on.
#ifndef OKBC_VEC_HPP
#define OKBC_VEC_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "okbc/error.hpp"

namespace okbc {

using Vec = std::vector<double>;

enum class Norm { L1, L2 };

struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double* row(std::size_t i) { return data.data() + i * cols; }
    const double* row(std::size_t i) const { return data.data() + i * cols; }
    std::span<double> row_span(std::size_t i) { return {row(i), cols}; }
    std::span<const double> row_span(std::size_t i) const { return {row(i), cols}; }

    void set_row(std::size_t i, std::span<const double> v) {
        double* dst = row(i);
        for (std::size_t j = 0; j < cols; ++j) dst[j] = v[j];
    }
};

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double l1_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += std::fabs(x);
    return s;
}

inline double l2_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double norm_of(std::span<const double> v, Norm n) {
    return n == Norm::L1 ? l1_norm(v) : l2_norm(v);
}

// dot(u,v) / (|u|_2 |v|_2); zero vectors are a domain error.
inline double cosine_sim(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) throw DomainError("cosine_sim: dimension mismatch");
    double nu = l2_norm(u), nv = l2_norm(v);
    if (nu == 0.0 || nv == 0.0) throw DomainError("cosine_sim: zero vector");
    return dot(u, v) / (nu * nv);
}

inline Vec normalize(std::span<const double> v, Norm n) {
    double s = norm_of(v, n);
    if (s == 0.0) throw DomainError("normalize: zero vector");
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / s;
    return out;
}

inline void normalize_in_place(std::span<double> v, Norm n) {
    double s = norm_of(v, n);
    if (s == 0.0) throw DomainError("normalize: zero vector");
    for (double& x : v) x /= s;
}

inline bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

} // namespace okbc

#endif
