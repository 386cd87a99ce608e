// Shared helpers for the test binaries.
#ifndef OKBC_TEST_UTIL_HPP
#define OKBC_TEST_UTIL_HPP

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "okbc/rng.hpp"
#include "okbc/vec.hpp"

namespace testutil {

inline std::string fixtures_dir() {
    const char* env = std::getenv("OKBC_FIXTURES");
    return env ? env : "tests/fixtures";
}

inline std::string data_dir() {
    const char* env = std::getenv("OKBC_DATA");
    return env ? env : "data";
}

inline std::string tmp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("okbc_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

inline std::string write_file(const std::string& dir, const std::string& name,
                              const std::string& content) {
    auto path = std::filesystem::path(dir) / name;
    std::ofstream out(path);
    out << content;
    return path.string();
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline okbc::Matrix make_matrix(const std::vector<std::vector<double>>& rows) {
    okbc::Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

inline okbc::Matrix random_rows(std::size_t n, std::size_t p, okbc::Rng& rng,
                                double scale = 1.0) {
    okbc::Matrix m(n, p);
    for (auto& x : m.data) x = scale * rng.gaussian();
    return m;
}

// Planted mixture of unit-norm directions with isotropic Gaussian noise.
struct Planted {
    okbc::Matrix points;
    std::vector<int> labels;
};

inline std::vector<okbc::Vec> spread_directions(int count, std::size_t p, okbc::Rng& rng,
                                                double max_cos = 0.2) {
    std::vector<okbc::Vec> dirs;
    int tries = 0;
    while (static_cast<int>(dirs.size()) < count) {
        okbc::Vec v(p);
        for (double& x : v) x = rng.gaussian();
        okbc::normalize_in_place(v, okbc::Norm::L2);
        bool ok = true;
        for (const auto& u : dirs)
            if (std::fabs(okbc::dot(v, u)) >= max_cos) {
                ok = false;
                break;
            }
        if (ok || ++tries > 5000) {
            dirs.push_back(std::move(v));
            tries = 0;
        }
    }
    return dirs;
}

inline Planted planted_gaussians(int groups, std::size_t p, std::size_t n, double sigma,
                                 okbc::Rng& rng, double max_cos = 0.2) {
    Planted out;
    auto dirs = spread_directions(groups, p, rng, max_cos);
    out.points = okbc::Matrix(n, p);
    out.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        int c = static_cast<int>(i % groups);
        out.labels[i] = c;
        double* row = out.points.row(i);
        for (std::size_t d = 0; d < p; ++d) row[d] = dirs[c][d] + sigma * rng.gaussian();
    }
    return out;
}

// Gaussian mixture whose clusters are anisotropic: two tight sub-modes at
// +-delta/2 along a per-cluster axis (high separation between clusters).
inline Planted planted_bimodal(int groups, std::size_t p, std::size_t n, double delta,
                               double sigma, okbc::Rng& rng, double max_cos = 0.1) {
    Planted out;
    auto dirs = spread_directions(groups, p, rng, max_cos);
    std::vector<okbc::Vec> axes;
    for (int c = 0; c < groups; ++c) {
        okbc::Vec w(p);
        for (double& x : w) x = rng.gaussian();
        okbc::normalize_in_place(w, okbc::Norm::L2);
        axes.push_back(std::move(w));
    }
    out.points = okbc::Matrix(n, p);
    out.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        int c = static_cast<int>(i % groups);
        double side = (i / groups) % 2 == 0 ? 1.0 : -1.0;
        out.labels[i] = c;
        double* row = out.points.row(i);
        for (std::size_t d = 0; d < p; ++d)
            row[d] = dirs[c][d] + side * (delta / 2.0) * axes[c][d] + sigma * rng.gaussian();
    }
    return out;
}

// Gaussian mixture elongated along a random per-cluster line.
inline Planted planted_lines(int groups, std::size_t p, std::size_t n, double sline,
                             double iso_frac, okbc::Rng& rng, double max_cos = 0.2) {
    Planted out;
    auto dirs = spread_directions(groups, p, rng, max_cos);
    std::vector<okbc::Vec> axes;
    for (int c = 0; c < groups; ++c) {
        okbc::Vec w(p);
        for (double& x : w) x = rng.gaussian();
        okbc::normalize_in_place(w, okbc::Norm::L2);
        axes.push_back(std::move(w));
    }
    out.points = okbc::Matrix(n, p);
    out.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        int c = static_cast<int>(i % groups);
        out.labels[i] = c;
        double t = sline * rng.gaussian();
        double* row = out.points.row(i);
        for (std::size_t d = 0; d < p; ++d)
            row[d] = dirs[c][d] + t * axes[c][d] + sline * iso_frac * rng.gaussian();
    }
    return out;
}

} // namespace testutil

#endif
