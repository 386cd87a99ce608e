#include "okbc/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "okbc/kernels.hpp"

namespace okbc {

namespace {

// Worst-fit elements (largest cosine distance to their assigned centroid),
// used to reseed clusters that came out empty.
std::vector<std::size_t> worst_fit_order(const Matrix& emb, const Matrix& centroids,
                                         const std::vector<int>& assign) {
    std::vector<double> dist(emb.rows, 0.0);
    for (std::size_t i = 0; i < emb.rows; ++i) {
        double cn = l2_norm(centroids.row_span(assign[i]));
        if (cn == 0.0) {
            dist[i] = 2.0;
            continue;
        }
        dist[i] = 1.0 - dot(emb.row_span(i), centroids.row_span(assign[i])) /
                            (l2_norm(emb.row_span(i)) * cn);
    }
    std::vector<std::size_t> order(emb.rows);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });
    return order;
}

} // namespace

Matrix m_step(const Matrix& emb, const std::vector<int>& assign, int k, Norm norm) {
    if (assign.size() != emb.rows) throw DomainError("m_step: assignment size mismatch");
    Matrix centroids(k, emb.cols);
    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t i = 0; i < assign.size(); ++i) {
        if (assign[i] < 0 || assign[i] >= k) throw DomainError("m_step: cluster index out of range");
        members[assign[i]].push_back(i);
    }

    std::vector<int> degenerate;  // empty or zero-sum clusters
    for (int j = 0; j < k; ++j) {
        if (members[j].empty()) {
            degenerate.push_back(j);
            continue;
        }
        double* c = centroids.row(j);
        for (std::size_t i : members[j]) {
            const double* x = emb.row(i);
            for (std::size_t d = 0; d < emb.cols; ++d) c[d] += x[d];
        }
        if (norm_of(centroids.row_span(j), norm) == 0.0)
            degenerate.push_back(j);
        else
            normalize_in_place(centroids.row_span(j), norm);
    }

    if (!degenerate.empty()) {
        auto order = worst_fit_order(emb, centroids, assign);
        std::size_t next = 0;
        std::vector<bool> stolen(emb.rows, false);
        for (int j : degenerate) {
            while (next < order.size() && stolen[order[next]]) ++next;
            if (next >= order.size()) throw DomainError("m_step: not enough elements to reseed");
            std::size_t e = order[next];
            stolen[e] = true;
            centroids.set_row(j, normalize(emb.row_span(e), norm));
            // recompute the donor centroid without any stolen element
            int donor = assign[e];
            if (donor != j && !members[donor].empty()) {
                double* c = centroids.row(donor);
                std::fill(c, c + emb.cols, 0.0);
                std::size_t kept = 0;
                for (std::size_t i : members[donor]) {
                    if (stolen[i]) continue;
                    const double* x = emb.row(i);
                    for (std::size_t d = 0; d < emb.cols; ++d) c[d] += x[d];
                    ++kept;
                }
                if (kept == 0 || norm_of(centroids.row_span(donor), norm) == 0.0)
                    centroids.set_row(donor, normalize(emb.row_span(members[donor][0]), norm));
                else
                    normalize_in_place(centroids.row_span(donor), norm);
            }
        }
    }
    return centroids;
}

std::vector<int> e_step(const Matrix& emb, const Matrix& centroids) {
    std::vector<int> assign;
    std::vector<double> sim;
    kernels::assign_nearest(emb, centroids, assign, sim);
    return assign;
}

double view_loss(const Matrix& emb, const Matrix& centroids, const std::vector<int>& assign) {
    // cosine to the assigned centroid, accumulated in element order
    double total = 0.0;
    for (std::size_t i = 0; i < emb.rows; ++i) {
        double cn = l2_norm(centroids.row_span(assign[i]));
        if (cn == 0.0) throw DomainError("view_loss: zero centroid");
        double s = dot(emb.row_span(i), centroids.row_span(assign[i])) /
                   (l2_norm(emb.row_span(i)) * cn);
        total += 1.0 - s;
    }
    return total;
}

Matrix consensus_means(const Matrix& emb, const std::vector<int>& a1,
                       const std::vector<int>& a2, const Matrix& own_centroids, Norm norm) {
    if (a1.size() != emb.rows || a2.size() != emb.rows)
        throw DomainError("consensus_means: assignment size mismatch");
    int k = static_cast<int>(own_centroids.rows);
    Matrix means(k, emb.cols);
    for (int j = 0; j < k; ++j) {
        double* m = means.row(j);
        std::size_t count = 0;
        for (std::size_t i = 0; i < emb.rows; ++i) {
            if (a1[i] != j || a2[i] != j) continue;
            const double* x = emb.row(i);
            for (std::size_t d = 0; d < emb.cols; ++d) m[d] += x[d];
            ++count;
        }
        if (count == 0 || norm_of(means.row_span(j), norm) == 0.0)
            means.set_row(j, own_centroids.row_span(j));
        else
            normalize_in_place(means.row_span(j), norm);
    }
    return means;
}

double ch_index(const Matrix& emb, const std::vector<int>& assign, Norm norm) {
    int k_raw = assign.empty() ? 0 : *std::max_element(assign.begin(), assign.end()) + 1;
    std::vector<std::vector<std::size_t>> members(k_raw);
    for (std::size_t i = 0; i < assign.size(); ++i) members[assign[i]].push_back(i);

    std::vector<int> nonempty;
    for (int j = 0; j < k_raw; ++j)
        if (!members[j].empty()) nonempty.push_back(j);
    const std::size_t n = emb.rows;
    const std::size_t k = nonempty.size();
    if (k < 2) throw DomainError("ch_index: needs at least 2 nonempty clusters");
    if (n <= k) throw DomainError("ch_index: needs more elements than clusters");

    Vec global(emb.cols, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* x = emb.row(i);
        for (std::size_t d = 0; d < emb.cols; ++d) global[d] += x[d];
    }
    for (double& g : global) g /= static_cast<double>(n);

    double between = 0.0, within = 0.0;
    for (int j : nonempty) {
        Vec c(emb.cols, 0.0);
        for (std::size_t i : members[j]) {
            const double* x = emb.row(i);
            for (std::size_t d = 0; d < emb.cols; ++d) c[d] += x[d];
        }
        if (norm_of(c, norm) == 0.0)
            c = Vec(emb.row_span(members[j][0]).begin(), emb.row_span(members[j][0]).end());
        else
            normalize_in_place(c, norm);
        double db = 0.0;
        for (std::size_t d = 0; d < emb.cols; ++d) {
            double diff = c[d] - global[d];
            db += diff * diff;
        }
        between += static_cast<double>(members[j].size()) * db;
        for (std::size_t i : members[j]) {
            const double* x = emb.row(i);
            double dw = 0.0;
            for (std::size_t d = 0; d < emb.cols; ++d) {
                double diff = x[d] - c[d];
                dw += diff * diff;
            }
            within += dw;
        }
    }
    within = std::max(within, 1e-12);
    return (between / within) * (static_cast<double>(n - k) / static_cast<double>(k - 1));
}

std::vector<int> final_assign(const Matrix& x1, const Matrix& m1, double ch1,
                              const Matrix& x2, const Matrix& m2, double ch2) {
    if (!std::isfinite(ch1) || !std::isfinite(ch2))
        throw DomainError("final_assign: non-finite weights");
    std::vector<int> assign;
    kernels::weighted_two_view_assign(x1, m1, ch1, x2, m2, ch2, assign);
    return assign;
}

KmeansResult spherical_kmeans(const Matrix& emb, int k, Rng& rng, const MvOptions& opt) {
    if (k < 1) throw DomainError("spherical_kmeans: k must be positive");
    if (static_cast<std::size_t>(k) > emb.rows)
        throw DomainError("spherical_kmeans: k exceeds element count");
    auto idx = rng.sample_distinct(emb.rows, static_cast<std::size_t>(k));
    Matrix centroids(k, emb.cols);
    for (int j = 0; j < k; ++j)
        centroids.set_row(j, normalize(emb.row_span(idx[j]), opt.norm));

    KmeansResult res;
    res.assign = e_step(emb, centroids);
    int t = 0;
    for (;;) {
        ++t;
        centroids = m_step(emb, res.assign, k, opt.norm);
        res.assign = e_step(emb, centroids);
        double loss = view_loss(emb, centroids, res.assign);
        res.loss = loss;
        if (t >= opt.max_steps || loss < opt.tol) break;
    }
    res.centroids = std::move(centroids);
    res.steps = t;
    return res;
}

FusionResult mv_ch_kmeans(const Matrix& view1, const Matrix& view2, int k, Rng& rng,
                          const MvOptions& opt) {
    if (view1.rows != view2.rows) throw DomainError("mv_ch_kmeans: views differ in size");
    const std::size_t n = view1.rows;
    if (k < 2) throw DomainError("mv_ch_kmeans: k must be at least 2");
    if (static_cast<std::size_t>(k) > n) throw DomainError("mv_ch_kmeans: k exceeds element count");

    // init: view-2 centers from k distinct sampled elements, then E in view 2
    auto idx = rng.sample_distinct(n, static_cast<std::size_t>(k));
    Matrix c2(k, view2.cols);
    for (int j = 0; j < k; ++j) c2.set_row(j, normalize(view2.row_span(idx[j]), opt.norm));
    std::vector<int> a2 = e_step(view2, c2);
    std::vector<int> a1 = a2;
    Matrix c1;

    FusionResult out;
    int t = 0;
    for (;;) {
        // view 1 step from view 2's clustering, then view 2 from view 1's
        ++t;
        c1 = m_step(view1, a2, k, opt.norm);
        a1 = e_step(view1, c1);
        out.loss_trace.push_back(
            {t, 1, view_loss(view1, c1, a1) + view_loss(view2, c2, a2)});
        if (t >= opt.max_steps) break;

        ++t;
        c2 = m_step(view2, a1, k, opt.norm);
        a2 = e_step(view2, c2);
        double loss = view_loss(view1, c1, a1) + view_loss(view2, c2, a2);
        out.loss_trace.push_back({t, 2, loss});
        out.iteration_loss.push_back(loss);
        if (t >= opt.max_steps || loss < opt.tol) break;
    }
    out.steps = t;

    out.consensus_means[0] = consensus_means(view1, a1, a2, c1, opt.norm);
    out.consensus_means[1] = consensus_means(view2, a1, a2, c2, opt.norm);

    double ch1 = 1.0, ch2 = 1.0;
    if (k >= 2 && static_cast<std::size_t>(k) < n) {
        try {
            ch1 = ch_index(view1, a1, opt.norm);
            ch2 = ch_index(view2, a2, opt.norm);
        } catch (const DomainError&) {
            ch1 = ch2 = 1.0;  // degenerate partitions: treat views equally
        }
    }
    out.ch_weight[0] = ch1;
    out.ch_weight[1] = ch2;
    out.view_assign[0] = a1;
    out.view_assign[1] = a2;
    out.final_assign = final_assign(view1, out.consensus_means[0], ch1,
                                    view2, out.consensus_means[1], ch2);
    return out;
}

std::vector<int> hac(const Matrix& emb, int k, Linkage linkage) {
    const std::size_t n = emb.rows;
    if (k < 1 || static_cast<std::size_t>(k) > n)
        throw DomainError("hac: k must be in [1, n]");

    // cosine distance matrix
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    std::vector<double> norms(n);
    for (std::size_t i = 0; i < n; ++i) {
        norms[i] = l2_norm(emb.row_span(i));
        if (norms[i] == 0.0) throw DomainError("hac: zero vector at row " + std::to_string(i));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = 1.0 - dot(emb.row_span(i), emb.row_span(j)) / (norms[i] * norms[j]);
            dist[i][j] = dist[j][i] = d;
        }

    std::vector<bool> active(n, true);
    std::vector<std::size_t> size(n, 1);
    std::vector<int> label(n);
    for (std::size_t i = 0; i < n; ++i) label[i] = static_cast<int>(i);

    std::size_t clusters = n;
    while (clusters > static_cast<std::size_t>(k)) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!active[j]) continue;
                if (dist[i][j] < best) {
                    best = dist[i][j];
                    bi = i;
                    bj = j;
                }
            }
        }
        // Lance-Williams update into bi; bj is retired
        for (std::size_t m = 0; m < n; ++m) {
            if (!active[m] || m == bi || m == bj) continue;
            double d;
            switch (linkage) {
                case Linkage::Single:
                    d = std::min(dist[bi][m], dist[bj][m]);
                    break;
                case Linkage::Complete:
                    d = std::max(dist[bi][m], dist[bj][m]);
                    break;
                default:
                    d = (static_cast<double>(size[bi]) * dist[bi][m] +
                         static_cast<double>(size[bj]) * dist[bj][m]) /
                        static_cast<double>(size[bi] + size[bj]);
            }
            dist[bi][m] = dist[m][bi] = d;
        }
        size[bi] += size[bj];
        active[bj] = false;
        for (std::size_t i = 0; i < n; ++i)
            if (label[i] == static_cast<int>(bj)) label[i] = static_cast<int>(bi);
        --clusters;
    }

    // renumber by first appearance
    std::vector<int> remap(n, -1);
    std::vector<int> out(n);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (remap[label[i]] < 0) remap[label[i]] = next++;
        out[i] = remap[label[i]];
    }
    return out;
}

} // namespace okbc
