#include "itisc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "itisc/distortion.hpp"
#include "itisc/errors.hpp"
#include "linalg.hpp"

namespace itisc {

GaussianSpec::GaussianSpec(std::vector<double> mean_, Matrix cov_)
    : mean(std::move(mean_)), cov(std::move(cov_)) {
    const std::size_t n = mean.size();
    if (n == 0 || cov.rows() != n || cov.cols() != n) {
        throw std::invalid_argument("gaussian spec: covariance shape must match mean");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(cov(i, j) - cov(j, i)) > 1e-12) {
                throw std::invalid_argument("gaussian spec: covariance not symmetric");
            }
        }
    }
    try {
        detail::cholesky_lower(cov);
    } catch (const numerical_error&) {
        throw std::invalid_argument("gaussian spec: covariance not positive definite");
    }
}

std::vector<double> dataset_centroid(const Dataset& dataset) {
    std::vector<double> c(dataset.dim(), 0.0);
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const auto x = dataset.point(i);
        for (std::size_t s = 0; s < dataset.dim(); ++s) c[s] += x[s];
    }
    for (double& v : c) v /= static_cast<double>(dataset.size());
    return c;
}

std::vector<std::size_t> boundary_points(const Dataset& dataset, int m) {
    const std::size_t n = dataset.size();
    if (m < 1 || static_cast<std::size_t>(m) > n) {
        throw config_error("boundary count must be between 1 and the number of points");
    }
    const std::vector<double> centroid = dataset_centroid(dataset);
    std::vector<std::pair<double, std::size_t>> keyed(n);
    for (std::size_t i = 0; i < n; ++i) {
        keyed[i] = {squared_distance(dataset.point(i), centroid), i};
    }
    // farthest first; equal distances keep the lower index first
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::vector<std::size_t> out(static_cast<std::size_t>(m));
    for (std::size_t r = 0; r < out.size(); ++r) out[r] = keyed[r].second;
    return out;
}

namespace {

void check_labels(const Dataset& dataset, const std::vector<int>& labels,
                  const Centers& centers) {
    if (labels.size() != dataset.size()) {
        throw std::invalid_argument("labels length does not match dataset");
    }
    for (const int l : labels) {
        if (l < 0 || static_cast<std::size_t>(l) >= centers.count()) {
            throw std::invalid_argument("label out of range");
        }
    }
    if (centers.dim() != dataset.dim()) {
        throw std::invalid_argument("centers do not match dataset dimension");
    }
}

}  // namespace

BoundaryReport m_boundary_dist(const Dataset& dataset, const std::vector<int>& labels,
                               const Centers& centers, int m) {
    check_labels(dataset, labels, centers);
    BoundaryReport report;
    report.m = m;
    report.boundary_indices = boundary_points(dataset, m);
    for (const std::size_t idx : report.boundary_indices) {
        report.value += squared_distance(
            dataset.point(idx), centers.center(static_cast<std::size_t>(labels[idx])));
    }
    return report;
}

double within_cluster_dist(const Dataset& dataset, const std::vector<int>& labels,
                           const Centers& centers) {
    check_labels(dataset, labels, centers);
    double total = 0.0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        total += squared_distance(dataset.point(i),
                                  centers.center(static_cast<std::size_t>(labels[i])));
    }
    return total;
}

std::vector<int> labels_from_membership(const Membership& u) {
    std::vector<int> labels(u.points());
    for (std::size_t i = 0; i < u.points(); ++i) {
        double best = -std::numeric_limits<double>::infinity();
        int arg = 0;
        for (std::size_t j = 0; j < u.clusters(); ++j) {
            if (u.u(i, j) > best) {
                best = u.u(i, j);
                arg = static_cast<int>(j);
            }
        }
        labels[i] = arg;
    }
    return labels;
}

std::vector<int> labels_from_centers(const Dataset& dataset, const Centers& centers) {
    std::vector<int> labels(dataset.size());
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        int arg = 0;
        for (std::size_t j = 0; j < centers.count(); ++j) {
            const double d = squared_distance(dataset.point(i), centers.center(j));
            if (d < best) {
                best = d;
                arg = static_cast<int>(j);
            }
        }
        labels[i] = arg;
    }
    return labels;
}

double gaussian_kl(const GaussianSpec& g1, const GaussianSpec& g2) {
    const std::size_t n = g1.dim();
    if (g2.dim() != n) {
        throw std::invalid_argument("gaussian_kl: dimension mismatch");
    }
    const Matrix l1 = detail::cholesky_lower(g1.cov);
    const Matrix l2 = detail::cholesky_lower(g2.cov);

    double logdet1 = 0.0, logdet2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        logdet1 += 2.0 * std::log(l1(i, i));
        logdet2 += 2.0 * std::log(l2(i, i));
    }

    // tr(S2^-1 S1): solve (L2 L2^T) M = S1 column by column
    double trace = 0.0;
    std::vector<double> col(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = g1.cov(i, j);
        const std::vector<double> z = detail::solve_lower(l2, col);
        const std::vector<double> mcol = detail::solve_upper_t(l2, z);
        trace += mcol[j];
    }

    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = g2.mean[i] - g1.mean[i];
    const std::vector<double> z = detail::solve_lower(l2, diff);
    double quad = 0.0;
    for (const double v : z) quad += v * v;

    return 0.5 * (logdet2 - logdet1 - static_cast<double>(n) + trace + quad);
}

double mixture_kl(const std::vector<GaussianSpec>& specs1,
                  const std::vector<GaussianSpec>& specs2) {
    if (specs1.size() != specs2.size()) {
        throw std::invalid_argument("mixture_kl: component count mismatch");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < specs1.size(); ++k) {
        total += gaussian_kl(specs1[k], specs2[k]);
    }
    return total;
}

double weight_kl_uniform(const ImportanceWeights& w) {
    if (w.w.empty()) throw std::invalid_argument("weight_kl_uniform: empty weights");
    double sum = 0.0;
    for (const double v : w.w) {
        if (v > 0.0) sum += v * std::log(v);
    }
    return sum + std::log(static_cast<double>(w.w.size()));
}

}  // namespace itisc
