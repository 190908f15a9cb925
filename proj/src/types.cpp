#include "itisc/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "itisc/errors.hpp"

namespace itisc {

Dataset::Dataset(Matrix points) : points_(std::move(points)) {
    if (points_.rows() == 0 || points_.cols() == 0) {
        throw std::invalid_argument("dataset must have at least one point and one dimension");
    }
    if (!points_.all_finite()) {
        throw std::invalid_argument("dataset contains non-finite values");
    }
}

Temperatures::Temperatures(double fuzziness, double deviation)
    : t1(fuzziness), t2(deviation) {
    if (!(t1 > 0.0) || !(t2 > 0.0)) {
        throw std::invalid_argument("temperatures must be positive");
    }
}

Centers::Centers(Matrix y) : y_(std::move(y)) {
    if (y_.rows() == 0 || y_.cols() == 0) {
        throw std::invalid_argument("centers must have at least one row and one dimension");
    }
    if (!y_.all_finite()) {
        throw std::invalid_argument("centers contain non-finite values");
    }
}

std::string ValidationReport::message() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (const auto& v : violations) {
        switch (v.kind) {
            case Violation::Kind::entry_range:
                os << "entry out of [0,1] at index " << v.index;
                break;
            case Violation::Kind::row_sum:
                os << "row " << v.index << " sum deviates from 1";
                break;
            case Violation::Kind::weight_sum:
                os << "weight sum deviates from 1";
                break;
        }
        os << " (residual " << v.residual << "); ";
    }
    return os.str();
}

ValidationReport validate_membership(const Membership& membership) {
    ValidationReport report;
    const Matrix& u = membership.u;
    for (std::size_t i = 0; i < u.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < u.cols(); ++j) {
            const double v = u(i, j);
            if (!(v >= 0.0 && v <= 1.0)) {
                const double residual = v < 0.0 ? -v : v - 1.0;
                report.violations.push_back({Violation::Kind::entry_range, i, residual});
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kSumTolerance) {
            report.violations.push_back({Violation::Kind::row_sum, i, std::abs(sum - 1.0)});
        }
    }
    return report;
}

ValidationReport validate_weights(const ImportanceWeights& weights) {
    ValidationReport report;
    double sum = 0.0;
    for (std::size_t i = 0; i < weights.w.size(); ++i) {
        const double v = weights.w[i];
        if (!(v >= 0.0 && v <= 1.0)) {
            const double residual = v < 0.0 ? -v : v - 1.0;
            report.violations.push_back({Violation::Kind::entry_range, i, residual});
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
        report.violations.push_back({Violation::Kind::weight_sum, 0, std::abs(sum - 1.0)});
    }
    return report;
}

ClusterState random_init(const Dataset& dataset, std::size_t clusters, Rng& rng) {
    const std::size_t n = dataset.size();
    if (clusters < 1 || clusters > n) {
        throw config_error("cluster count must be between 1 and the number of points");
    }

    Matrix u(n, clusters);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < clusters; ++j) {
            const double v = rng.uniform_positive();
            u(i, j) = v;
            sum += v;
        }
        for (std::size_t j = 0; j < clusters; ++j) u(i, j) /= sum;
    }

    std::vector<double> w(n);
    double wsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = rng.uniform_positive();
        wsum += w[i];
    }
    for (double& v : w) v /= wsum;

    // Partial Fisher-Yates over point indices: C distinct rows, uniformly.
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Matrix y(clusters, dataset.dim());
    for (std::size_t k = 0; k < clusters; ++k) {
        const std::size_t pick = k + rng.uniform_index(n - k);
        std::swap(idx[k], idx[pick]);
        const auto row = dataset.point(idx[k]);
        for (std::size_t s = 0; s < dataset.dim(); ++s) y(k, s) = row[s];
    }

    return ClusterState{Centers(std::move(y)), Membership{std::move(u)},
                        ImportanceWeights{std::move(w)}};
}

}  // namespace itisc
