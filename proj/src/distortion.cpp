#include "itisc/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace itisc {

double squared_distance(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("squared_distance: dimension mismatch");
    }
    double sum = 0.0;
    for (std::size_t s = 0; s < x.size(); ++s) {
        const double diff = x[s] - y[s];
        sum += diff * diff;
    }
    return sum;
}

DistortionMatrix distortion_matrix(const Dataset& dataset, const Centers& centers) {
    if (dataset.dim() != centers.dim()) {
        throw std::invalid_argument("distortion_matrix: dimension mismatch");
    }
    Matrix d(dataset.size(), centers.count());
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const auto x = dataset.point(i);
        for (std::size_t j = 0; j < centers.count(); ++j) {
            d(i, j) = squared_distance(x, centers.center(j));
        }
    }
    return DistortionMatrix{std::move(d)};
}

double log_sum_exp(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("log_sum_exp: empty input");
    }
    const double m = *std::max_element(values.begin(), values.end());
    if (!std::isfinite(m)) {
        // all -inf stays -inf; a +inf or NaN propagates
        return m;
    }
    double sum = 0.0;
    for (const double v : values) sum += std::exp(v - m);
    return m + std::log(sum);
}

double certainty_equivalence(std::span<const double> distortion_row, double t1) {
    std::vector<double> scaled(distortion_row.size());
    for (std::size_t j = 0; j < distortion_row.size(); ++j) {
        scaled[j] = -distortion_row[j] / t1;
    }
    return -t1 * log_sum_exp(scaled);
}

double effective_distortion(double d, DistortionKind kind) {
    if (kind == DistortionKind::log_squared_euclidean) {
        return std::log(std::max(d, kDistortionFloor));
    }
    return d;
}

Matrix effective_distortion(const DistortionMatrix& dm, DistortionKind kind) {
    Matrix out = dm.d;
    for (std::size_t i = 0; i < out.rows(); ++i) {
        for (std::size_t j = 0; j < out.cols(); ++j) {
            out(i, j) = effective_distortion(out(i, j), kind);
        }
    }
    return out;
}

}  // namespace itisc
