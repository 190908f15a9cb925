#ifndef ITISC_METRICS_HPP
#define ITISC_METRICS_HPP

#include <vector>

#include "itisc/types.hpp"

namespace itisc {

struct GaussianSpec {
    std::vector<double> mean;
    Matrix cov;  // symmetric positive-definite

    GaussianSpec(std::vector<double> mean_, Matrix cov_);
    std::size_t dim() const { return mean.size(); }
};

struct BoundaryReport {
    int m = 0;
    std::vector<std::size_t> boundary_indices;  // the m farthest-from-centroid points
    double value = 0.0;
};

/// Coordinate-wise mean of the dataset.
std::vector<double> dataset_centroid(const Dataset& dataset);

/// Indices of the M points with the largest squared distance to the dataset
/// centroid; ties broken by lower index.
std::vector<std::size_t> boundary_points(const Dataset& dataset, int m);

/// Sum of squared distances from each boundary point to its assigned center.
/// Assignment comes from `labels` (one cluster index per point).
BoundaryReport m_boundary_dist(const Dataset& dataset, const std::vector<int>& labels,
                               const Centers& centers, int m);

/// Sum over all points of the squared distance to the assigned center.
double within_cluster_dist(const Dataset& dataset, const std::vector<int>& labels,
                           const Centers& centers);

/// Argmax label per point from a soft membership; ties take the lowest index.
std::vector<int> labels_from_membership(const Membership& u);

/// Nearest-center label per point; ties take the lowest index.
std::vector<int> labels_from_centers(const Dataset& dataset, const Centers& centers);

/// KL(N(mu1,S1) || N(mu2,S2)) via Cholesky factorizations.
double gaussian_kl(const GaussianSpec& g1, const GaussianSpec& g2);

/// Sum of positionally paired component divergences.
double mixture_kl(const std::vector<GaussianSpec>& specs1,
                  const std::vector<GaussianSpec>& specs2);

/// KL of a weight vector against the uniform distribution:
/// sum_i w_i log w_i + log N, with 0*log(0) = 0. Always >= 0.
double weight_kl_uniform(const ImportanceWeights& w);

}  // namespace itisc

#endif  // ITISC_METRICS_HPP
