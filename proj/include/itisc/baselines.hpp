#ifndef ITISC_BASELINES_HPP
#define ITISC_BASELINES_HPP

#include <functional>
#include <string>
#include <vector>

#include "itisc/rng.hpp"
#include "itisc/types.hpp"

namespace itisc {

enum class Linkage { ward, complete, average, single };

Linkage linkage_from_string(const std::string& name);
std::string to_string(Linkage linkage);

struct HardClustering {
    std::vector<int> labels;  // cluster index per point, in [0, C)
    Centers centers;
    double cost = 0.0;  // within-cluster sum of squared distances
    int iterations = 0;
    bool converged = false;
};

/// k-means++ seeding: first center uniform, each next one sampled with
/// probability proportional to squared distance to the nearest chosen center.
Centers kmeans_pp_init(const Dataset& dataset, int clusters, Rng& rng);

struct KmeansOptions {
    int max_iter = 300;
    double eps = 1e-6;
    /// Observer called after every Lloyd sweep with (iteration, assignment cost).
    std::function<void(int, double)> on_iteration;
};

/// Lloyd iteration from a k-means++ start. An empty cluster is re-seeded to
/// the point farthest from its assigned center.
HardClustering kmeans_solve(const Dataset& dataset, int clusters, Rng& rng,
                            const KmeansOptions& opts = {});

/// Lloyd iteration from explicit initial centers.
HardClustering kmeans_solve_from(const Dataset& dataset, const Centers& init,
                                 const KmeansOptions& opts = {});

struct FcmOptions {
    int max_iter = 300;
    double eps = 1e-6;
    /// Observer called after every sweep with (iteration, state so far).
    std::function<void(int, const ClusterState&)> on_iteration;
};

/// Fuzzy c-means with fuzzifier m > 1. The returned weights are uniform 1/N.
ClusterState fcm_solve(const Dataset& dataset, int clusters, double m, Rng& rng,
                       const FcmOptions& opts = {});

ClusterState fcm_solve_from(const Dataset& dataset, const Centers& init, double m,
                            const FcmOptions& opts = {});

/// Reformulated FCM criterion R_FCM(Y) = sum_i (sum_j d_ij^{1/(1-m)})^{1-m}.
double fcm_reform_objective(const Dataset& dataset, const Centers& centers, double m);

/// Agglomerative clustering from singletons via Lance-Williams updates on
/// squared Euclidean distances; merge ties break on the smallest pair indices.
HardClustering hierarchical_solve(const Dataset& dataset, int clusters, Linkage linkage);

}  // namespace itisc

#endif  // ITISC_BASELINES_HPP
