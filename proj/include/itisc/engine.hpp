#ifndef ITISC_ENGINE_HPP
#define ITISC_ENGINE_HPP

#include <functional>

#include "itisc/distortion.hpp"
#include "itisc/rng.hpp"
#include "itisc/types.hpp"

namespace itisc {

/// The three empirical estimator terms of the ITISC objective plus their
/// combination. The constant -T2*log(N) is omitted, matching the form the
/// reformulation function evaluates to.
struct ObjectiveBreakdown {
    double expected_distortion = 0.0;  // D-hat = sum_i w_i sum_j u_ij delta_ij
    double conditional_entropy = 0.0;  // H-hat(Y|X) = -sum_i w_i sum_j u_ij log u_ij
    double weight_kl = 0.0;            // KL(w || uniform) >= 0
    double total = 0.0;                // D-hat - t1*H-hat - t2*weight_kl + t2*log N
};

/// Optimality condition for U at fixed centers: row-wise softmin of the
/// effective distortion at temperature t1, computed in the log domain.
Membership update_membership(const DistortionMatrix& dm, double t1, DistortionKind kind);

/// Optimality condition for W: w_i proportional to
/// (sum_j exp(-delta_ij/t1))^(-t1/t2), normalized. Log domain throughout.
ImportanceWeights update_weights(const DistortionMatrix& dm, const Temperatures& t,
                                 DistortionKind kind);

/// One center update. Squared kind: y_k = sum_i w_i u_ik x_i / sum_i w_i u_ik.
/// Log kind: coefficients w_i^(1-t2) u_ik^(1+t1). A cluster whose denominator
/// underflows below 1e-300 keeps its previous center and is counted in
/// degenerate_updates of the caller.
Centers update_centers(const Dataset& dataset, const Membership& u,
                       const ImportanceWeights& w, const Temperatures& t,
                       DistortionKind kind, const Centers& previous,
                       int* degenerate_count = nullptr);

/// Evaluates all terms of F_ITISC at an explicit (Y, U, W) state.
/// 0*log(0) is taken as 0.
ObjectiveBreakdown full_objective(const Dataset& dataset, const Centers& centers,
                                  const Membership& u, const ImportanceWeights& w,
                                  const Temperatures& t, DistortionKind kind);

/// Reformulation function R(Y) = t2 * log sum_i (sum_j exp(-delta_ij/t1))^(-t1/t2),
/// evaluated as nested log-sum-exp. Equals full_objective.total at the
/// optimal U and W for the given centers.
double reform_objective(const Dataset& dataset, const Centers& centers,
                        const Temperatures& t, DistortionKind kind);

/// Analytic gradient of reform_objective with respect to the centers (C x S).
Matrix reform_gradient(const Dataset& dataset, const Centers& centers,
                       const Temperatures& t, DistortionKind kind);

struct AoOptions {
    int max_iter = 300;
    double eps = 1e-5;          // Frobenius distance between successive centers
    int divergence_window = 20; // consecutive objective increases before bailing
    /// Observer called after every iteration with (iteration, state). Used by
    /// the CLI to trace weight evolution; ignored when empty.
    std::function<void(int, const ClusterState&)> on_iteration;
};

/// Alternating optimization (Picard iteration U -> W -> Y) from a random
/// sample of C distinct data points as initial centers.
ClusterState ao_solve(const Dataset& dataset, int clusters, const Temperatures& t,
                      DistortionKind kind, Rng& rng, const AoOptions& opts = {});

/// Same, from explicit initial centers.
ClusterState ao_solve_from(const Dataset& dataset, const Centers& init,
                           const Temperatures& t, DistortionKind kind,
                           const AoOptions& opts = {});

struct ReformOptions {
    double tol = 1e-6;  // gradient infinity-norm tolerance
    int max_iter = 500;
};

/// Quasi-Newton minimization of reform_objective over flattened centers,
/// then one U/W evaluation at the solution.
ClusterState reform_solve(const Dataset& dataset, int clusters, const Temperatures& t,
                          DistortionKind kind, Rng& rng, const ReformOptions& opts = {});

/// Same, from explicit initial centers.
ClusterState reform_solve_from(const Dataset& dataset, const Centers& init,
                               const Temperatures& t, DistortionKind kind,
                               const ReformOptions& opts = {});

}  // namespace itisc

#endif  // ITISC_ENGINE_HPP
