#ifndef ITISC_EXPERIMENTS_HPP
#define ITISC_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "itisc/baselines.hpp"
#include "itisc/engine.hpp"
#include "itisc/io.hpp"
#include "itisc/synth.hpp"
#include "itisc/types.hpp"

namespace itisc {

/// The model families compared in the experiments. itisc-* use the squared
/// Euclidean distortion, fuzzy-itisc-* its logarithm; -ao is alternating
/// optimization, -r direct minimization of the reformulation.
enum class Algorithm {
    kmeans,
    fcm,
    hierarchical,
    itisc_ao,
    itisc_r,
    fuzzy_itisc_ao,
    fuzzy_itisc_r,
};

Algorithm algorithm_from_string(const std::string& name);
std::string to_string(Algorithm a);
bool is_itisc(Algorithm a);
DistortionKind kind_of(Algorithm a);

struct FitConfig {
    Algorithm algorithm = Algorithm::fuzzy_itisc_ao;
    int clusters = 3;
    double t1 = 1.0;  // itisc families
    double t2 = 1.0;
    double m = 2.0;  // fcm fuzzifier
    Linkage linkage = Linkage::ward;
    int max_iter = 300;
    /// Center-movement stop; 0 keeps the family default (1e-5 for the itisc
    /// solvers, 1e-6 for k-means and fcm).
    double eps = 0.0;
    double tol = 1e-6;  // reform gradient tolerance

    /// Short human-readable parameter tag for report rows, e.g. "T2=0.1".
    std::string param_tag() const;
};

/// A fitted model of any family, uniform enough for metrics and persistence.
struct FittedModel {
    FitConfig config;
    std::uint64_t seed = 0;
    Centers centers;
    std::vector<int> labels;
    std::optional<Membership> membership;     // soft families only
    std::optional<ImportanceWeights> weights; // itisc families only
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
    int degenerate_updates = 0;
};

FittedModel fit_model(const Dataset& dataset, const FitConfig& config,
                      std::uint64_t seed);

/// Assigns rows of a new dataset by the model's own rule: argmax membership
/// for soft families (recomputed at the fitted centers), nearest center
/// otherwise.
std::vector<int> predict_labels(const Dataset& dataset, const FittedModel& model);

/// Model persistence: one JSON document holding config, seed, centers,
/// objective and diagnostics; membership/weights included when
/// `include_soft` (they are N-sized).
void write_model_json(const std::string& path, const FittedModel& model,
                      bool include_soft);
FittedModel read_model_json(const std::string& path);

/// Fits each seed and reports per-seed objective/metrics plus across-seed
/// means. Keyed by `experiment` for downstream merging.
Report fit_report(const Dataset& dataset, const FitConfig& config,
                  const std::vector<std::uint64_t>& seeds,
                  const std::string& experiment);

/// M-BoundaryDist table over fitted models, one row per (model, M).
Report boundary_report(const Dataset& dataset,
                       const std::vector<FittedModel>& models,
                       const std::vector<int>& m_list,
                       const std::string& experiment);

/// Runs an itisc solver across the T2 grid (mean over seeds) and reports
/// MaxBoundaryDist, 10-BoundaryDist, the maximum importance weight and the
/// objective per T2. Within a seed each grid entry is warm-started from the
/// previous entry's centers, so neighbouring T2 values stay in one basin;
/// pass the grid in ascending order to anchor it at the low-T2 optimum.
Report t2_sweep(const Dataset& dataset, const FitConfig& base,
                const std::vector<double>& t2_grid,
                const std::vector<std::uint64_t>& seeds,
                const std::string& experiment);

/// Records the importance weights after every AO iteration: per-iteration
/// max/min/KL plus the full weight of the top_k heaviest final points.
Report weights_trace(const Dataset& dataset, const FitConfig& config,
                     std::uint64_t seed, int top_k, const std::string& experiment);

struct ShiftConfig {
    MixtureSpec base_spec;
    std::vector<FitConfig> models;
    std::string experiment_name = "shift";
    std::vector<double> s_list;      // shifted-mean radii; empty = cov mode
    int n_angles = 5;
    std::vector<std::vector<double>> factor_grid;  // per-component cov scales
    std::vector<std::uint64_t> fit_seeds = {1, 2, 3, 4};
    std::uint64_t base_seed = 7;
    std::uint64_t eval_seed = 1234;
    int parallel = 1;
    std::size_t max_cells = 100000;  // guard against grid explosion
    bool allow_large = false;
};

/// Fits every model on the base dataset, then scores them on datasets drawn
/// from each shifted spec: per-cell mixture KL and WithinClusterDist per
/// model, plus per-S win ratios of each model pair.
Report shift_experiment(const ShiftConfig& config);

}  // namespace itisc

#endif  // ITISC_EXPERIMENTS_HPP
