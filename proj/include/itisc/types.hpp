#ifndef ITISC_TYPES_HPP
#define ITISC_TYPES_HPP

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "itisc/matrix.hpp"
#include "itisc/rng.hpp"

namespace itisc {

/// Distortion measure selector: d(x,y) or log d(x,y).
enum class DistortionKind {
    squared_euclidean,
    log_squared_euclidean,
};

/// N observations in S-dimensional space, one per row. Immutable after
/// construction; N >= 1, S >= 1, all entries finite.
class Dataset {
public:
    explicit Dataset(Matrix points);

    std::size_t size() const { return points_.rows(); }
    std::size_t dim() const { return points_.cols(); }
    std::span<const double> point(std::size_t i) const { return points_.row(i); }
    const Matrix& points() const { return points_; }

private:
    Matrix points_;
};

/// Fuzziness temperature t1 and deviation temperature t2, both > 0.
struct Temperatures {
    double t1;
    double t2;

    Temperatures(double fuzziness, double deviation);
};

/// N x C fuzzy membership matrix. Rows are expected to be stochastic;
/// use validate_membership to check.
struct Membership {
    Matrix u;

    std::size_t points() const { return u.rows(); }
    std::size_t clusters() const { return u.cols(); }
};

/// Length-N importance sampling weights, expected to sum to 1.
struct ImportanceWeights {
    std::vector<double> w;

    std::size_t size() const { return w.size(); }
};

/// C x S cluster prototype matrix; C >= 1, entries finite.
class Centers {
public:
    explicit Centers(Matrix y);

    std::size_t count() const { return y_.rows(); }
    std::size_t dim() const { return y_.cols(); }
    std::span<const double> center(std::size_t j) const { return y_.row(j); }
    const Matrix& matrix() const { return y_; }
    Matrix& matrix() { return y_; }

private:
    Matrix y_;
};

/// Full solver state: prototypes, fuzzy memberships, importance weights and
/// run diagnostics.
struct ClusterState {
    Centers centers;
    Membership membership;
    ImportanceWeights weights;
    double objective = std::numeric_limits<double>::quiet_NaN();
    int iterations = 0;
    bool converged = false;
    /// Center updates skipped because the denominator underflowed.
    int degenerate_updates = 0;
    /// Stopped early after a sustained run of objective increases.
    bool diverged = false;
};

/// One constraint violation found by a validation pass.
struct Violation {
    enum class Kind { entry_range, row_sum, weight_sum };
    Kind kind;
    std::size_t index;   // row for memberships, element for weights
    double residual;     // distance from the feasible set
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string message() const;
};

/// Checks entries in [0,1] and each row summing to 1 within 1e-9.
ValidationReport validate_membership(const Membership& membership);

/// Checks entries in [0,1] and the total summing to 1 within 1e-9.
ValidationReport validate_weights(const ImportanceWeights& weights);

/// Uniform random memberships and weights (normalized to their constraint
/// sets) plus C distinct data rows as initial centers, all drawn from rng in
/// a pinned order: membership row-major, then weights, then center indices.
ClusterState random_init(const Dataset& dataset, std::size_t clusters, Rng& rng);

inline constexpr double kSumTolerance = 1e-9;

}  // namespace itisc

#endif  // ITISC_TYPES_HPP
