#ifndef ITISC_DISTORTION_HPP
#define ITISC_DISTORTION_HPP

#include <span>

#include "itisc/matrix.hpp"
#include "itisc/types.hpp"

namespace itisc {

/// Floor applied to distortions before logarithms or negative powers, so the
/// log-squared-euclidean kind stays finite when a point coincides with a
/// center.
inline constexpr double kDistortionFloor = 1e-12;

/// N x C matrix of squared distances d(x_i, y_j), entries >= 0 and finite.
struct DistortionMatrix {
    Matrix d;

    std::size_t points() const { return d.rows(); }
    std::size_t clusters() const { return d.cols(); }
};

/// Squared Euclidean distance between two points of equal dimension.
double squared_distance(std::span<const double> x, std::span<const double> y);

DistortionMatrix distortion_matrix(const Dataset& dataset, const Centers& centers);

/// log(sum_k exp(v_k)) computed with a max shift; exact where naive
/// evaluation overflows. An all -inf input yields -inf.
double log_sum_exp(std::span<const double> values);

/// Soft-min effective cost of one distortion row: -t1 * log sum_j exp(-d_j/t1).
double certainty_equivalence(std::span<const double> distortion_row, double t1);

/// Per-entry distortion fed to the update formulas: d for the squared kind,
/// log(max(d, floor)) for the log kind.
double effective_distortion(double d, DistortionKind kind);
Matrix effective_distortion(const DistortionMatrix& dm, DistortionKind kind);

}  // namespace itisc

#endif  // ITISC_DISTORTION_HPP
