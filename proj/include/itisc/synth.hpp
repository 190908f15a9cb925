#ifndef ITISC_SYNTH_HPP
#define ITISC_SYNTH_HPP

#include <string>
#include <vector>

#include "itisc/metrics.hpp"
#include "itisc/rng.hpp"
#include "itisc/types.hpp"

namespace itisc {

struct MixtureComponent {
    GaussianSpec gaussian;
    int count = 0;  // points drawn from this component
};

using MixtureSpec = std::vector<MixtureComponent>;

/// Built-in 2-D benchmark mixtures: c2, c3-default, c4, c6 (200 points per
/// cluster) and the extreme dataset (counts 2/100/2).
MixtureSpec builtin_spec(const std::string& name);

std::vector<std::string> builtin_spec_names();

/// Draws each component's points as mu + L*z with L the Cholesky factor of
/// the covariance and z standard normal from the pinned generator. Rows are
/// ordered by component, then draw index.
Dataset sample_mixture(const MixtureSpec& spec, Rng& rng);

/// Component label per row for a dataset laid out by sample_mixture.
std::vector<int> component_labels(const MixtureSpec& spec);

/// All combinations of moving each component's mean to one of n_angles
/// equiangular positions on the circle of radius s around it (angles
/// 2*pi*k/n_angles from 0). Covariances unchanged. The grid has
/// n_angles^(#components) cells, ordered with the last component fastest.
std::vector<MixtureSpec> shifted_mean_specs(const MixtureSpec& spec, double s,
                                            int n_angles);

/// Scales each component's covariance by its factor; means unchanged.
MixtureSpec scaled_cov_specs(const MixtureSpec& spec, const std::vector<double>& factors);

std::vector<GaussianSpec> gaussians_of(const MixtureSpec& spec);

}  // namespace itisc

#endif  // ITISC_SYNTH_HPP
