#include "itisc/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "itisc/errors.hpp"
#include "linalg.hpp"

namespace itisc {

namespace {

MixtureComponent make_component(double mx, double my, double c00, double c01,
                                double c10, double c11, int count) {
    Matrix cov = Matrix::from_rows({{c00, c01}, {c10, c11}});
    return MixtureComponent{GaussianSpec({mx, my}, std::move(cov)), count};
}

}  // namespace

MixtureSpec builtin_spec(const std::string& name) {
    if (name == "c2") {
        return {
            make_component(1.0, 0.0, 0.65, 0.35, 0.35, 0.65, 200),
            make_component(-1.0, 0.0, 0.65, -0.35, -0.35, 0.65, 200),
        };
    }
    if (name == "c3-default") {
        return {
            make_component(1.0, 0.0, 1.0, 0.0, 0.0, 0.3, 200),
            make_component(-0.578, -1.0, 0.475, 0.303, 0.303, 0.825, 200),
            make_component(-0.578, 1.0, 0.475, -0.303, -0.303, 0.825, 200),
        };
    }
    if (name == "c4") {
        return {
            make_component(1.0, 1.0, 0.55, 0.45, 0.45, 0.55, 200),
            make_component(1.0, -1.0, 0.55, -0.45, -0.45, 0.55, 200),
            make_component(-1.0, -1.0, 0.55, 0.45, 0.45, 0.55, 200),
            make_component(-1.0, 1.0, 0.55, -0.45, -0.45, 0.55, 200),
        };
    }
    if (name == "c6") {
        return {
            make_component(0.5, 0.867, 0.475, 0.303, 0.303, 0.825, 200),
            make_component(-0.5, 0.867, 0.475, -0.303, -0.303, 0.825, 200),
            make_component(-1.0, 0.0, 1.0, 0.0, 0.0, 0.3, 200),
            make_component(-0.5, -0.867, 0.475, 0.303, 0.303, 0.825, 200),
            make_component(0.5, -0.867, 0.475, -0.303, -0.303, 0.825, 200),
            make_component(1.0, 0.0, 1.0, 0.0, 0.0, 0.3, 200),
        };
    }
    if (name == "extreme") {
        return {
            make_component(1.0, 0.0, 0.8, 0.4, 0.4, 0.8, 2),
            make_component(8.0, 0.0, 0.8, 0.4, 0.4, 0.8, 100),
            make_component(4.0, 8.0, 0.8, -0.4, -0.4, 0.8, 2),
        };
    }
    throw config_error("unknown builtin dataset: " + name);
}

std::vector<std::string> builtin_spec_names() {
    return {"c2", "c3-default", "c4", "c6", "extreme"};
}

Dataset sample_mixture(const MixtureSpec& spec, Rng& rng) {
    if (spec.empty()) throw config_error("mixture spec has no components");
    std::size_t total = 0;
    const std::size_t dim = spec.front().gaussian.dim();
    for (const auto& comp : spec) {
        if (comp.count < 1) throw config_error("component count must be >= 1");
        if (comp.gaussian.dim() != dim) {
            throw config_error("mixture components must share one dimension");
        }
        total += static_cast<std::size_t>(comp.count);
    }

    Matrix points(total, dim);
    std::size_t row = 0;
    std::vector<double> z(dim);
    for (const auto& comp : spec) {
        const Matrix l = detail::cholesky_lower(comp.gaussian.cov);
        for (int c = 0; c < comp.count; ++c, ++row) {
            for (std::size_t s = 0; s < dim; ++s) z[s] = rng.gaussian();
            for (std::size_t s = 0; s < dim; ++s) {
                double v = comp.gaussian.mean[s];
                for (std::size_t k = 0; k <= s; ++k) v += l(s, k) * z[k];
                points(row, s) = v;
            }
        }
    }
    return Dataset(std::move(points));
}

std::vector<int> component_labels(const MixtureSpec& spec) {
    std::vector<int> labels;
    for (std::size_t k = 0; k < spec.size(); ++k) {
        labels.insert(labels.end(), static_cast<std::size_t>(spec[k].count),
                      static_cast<int>(k));
    }
    return labels;
}

std::vector<MixtureSpec> shifted_mean_specs(const MixtureSpec& spec, double s,
                                            int n_angles) {
    if (!(s >= 0.0)) throw config_error("shift radius must be >= 0");
    if (n_angles < 1) throw config_error("n_angles must be >= 1");
    for (const auto& comp : spec) {
        if (comp.gaussian.dim() != 2) {
            throw config_error("mean-shift grids are defined for 2-D mixtures");
        }
    }

    const std::size_t k = spec.size();
    std::size_t cells = 1;
    for (std::size_t i = 0; i < k; ++i) {
        cells *= static_cast<std::size_t>(n_angles);
    }

    std::vector<MixtureSpec> grid;
    grid.reserve(cells);
    std::vector<int> angle_idx(k, 0);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        // decode cell index with the last component varying fastest
        std::size_t rem = cell;
        for (std::size_t c = k; c-- > 0;) {
            angle_idx[c] = static_cast<int>(rem % static_cast<std::size_t>(n_angles));
            rem /= static_cast<std::size_t>(n_angles);
        }
        MixtureSpec shifted;
        shifted.reserve(k);
        for (std::size_t c = 0; c < k; ++c) {
            const double phi =
                2.0 * kPi * static_cast<double>(angle_idx[c]) / static_cast<double>(n_angles);
            std::vector<double> mean = spec[c].gaussian.mean;
            mean[0] += s * std::cos(phi);
            mean[1] += s * std::sin(phi);
            shifted.push_back(
                MixtureComponent{GaussianSpec(std::move(mean), spec[c].gaussian.cov),
                                 spec[c].count});
        }
        grid.push_back(std::move(shifted));
    }
    return grid;
}

MixtureSpec scaled_cov_specs(const MixtureSpec& spec, const std::vector<double>& factors) {
    if (factors.size() != spec.size()) {
        throw config_error("one covariance factor per component is required");
    }
    MixtureSpec out;
    out.reserve(spec.size());
    for (std::size_t c = 0; c < spec.size(); ++c) {
        if (!(factors[c] > 0.0)) throw config_error("covariance factors must be > 0");
        Matrix cov = spec[c].gaussian.cov;
        for (std::size_t i = 0; i < cov.rows(); ++i) {
            for (std::size_t j = 0; j < cov.cols(); ++j) cov(i, j) *= factors[c];
        }
        out.push_back(MixtureComponent{GaussianSpec(spec[c].gaussian.mean, std::move(cov)),
                                       spec[c].count});
    }
    return out;
}

std::vector<GaussianSpec> gaussians_of(const MixtureSpec& spec) {
    std::vector<GaussianSpec> out;
    out.reserve(spec.size());
    for (const auto& comp : spec) out.push_back(comp.gaussian);
    return out;
}

}  // namespace itisc
