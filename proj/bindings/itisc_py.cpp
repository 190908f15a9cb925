#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "itisc/distortion.hpp"
#include "itisc/errors.hpp"
#include "itisc/experiments.hpp"
#include "itisc/io.hpp"
#include "itisc/metrics.hpp"
#include "itisc/synth.hpp"

namespace py = pybind11;
using namespace itisc;

namespace {

using Rows = std::vector<std::vector<double>>;

Matrix to_matrix(const Rows& rows) {
    if (rows.empty()) throw config_error("expected a non-empty list of rows");
    return Matrix::from_rows(rows);
}

Rows to_rows(const Matrix& m) {
    Rows out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto r = m.row(i);
        out[i].assign(r.begin(), r.end());
    }
    return out;
}

py::dict model_to_dict(const FittedModel& model) {
    py::dict d;
    d["algorithm"] = to_string(model.config.algorithm);
    d["param"] = model.config.param_tag();
    d["seed"] = model.seed;
    d["centers"] = to_rows(model.centers.matrix());
    d["labels"] = model.labels;
    d["objective"] = model.objective;
    d["iterations"] = model.iterations;
    d["converged"] = model.converged;
    if (model.membership) d["membership"] = to_rows(model.membership->u);
    if (model.weights) d["weights"] = model.weights->w;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "ITISC clustering core";

    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<numerical_error>(m, "NumericalError", PyExc_ArithmeticError);

    m.def("builtin_spec_names", &builtin_spec_names,
          "Names of the bundled synthetic mixtures");

    m.def(
        "sample_builtin",
        [](const std::string& name, std::uint64_t seed) {
            Rng rng(seed);
            const MixtureSpec spec = builtin_spec(name);
            const Dataset data = sample_mixture(spec, rng);
            py::dict d;
            d["points"] = to_rows(data.points());
            d["components"] = component_labels(spec);
            return d;
        },
        py::arg("name"), py::arg("seed") = 7,
        "Draw the bundled mixture: dict with 'points' and 'components'");

    m.def(
        "fit",
        [](const Rows& data, const std::string& algorithm, int clusters, double t1,
           double t2, double m_, const std::string& linkage, std::uint64_t seed,
           int max_iter, double eps, double tol) {
            FitConfig config;
            config.algorithm = algorithm_from_string(algorithm);
            config.clusters = clusters;
            config.t1 = t1;
            config.t2 = t2;
            config.m = m_;
            config.linkage = linkage_from_string(linkage);
            config.max_iter = max_iter;
            config.eps = eps;
            config.tol = tol;
            return model_to_dict(fit_model(Dataset(to_matrix(data)), config, seed));
        },
        py::arg("data"), py::arg("algorithm") = "fuzzy-itisc-ao", py::arg("clusters") = 3,
        py::arg("t1") = 1.0, py::arg("t2") = 1.0, py::arg("m") = 2.0,
        py::arg("linkage") = "ward", py::arg("seed") = 1, py::arg("max_iter") = 300,
        py::arg("eps") = 0.0, py::arg("tol") = 1e-6,
        "Fit a clustering model and return its state as a dict");

    m.def(
        "predict",
        [](const Rows& centers, const Rows& data) {
            return labels_from_centers(Dataset(to_matrix(data)), Centers(to_matrix(centers)));
        },
        py::arg("centers"), py::arg("data"), "Nearest-center labels for new points");

    m.def(
        "m_boundary_dist",
        [](const Rows& data, const std::vector<int>& labels, const Rows& centers, int m_) {
            return m_boundary_dist(Dataset(to_matrix(data)), labels,
                                   Centers(to_matrix(centers)), m_)
                .value;
        },
        py::arg("data"), py::arg("labels"), py::arg("centers"), py::arg("m") = 1,
        "Summed squared distance of the M outermost points to their centers");

    m.def(
        "within_cluster_dist",
        [](const Rows& data, const std::vector<int>& labels, const Rows& centers) {
            return within_cluster_dist(Dataset(to_matrix(data)), labels,
                                       Centers(to_matrix(centers)));
        },
        py::arg("data"), py::arg("labels"), py::arg("centers"),
        "Summed squared distance of every point to its assigned center");

    m.def(
        "gaussian_kl",
        [](const std::vector<double>& mean1, const Rows& cov1,
           const std::vector<double>& mean2, const Rows& cov2) {
            return gaussian_kl(GaussianSpec(mean1, to_matrix(cov1)),
                               GaussianSpec(mean2, to_matrix(cov2)));
        },
        py::arg("mean1"), py::arg("cov1"), py::arg("mean2"), py::arg("cov2"),
        "KL divergence between two Gaussians");

    m.def(
        "certainty_equivalence",
        [](const std::vector<double>& distortions, double t1) {
            return certainty_equivalence(distortions, t1);
        },
        py::arg("distortions"), py::arg("t1"),
        "Soft-min of a distortion row at temperature t1");

    m.attr("__version__") = kVersion;
}
