#include "itisc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "itisc/errors.hpp"
#include "itisc/metrics.hpp"

namespace itisc {

Algorithm algorithm_from_string(const std::string& name) {
    std::string key = name;
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "kmeans" || key == "k-means") return Algorithm::kmeans;
    if (key == "fcm") return Algorithm::fcm;
    if (key == "hierarchical" || key == "hc") return Algorithm::hierarchical;
    if (key == "itisc-ao") return Algorithm::itisc_ao;
    if (key == "itisc-r") return Algorithm::itisc_r;
    if (key == "fuzzy-itisc-ao") return Algorithm::fuzzy_itisc_ao;
    if (key == "fuzzy-itisc-r") return Algorithm::fuzzy_itisc_r;
    throw config_error("unknown algorithm: " + name);
}

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::kmeans: return "kmeans";
        case Algorithm::fcm: return "fcm";
        case Algorithm::hierarchical: return "hierarchical";
        case Algorithm::itisc_ao: return "itisc-ao";
        case Algorithm::itisc_r: return "itisc-r";
        case Algorithm::fuzzy_itisc_ao: return "fuzzy-itisc-ao";
        case Algorithm::fuzzy_itisc_r: return "fuzzy-itisc-r";
    }
    return "kmeans";
}

bool is_itisc(Algorithm a) {
    return a == Algorithm::itisc_ao || a == Algorithm::itisc_r ||
           a == Algorithm::fuzzy_itisc_ao || a == Algorithm::fuzzy_itisc_r;
}

DistortionKind kind_of(Algorithm a) {
    if (a == Algorithm::fuzzy_itisc_ao || a == Algorithm::fuzzy_itisc_r) {
        return DistortionKind::log_squared_euclidean;
    }
    return DistortionKind::squared_euclidean;
}

std::string FitConfig::param_tag() const {
    std::ostringstream os;
    os << "C=" << clusters;
    switch (algorithm) {
        case Algorithm::fcm:
            os << ";m=" << format_double(m);
            break;
        case Algorithm::hierarchical:
            os << ";linkage=" << itisc::to_string(linkage);
            break;
        case Algorithm::kmeans:
            break;
        default:
            os << ";T1=" << format_double(t1) << ";T2=" << format_double(t2);
            break;
    }
    return os.str();
}

namespace {

std::string model_id(const FitConfig& config) {
    return to_string(config.algorithm) + "(" + config.param_tag() + ")";
}

double family_eps(const FitConfig& config) {
    if (config.eps > 0.0) return config.eps;
    switch (config.algorithm) {
        case Algorithm::kmeans:
        case Algorithm::fcm:
            return 1e-6;
        default:
            return 1e-5;
    }
}

}  // namespace

FittedModel fit_model(const Dataset& dataset, const FitConfig& config,
                      std::uint64_t seed) {
    if (config.clusters < 1 ||
        static_cast<std::size_t>(config.clusters) > dataset.size()) {
        throw config_error("cluster count must be between 1 and the number of points");
    }
    Rng rng(seed);
    // All stochastic families share the same k-means++ initialization.
    switch (config.algorithm) {
        case Algorithm::kmeans: {
            KmeansOptions opts;
            opts.max_iter = config.max_iter;
            opts.eps = family_eps(config);
            const Centers init = kmeans_pp_init(dataset, config.clusters, rng);
            HardClustering hc = kmeans_solve_from(dataset, init, opts);
            return FittedModel{config,         seed,
                               hc.centers,     std::move(hc.labels),
                               std::nullopt,   std::nullopt,
                               hc.cost,        hc.iterations,
                               hc.converged,   0};
        }
        case Algorithm::hierarchical: {
            HardClustering hc = hierarchical_solve(dataset, config.clusters, config.linkage);
            return FittedModel{config,         seed,
                               hc.centers,     std::move(hc.labels),
                               std::nullopt,   std::nullopt,
                               hc.cost,        hc.iterations,
                               hc.converged,   0};
        }
        case Algorithm::fcm: {
            FcmOptions opts;
            opts.max_iter = config.max_iter;
            opts.eps = family_eps(config);
            const Centers init = kmeans_pp_init(dataset, config.clusters, rng);
            ClusterState state = fcm_solve_from(dataset, init, config.m, opts);
            std::vector<int> labels = labels_from_membership(state.membership);
            return FittedModel{config,
                               seed,
                               state.centers,
                               std::move(labels),
                               std::move(state.membership),
                               std::nullopt,
                               state.objective,
                               state.iterations,
                               state.converged,
                               state.degenerate_updates};
        }
        default: {
            const Temperatures t(config.t1, config.t2);
            const DistortionKind kind = kind_of(config.algorithm);
            const Centers init = kmeans_pp_init(dataset, config.clusters, rng);
            ClusterState state = [&] {
                if (config.algorithm == Algorithm::itisc_ao ||
                    config.algorithm == Algorithm::fuzzy_itisc_ao) {
                    AoOptions opts;
                    opts.max_iter = config.max_iter;
                    opts.eps = family_eps(config);
                    return ao_solve_from(dataset, init, t, kind, opts);
                }
                ReformOptions opts;
                opts.tol = config.tol;
                opts.max_iter = config.max_iter;
                return reform_solve_from(dataset, init, t, kind, opts);
            }();
            std::vector<int> labels = labels_from_membership(state.membership);
            return FittedModel{config,
                               seed,
                               state.centers,
                               std::move(labels),
                               std::move(state.membership),
                               std::move(state.weights),
                               state.objective,
                               state.iterations,
                               state.converged,
                               state.degenerate_updates};
        }
    }
}

std::vector<int> predict_labels(const Dataset& dataset, const FittedModel& model) {
    if (dataset.dim() != model.centers.dim()) {
        throw config_error("dataset dimension does not match the fitted model");
    }
    // For every built-in family the argmax membership coincides with the
    // nearest center (membership is monotone in distortion), so one rule
    // serves hard and soft models alike.
    return labels_from_centers(dataset, model.centers);
}

void write_model_json(const std::string& path, const FittedModel& model,
                      bool include_soft) {
    nlohmann::json doc;
    doc["version"] = kVersion;
    doc["algorithm"] = to_string(model.config.algorithm);
    doc["config"] = {{"clusters", model.config.clusters},
                     {"t1", model.config.t1},
                     {"t2", model.config.t2},
                     {"m", model.config.m},
                     {"linkage", to_string(model.config.linkage)},
                     {"max_iter", model.config.max_iter},
                     {"eps", model.config.eps},
                     {"tol", model.config.tol}};
    doc["seed"] = model.seed;
    nlohmann::json centers = nlohmann::json::array();
    for (std::size_t k = 0; k < model.centers.count(); ++k) {
        const auto row = model.centers.center(k);
        centers.push_back(std::vector<double>(row.begin(), row.end()));
    }
    doc["centers"] = std::move(centers);
    doc["labels"] = model.labels;
    doc["objective"] = model.objective;
    doc["iterations"] = model.iterations;
    doc["converged"] = model.converged;
    doc["degenerate_updates"] = model.degenerate_updates;
    if (include_soft && model.membership) {
        nlohmann::json u = nlohmann::json::array();
        for (std::size_t i = 0; i < model.membership->points(); ++i) {
            std::vector<double> row(model.membership->clusters());
            for (std::size_t j = 0; j < row.size(); ++j) row[j] = model.membership->u(i, j);
            u.push_back(std::move(row));
        }
        doc["membership"] = std::move(u);
    }
    if (include_soft && model.weights) {
        doc["weights"] = model.weights->w;
    }
    std::ofstream os(path);
    if (!os) throw config_error("cannot open for writing: " + path);
    os << doc.dump(2) << '\n';
}

FittedModel read_model_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw config_error("cannot open for reading: " + path);
    nlohmann::json doc;
    try {
        is >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("malformed model JSON: ") + e.what());
    }
    try {
        FitConfig config;
        config.algorithm = algorithm_from_string(doc.at("algorithm").get<std::string>());
        const auto& c = doc.at("config");
        config.clusters = c.at("clusters").get<int>();
        config.t1 = c.at("t1").get<double>();
        config.t2 = c.at("t2").get<double>();
        config.m = c.at("m").get<double>();
        config.linkage = linkage_from_string(c.at("linkage").get<std::string>());
        config.max_iter = c.at("max_iter").get<int>();
        config.eps = c.at("eps").get<double>();
        config.tol = c.at("tol").get<double>();

        const auto& centers_json = doc.at("centers");
        const std::size_t count = centers_json.size();
        if (count == 0) throw config_error("model JSON has no centers");
        const std::size_t dim = centers_json.at(0).size();
        Matrix y(count, dim);
        for (std::size_t k = 0; k < count; ++k) {
            const auto row = centers_json.at(k).get<std::vector<double>>();
            if (row.size() != dim) throw config_error("ragged centers in model JSON");
            for (std::size_t s = 0; s < dim; ++s) y(k, s) = row[s];
        }

        FittedModel model{config,
                          doc.at("seed").get<std::uint64_t>(),
                          Centers(std::move(y)),
                          doc.at("labels").get<std::vector<int>>(),
                          std::nullopt,
                          std::nullopt,
                          doc.at("objective").get<double>(),
                          doc.at("iterations").get<int>(),
                          doc.at("converged").get<bool>(),
                          doc.at("degenerate_updates").get<int>()};
        if (doc.contains("membership")) {
            const auto& u_json = doc["membership"];
            Matrix u(u_json.size(), u_json.empty() ? 0 : u_json.at(0).size());
            for (std::size_t i = 0; i < u_json.size(); ++i) {
                const auto row = u_json.at(i).get<std::vector<double>>();
                for (std::size_t j = 0; j < row.size(); ++j) u(i, j) = row[j];
            }
            model.membership = Membership{std::move(u)};
        }
        if (doc.contains("weights")) {
            model.weights = ImportanceWeights{doc["weights"].get<std::vector<double>>()};
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("malformed model JSON: ") + e.what());
    }
}

namespace {

struct ModelMetrics {
    double objective = 0.0;
    double within = 0.0;
    double max_boundary = 0.0;
    double ten_boundary = std::numeric_limits<double>::quiet_NaN();
    double max_weight = std::numeric_limits<double>::quiet_NaN();
};

ModelMetrics compute_metrics(const Dataset& dataset, const FittedModel& model) {
    ModelMetrics out;
    out.objective = model.objective;
    out.within = within_cluster_dist(dataset, model.labels, model.centers);
    out.max_boundary = m_boundary_dist(dataset, model.labels, model.centers, 1).value;
    if (dataset.size() >= 10) {
        out.ten_boundary = m_boundary_dist(dataset, model.labels, model.centers, 10).value;
    }
    if (model.weights) {
        out.max_weight = *std::max_element(model.weights->w.begin(), model.weights->w.end());
    }
    return out;
}

}  // namespace

Report fit_report(const Dataset& dataset, const FitConfig& config,
                  const std::vector<std::uint64_t>& seeds,
                  const std::string& experiment) {
    if (seeds.empty()) throw config_error("at least one seed is required");
    Report report;
    report.metadata["version"] = kVersion;
    report.metadata["assignment"] = "argmax-membership (equals nearest-center)";

    const std::string algorithm = to_string(config.algorithm);
    const std::string tag = config.param_tag();

    std::map<std::string, std::vector<double>> means;
    for (const std::uint64_t seed : seeds) {
        const FittedModel model = fit_model(dataset, config, seed);
        const ModelMetrics m = compute_metrics(dataset, model);
        const std::string param = tag + ";seed=" + std::to_string(seed);
        const auto push = [&](const std::string& metric, double value) {
            report.rows.push_back(ReportRow{experiment, algorithm, param, metric, value});
            means[metric].push_back(value);
        };
        push("objective", m.objective);
        push("WithinClusterDist", m.within);
        push("MaxBoundaryDist", m.max_boundary);
        if (!std::isnan(m.ten_boundary)) push("10-BoundaryDist", m.ten_boundary);
        if (!std::isnan(m.max_weight)) push("max_weight", m.max_weight);
        report.rows.push_back(ReportRow{experiment, algorithm, param, "iterations",
                                        static_cast<double>(model.iterations)});
        report.rows.push_back(ReportRow{experiment, algorithm, param, "converged",
                                        model.converged ? 1.0 : 0.0});
    }
    for (const auto& [metric, values] : means) {
        const double mean =
            std::accumulate(values.begin(), values.end(), 0.0) / values.size();
        report.rows.push_back(
            ReportRow{experiment, algorithm, tag + ";seed=mean", metric, mean});
    }
    return report;
}

Report boundary_report(const Dataset& dataset,
                       const std::vector<FittedModel>& models,
                       const std::vector<int>& m_list,
                       const std::string& experiment) {
    if (models.empty()) throw config_error("no models given");
    if (m_list.empty()) throw config_error("no boundary sizes given");
    Report report;
    report.metadata["version"] = kVersion;
    report.metadata["assignment"] = "argmax-membership (equals nearest-center)";

    const auto metric_name = [](int m) {
        return m == 1 ? std::string("MaxBoundaryDist")
                      : std::to_string(m) + "-BoundaryDist";
    };

    // keyed by (algorithm, param tag) so multiple seeds of one config average
    std::vector<std::pair<std::string, std::string>> group_order;
    std::map<std::pair<std::string, std::string>, std::map<int, std::vector<double>>> groups;

    for (const auto& model : models) {
        const std::string algorithm = to_string(model.config.algorithm);
        const std::string tag = model.config.param_tag();
        const std::vector<int> labels = predict_labels(dataset, model);
        const auto key = std::make_pair(algorithm, tag);
        if (!groups.count(key)) group_order.push_back(key);
        for (const int m : m_list) {
            const double value = m_boundary_dist(dataset, labels, model.centers, m).value;
            report.rows.push_back(ReportRow{experiment, algorithm,
                                            tag + ";seed=" + std::to_string(model.seed),
                                            metric_name(m), value});
            groups[key][m].push_back(value);
        }
    }
    for (const auto& key : group_order) {
        for (const int m : m_list) {
            const auto& values = groups[key][m];
            const double mean =
                std::accumulate(values.begin(), values.end(), 0.0) / values.size();
            report.rows.push_back(ReportRow{experiment, key.first,
                                            key.second + ";seed=mean", metric_name(m),
                                            mean});
        }
    }
    return report;
}

Report t2_sweep(const Dataset& dataset, const FitConfig& base,
                const std::vector<double>& t2_grid,
                const std::vector<std::uint64_t>& seeds,
                const std::string& experiment) {
    if (!is_itisc(base.algorithm)) {
        throw config_error("t2 sweep requires an itisc-family algorithm");
    }
    if (t2_grid.empty()) throw config_error("empty T2 grid");
    if (seeds.empty()) throw config_error("at least one seed is required");
    for (const double t2 : t2_grid) {
        if (!(t2 > 0.0)) throw config_error("T2 grid entries must be positive");
    }

    Report report;
    report.metadata["version"] = kVersion;
    report.metadata["algorithm"] = to_string(base.algorithm);
    report.metadata["protocol"] =
        "per seed, each T2 is warm-started from the previous grid entry's centers";
    const std::string algorithm = to_string(base.algorithm);

    const DistortionKind kind = kind_of(base.algorithm);
    const bool use_ao = base.algorithm == Algorithm::itisc_ao ||
                        base.algorithm == Algorithm::fuzzy_itisc_ao;
    const bool have_ten = dataset.size() >= 10;

    // Continuation keeps every seed in one optimization basin across the
    // sweep; independent restarts can hop basins between adjacent T2 values
    // and produce spurious non-monotonicity.
    struct Acc {
        double max_boundary = 0.0, ten_boundary = 0.0, max_weight = 0.0, objective = 0.0;
    };
    std::vector<Acc> acc(t2_grid.size());

    for (const std::uint64_t seed : seeds) {
        Rng rng(seed);
        Centers centers = kmeans_pp_init(dataset, base.clusters, rng);
        for (std::size_t g = 0; g < t2_grid.size(); ++g) {
            const Temperatures t(base.t1, t2_grid[g]);
            const ClusterState state = [&] {
                if (use_ao) {
                    AoOptions opts;
                    opts.max_iter = base.max_iter;
                    opts.eps = family_eps(base);
                    return ao_solve_from(dataset, centers, t, kind, opts);
                }
                ReformOptions opts;
                opts.tol = base.tol;
                opts.max_iter = base.max_iter;
                return reform_solve_from(dataset, centers, t, kind, opts);
            }();
            centers = state.centers;
            const std::vector<int> labels = labels_from_membership(state.membership);
            acc[g].max_boundary += m_boundary_dist(dataset, labels, state.centers, 1).value;
            if (have_ten) {
                acc[g].ten_boundary +=
                    m_boundary_dist(dataset, labels, state.centers, 10).value;
            }
            acc[g].max_weight +=
                *std::max_element(state.weights.w.begin(), state.weights.w.end());
            acc[g].objective += state.objective;
        }
    }

    const double n = static_cast<double>(seeds.size());
    for (std::size_t g = 0; g < t2_grid.size(); ++g) {
        const std::string param = "T2=" + format_double(t2_grid[g]);
        report.rows.push_back(ReportRow{experiment, algorithm, param, "MaxBoundaryDist",
                                        acc[g].max_boundary / n});
        if (have_ten) {
            report.rows.push_back(ReportRow{experiment, algorithm, param,
                                            "10-BoundaryDist", acc[g].ten_boundary / n});
        }
        report.rows.push_back(
            ReportRow{experiment, algorithm, param, "max_weight", acc[g].max_weight / n});
        report.rows.push_back(
            ReportRow{experiment, algorithm, param, "objective", acc[g].objective / n});
    }
    return report;
}

Report weights_trace(const Dataset& dataset, const FitConfig& config,
                     std::uint64_t seed, int top_k, const std::string& experiment) {
    if (config.algorithm != Algorithm::itisc_ao &&
        config.algorithm != Algorithm::fuzzy_itisc_ao) {
        throw config_error("weights-trace requires an alternating-optimization itisc model");
    }
    if (top_k < 1) throw config_error("top_k must be >= 1");
    const std::size_t k =
        std::min(static_cast<std::size_t>(top_k), dataset.size());

    Report report;
    report.metadata["version"] = kVersion;
    report.metadata["seed"] = std::to_string(seed);
    const std::string algorithm = to_string(config.algorithm);
    const std::string tag = config.param_tag();

    const Temperatures t(config.t1, config.t2);
    const DistortionKind kind = kind_of(config.algorithm);
    Rng rng(seed);
    const Centers init = kmeans_pp_init(dataset, config.clusters, rng);

    AoOptions opts;
    opts.max_iter = config.max_iter;
    opts.eps = family_eps(config);
    opts.on_iteration = [&](int iter, const ClusterState& state) {
        const std::string param = tag + ";iter=" + std::to_string(iter);
        const auto& w = state.weights.w;
        const auto [mn, mx] = std::minmax_element(w.begin(), w.end());
        report.rows.push_back(ReportRow{experiment, algorithm, param, "max_weight", *mx});
        report.rows.push_back(ReportRow{experiment, algorithm, param, "min_weight", *mn});
        report.rows.push_back(ReportRow{experiment, algorithm, param, "weight_kl",
                                        weight_kl_uniform(state.weights)});
        for (std::size_t i = 0; i < w.size(); ++i) {
            report.rows.push_back(ReportRow{experiment, algorithm, param,
                                            "w[" + std::to_string(i) + "]", w[i]});
        }
        std::vector<std::size_t> idx(w.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::partial_sort(idx.begin(), idx.begin() + static_cast<long>(k), idx.end(),
                          [&](std::size_t a, std::size_t b) {
                              if (w[a] != w[b]) return w[a] > w[b];
                              return a < b;
                          });
        for (std::size_t r = 0; r < k; ++r) {
            report.rows.push_back(ReportRow{experiment, algorithm, param,
                                            "top[" + std::to_string(r) + "]",
                                            static_cast<double>(idx[r])});
        }
    };
    ao_solve_from(dataset, init, t, kind, opts);
    return report;
}

namespace {

struct CellScore {
    double kl = 0.0;
    std::vector<double> wcd;  // one mean value per model config
};

CellScore score_cell(const MixtureSpec& cell,
                     const std::vector<GaussianSpec>& base_gaussians,
                     const std::vector<std::vector<FittedModel>>& fitted,
                     std::uint64_t eval_seed) {
    CellScore score;
    score.kl = mixture_kl(base_gaussians, gaussians_of(cell));
    Rng rng(eval_seed);
    const Dataset data = sample_mixture(cell, rng);
    score.wcd.reserve(fitted.size());
    for (const auto& group : fitted) {
        double sum = 0.0;
        for (const FittedModel& model : group) {
            sum += within_cluster_dist(data, predict_labels(data, model), model.centers);
        }
        score.wcd.push_back(sum / static_cast<double>(group.size()));
    }
    return score;
}

std::string join_factors(const std::vector<double>& factors) {
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i > 0) out += '|';
        out += format_double(factors[i]);
    }
    return out;
}

}  // namespace

Report shift_experiment(const ShiftConfig& config) {
    if (config.models.empty()) throw config_error("no models configured");
    if (config.fit_seeds.empty()) throw config_error("at least one fit seed is required");
    const bool mean_mode = !config.s_list.empty();
    if (!mean_mode && config.factor_grid.empty()) {
        throw config_error("either a shift radius list or a covariance factor grid is required");
    }
    if (mean_mode && !config.factor_grid.empty()) {
        throw config_error("choose either mean shifts or covariance factors, not both");
    }

    // (group label, cells) pairs: one group per S, or one group for the factors
    std::vector<std::pair<std::string, std::vector<MixtureSpec>>> grid_groups;
    std::vector<std::vector<std::string>> cell_params;
    if (mean_mode) {
        for (const double s : config.s_list) {
            grid_groups.emplace_back(
                "S=" + format_double(s),
                shifted_mean_specs(config.base_spec, s, config.n_angles));
        }
    } else {
        std::vector<MixtureSpec> cells;
        std::vector<std::string> params;
        for (const auto& raw : config.factor_grid) {
            std::vector<double> factors = raw;
            if (factors.size() == 1 && config.base_spec.size() > 1) {
                factors.assign(config.base_spec.size(), raw[0]);
            }
            cells.push_back(scaled_cov_specs(config.base_spec, factors));
            params.push_back("factors=" + join_factors(factors));
        }
        grid_groups.emplace_back("factors", std::move(cells));
        cell_params.push_back(std::move(params));
    }

    std::size_t total_cells = 0;
    for (const auto& [label, cells] : grid_groups) total_cells += cells.size();
    if (total_cells > config.max_cells && !config.allow_large) {
        throw config_error("grid has " + std::to_string(total_cells) +
                           " cells (limit " + std::to_string(config.max_cells) +
                           "); pass the allow-large override to proceed");
    }

    Rng base_rng(config.base_seed);
    const Dataset base = sample_mixture(config.base_spec, base_rng);
    const std::vector<GaussianSpec> base_gaussians = gaussians_of(config.base_spec);

    std::vector<std::vector<FittedModel>> fitted;
    std::vector<std::string> ids;
    for (const FitConfig& mc : config.models) {
        std::vector<FittedModel> group;
        for (const std::uint64_t seed : config.fit_seeds) {
            group.push_back(fit_model(base, mc, seed));
        }
        ids.push_back(model_id(mc));
        fitted.push_back(std::move(group));
    }

    Report report;
    report.metadata["version"] = kVersion;
    report.metadata["base_seed"] = std::to_string(config.base_seed);
    report.metadata["eval_seed"] = std::to_string(config.eval_seed);
    if (mean_mode) {
        report.metadata["n_angles"] = std::to_string(config.n_angles);
    }
    {
        std::string seed_list;
        for (std::size_t i = 0; i < config.fit_seeds.size(); ++i) {
            if (i > 0) seed_list += ' ';
            seed_list += std::to_string(config.fit_seeds[i]);
        }
        report.metadata["fit_seeds"] = seed_list;
    }

    for (std::size_t gi = 0; gi < grid_groups.size(); ++gi) {
        const auto& [label, cells] = grid_groups[gi];
        std::vector<CellScore> scores(cells.size());

        const int workers = std::max(1, config.parallel);
        if (workers == 1 || cells.size() < 2) {
            for (std::size_t ci = 0; ci < cells.size(); ++ci) {
                scores[ci] = score_cell(cells[ci], base_gaussians, fitted, config.eval_seed);
            }
        } else {
            std::vector<std::thread> pool;
            std::atomic<std::size_t> next{0};
            for (int wkr = 0; wkr < workers; ++wkr) {
                pool.emplace_back([&] {
                    while (true) {
                        const std::size_t ci = next.fetch_add(1);
                        if (ci >= cells.size()) break;
                        scores[ci] =
                            score_cell(cells[ci], base_gaussians, fitted, config.eval_seed);
                    }
                });
            }
            for (auto& th : pool) th.join();
        }

        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
            const std::string cell_param =
                (mean_mode ? label : cell_params[0][ci]) + ";cell=" + std::to_string(ci);
            report.rows.push_back(
                ReportRow{config.experiment_name, "-", cell_param, "mixture_kl",
                          scores[ci].kl});
            for (std::size_t mi = 0; mi < fitted.size(); ++mi) {
                report.rows.push_back(ReportRow{config.experiment_name,
                                                to_string(config.models[mi].algorithm),
                                                config.models[mi].param_tag() + ";" + cell_param,
                                                "WithinClusterDist", scores[ci].wcd[mi]});
            }
        }

        // per-group summaries: mean WCD per model and pairwise win ratios
        for (std::size_t mi = 0; mi < fitted.size(); ++mi) {
            double sum = 0.0;
            for (const auto& sc : scores) sum += sc.wcd[mi];
            report.rows.push_back(ReportRow{
                config.experiment_name, to_string(config.models[mi].algorithm),
                config.models[mi].param_tag() + ";" + label, "mean_WithinClusterDist",
                sum / static_cast<double>(scores.size())});
        }
        for (std::size_t a = 0; a < fitted.size(); ++a) {
            for (std::size_t b = 0; b < fitted.size(); ++b) {
                if (a == b) continue;
                std::size_t wins = 0;
                for (const auto& sc : scores) {
                    if (sc.wcd[a] < sc.wcd[b]) ++wins;
                }
                report.rows.push_back(ReportRow{
                    config.experiment_name, to_string(config.models[a].algorithm),
                    config.models[a].param_tag() + ";" + label + ";vs=" + ids[b],
                    "win_ratio",
                    static_cast<double>(wins) / static_cast<double>(scores.size())});
            }
        }
    }
    return report;
}

}  // namespace itisc
