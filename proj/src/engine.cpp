#include "itisc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "itisc/errors.hpp"
#include "itisc/optimizer.hpp"

namespace itisc {

namespace {

constexpr double kUnderflowLog = -690.77552789821368;  // log(1e-300)

// s_i = log sum_j exp(-delta_ij / t1), the soft-min score of each row.
std::vector<double> row_scores(const Matrix& delta, double t1) {
    std::vector<double> s(delta.rows());
    std::vector<double> scaled(delta.cols());
    for (std::size_t i = 0; i < delta.rows(); ++i) {
        for (std::size_t j = 0; j < delta.cols(); ++j) scaled[j] = -delta(i, j) / t1;
        s[i] = log_sum_exp(scaled);
    }
    return s;
}

// log w_i = (-t1/t2) s_i - log Z, already normalized.
std::vector<double> log_weights_from_scores(const std::vector<double>& s,
                                            const Temperatures& t) {
    std::vector<double> lw(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) lw[i] = (-t.t1 / t.t2) * s[i];
    const double lz = log_sum_exp(lw);
    for (double& v : lw) v -= lz;
    return lw;
}

Centers sample_distinct_rows(const Dataset& dataset, int clusters, Rng& rng) {
    const std::size_t n = dataset.size();
    if (clusters < 1 || static_cast<std::size_t>(clusters) > n) {
        throw config_error("cluster count must be between 1 and the number of points");
    }
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Matrix y(static_cast<std::size_t>(clusters), dataset.dim());
    for (std::size_t k = 0; k < static_cast<std::size_t>(clusters); ++k) {
        const std::size_t pick = k + rng.uniform_index(n - k);
        std::swap(idx[k], idx[pick]);
        const auto row = dataset.point(idx[k]);
        for (std::size_t s = 0; s < dataset.dim(); ++s) y(k, s) = row[s];
    }
    return Centers(std::move(y));
}

void check_state_shapes(const Dataset& dataset, const Membership& u,
                        const ImportanceWeights& w, std::size_t clusters) {
    if (u.points() != dataset.size() || u.clusters() != clusters ||
        w.size() != dataset.size()) {
        throw std::invalid_argument("membership/weights shapes do not match dataset");
    }
}

}  // namespace

Membership update_membership(const DistortionMatrix& dm, double t1, DistortionKind kind) {
    if (!(t1 > 0.0)) throw std::invalid_argument("t1 must be positive");
    const Matrix delta = effective_distortion(dm, kind);
    Matrix u(delta.rows(), delta.cols());
    std::vector<double> scaled(delta.cols());
    for (std::size_t i = 0; i < delta.rows(); ++i) {
        for (std::size_t j = 0; j < delta.cols(); ++j) scaled[j] = -delta(i, j) / t1;
        const double s = log_sum_exp(scaled);
        double sum = 0.0;
        for (std::size_t j = 0; j < delta.cols(); ++j) {
            u(i, j) = std::exp(scaled[j] - s);
            sum += u(i, j);
        }
        for (std::size_t j = 0; j < delta.cols(); ++j) u(i, j) /= sum;
    }
    return Membership{std::move(u)};
}

ImportanceWeights update_weights(const DistortionMatrix& dm, const Temperatures& t,
                                 DistortionKind kind) {
    const Matrix delta = effective_distortion(dm, kind);
    const std::vector<double> s = row_scores(delta, t.t1);
    const std::vector<double> lw = log_weights_from_scores(s, t);
    std::vector<double> w(lw.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < lw.size(); ++i) {
        w[i] = std::exp(lw[i]);
        sum += w[i];
    }
    for (double& v : w) v /= sum;
    return ImportanceWeights{std::move(w)};
}

Centers update_centers(const Dataset& dataset, const Membership& u,
                       const ImportanceWeights& w, const Temperatures& t,
                       DistortionKind kind, const Centers& previous,
                       int* degenerate_count) {
    const std::size_t n = dataset.size();
    const std::size_t c = previous.count();
    const std::size_t dim = dataset.dim();
    check_state_shapes(dataset, u, w, c);
    if (previous.dim() != dim) {
        throw std::invalid_argument("center dimension does not match dataset");
    }

    Matrix y = previous.matrix();
    int degenerate = 0;

    if (kind == DistortionKind::squared_euclidean) {
        for (std::size_t k = 0; k < c; ++k) {
            double den = 0.0;
            std::vector<double> num(dim, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                const double coef = w.w[i] * u.u(i, k);
                den += coef;
                const auto x = dataset.point(i);
                for (std::size_t s = 0; s < dim; ++s) num[s] += coef * x[s];
            }
            if (!(den >= 1e-300)) {
                ++degenerate;
                continue;  // keep the previous center
            }
            for (std::size_t s = 0; s < dim; ++s) y(k, s) = num[s] / den;
        }
    } else {
        // Coefficients w_i^(1-t2) u_ik^(1+t1) span many orders of magnitude;
        // accumulate with a per-cluster max shift in log space.
        std::vector<double> lw(n);
        for (std::size_t i = 0; i < n; ++i) lw[i] = std::log(std::max(w.w[i], 1e-300));
        std::vector<double> lc(n);
        for (std::size_t k = 0; k < c; ++k) {
            double m = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n; ++i) {
                const double lu = std::log(std::max(u.u(i, k), 1e-300));
                lc[i] = (1.0 - t.t2) * lw[i] + (1.0 + t.t1) * lu;
                m = std::max(m, lc[i]);
            }
            if (!std::isfinite(m)) {
                ++degenerate;
                continue;
            }
            double den = 0.0;
            std::vector<double> num(dim, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                const double coef = std::exp(lc[i] - m);
                den += coef;
                const auto x = dataset.point(i);
                for (std::size_t s = 0; s < dim; ++s) num[s] += coef * x[s];
            }
            if (m + std::log(den) < kUnderflowLog) {
                ++degenerate;
                continue;
            }
            for (std::size_t s = 0; s < dim; ++s) y(k, s) = num[s] / den;
        }
    }

    if (degenerate_count) *degenerate_count = degenerate;
    return Centers(std::move(y));
}

ObjectiveBreakdown full_objective(const Dataset& dataset, const Centers& centers,
                                  const Membership& u, const ImportanceWeights& w,
                                  const Temperatures& t, DistortionKind kind) {
    check_state_shapes(dataset, u, w, centers.count());
    const Matrix delta = effective_distortion(distortion_matrix(dataset, centers), kind);
    const std::size_t n = dataset.size();
    const std::size_t c = centers.count();

    ObjectiveBreakdown out;
    double sum_wlogw = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row_d = 0.0;
        double row_h = 0.0;
        for (std::size_t j = 0; j < c; ++j) {
            const double uij = u.u(i, j);
            row_d += uij * delta(i, j);
            if (uij > 0.0) row_h -= uij * std::log(uij);
        }
        out.expected_distortion += w.w[i] * row_d;
        out.conditional_entropy += w.w[i] * row_h;
        if (w.w[i] > 0.0) sum_wlogw += w.w[i] * std::log(w.w[i]);
    }
    out.weight_kl = sum_wlogw + std::log(static_cast<double>(n));
    out.total = out.expected_distortion - t.t1 * out.conditional_entropy - t.t2 * sum_wlogw;
    return out;
}

double reform_objective(const Dataset& dataset, const Centers& centers,
                        const Temperatures& t, DistortionKind kind) {
    const Matrix delta = effective_distortion(distortion_matrix(dataset, centers), kind);
    const std::vector<double> s = row_scores(delta, t.t1);
    std::vector<double> scaled(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) scaled[i] = (-t.t1 / t.t2) * s[i];
    return t.t2 * log_sum_exp(scaled);
}

Matrix reform_gradient(const Dataset& dataset, const Centers& centers,
                       const Temperatures& t, DistortionKind kind) {
    const DistortionMatrix dm = distortion_matrix(dataset, centers);
    const Matrix delta = effective_distortion(dm, kind);
    const std::vector<double> s = row_scores(delta, t.t1);
    const std::vector<double> lw = log_weights_from_scores(s, t);

    const std::size_t n = dataset.size();
    const std::size_t c = centers.count();
    const std::size_t dim = dataset.dim();
    Matrix g(c, dim, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = dataset.point(i);
        for (std::size_t k = 0; k < c; ++k) {
            // q_ik = w_i u_ik, assembled in log space
            const double q = std::exp(lw[i] + (-delta(i, k) / t.t1) - s[i]);
            double scale;
            if (kind == DistortionKind::squared_euclidean) {
                scale = 2.0 * q;
            } else {
                // clamped entries sit on the flat part of log(max(d, floor))
                if (dm.d(i, k) <= kDistortionFloor) continue;
                scale = 2.0 * q / dm.d(i, k);
            }
            const auto y = centers.center(k);
            for (std::size_t sdx = 0; sdx < dim; ++sdx) {
                g(k, sdx) += scale * (y[sdx] - x[sdx]);
            }
        }
    }
    return g;
}

ClusterState ao_solve_from(const Dataset& dataset, const Centers& init,
                           const Temperatures& t, DistortionKind kind,
                           const AoOptions& opts) {
    if (init.dim() != dataset.dim()) {
        throw std::invalid_argument("initial centers do not match dataset dimension");
    }
    Centers y = init;
    double prev_objective = std::numeric_limits<double>::infinity();
    int increase_streak = 0;
    int degenerate_total = 0;
    bool converged = false;
    bool diverged = false;
    int iterations = 0;

    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        iterations = iter;
        const DistortionMatrix dm = distortion_matrix(dataset, y);
        Membership u = update_membership(dm, t.t1, kind);
        ImportanceWeights w = update_weights(dm, t, kind);
        int degenerate = 0;
        Centers y_next = update_centers(dataset, u, w, t, kind, y, &degenerate);
        degenerate_total += degenerate;

        const double objective = reform_objective(dataset, y_next, t, kind);
        const double movement = frobenius_distance(y.matrix(), y_next.matrix());
        y = std::move(y_next);

        if (opts.on_iteration) {
            ClusterState snapshot{y, std::move(u), std::move(w), objective,
                                  iter, false, degenerate_total, false};
            opts.on_iteration(iter, snapshot);
        }

        if (objective > prev_objective) {
            if (++increase_streak >= opts.divergence_window) {
                diverged = true;
                break;
            }
        } else {
            increase_streak = 0;
        }
        prev_objective = objective;

        if (movement <= opts.eps) {
            converged = true;
            break;
        }
    }

    const DistortionMatrix dm = distortion_matrix(dataset, y);
    ClusterState out{y, update_membership(dm, t.t1, kind), update_weights(dm, t, kind)};
    out.objective = reform_objective(dataset, y, t, kind);
    out.iterations = iterations;
    out.converged = converged;
    out.degenerate_updates = degenerate_total;
    out.diverged = diverged;
    return out;
}

ClusterState ao_solve(const Dataset& dataset, int clusters, const Temperatures& t,
                      DistortionKind kind, Rng& rng, const AoOptions& opts) {
    return ao_solve_from(dataset, sample_distinct_rows(dataset, clusters, rng), t, kind,
                         opts);
}

ClusterState reform_solve_from(const Dataset& dataset, const Centers& init,
                               const Temperatures& t, DistortionKind kind,
                               const ReformOptions& opts) {
    if (init.dim() != dataset.dim()) {
        throw std::invalid_argument("initial centers do not match dataset dimension");
    }
    const std::size_t c = init.count();
    const std::size_t dim = init.dim();

    const auto unflatten = [&](std::span<const double> x) {
        Matrix m(c, dim);
        for (std::size_t k = 0; k < c; ++k) {
            for (std::size_t s = 0; s < dim; ++s) m(k, s) = x[k * dim + s];
        }
        return Centers(std::move(m));
    };

    const ObjectiveFn f = [&](std::span<const double> x) {
        return reform_objective(dataset, unflatten(x), t, kind);
    };
    const GradientFn g = [&](std::span<const double> x, std::span<double> out) {
        const Matrix grad = reform_gradient(dataset, unflatten(x), t, kind);
        for (std::size_t k = 0; k < c; ++k) {
            for (std::size_t s = 0; s < dim; ++s) out[k * dim + s] = grad(k, s);
        }
    };

    std::vector<double> x0(c * dim);
    for (std::size_t k = 0; k < c; ++k) {
        for (std::size_t s = 0; s < dim; ++s) x0[k * dim + s] = init.matrix()(k, s);
    }

    MinimizeOptions mopts;
    mopts.tol = opts.tol;
    mopts.max_iter = opts.max_iter;
    const MinimizeResult res = minimize(f, g, std::move(x0), mopts);

    Centers y = unflatten(res.x);
    const DistortionMatrix dm = distortion_matrix(dataset, y);
    ClusterState out{y, update_membership(dm, t.t1, kind), update_weights(dm, t, kind)};
    out.objective = reform_objective(dataset, y, t, kind);
    out.iterations = res.iterations;
    out.converged = res.status == MinimizeStatus::converged;
    return out;
}

ClusterState reform_solve(const Dataset& dataset, int clusters, const Temperatures& t,
                          DistortionKind kind, Rng& rng, const ReformOptions& opts) {
    return reform_solve_from(dataset, sample_distinct_rows(dataset, clusters, rng), t,
                             kind, opts);
}

}  // namespace itisc
