#include "itisc/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "itisc/distortion.hpp"
#include "itisc/errors.hpp"

namespace itisc {

namespace {

std::vector<int> nearest_labels(const Dataset& dataset, const Centers& centers) {
    std::vector<int> labels(dataset.size());
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        int arg = 0;
        for (std::size_t j = 0; j < centers.count(); ++j) {
            const double d = squared_distance(dataset.point(i), centers.center(j));
            if (d < best) {
                best = d;
                arg = static_cast<int>(j);
            }
        }
        labels[i] = arg;
    }
    return labels;
}

double assignment_cost(const Dataset& dataset, const std::vector<int>& labels,
                       const Centers& centers) {
    double cost = 0.0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        cost += squared_distance(dataset.point(i),
                                 centers.center(static_cast<std::size_t>(labels[i])));
    }
    return cost;
}

}  // namespace

Linkage linkage_from_string(const std::string& name) {
    if (name == "ward") return Linkage::ward;
    if (name == "complete") return Linkage::complete;
    if (name == "average") return Linkage::average;
    if (name == "single") return Linkage::single;
    throw config_error("unknown linkage: " + name);
}

std::string to_string(Linkage linkage) {
    switch (linkage) {
        case Linkage::ward: return "ward";
        case Linkage::complete: return "complete";
        case Linkage::average: return "average";
        case Linkage::single: return "single";
    }
    return "ward";
}

Centers kmeans_pp_init(const Dataset& dataset, int clusters, Rng& rng) {
    const std::size_t n = dataset.size();
    if (clusters < 1 || static_cast<std::size_t>(clusters) > n) {
        throw config_error("cluster count must be between 1 and the number of points");
    }
    const std::size_t c = static_cast<std::size_t>(clusters);
    const std::size_t dim = dataset.dim();

    Matrix y(c, dim);
    const auto set_center = [&](std::size_t k, std::size_t i) {
        const auto row = dataset.point(i);
        for (std::size_t s = 0; s < dim; ++s) y(k, s) = row[s];
    };

    const std::size_t first = rng.uniform_index(n);
    set_center(0, first);

    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) {
        d2[i] = squared_distance(dataset.point(i), dataset.point(first));
    }

    for (std::size_t k = 1; k < c; ++k) {
        double total = 0.0;
        for (const double v : d2) total += v;
        std::size_t pick;
        if (total > 0.0) {
            const double r = rng.uniform() * total;
            double acc = 0.0;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                if (d2[i] <= 0.0) continue;
                acc += d2[i];
                if (acc > r) {
                    pick = i;
                    break;
                }
            }
        } else {
            // every point coincides with a chosen center
            pick = rng.uniform_index(n);
        }
        set_center(k, pick);
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], squared_distance(dataset.point(i), dataset.point(pick)));
        }
    }
    return Centers(std::move(y));
}

HardClustering kmeans_solve_from(const Dataset& dataset, const Centers& init,
                                 const KmeansOptions& opts) {
    if (init.dim() != dataset.dim()) {
        throw std::invalid_argument("initial centers do not match dataset dimension");
    }
    const std::size_t n = dataset.size();
    const std::size_t c = init.count();
    const std::size_t dim = dataset.dim();

    Centers centers = init;
    std::vector<int> labels;
    bool converged = false;
    int iterations = 0;

    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        iterations = iter;
        labels = nearest_labels(dataset, centers);
        if (opts.on_iteration) opts.on_iteration(iter, assignment_cost(dataset, labels, centers));

        Matrix next(c, dim, 0.0);
        std::vector<std::size_t> counts(c, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto x = dataset.point(i);
            const std::size_t k = static_cast<std::size_t>(labels[i]);
            ++counts[k];
            for (std::size_t s = 0; s < dim; ++s) next(k, s) += x[s];
        }
        for (std::size_t k = 0; k < c; ++k) {
            if (counts[k] == 0) {
                // re-seed an empty cluster to the point farthest from its center
                double best = -1.0;
                std::size_t arg = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double d = squared_distance(dataset.point(i), centers.center(k));
                    if (d > best) {
                        best = d;
                        arg = i;
                    }
                }
                const auto row = dataset.point(arg);
                for (std::size_t s = 0; s < dim; ++s) next(k, s) = row[s];
            } else {
                for (std::size_t s = 0; s < dim; ++s) {
                    next(k, s) /= static_cast<double>(counts[k]);
                }
            }
        }

        Centers updated(std::move(next));
        const double movement = frobenius_distance(centers.matrix(), updated.matrix());
        centers = std::move(updated);
        if (movement <= opts.eps) {
            converged = true;
            break;
        }
    }

    HardClustering out{nearest_labels(dataset, centers), centers};
    out.cost = assignment_cost(dataset, out.labels, out.centers);
    out.iterations = iterations;
    out.converged = converged;
    return out;
}

HardClustering kmeans_solve(const Dataset& dataset, int clusters, Rng& rng,
                            const KmeansOptions& opts) {
    return kmeans_solve_from(dataset, kmeans_pp_init(dataset, clusters, rng), opts);
}

namespace {

// FCM membership at fixed centers; a row with exact zero distances is split
// equally among the coinciding centers.
Membership fcm_membership(const DistortionMatrix& dm, double m) {
    const std::size_t n = dm.points();
    const std::size_t c = dm.clusters();
    Matrix u(n, c);
    const double expo = 1.0 / (1.0 - m);
    std::vector<double> logs(c);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t zeros = 0;
        for (std::size_t j = 0; j < c; ++j) {
            if (dm.d(i, j) == 0.0) ++zeros;
        }
        if (zeros > 0) {
            for (std::size_t j = 0; j < c; ++j) {
                u(i, j) = dm.d(i, j) == 0.0 ? 1.0 / static_cast<double>(zeros) : 0.0;
            }
            continue;
        }
        for (std::size_t j = 0; j < c; ++j) logs[j] = expo * std::log(dm.d(i, j));
        const double lse = log_sum_exp(logs);
        double sum = 0.0;
        for (std::size_t j = 0; j < c; ++j) {
            u(i, j) = std::exp(logs[j] - lse);
            sum += u(i, j);
        }
        for (std::size_t j = 0; j < c; ++j) u(i, j) /= sum;
    }
    return Membership{std::move(u)};
}

}  // namespace

ClusterState fcm_solve_from(const Dataset& dataset, const Centers& init, double m,
                            const FcmOptions& opts) {
    if (!(m > 1.0)) throw config_error("fcm fuzzifier m must exceed 1");
    if (init.dim() != dataset.dim()) {
        throw std::invalid_argument("initial centers do not match dataset dimension");
    }
    const std::size_t n = dataset.size();
    const std::size_t c = init.count();
    const std::size_t dim = dataset.dim();

    Centers centers = init;
    bool converged = false;
    int iterations = 0;
    int degenerate_total = 0;
    const ImportanceWeights uniform{std::vector<double>(n, 1.0 / static_cast<double>(n))};

    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        iterations = iter;
        const Membership u = fcm_membership(distortion_matrix(dataset, centers), m);

        Matrix next = centers.matrix();
        for (std::size_t k = 0; k < c; ++k) {
            double den = 0.0;
            std::vector<double> num(dim, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                const double coef = std::pow(u.u(i, k), m);
                den += coef;
                const auto x = dataset.point(i);
                for (std::size_t s = 0; s < dim; ++s) num[s] += coef * x[s];
            }
            if (!(den >= 1e-300)) {
                ++degenerate_total;
                continue;
            }
            for (std::size_t s = 0; s < dim; ++s) next(k, s) = num[s] / den;
        }

        Centers updated(std::move(next));
        const double movement = frobenius_distance(centers.matrix(), updated.matrix());
        centers = std::move(updated);

        if (opts.on_iteration) {
            ClusterState snapshot{centers, u, uniform,
                                  fcm_reform_objective(dataset, centers, m), iter,
                                  false, degenerate_total, false};
            opts.on_iteration(iter, snapshot);
        }

        if (movement <= opts.eps) {
            converged = true;
            break;
        }
    }

    ClusterState out{centers, fcm_membership(distortion_matrix(dataset, centers), m),
                     uniform};
    out.objective = fcm_reform_objective(dataset, centers, m);
    out.iterations = iterations;
    out.converged = converged;
    out.degenerate_updates = degenerate_total;
    return out;
}

ClusterState fcm_solve(const Dataset& dataset, int clusters, double m, Rng& rng,
                       const FcmOptions& opts) {
    const std::size_t n = dataset.size();
    if (clusters < 1 || static_cast<std::size_t>(clusters) > n) {
        throw config_error("cluster count must be between 1 and the number of points");
    }
    return fcm_solve_from(dataset, kmeans_pp_init(dataset, clusters, rng), m, opts);
}

double fcm_reform_objective(const Dataset& dataset, const Centers& centers, double m) {
    if (!(m > 1.0)) throw config_error("fcm fuzzifier m must exceed 1");
    const DistortionMatrix dm = distortion_matrix(dataset, centers);
    const double expo = 1.0 / (1.0 - m);
    std::vector<double> logs(dm.clusters());
    double total = 0.0;
    for (std::size_t i = 0; i < dm.points(); ++i) {
        for (std::size_t j = 0; j < dm.clusters(); ++j) {
            logs[j] = expo * std::log(std::max(dm.d(i, j), kDistortionFloor));
        }
        total += std::exp((1.0 - m) * log_sum_exp(logs));
    }
    return total;
}

HardClustering hierarchical_solve(const Dataset& dataset, int clusters, Linkage linkage) {
    const std::size_t n = dataset.size();
    if (clusters < 1 || static_cast<std::size_t>(clusters) > n) {
        throw config_error("cluster count must be between 1 and the number of points");
    }
    const std::size_t target = static_cast<std::size_t>(clusters);

    // Pairwise squared distances; merged clusters overwrite the smaller index.
    Matrix d(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = squared_distance(dataset.point(i), dataset.point(j));
            d(i, j) = v;
            d(j, i) = v;
        }
    }

    std::vector<bool> active(n, true);
    std::vector<double> sizes(n, 1.0);
    std::vector<std::vector<std::size_t>> members(n);
    for (std::size_t i = 0; i < n; ++i) members[i] = {i};

    std::size_t remaining = n;
    while (remaining > target) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!active[j]) continue;
                if (d(i, j) < best) {
                    best = d(i, j);
                    bi = i;
                    bj = j;
                }
            }
        }

        // Lance-Williams update of distances from the merged cluster (bi+bj)
        // to every other active cluster.
        const double ni = sizes[bi], nj = sizes[bj];
        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k] || k == bi || k == bj) continue;
            const double dik = d(bi, k), djk = d(bj, k), dij = d(bi, bj);
            double merged;
            switch (linkage) {
                case Linkage::single:
                    merged = std::min(dik, djk);
                    break;
                case Linkage::complete:
                    merged = std::max(dik, djk);
                    break;
                case Linkage::average:
                    merged = (ni * dik + nj * djk) / (ni + nj);
                    break;
                case Linkage::ward:
                default: {
                    const double nk = sizes[k];
                    merged = ((ni + nk) * dik + (nj + nk) * djk - nk * dij) /
                             (ni + nj + nk);
                    break;
                }
            }
            d(bi, k) = merged;
            d(k, bi) = merged;
        }

        sizes[bi] += sizes[bj];
        members[bi].insert(members[bi].end(), members[bj].begin(), members[bj].end());
        members[bj].clear();
        active[bj] = false;
        --remaining;
    }

    // Relabel active clusters by their smallest member index.
    std::vector<std::pair<std::size_t, std::size_t>> keyed;  // (smallest member, cluster row)
    for (std::size_t i = 0; i < n; ++i) {
        if (active[i]) {
            keyed.emplace_back(*std::min_element(members[i].begin(), members[i].end()), i);
        }
    }
    std::sort(keyed.begin(), keyed.end());

    std::vector<int> labels(n, 0);
    Matrix y(target, dataset.dim(), 0.0);
    for (std::size_t rank = 0; rank < keyed.size(); ++rank) {
        const auto& group = members[keyed[rank].second];
        for (const std::size_t idx : group) {
            labels[idx] = static_cast<int>(rank);
            const auto x = dataset.point(idx);
            for (std::size_t s = 0; s < dataset.dim(); ++s) y(rank, s) += x[s];
        }
        for (std::size_t s = 0; s < dataset.dim(); ++s) {
            y(rank, s) /= static_cast<double>(group.size());
        }
    }

    HardClustering out{std::move(labels), Centers(std::move(y))};
    out.cost = assignment_cost(dataset, out.labels, out.centers);
    out.iterations = static_cast<int>(n - target);
    out.converged = true;
    return out;
}

}  // namespace itisc
