#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "itisc/baselines.hpp"
#include "itisc/engine.hpp"
#include "itisc/rng.hpp"

using namespace itisc;

namespace {

Dataset random_dataset(Rng& rng, std::size_t n, std::size_t s, double scale = 3.0) {
    Matrix m(n, s);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < s; ++j) m(i, j) = scale * rng.gaussian();
    }
    return Dataset(std::move(m));
}

Centers random_centers(Rng& rng, std::size_t c, std::size_t s, double scale = 3.0) {
    Matrix m(c, s);
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = 0; j < s; ++j) m(i, j) = scale * rng.gaussian();
    }
    return Centers(std::move(m));
}

DistortionMatrix row_matrix(const std::vector<std::vector<double>>& rows) {
    return DistortionMatrix{Matrix::from_rows(rows)};
}

constexpr DistortionKind kSquared = DistortionKind::squared_euclidean;
constexpr DistortionKind kLog = DistortionKind::log_squared_euclidean;

}  // namespace

TEST_CASE("update_membership oracles") {
    SUBCASE("squared kind, t1=1, d=[0,1]") {
        const Membership u = update_membership(row_matrix({{0.0, 1.0}}), 1.0, kSquared);
        // logistic split evaluated to full precision
        CHECK(u.u(0, 0) == doctest::Approx(0.731058578630004879).epsilon(1e-15));
        CHECK(u.u(0, 1) == doctest::Approx(0.268941421369995121).epsilon(1e-15));
    }
    SUBCASE("log kind, t1=1, d=[1,4] matches the FCM m=2 membership") {
        const Membership u = update_membership(row_matrix({{1.0, 4.0}}), 1.0, kLog);
        CHECK(u.u(0, 0) == doctest::Approx(0.8).epsilon(1e-14));
        CHECK(u.u(0, 1) == doctest::Approx(0.2).epsilon(1e-14));
    }
    SUBCASE("equidistant row is uniform for both kinds") {
        for (const auto kind : {kSquared, kLog}) {
            const Membership u =
                update_membership(row_matrix({{2.0, 2.0, 2.0}}), 0.7, kind);
            for (std::size_t j = 0; j < 3; ++j) {
                CHECK(u.u(0, j) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
            }
        }
    }
    SUBCASE("rows sum to one on random instances") {
        Rng rng(21);
        for (const auto kind : {kSquared, kLog}) {
            for (const double t1 : {0.3, 1.0, 2.5}) {
                Matrix d(6, 4);
                for (std::size_t i = 0; i < 6; ++i) {
                    for (std::size_t j = 0; j < 4; ++j) {
                        d(i, j) = std::abs(8.0 * rng.gaussian());
                    }
                }
                const Membership u = update_membership(DistortionMatrix{d}, t1, kind);
                CHECK(validate_membership(u).ok());
            }
        }
    }
    SUBCASE("log kind closed form at general t1") {
        const double t1 = 0.5;
        const Membership u =
            update_membership(row_matrix({{1.0, 4.0, 9.0}}), t1, kLog);
        double norm = 0.0;
        std::vector<double> expect(3);
        const std::vector<double> d{1.0, 4.0, 9.0};
        for (int j = 0; j < 3; ++j) {
            expect[j] = std::pow(d[j], -1.0 / t1);
            norm += expect[j];
        }
        for (int j = 0; j < 3; ++j) {
            CHECK(u.u(0, j) == doctest::Approx(expect[j] / norm).epsilon(1e-13));
        }
    }
}

TEST_CASE("update_weights oracles") {
    SUBCASE("log kind hand case: rows [1,4] and [1,1] at t1=t2=1") {
        const ImportanceWeights w =
            update_weights(row_matrix({{1.0, 4.0}, {1.0, 1.0}}), Temperatures(1.0, 1.0),
                           kLog);
        // unnormalized 0.8 and 0.5
        CHECK(w.w[0] == doctest::Approx(0.8 / 1.3).epsilon(1e-14));
        CHECK(w.w[1] == doctest::Approx(0.5 / 1.3).epsilon(1e-14));
    }
    SUBCASE("row-permuted distortions share one weight") {
        const ImportanceWeights w =
            update_weights(row_matrix({{1.0, 9.0}, {9.0, 1.0}}), Temperatures(0.8, 0.6),
                           kSquared);
        CHECK(w.w[0] == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(w.w[1] == doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("huge t2 flattens the weights") {
        Rng rng(31);
        Matrix d(40, 3);
        for (std::size_t i = 0; i < 40; ++i) {
            for (std::size_t j = 0; j < 3; ++j) d(i, j) = std::abs(6.0 * rng.gaussian());
        }
        const ImportanceWeights w =
            update_weights(DistortionMatrix{d}, Temperatures(1.0, 1e6), kSquared);
        for (const double v : w.w) {
            CHECK(std::abs(v - 1.0 / 40.0) < 1e-6);
        }
    }
    SUBCASE("farther points carry heavier weights") {
        // single center, increasing distances
        const ImportanceWeights w = update_weights(
            row_matrix({{0.5}, {2.0}, {8.0}}), Temperatures(1.0, 0.5), kSquared);
        CHECK(w.w[0] < w.w[1]);
        CHECK(w.w[1] < w.w[2]);
        CHECK(validate_weights(w).ok());
    }
    SUBCASE("extreme small t2 stays normalized (log-domain path)") {
        const ImportanceWeights w = update_weights(
            row_matrix({{1.0, 30.0}, {25.0, 2.0}, {40.0, 35.0}}),
            Temperatures(1.0, 0.05), kSquared);
        CHECK(validate_weights(w).ok());
        CHECK(w.w[2] > 0.999);  // softmin distance 35 dominates at exp(d/0.05)
    }
}

TEST_CASE("update_centers") {
    SUBCASE("uniform weights, crisp memberships give per-cluster means") {
        const Dataset data(
            Matrix::from_rows({{0.0, 0.0}, {2.0, 0.0}, {10.0, 4.0}, {12.0, 8.0}}));
        const Membership u{Matrix::from_rows(
            {{1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {0.0, 1.0}})};
        const ImportanceWeights w{{0.25, 0.25, 0.25, 0.25}};
        const Centers prev(Matrix::from_rows({{0.0, 0.0}, {0.0, 0.0}}));
        const Centers y =
            update_centers(data, u, w, Temperatures(1.0, 1.0), kSquared, prev);
        CHECK(y.center(0)[0] == doctest::Approx(1.0));
        CHECK(y.center(0)[1] == doctest::Approx(0.0));
        CHECK(y.center(1)[0] == doctest::Approx(11.0));
        CHECK(y.center(1)[1] == doctest::Approx(6.0));
    }
    SUBCASE("single point, single cluster returns the point") {
        const Dataset data(Matrix::from_rows({{3.0, -1.0}}));
        const Membership u{Matrix::from_rows({{1.0}})};
        const ImportanceWeights w{{1.0}};
        const Centers prev(Matrix::from_rows({{0.0, 0.0}}));
        for (const auto kind : {kSquared, kLog}) {
            const Centers y =
                update_centers(data, u, w, Temperatures(0.9, 0.8), kind, prev);
            CHECK(y.center(0)[0] == doctest::Approx(3.0));
            CHECK(y.center(0)[1] == doctest::Approx(-1.0));
        }
    }
    SUBCASE("squared kind matches the plain weighted mean") {
        Rng rng(41);
        const Dataset data = random_dataset(rng, 9, 2);
        const ClusterState st = random_init(data, 3, rng);
        const Centers y = update_centers(data, st.membership, st.weights,
                                         Temperatures(1.3, 0.7), kSquared, st.centers);
        for (std::size_t k = 0; k < 3; ++k) {
            double den = 0.0, numx = 0.0, numy = 0.0;
            for (std::size_t i = 0; i < 9; ++i) {
                const double c = st.weights.w[i] * st.membership.u(i, k);
                den += c;
                numx += c * data.point(i)[0];
                numy += c * data.point(i)[1];
            }
            CHECK(y.center(k)[0] == doctest::Approx(numx / den).epsilon(1e-12));
            CHECK(y.center(k)[1] == doctest::Approx(numy / den).epsilon(1e-12));
        }
    }
    SUBCASE("log kind matches w^(1-t2) u^(1+t1) brute force") {
        Rng rng(43);
        const Dataset data = random_dataset(rng, 7, 2);
        const ClusterState st = random_init(data, 2, rng);
        const Temperatures t(0.6, 1.7);
        const Centers y = update_centers(data, st.membership, st.weights, t, kLog,
                                         st.centers);
        for (std::size_t k = 0; k < 2; ++k) {
            double den = 0.0, numx = 0.0, numy = 0.0;
            for (std::size_t i = 0; i < 7; ++i) {
                const double c = std::pow(st.weights.w[i], 1.0 - t.t2) *
                                 std::pow(st.membership.u(i, k), 1.0 + t.t1);
                den += c;
                numx += c * data.point(i)[0];
                numy += c * data.point(i)[1];
            }
            CHECK(y.center(k)[0] == doctest::Approx(numx / den).epsilon(1e-11));
            CHECK(y.center(k)[1] == doctest::Approx(numy / den).epsilon(1e-11));
        }
    }
    SUBCASE("log kind at t2=1 cancels the weights: FCM center update") {
        Rng rng(47);
        const Dataset data = random_dataset(rng, 11, 2);
        const ClusterState st = random_init(data, 3, rng);
        const double t1 = 1.4;  // m = 2.4
        const Centers y = update_centers(data, st.membership, st.weights,
                                         Temperatures(t1, 1.0), kLog, st.centers);
        for (std::size_t k = 0; k < 3; ++k) {
            double den = 0.0, numx = 0.0, numy = 0.0;
            for (std::size_t i = 0; i < 11; ++i) {
                const double c = std::pow(st.membership.u(i, k), 1.0 + t1);
                den += c;
                numx += c * data.point(i)[0];
                numy += c * data.point(i)[1];
            }
            CHECK(y.center(k)[0] == doctest::Approx(numx / den).epsilon(1e-11));
            CHECK(y.center(k)[1] == doctest::Approx(numy / den).epsilon(1e-11));
        }
    }
    SUBCASE("underflowed denominator keeps the previous center and counts") {
        const Dataset data(Matrix::from_rows({{1.0}, {2.0}}));
        // membership column for cluster 1 is exactly zero
        const Membership u{Matrix::from_rows({{1.0, 0.0}, {1.0, 0.0}})};
        const ImportanceWeights w{{0.5, 0.5}};
        const Centers prev(Matrix::from_rows({{-7.0}, {9.0}}));
        int degenerate = 0;
        const Centers y = update_centers(data, u, w, Temperatures(1.0, 1.0), kSquared,
                                         prev, &degenerate);
        CHECK(degenerate == 1);
        CHECK(y.center(0)[0] == doctest::Approx(1.5));
        CHECK(y.center(1)[0] == 9.0);
    }
}

TEST_CASE("full_objective estimator terms") {
    SUBCASE("crisp u, uniform w") {
        const Dataset data(Matrix::from_rows({{0.0}, {4.0}}));
        const Centers y(Matrix::from_rows({{1.0}}));
        const Membership u{Matrix::from_rows({{1.0}, {1.0}})};
        const ImportanceWeights w{{0.5, 0.5}};
        const ObjectiveBreakdown b =
            full_objective(data, y, u, w, Temperatures(1.0, 1.0), kSquared);
        CHECK(b.expected_distortion == doctest::Approx(0.5 * 1.0 + 0.5 * 9.0));
        CHECK(b.conditional_entropy == doctest::Approx(0.0));
        CHECK(b.weight_kl == doctest::Approx(0.0));
    }
    SUBCASE("uniform u and w over equidistant rows") {
        const Dataset data(Matrix::from_rows({{0.0, 0.0}, {0.0, 0.0}}));
        const Centers y(Matrix::from_rows({{3.0, 4.0}, {-3.0, -4.0}, {5.0, 0.0}}));
        const Membership u{Matrix::from_rows({{1.0 / 3, 1.0 / 3, 1.0 / 3},
                                              {1.0 / 3, 1.0 / 3, 1.0 / 3}})};
        const ImportanceWeights w{{0.5, 0.5}};
        const ObjectiveBreakdown b =
            full_objective(data, y, u, w, Temperatures(2.0, 1.0), kSquared);
        CHECK(b.expected_distortion == doctest::Approx(25.0));
        CHECK(b.conditional_entropy == doctest::Approx(std::log(3.0)).epsilon(1e-12));
        CHECK(b.weight_kl == doctest::Approx(0.0));
    }
    SUBCASE("random state matches brute-force sums") {
        Rng rng(51);
        for (const auto kind : {kSquared, kLog}) {
            const Dataset data = random_dataset(rng, 8, 2);
            const ClusterState st = random_init(data, 3, rng);
            const Temperatures t(0.9, 1.3);
            const ObjectiveBreakdown b =
                full_objective(data, st.centers, st.membership, st.weights, t, kind);

            const DistortionMatrix dm = distortion_matrix(data, st.centers);
            double dhat = 0.0, ent = 0.0, wlogw = 0.0;
            for (std::size_t i = 0; i < 8; ++i) {
                for (std::size_t k = 0; k < 3; ++k) {
                    const double delta = effective_distortion(dm.d(i, k), kind);
                    const double uu = st.membership.u(i, k);
                    dhat += st.weights.w[i] * uu * delta;
                    if (uu > 0.0) ent -= st.weights.w[i] * uu * std::log(uu);
                }
                wlogw += st.weights.w[i] * std::log(st.weights.w[i]);
            }
            CHECK(b.expected_distortion == doctest::Approx(dhat).epsilon(1e-12));
            CHECK(b.conditional_entropy == doctest::Approx(ent).epsilon(1e-12));
            CHECK(b.weight_kl ==
                  doctest::Approx(wlogw + std::log(8.0)).epsilon(1e-12));
            CHECK(b.total ==
                  doctest::Approx(dhat - t.t1 * ent - t.t2 * wlogw).epsilon(1e-12));
            CHECK(b.weight_kl >= -1e-12);
        }
    }
}

TEST_CASE("reformulation collapses for N=1, C=1") {
    const Dataset data(Matrix::from_rows({{2.0, 1.0}}));
    const Centers y(Matrix::from_rows({{-1.0, 1.0}}));
    const Temperatures t(0.7, 1.9);
    const double d = 9.0;
    CHECK(reform_objective(data, y, t, kSquared) == doctest::Approx(d).epsilon(1e-12));
    CHECK(reform_objective(data, y, t, kLog) ==
          doctest::Approx(std::log(d)).epsilon(1e-12));

    // gradient collapse: g = 2(y - x) for the squared kind
    const Matrix g = reform_gradient(data, y, t, kSquared);
    CHECK(g(0, 0) == doctest::Approx(2.0 * (-1.0 - 2.0)).epsilon(1e-12));
    CHECK(g(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("reformulation identity on random instances") {
    Rng rng(61);
    for (int rep = 0; rep < 40; ++rep) {
        const auto kind = rep % 2 == 0 ? kSquared : kLog;
        const std::size_t n = 3 + rng.uniform_index(8);
        const std::size_t c = 1 + rng.uniform_index(std::min<std::size_t>(n, 4));
        const Dataset data = random_dataset(rng, n, 2);
        const Centers y = random_centers(rng, c, 2);
        const Temperatures t(0.2 + 2.0 * rng.uniform(), 0.2 + 2.0 * rng.uniform());

        const DistortionMatrix dm = distortion_matrix(data, y);
        const Membership u = update_membership(dm, t.t1, kind);
        const ImportanceWeights w = update_weights(dm, t, kind);
        const double lhs = reform_objective(data, y, t, kind);
        const double rhs = full_objective(data, y, u, w, t, kind).total;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
        CHECK(std::abs(lhs - rhs) < 1e-9);
    }
}

TEST_CASE("saddle structure at the optimality conditions") {
    Rng rng(67);
    for (int rep = 0; rep < 6; ++rep) {
        const auto kind = rep % 2 == 0 ? kSquared : kLog;
        const Dataset data = random_dataset(rng, 7, 2);
        const Centers y = random_centers(rng, 3, 2);
        const Temperatures t(0.8, 1.2);
        const DistortionMatrix dm = distortion_matrix(data, y);
        const Membership ustar = update_membership(dm, t.t1, kind);
        const ImportanceWeights wstar = update_weights(dm, t, kind);
        const double at_star = full_objective(data, y, ustar, wstar, t, kind).total;

        for (int p = 0; p < 10; ++p) {
            // random feasible U: F(U', W*) >= F(U*, W*)
            Matrix urand(7, 3);
            for (std::size_t i = 0; i < 7; ++i) {
                double total = 0.0;
                for (std::size_t k = 0; k < 3; ++k) {
                    urand(i, k) = rng.uniform_positive();
                    total += urand(i, k);
                }
                for (std::size_t k = 0; k < 3; ++k) urand(i, k) /= total;
            }
            const double perturbed_u =
                full_objective(data, y, Membership{urand}, wstar, t, kind).total;
            CHECK(perturbed_u >= at_star - 1e-10);

            // random feasible W: F(U*, W') <= F(U*, W*)
            std::vector<double> wrand(7);
            double total = 0.0;
            for (double& v : wrand) {
                v = rng.uniform_positive();
                total += v;
            }
            for (double& v : wrand) v /= total;
            const double perturbed_w =
                full_objective(data, y, ustar, ImportanceWeights{wrand}, t, kind).total;
            CHECK(perturbed_w <= at_star + 1e-10);
        }
    }
}

TEST_CASE("reform_gradient matches central differences") {
    Rng rng(71);
    for (const auto kind : {kSquared, kLog}) {
        for (const double t1 : {0.5, 1.0, 2.0}) {
            for (const double t2 : {0.3, 1.0, 2.0}) {
                const Dataset data = random_dataset(rng, 9, 2);
                const Centers y = random_centers(rng, 3, 2);
                const Temperatures t(t1, t2);
                const Matrix g = reform_gradient(data, y, t, kind);

                double max_rel = 0.0;
                for (std::size_t k = 0; k < 3; ++k) {
                    for (std::size_t s = 0; s < 2; ++s) {
                        Matrix yp = y.matrix();
                        Matrix ym = y.matrix();
                        const double h = 1e-5;
                        yp(k, s) += h;
                        ym(k, s) -= h;
                        const double fd =
                            (reform_objective(data, Centers(yp), t, kind) -
                             reform_objective(data, Centers(ym), t, kind)) /
                            (2.0 * h);
                        const double rel = std::abs(fd - g(k, s)) /
                                           std::max(1.0, std::abs(fd));
                        max_rel = std::max(max_rel, rel);
                    }
                }
                CHECK(max_rel < 1e-5);
            }
        }
    }
}

TEST_CASE("ao_solve behaviour") {
    SUBCASE("distinct points, small t1: centers land on the points") {
        const Dataset data(
            Matrix::from_rows({{0.0, 0.0}, {5.0, 0.0}, {0.0, 5.0}}));
        for (const auto kind : {kSquared, kLog}) {
            Rng rng(81);
            AoOptions opts;
            const ClusterState st =
                ao_solve(data, 3, Temperatures(0.05, 1.0), kind, rng, opts);
            CHECK(st.converged);
            // every data point has a center essentially on top of it
            for (std::size_t i = 0; i < 3; ++i) {
                double best = 1e300;
                for (std::size_t k = 0; k < 3; ++k) {
                    best = std::min(best, squared_distance(data.point(i),
                                                           st.centers.center(k)));
                }
                CHECK(best < 1e-6);
            }
            const ObjectiveBreakdown b = full_objective(
                data, st.centers, st.membership, st.weights,
                Temperatures(0.05, 1.0), kind);
            CHECK(b.expected_distortion < 1e-6);
        }
    }
    SUBCASE("deterministic trajectory for a fixed seed") {
        Rng r1(5), r2(5);
        Matrix pts(30, 2);
        Rng gen(99);
        for (std::size_t i = 0; i < 30; ++i) {
            pts(i, 0) = gen.gaussian();
            pts(i, 1) = gen.gaussian();
        }
        const Dataset data(std::move(pts));
        std::vector<Matrix> trace1, trace2;
        AoOptions o1;
        o1.on_iteration = [&](int, const ClusterState& s) {
            trace1.push_back(s.centers.matrix());
        };
        AoOptions o2;
        o2.on_iteration = [&](int, const ClusterState& s) {
            trace2.push_back(s.centers.matrix());
        };
        const ClusterState a =
            ao_solve(data, 3, Temperatures(1.0, 0.7), kLog, r1, o1);
        const ClusterState b =
            ao_solve(data, 3, Temperatures(1.0, 0.7), kLog, r2, o2);
        REQUIRE(trace1.size() == trace2.size());
        for (std::size_t i = 0; i < trace1.size(); ++i) {
            CHECK(frobenius_distance(trace1[i], trace2[i]) == 0.0);
        }
        CHECK(a.objective == b.objective);
        CHECK(validate_membership(a.membership).ok());
        CHECK(validate_weights(a.weights).ok());
    }
    SUBCASE("final objective equals reform_objective at the final centers") {
        Rng rng(102);
        const Dataset data = random_dataset(rng, 40, 2);
        const ClusterState st =
            ao_solve(data, 3, Temperatures(1.0, 0.9), kSquared, rng);
        CHECK(st.objective ==
              doctest::Approx(reform_objective(data, st.centers,
                                               Temperatures(1.0, 0.9), kSquared))
                  .epsilon(1e-12));
    }
}

TEST_CASE("fuzzy AO at t2=1 walks in lockstep with FCM") {
    Rng gen(7);
    Matrix pts(60, 2);
    for (std::size_t i = 0; i < 60; ++i) {
        pts(i, 0) = gen.gaussian() + (i % 3 == 0 ? 4.0 : 0.0);
        pts(i, 1) = gen.gaussian() - (i % 3 == 1 ? 4.0 : 0.0);
    }
    const Dataset data(std::move(pts));

    for (const double m : {1.5, 2.0, 3.0}) {
        Rng ra(11), rb(11);
        const Centers init = kmeans_pp_init(data, 3, ra);
        const Centers init_b = kmeans_pp_init(data, 3, rb);
        REQUIRE(frobenius_distance(init.matrix(), init_b.matrix()) == 0.0);

        std::vector<Matrix> fcm_trace, fuzzy_trace;
        FcmOptions fo;
        fo.max_iter = 25;
        fo.eps = 0.0;  // run all sweeps
        fo.on_iteration = [&](int, const ClusterState& s) {
            fcm_trace.push_back(s.centers.matrix());
        };
        fcm_solve_from(data, init, m, fo);

        AoOptions ao;
        ao.max_iter = 25;
        ao.eps = 0.0;
        ao.on_iteration = [&](int, const ClusterState& s) {
            fuzzy_trace.push_back(s.centers.matrix());
        };
        ao_solve_from(data, init_b, Temperatures(m - 1.0, 1.0), kLog, ao);

        REQUIRE(fcm_trace.size() == fuzzy_trace.size());
        // the two paths round differently (direct powers vs log-space), and
        // the sweep map amplifies last-ulp noise; any semantic difference in
        // the update would blow past this within a sweep or two
        for (std::size_t i = 0; i < fcm_trace.size(); ++i) {
            CHECK(frobenius_distance(fcm_trace[i], fuzzy_trace[i]) < 1e-6);
        }
    }
}

TEST_CASE("reform_solve") {
    SUBCASE("single point") {
        const Dataset data(Matrix::from_rows({{4.0, -2.0}}));
        Rng rng(3);
        const ClusterState st =
            reform_solve(data, 1, Temperatures(1.0, 1.0), kSquared, rng);
        CHECK(st.converged);
        CHECK(st.centers.center(0)[0] == doctest::Approx(4.0).epsilon(1e-7));
        CHECK(st.centers.center(0)[1] == doctest::Approx(-2.0).epsilon(1e-7));
    }
    SUBCASE("descent from the initialization and validity") {
        Rng rng(119);
        const Dataset data = random_dataset(rng, 50, 2);
        Rng init_rng(4);
        const Centers init = kmeans_pp_init(data, 3, init_rng);
        const Temperatures t(1.0, 0.4);
        const double before = reform_objective(data, init, t, kLog);
        const ClusterState st = reform_solve_from(data, init, t, kLog);
        CHECK(st.objective <= before + 1e-12);
        CHECK(st.converged);
        CHECK(validate_membership(st.membership).ok());
        CHECK(validate_weights(st.weights).ok());
        // stationary point: analytic gradient vanishes
        double gnorm = 0.0;
        const Matrix g = reform_gradient(data, st.centers, t, kLog);
        for (std::size_t k = 0; k < g.rows(); ++k) {
            for (std::size_t s = 0; s < g.cols(); ++s) {
                gnorm = std::max(gnorm, std::abs(g(k, s)));
            }
        }
        CHECK(gnorm < 1e-5);
    }
    SUBCASE("theorem-1 cross-check: gradients vanish at the other's solution") {
        Rng gen(8);
        Matrix pts(45, 2);
        for (std::size_t i = 0; i < 45; ++i) {
            pts(i, 0) = gen.gaussian() + (i % 3) * 3.0;
            pts(i, 1) = gen.gaussian();
        }
        const Dataset data(std::move(pts));
        Rng ra(2);
        const Centers init = kmeans_pp_init(data, 3, ra);
        FcmOptions fo;
        fo.eps = 1e-10;
        fo.max_iter = 2000;
        const ClusterState fcm = fcm_solve_from(data, init, 2.0, fo);
        const Matrix g =
            reform_gradient(data, fcm.centers, Temperatures(1.0, 1.0), kLog);
        double gnorm = 0.0;
        for (std::size_t k = 0; k < g.rows(); ++k) {
            for (std::size_t s = 0; s < g.cols(); ++s) {
                gnorm = std::max(gnorm, std::abs(g(k, s)));
            }
        }
        CHECK(gnorm < 1e-4);
    }
}

TEST_CASE("weight concentration is monotone in t2 at converged centers") {
    Rng gen(23);
    Matrix pts(90, 2);
    for (std::size_t i = 0; i < 90; ++i) {
        pts(i, 0) = gen.gaussian() + (i % 3) * 4.0;
        pts(i, 1) = gen.gaussian();
    }
    const Dataset data(std::move(pts));
    double prev_max = 0.0;
    for (const double t2 : {0.3, 0.5, 0.7, 1.0}) {
        Rng rng(1);
        const ClusterState st =
            reform_solve(data, 3, Temperatures(1.0, t2), kLog, rng);
        const double mx = *std::max_element(st.weights.w.begin(), st.weights.w.end());
        if (prev_max > 0.0) {
            CHECK(mx <= prev_max + 1e-12);  // non-increasing in t2
        }
        prev_max = mx;
    }
}
