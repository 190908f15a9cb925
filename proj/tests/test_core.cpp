#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "itisc/errors.hpp"
#include "itisc/matrix.hpp"
#include "itisc/rng.hpp"
#include "itisc/types.hpp"

using namespace itisc;

TEST_CASE("matrix basics") {
    Matrix m = Matrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 2);
    CHECK(m(1, 0) == 3.0);
    CHECK(m.all_finite());

    CHECK_THROWS_AS(Matrix::from_rows({{1.0}, {1.0, 2.0}}), std::invalid_argument);

    Matrix a = Matrix::from_rows({{0.0, 0.0}});
    Matrix b = Matrix::from_rows({{3.0, 4.0}});
    CHECK(frobenius_distance(a, b) == doctest::Approx(5.0));

    Matrix nan(1, 1);
    nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_FALSE(nan.all_finite());
}

TEST_CASE("rng stream is the documented mapping of mt19937_64") {
    Rng rng(42);
    std::mt19937_64 reference(42);
    for (int i = 0; i < 100; ++i) {
        const double expected =
            static_cast<double>(reference() >> 11) * 0x1.0p-53;
        CHECK(rng.uniform() == expected);
    }

    Rng a(7), b(7);
    for (int i = 0; i < 50; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
}

TEST_CASE("rng ranges") {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double p = rng.uniform_positive();
        CHECK(p > 0.0);
        CHECK(p <= 1.0);
    }
    for (int i = 0; i < 1000; ++i) {
        CHECK(rng.uniform_index(7) < 7);
    }
    CHECK(rng.uniform_index(1) == 0);
    CHECK_THROWS_AS(rng.uniform_index(0), std::invalid_argument);
}

TEST_CASE("rng gaussian moments") {
    Rng rng(123);
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.gaussian();
        sum += z;
        sq += z * z;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("validate_membership") {
    CHECK(validate_membership(
              Membership{Matrix::from_rows({{0.5, 0.5}, {1.0, 0.0}})})
              .ok());
    CHECK(validate_membership(Membership{Matrix::from_rows({{1.0}})}).ok());

    const auto report =
        validate_membership(Membership{Matrix::from_rows({{0.6, 0.6}})});
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations[0].kind == Violation::Kind::row_sum);
    CHECK(report.violations[0].index == 0);
    CHECK(report.violations[0].residual == doctest::Approx(0.2));

    const auto neg =
        validate_membership(Membership{Matrix::from_rows({{1.2, -0.2}})});
    CHECK_FALSE(neg.ok());
    CHECK(std::any_of(neg.violations.begin(), neg.violations.end(),
                      [](const Violation& v) {
                          return v.kind == Violation::Kind::entry_range;
                      }));

    // tolerance boundary: 1e-9 passes, well above it fails
    CHECK(validate_membership(
              Membership{Matrix::from_rows({{0.5, 0.5 + 0.9e-9}})})
              .ok());
    CHECK_FALSE(validate_membership(
                    Membership{Matrix::from_rows({{0.5, 0.5 + 1e-8}})})
                    .ok());
}

TEST_CASE("validate_weights") {
    CHECK(validate_weights(ImportanceWeights{{0.25, 0.25, 0.25, 0.25}}).ok());
    CHECK(validate_weights(ImportanceWeights{{1.0}}).ok());

    const auto report = validate_weights(ImportanceWeights{{0.7, 0.6}});
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations[0].kind == Violation::Kind::weight_sum);
    CHECK(report.violations[0].residual == doctest::Approx(0.3));
}

TEST_CASE("random_init shapes and constraints") {
    const Dataset data(Matrix::from_rows(
        {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {5.0, 5.0}}));
    Rng rng(9);
    const ClusterState state = random_init(data, 2, rng);

    CHECK(state.membership.points() == 4);
    CHECK(state.membership.clusters() == 2);
    CHECK(state.weights.size() == 4);
    CHECK(state.centers.count() == 2);
    CHECK(validate_membership(state.membership).ok());
    CHECK(validate_weights(state.weights).ok());

    // centers are distinct data rows
    std::set<std::size_t> matched;
    for (std::size_t k = 0; k < 2; ++k) {
        bool found = false;
        for (std::size_t i = 0; i < data.size(); ++i) {
            if (matched.count(i)) continue;
            if (std::equal(state.centers.center(k).begin(),
                           state.centers.center(k).end(),
                           data.point(i).begin())) {
                matched.insert(i);
                found = true;
                break;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("random_init determinism and pinned draw order") {
    const Dataset data(
        Matrix::from_rows({{0.0}, {1.0}, {2.0}, {3.0}}));
    Rng r1(77), r2(77);
    const ClusterState a = random_init(data, 2, r1);
    const ClusterState b = random_init(data, 2, r2);
    CHECK(frobenius_distance(a.membership.u, b.membership.u) == 0.0);
    CHECK(a.weights.w == b.weights.w);
    CHECK(frobenius_distance(a.centers.matrix(), b.centers.matrix()) == 0.0);

    // replay the documented order by hand: memberships row-major, then
    // weights, then center indices
    Rng replay(77);
    for (std::size_t i = 0; i < 4; ++i) {
        double row[2] = {replay.uniform_positive(), replay.uniform_positive()};
        const double total = row[0] + row[1];
        CHECK(a.membership.u(i, 0) == row[0] / total);
        CHECK(a.membership.u(i, 1) == row[1] / total);
    }
    double w[4];
    double wsum = 0.0;
    for (double& v : w) {
        v = replay.uniform_positive();
        wsum += v;
    }
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(a.weights.w[i] == w[i] / wsum);
    }
}

TEST_CASE("random_init edge cases") {
    const Dataset data(Matrix::from_rows({{0.0}, {1.0}, {2.0}}));
    Rng rng(5);
    CHECK_THROWS_AS(random_init(data, 0, rng), config_error);
    CHECK_THROWS_AS(random_init(data, 4, rng), config_error);

    // C = N: centers are a permutation of the points
    Rng rng2(5);
    const ClusterState full = random_init(data, 3, rng2);
    std::vector<double> got;
    for (std::size_t k = 0; k < 3; ++k) got.push_back(full.centers.center(k)[0]);
    std::sort(got.begin(), got.end());
    CHECK(got == std::vector<double>{0.0, 1.0, 2.0});
}

TEST_CASE("dataset and temperature validation") {
    CHECK_THROWS_AS(Temperatures(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Temperatures(1.0, -2.0), std::invalid_argument);
    Matrix bad(1, 1);
    bad(0, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(Dataset{bad}, std::invalid_argument);
}
