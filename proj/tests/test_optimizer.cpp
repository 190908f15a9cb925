#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "itisc/optimizer.hpp"
#include "itisc/rng.hpp"

using namespace itisc;

namespace {

// f(x) = 0.5 x'Ax - b'x with diagonal A
struct DiagQuadratic {
    std::vector<double> a;
    std::vector<double> b;

    double operator()(std::span<const double> x) const {
        double f = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            f += 0.5 * a[i] * x[i] * x[i] - b[i] * x[i];
        }
        return f;
    }
    void gradient(std::span<const double> x, std::span<double> g) const {
        for (std::size_t i = 0; i < x.size(); ++i) g[i] = a[i] * x[i] - b[i];
    }
};

double inf_norm_err(const std::vector<double>& x, const std::vector<double>& y) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

}  // namespace

TEST_CASE("minimize solves strictly convex quadratics in at most n+1 iterations") {
    for (const std::size_t n : {std::size_t{2}, std::size_t{4}, std::size_t{8}}) {
        DiagQuadratic q;
        Rng rng(200 + n);
        std::vector<double> xstar(n);
        for (std::size_t i = 0; i < n; ++i) {
            q.a.push_back(1.0 + 9.0 * rng.uniform());  // condition number up to 10
            xstar[i] = 4.0 * rng.gaussian();
            q.b.push_back(q.a[i] * xstar[i]);
        }
        std::vector<double> x0(n, 0.0);
        MinimizeOptions opts;
        opts.tol = 1e-10;
        const MinimizeResult r = minimize(
            [&](std::span<const double> x) { return q(x); },
            [&](std::span<const double> x, std::span<double> g) { q.gradient(x, g); },
            x0, opts);
        CHECK(r.status == MinimizeStatus::converged);
        CHECK(r.iterations <= static_cast<int>(n) + 1);
        CHECK(inf_norm_err(r.x, xstar) < 1e-8);
        CHECK(r.grad_norm <= 1e-10);
    }
}

TEST_CASE("minimize on the unit paraboloid from (3,4)") {
    const MinimizeResult r = minimize(
        [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1]; },
        [](std::span<const double> x, std::span<double> g) {
            g[0] = 2.0 * x[0];
            g[1] = 2.0 * x[1];
        },
        {3.0, 4.0});
    CHECK(r.status == MinimizeStatus::converged);
    CHECK(r.iterations <= 3);
    CHECK(std::abs(r.x[0]) < 1e-8);
    CHECK(std::abs(r.x[1]) < 1e-8);
    CHECK(r.f < 1e-15);
}

TEST_CASE("minimize reaches the Rosenbrock minimum from the classic start") {
    const auto f = [](std::span<const double> x) {
        const double a = 1.0 - x[0];
        const double b = x[1] - x[0] * x[0];
        return a * a + 100.0 * b * b;
    };
    const auto g = [](std::span<const double> x, std::span<double> grad) {
        const double b = x[1] - x[0] * x[0];
        grad[0] = -2.0 * (1.0 - x[0]) - 400.0 * x[0] * b;
        grad[1] = 200.0 * b;
    };
    MinimizeOptions opts;
    opts.tol = 1e-8;
    const MinimizeResult r = minimize(f, g, {-1.2, 1.0}, opts);
    CHECK(r.status == MinimizeStatus::converged);
    CHECK(std::abs(r.x[0] - 1.0) < 1e-5);
    CHECK(std::abs(r.x[1] - 1.0) < 1e-5);
    CHECK(r.f < 1e-10);
}

TEST_CASE("minimize returns immediately when the start is stationary") {
    const MinimizeResult r = minimize(
        [](std::span<const double> x) { return x[0] * x[0]; },
        [](std::span<const double> x, std::span<double> g) { g[0] = 2.0 * x[0]; },
        {0.0});
    CHECK(r.status == MinimizeStatus::converged);
    CHECK(r.iterations == 0);
    CHECK(r.x[0] == 0.0);
}

TEST_CASE("minimize reports max_iter when the budget is too small") {
    MinimizeOptions opts;
    opts.max_iter = 2;
    opts.tol = 1e-12;
    const auto f = [](std::span<const double> x) {
        const double a = 1.0 - x[0];
        const double b = x[1] - x[0] * x[0];
        return a * a + 100.0 * b * b;
    };
    const auto g = [](std::span<const double> x, std::span<double> grad) {
        const double b = x[1] - x[0] * x[0];
        grad[0] = -2.0 * (1.0 - x[0]) - 400.0 * x[0] * b;
        grad[1] = 200.0 * b;
    };
    const MinimizeResult r = minimize(f, g, {-1.2, 1.0}, opts);
    CHECK(r.status == MinimizeStatus::max_iter);
    CHECK(r.iterations == 2);
    // even so, the returned point must not be worse than the start
    CHECK(r.f <= f(std::vector<double>{-1.2, 1.0}));
}

TEST_CASE("limited history still converges on a larger ill-conditioned problem") {
    const std::size_t n = 30;
    DiagQuadratic q;
    Rng rng(77);
    std::vector<double> xstar(n);
    for (std::size_t i = 0; i < n; ++i) {
        q.a.push_back(std::pow(10.0, 2.0 * i / (n - 1.0)));  // condition 1e2
        xstar[i] = rng.gaussian();
        q.b.push_back(q.a[i] * xstar[i]);
    }
    MinimizeOptions opts;
    opts.history = 5;
    // |f*| is O(1e2) here, so the line search cannot resolve decreases much
    // below eps*|f*|; gradient norms under ~1e-7 are out of reach
    opts.tol = 1e-6;
    opts.max_iter = 400;
    const MinimizeResult r = minimize(
        [&](std::span<const double> x) { return q(x); },
        [&](std::span<const double> x, std::span<double> g) { q.gradient(x, g); },
        std::vector<double>(n, 0.0), opts);
    CHECK(r.status == MinimizeStatus::converged);
    CHECK(r.iterations < 200);
    CHECK(inf_norm_err(r.x, xstar) < 5e-7);
}

TEST_CASE("accepted iterates never increase the objective") {
    // non-convex but smooth: sum of cosines plus a quadratic bowl
    const auto f = [](std::span<const double> x) {
        double v = 0.0;
        for (const double xi : x) v += std::cos(3.0 * xi) + 0.5 * xi * xi;
        return v;
    };
    const auto g = [](std::span<const double> x, std::span<double> grad) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            grad[i] = -3.0 * std::sin(3.0 * x[i]) + x[i];
        }
    };
    Rng rng(5150);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> x0(4);
        for (double& v : x0) v = 3.0 * rng.gaussian();
        const double f0 = f(x0);
        const MinimizeResult r = minimize(f, g, x0);
        CHECK(r.f <= f0 + 1e-12);
        CHECK(r.status == MinimizeStatus::converged);
        CHECK(r.grad_norm <= 1e-6);
    }
}
