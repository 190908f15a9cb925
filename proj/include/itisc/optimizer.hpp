#ifndef ITISC_OPTIMIZER_HPP
#define ITISC_OPTIMIZER_HPP

#include <functional>
#include <span>
#include <vector>

namespace itisc {

enum class MinimizeStatus { converged, max_iter, line_search_failure };

struct MinimizeResult {
    std::vector<double> x;
    double f = 0.0;
    double grad_norm = 0.0;  // infinity norm at the returned x
    int iterations = 0;
    MinimizeStatus status = MinimizeStatus::converged;
};

struct MinimizeOptions {
    double tol = 1e-6;        // stop when ||g||_inf <= tol
    int max_iter = 500;
    int history = 10;         // limited-memory pairs kept
    double c1 = 1e-4;         // Armijo constant
    double c2 = 0.9;          // curvature constant (strong Wolfe)
    int max_line_search = 40; // bracketing/zoom evaluations per step
};

using ObjectiveFn = std::function<double(std::span<const double>)>;
using GradientFn = std::function<void(std::span<const double>, std::span<double>)>;

/// Limited-memory quasi-Newton minimization of a smooth function with a
/// strong-Wolfe line search. Accepted steps never increase f. In debug builds
/// the analytic gradient is checked against finite differences at x0 and a
/// mismatch aborts with diagnostics.
MinimizeResult minimize(const ObjectiveFn& f, const GradientFn& g,
                        std::vector<double> x0, const MinimizeOptions& opts = {});

}  // namespace itisc

#endif  // ITISC_OPTIMIZER_HPP
