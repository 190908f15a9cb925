#include "itisc/optimizer.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <limits>
#include <utility>
#include <vector>

namespace itisc {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double inf_norm(std::span<const double> a) {
    double m = 0.0;
    for (const double v : a) m = std::max(m, std::abs(v));
    return m;
}

#ifndef NDEBUG
void check_gradient_fd(const ObjectiveFn& f, const GradientFn& g,
                       const std::vector<double>& x0) {
    const std::size_t n = x0.size();
    std::vector<double> analytic(n);
    g(x0, analytic);
    std::vector<double> xt = x0;
    double diff2 = 0.0, ref2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double h = 1e-6 * std::max(1.0, std::abs(x0[i]));
        xt[i] = x0[i] + h;
        const double fp = f(xt);
        xt[i] = x0[i] - h;
        const double fm = f(xt);
        xt[i] = x0[i];
        const double fd = (fp - fm) / (2.0 * h);
        diff2 += (analytic[i] - fd) * (analytic[i] - fd);
        ref2 += fd * fd;
    }
    const double rel = std::sqrt(diff2) / std::max(1.0, std::sqrt(ref2));
    if (rel > 1e-3) {
        std::fprintf(stderr,
                     "minimize: analytic gradient disagrees with finite differences "
                     "at x0 (relative error %.3e > 1e-3)\n",
                     rel);
        std::abort();
    }
}
#endif

struct LinePoint {
    double a = 0.0;
    double phi = 0.0;
    double dphi = 0.0;
};

}  // namespace

MinimizeResult minimize(const ObjectiveFn& f, const GradientFn& g,
                        std::vector<double> x0, const MinimizeOptions& opts) {
    const std::size_t n = x0.size();
    MinimizeResult res;
    res.x = std::move(x0);
    if (n == 0) {
        res.status = MinimizeStatus::converged;
        return res;
    }
#ifndef NDEBUG
    check_gradient_fd(f, g, res.x);
#endif

    std::vector<double> grad(n);
    double fx = f(res.x);
    g(res.x, grad);

    std::deque<std::vector<double>> s_hist, y_hist;
    std::deque<double> rho_hist;

    std::vector<double> p(n), x_new(n), g_new(n), x_try(n), g_try(n);

    for (int iter = 0; iter <= opts.max_iter; ++iter) {
        res.f = fx;
        res.grad_norm = inf_norm(grad);
        res.iterations = iter;
        if (res.grad_norm <= opts.tol) {
            res.status = MinimizeStatus::converged;
            return res;
        }
        if (iter == opts.max_iter) break;

        // Two-loop recursion: p = -H * grad with H0 = gamma * I.
        p = grad;
        std::vector<double> alpha_coef(s_hist.size());
        for (std::size_t k = s_hist.size(); k-- > 0;) {
            alpha_coef[k] = rho_hist[k] * dot(s_hist[k], p);
            for (std::size_t i = 0; i < n; ++i) p[i] -= alpha_coef[k] * y_hist[k][i];
        }
        double gamma = 1.0;
        if (!s_hist.empty()) {
            const auto& s_last = s_hist.back();
            const auto& y_last = y_hist.back();
            gamma = dot(s_last, y_last) / dot(y_last, y_last);
        }
        for (double& v : p) v *= gamma;
        for (std::size_t k = 0; k < s_hist.size(); ++k) {
            const double beta = rho_hist[k] * dot(y_hist[k], p);
            for (std::size_t i = 0; i < n; ++i) {
                p[i] += (alpha_coef[k] - beta) * s_hist[k][i];
            }
        }
        for (double& v : p) v = -v;

        double dphi0 = dot(grad, p);
        if (!(dphi0 < 0.0)) {
            // numerically not a descent direction: restart from steepest descent
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            for (std::size_t i = 0; i < n; ++i) p[i] = -grad[i];
            dphi0 = -dot(grad, grad);
            if (dphi0 == 0.0) {
                res.status = MinimizeStatus::converged;
                return res;
            }
        }

        const double phi0 = fx;
        const auto eval = [&](double a) {
            for (std::size_t i = 0; i < n; ++i) x_try[i] = res.x[i] + a * p[i];
            LinePoint e;
            e.a = a;
            e.phi = f(x_try);
            if (std::isfinite(e.phi)) {
                g(x_try, g_try);
                e.dphi = dot(g_try, p);
            } else {
                e.dphi = std::numeric_limits<double>::quiet_NaN();
            }
            return e;
        };
        const auto armijo_ok = [&](const LinePoint& e) {
            return std::isfinite(e.phi) && e.phi <= phi0 + opts.c1 * e.a * dphi0;
        };
        const auto wolfe_ok = [&](const LinePoint& e) {
            return armijo_ok(e) && std::abs(e.dphi) <= -opts.c2 * dphi0;
        };

        int evals = 0;
        bool found = false;
        LinePoint acc;

        // One extra secant step on phi' towards the 1-D minimizer. Exact for
        // quadratic objectives, which is what makes the n-step termination
        // property hold; elsewhere it is kept only when it helps.
        const auto refine = [&](const LinePoint& e) {
            const double denom = dphi0 - e.dphi;
            if (denom == 0.0 || evals >= opts.max_line_search) return e;
            const double a_star = e.a * dphi0 / denom;
            if (!std::isfinite(a_star) || a_star <= 0.0) return e;
            if (std::abs(a_star - e.a) <= 1e-12 * std::max(1.0, e.a)) return e;
            const LinePoint r = eval(a_star);
            ++evals;
            if (armijo_ok(r) && r.phi <= e.phi) return r;
            return e;
        };

        // Strong Wolfe line search: bracket then zoom (Nocedal & Wright 3.5/3.6).
        const auto zoom = [&](LinePoint lo, LinePoint hi) {
            while (evals < opts.max_line_search) {
                // secant on the derivative where usable, bisection otherwise
                double a = 0.5 * (lo.a + hi.a);
                if (std::isfinite(lo.dphi) && std::isfinite(hi.dphi) &&
                    lo.dphi != hi.dphi) {
                    const double cand =
                        lo.a - lo.dphi * (hi.a - lo.a) / (hi.dphi - lo.dphi);
                    const double lo_b = std::min(lo.a, hi.a);
                    const double hi_b = std::max(lo.a, hi.a);
                    const double margin = 0.1 * (hi_b - lo_b);
                    if (std::isfinite(cand) && cand > lo_b + margin &&
                        cand < hi_b - margin) {
                        a = cand;
                    }
                }
                const LinePoint e = eval(a);
                ++evals;
                if (!armijo_ok(e) || e.phi >= lo.phi) {
                    hi = e;
                } else {
                    if (std::abs(e.dphi) <= -opts.c2 * dphi0) {
                        acc = refine(e);
                        found = true;
                        return;
                    }
                    if (e.dphi * (hi.a - lo.a) >= 0.0) hi = lo;
                    lo = e;
                }
                if (std::abs(hi.a - lo.a) <= 1e-14 * std::max(1.0, std::abs(lo.a))) {
                    if (armijo_ok(lo)) {
                        acc = lo;
                        found = true;
                    }
                    return;
                }
            }
            if (armijo_ok(lo)) {
                acc = lo;
                found = true;
            }
        };

        LinePoint prev{0.0, phi0, dphi0};
        double a = 1.0;
        while (evals < opts.max_line_search) {
            LinePoint e = eval(a);
            ++evals;
            if (!armijo_ok(e) || (prev.a > 0.0 && e.phi >= prev.phi)) {
                zoom(prev, e);
                break;
            }
            if (std::abs(e.dphi) <= -opts.c2 * dphi0) {
                acc = refine(e);
                found = true;
                break;
            }
            if (e.dphi >= 0.0) {
                zoom(e, prev);
                break;
            }
            prev = e;
            a *= 2.0;
            if (a > 1e20) break;
        }

        if (!found) {
            res.status = MinimizeStatus::line_search_failure;
            return res;
        }

        // recompute state at the accepted step (x_try/g_try hold the last eval)
        for (std::size_t i = 0; i < n; ++i) x_new[i] = res.x[i] + acc.a * p[i];
        if (x_new == x_try) {
            g_new = g_try;
        } else {
            g(x_new, g_new);
        }
        const double f_new = acc.phi;

        std::vector<double> s_vec(n), y_vec(n);
        for (std::size_t i = 0; i < n; ++i) {
            s_vec[i] = x_new[i] - res.x[i];
            y_vec[i] = g_new[i] - grad[i];
        }
        const double sy = dot(s_vec, y_vec);
        if (sy > 1e-10 * std::sqrt(dot(s_vec, s_vec)) * std::sqrt(dot(y_vec, y_vec))) {
            s_hist.push_back(std::move(s_vec));
            y_hist.push_back(std::move(y_vec));
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > opts.history) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }
        res.x = x_new;
        fx = f_new;
        grad = g_new;
    }

    res.status = MinimizeStatus::max_iter;
    return res;
}

}  // namespace itisc
