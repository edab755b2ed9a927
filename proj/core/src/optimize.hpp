#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

// Small derivative-free optimizers used by the distribution fitters.
// Internal to the library.

namespace sgraph::detail {

struct MinResult {
    double x = 0;
    double fx = 0;
};

// Brent's method on [a, b] for a unimodal f; tol is the absolute
// x-tolerance.
inline MinResult brent_min(const std::function<double(double)>& f, double a,
                           double b, double tol, int max_iter = 200) {
    const double gold = 0.3819660112501051;
    double x = a + gold * (b - a), w = x, v = x;
    double fx = f(x), fw = fx, fv = fx;
    double d = 0, e = 0;
    for (int iter = 0; iter < max_iter; ++iter) {
        double m = 0.5 * (a + b);
        double tol1 = tol + 1e-12 * std::fabs(x);
        double tol2 = 2 * tol1;
        if (std::fabs(x - m) <= tol2 - 0.5 * (b - a)) break;
        double p = 0, q = 0, r = 0;
        bool parabola = false;
        if (std::fabs(e) > tol1) {
            r = (x - w) * (fx - fv);
            q = (x - v) * (fx - fw);
            p = (x - v) * q - (x - w) * r;
            q = 2 * (q - r);
            if (q > 0) p = -p;
            q = std::fabs(q);
            double e_old = e;
            e = d;
            if (std::fabs(p) < std::fabs(0.5 * q * e_old) && p > q * (a - x) &&
                p < q * (b - x)) {
                d = p / q;
                double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = x < m ? tol1 : -tol1;
                parabola = true;
            }
        }
        if (!parabola) {
            e = (x < m ? b : a) - x;
            d = gold * e;
        }
        double u = std::fabs(d) >= tol1 ? x + d : x + (d > 0 ? tol1 : -tol1);
        double fu = f(u);
        if (fu <= fx) {
            if (u < x) b = x; else a = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
    return {x, fx};
}

// Nelder-Mead in n dimensions; steps gives the initial simplex spread.
inline std::vector<double> nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, const std::vector<double>& steps, double tol,
    int max_iter = 1000) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> fs(n + 1);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += steps[i];
    for (std::size_t i = 0; i <= n; ++i) fs[i] = f(pts[i]);

    auto order = [&] {
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = i; j > 0 && fs[j] < fs[j - 1]; --j) {
                std::swap(fs[j], fs[j - 1]);
                std::swap(pts[j], pts[j - 1]);
            }
    };
    order();

    for (int iter = 0; iter < max_iter; ++iter) {
        if (std::fabs(fs[n] - fs[0]) <=
            tol * (std::fabs(fs[0]) + std::fabs(fs[n]) + 1e-300))
            break;
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / n;

        auto at = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j)
                p[j] = centroid[j] + t * (pts[n][j] - centroid[j]);
            return p;
        };
        auto reflect = at(-1.0);
        double fr = f(reflect);
        if (fr < fs[0]) {
            auto expand = at(-2.0);
            double fe = f(expand);
            if (fe < fr) { pts[n] = expand; fs[n] = fe; }
            else         { pts[n] = reflect; fs[n] = fr; }
        } else if (fr < fs[n - 1]) {
            pts[n] = reflect; fs[n] = fr;
        } else {
            auto contract = at(fr < fs[n] ? -0.5 : 0.5);
            double fc = f(contract);
            if (fc < std::min(fr, fs[n])) {
                pts[n] = contract; fs[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j)
                        pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
                    fs[i] = f(pts[i]);
                }
            }
        }
        order();
    }
    return pts[0];
}

}  // namespace sgraph::detail
