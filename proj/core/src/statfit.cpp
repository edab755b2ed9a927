#include "sgraph/statfit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <random>

#include "optimize.hpp"

namespace sgraph {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kTwoPi = 6.28318530717958647692;

template <class T>
const T& params_as(const DistParams& params, const char* kind_name) {
    const T* p = std::get_if<T>(&params);
    if (!p)
        throw DomainError(std::string("parameters do not match distribution ") +
                          kind_name);
    return *p;
}

void check_dpln(const DplnParams& p) {
    if (!(p.alpha > 0) || !(p.beta > 0) || !(p.sigma > 0) ||
        !std::isfinite(p.mu))
        throw DomainError("dpln: alpha, beta, sigma must be positive and mu finite");
}

// Tail must hold at least two distinct values for any of the MLE fits.
void require_fittable(const TailSample& sample) {
    const double* tail = sample.tail_data();
    std::int64_t n = sample.n_tail();
    if (n < 1) throw DegenerateSample("fit: empty tail");
    bool distinct = false;
    for (std::int64_t i = 1; i < n && !distinct; ++i)
        if (tail[i] != tail[0]) distinct = true;
    if (!distinct)
        throw DegenerateSample("fit: tail holds fewer than two distinct values");
}

}  // namespace

const char* to_string(DistKind kind) {
    switch (kind) {
        case DistKind::Exponential: return "exponential";
        case DistKind::Lognormal: return "lognormal";
        case DistKind::Zeta: return "zeta";
        case DistKind::Dpln: return "dpln";
    }
    return "unknown";
}

TailSample make_tail_sample(std::vector<double> values, std::int64_t xmin) {
    if (xmin < 1) throw DomainError("make_tail_sample: xmin must be >= 1");
    if (values.empty()) throw DomainError("make_tail_sample: empty sample");
    for (double v : values)
        if (!(v >= 1.0) || !std::isfinite(v))
            throw DomainError("make_tail_sample: values must be finite and >= 1");
    std::sort(values.begin(), values.end());
    TailSample s;
    s.values = std::move(values);
    s.xmin = xmin;
    s.tail_begin = static_cast<std::size_t>(
        std::lower_bound(s.values.begin(), s.values.end(),
                         static_cast<double>(xmin)) -
        s.values.begin());
    if (s.tail_begin == s.values.size())
        throw DomainError("make_tail_sample: no values at or above xmin");
    return s;
}

// --- special functions -------------------------------------------------

namespace {

// Fixed cutoff: direct summation below, Euler-Maclaurin beyond. The
// cutoff is shared by every xmin below it, so differences of sums
// telescope.
double hurwitz_series(double alpha, std::int64_t xmin) {
    const std::int64_t cutoff = std::max<std::int64_t>(xmin, 256);
    double sum = 0.0, comp = 0.0;
    for (std::int64_t n = xmin; n < cutoff; ++n) {
        double term = std::pow(static_cast<double>(n), -alpha);
        double t = sum + term;
        if (std::fabs(sum) >= std::fabs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
    }
    const double n0 = static_cast<double>(cutoff);
    const double na = std::pow(n0, -alpha);
    const double a = alpha;
    double tail = n0 * na / (a - 1.0) + 0.5 * na + a * na / n0 / 12.0 -
                  a * (a + 1) * (a + 2) * na / (n0 * n0 * n0) / 720.0 +
                  a * (a + 1) * (a + 2) * (a + 3) * (a + 4) * na /
                      (n0 * n0 * n0 * n0 * n0) / 30240.0;
    return sum + comp + tail;
}

}  // namespace

double hurwitz_zeta(double alpha, std::int64_t xmin) {
    if (!(alpha > 1.0)) throw DomainError("hurwitz_zeta: alpha must exceed 1");
    if (xmin < 1) throw DomainError("hurwitz_zeta: xmin must be >= 1");
    if (xmin <= 2) {
        // Snap the start-2 value so adding the first term back is exact:
        // (1 + s2) - 1 clears the low mantissa bit that would otherwise
        // make hurwitz_zeta(a, 1) - hurwitz_zeta(a, 2) drift off 1.0.
        double s2 = hurwitz_series(alpha, 2);
        s2 = (1.0 + s2) - 1.0;
        return xmin == 1 ? 1.0 + s2 : s2;
    }
    return hurwitz_series(alpha, xmin);
}

double zeta_pmf(std::int64_t x, double alpha, std::int64_t xmin) {
    if (x < xmin) throw DomainError("zeta_pmf: x must be >= xmin");
    return std::pow(static_cast<double>(x), -alpha) / hurwitz_zeta(alpha, xmin);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double normal_cdf_upper(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double log_normal_cdf(double z) {
    if (!(z < -30.0)) return std::log(normal_cdf(z));
    // Asymptotic expansion of the Mills ratio; the direct route would
    // underflow near z = -38.
    const double z2 = z * z;
    const double series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) -
                          15.0 / (z2 * z2 * z2) + 105.0 / (z2 * z2 * z2 * z2);
    return -0.5 * z2 - std::log(-z) - kHalfLog2Pi + std::log(series);
}

// --- double Pareto-lognormal -------------------------------------------

double log_dpln_pdf(double x, const DplnParams& p) {
    check_dpln(p);
    if (!(x > 0)) throw DomainError("dpln: x must be positive");
    const double a = p.alpha, b = p.beta, mu = p.mu, s = p.sigma;
    const double lx = std::log(x);
    const double s2 = s * s;
    const double lc = std::log(a) + std::log(b) - std::log(a + b);
    const double t1 = -(a + 1.0) * lx + a * mu + 0.5 * a * a * s2 +
                      log_normal_cdf((lx - mu - a * s2) / s);
    const double t2 = (b - 1.0) * lx - b * mu + 0.5 * b * b * s2 +
                      log_normal_cdf(-(lx - mu + b * s2) / s);
    const double hi = std::max(t1, t2), lo = std::min(t1, t2);
    return lc + hi + std::log1p(std::exp(lo - hi));
}

double dpln_pdf(double x, const DplnParams& p) {
    return std::exp(log_dpln_pdf(x, p));
}

double dpln_cdf(double x, const DplnParams& p) {
    check_dpln(p);
    if (std::isnan(x)) throw DomainError("dpln: x must not be NaN");
    if (x <= 0) return 0.0;
    const double a = p.alpha, b = p.beta, mu = p.mu, s = p.sigma;
    const double lx = std::log(x);
    const double u = (lx - mu) / s;
    const double w = a + b;
    const double t2 = std::log(a / w) + b * (lx - mu) + 0.5 * b * b * s * s +
                      log_normal_cdf(-(u + b * s));
    const double t3 = std::log(b / w) - a * (lx - mu) + 0.5 * a * a * s * s +
                      log_normal_cdf(u - a * s);
    double f = normal_cdf(u) + std::exp(t2) - std::exp(t3);
    return std::clamp(f, 0.0, 1.0);
}

double dpln_moment(const DplnParams& p, int k) {
    check_dpln(p);
    if (k < 0) throw DomainError("dpln_moment: order must be >= 0");
    if (k == 0) return 1.0;
    const double kd = k;
    if (!(p.alpha > kd))
        throw DomainError("dpln_moment: moment diverges, needs alpha > k");
    return p.alpha * p.beta / ((p.alpha - kd) * (p.beta + kd)) *
           std::exp(kd * p.mu + 0.5 * kd * kd * p.sigma * p.sigma);
}

std::vector<double> dpln_sample(const DplnParams& p, std::size_t n,
                                std::uint64_t seed) {
    check_dpln(p);
    std::mt19937_64 rng(seed);
    // Hand-rolled transforms keep the stream identical across standard
    // library implementations.
    auto uniform = [&rng]() {
        return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    };
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u1 = uniform(), u2 = uniform();
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
        const double e1 = -std::log(uniform());
        const double e2 = -std::log(uniform());
        out.push_back(std::exp(p.mu + p.sigma * z + e1 / p.alpha - e2 / p.beta));
    }
    return out;
}

DplnParams solve_dpln_moments(const std::array<double, 4>& moments) {
    std::array<double, 4> lm{};
    for (int k = 0; k < 4; ++k) {
        if (!(moments[k] > 0) || !std::isfinite(moments[k]))
            throw DomainError(
                "solve_dpln_moments: moments must be positive and finite");
        lm[k] = std::log(moments[k]);
    }

    // Fixing (alpha, beta) determines mu and sigma^2 from the first two
    // moments; orders three and four supply a 2x2 residual system.
    auto residual = [&lm](double a, double b, double* mu_out,
                          double* s2_out) -> std::array<double, 2> {
        std::array<double, 4> y{};
        for (int k = 1; k <= 4; ++k) {
            const double kd = k;
            const double g = std::log(a) + std::log(b) - std::log(a - kd) -
                             std::log(b + kd);
            y[k - 1] = lm[k - 1] - g;
        }
        const double s = 0.5 * (y[1] - 2.0 * y[0]);  // sigma^2 / 2
        const double mu = y[0] - s;
        if (mu_out) *mu_out = mu;
        if (s2_out) *s2_out = 2.0 * s;
        return {y[2] - 3.0 * mu - 9.0 * s, y[3] - 4.0 * mu - 16.0 * s};
    };

    // alpha = 4 + e^pa keeps all four moments finite; beta = e^pb.
    auto eval = [&](double pa_, double pb_) {
        return residual(4.0 + std::exp(pa_), std::exp(pb_), nullptr, nullptr);
    };
    auto norm2 = [](const std::array<double, 2>& r) {
        return r[0] * r[0] + r[1] * r[1];
    };

    const double tol = 1e-10 * (1.0 + std::fabs(lm[2]) + std::fabs(lm[3]));
    auto newton = [&](double& pa, double& pb) -> bool {
        std::array<double, 2> r = eval(pa, pb);
        for (int iter = 0; iter < 200; ++iter) {
            if (std::max(std::fabs(r[0]), std::fabs(r[1])) <= tol) return true;
            const double ha = 1e-7 * std::max(1.0, std::fabs(pa));
            const double hb = 1e-7 * std::max(1.0, std::fabs(pb));
            const auto ra = eval(pa + ha, pb);
            const auto rb = eval(pa, pb + hb);
            const double j00 = (ra[0] - r[0]) / ha, j01 = (rb[0] - r[0]) / hb;
            const double j10 = (ra[1] - r[1]) / ha, j11 = (rb[1] - r[1]) / hb;
            const double det = j00 * j11 - j01 * j10;
            double dpa, dpb;
            if (std::fabs(det) < 1e-300) {
                dpa = -(j00 * r[0] + j10 * r[1]);
                dpb = -(j01 * r[0] + j11 * r[1]);
                const double g = std::hypot(dpa, dpb);
                if (g < 1e-300) return false;
                dpa /= g;
                dpb /= g;
            } else {
                dpa = -(j11 * r[0] - j01 * r[1]) / det;
                dpb = -(-j10 * r[0] + j00 * r[1]) / det;
            }
            double step = std::min(
                1.0, 4.0 / std::max({1.0, std::fabs(dpa), std::fabs(dpb)}));
            const double base = norm2(r);
            bool moved = false;
            for (int ls = 0; ls < 40; ++ls) {
                const auto rt = eval(pa + step * dpa, pb + step * dpb);
                if (norm2(rt) < base) {
                    pa += step * dpa;
                    pb += step * dpb;
                    r = rt;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) return false;
        }
        return false;
    };

    double pa = 0.0, pb = std::log(2.0);
    bool converged = newton(pa, pb);

    if (!converged) {
        // Scan a log grid over (alpha - 4, beta) for cells where both
        // residual components change sign; real roots live in such cells.
        constexpr int kNodes = 61;
        const double lo = std::log(1e-8), hi = std::log(1e8);
        std::vector<std::array<double, 2>> node((std::size_t)kNodes * kNodes);
        std::vector<double> coord(kNodes);
        for (int i = 0; i < kNodes; ++i)
            coord[i] = lo + (hi - lo) * i / (kNodes - 1);
        for (int i = 0; i < kNodes; ++i)
            for (int j = 0; j < kNodes; ++j)
                node[(std::size_t)i * kNodes + j] = eval(coord[i], coord[j]);

        struct Cell {
            double score;
            double pa, pb;
        };
        std::vector<Cell> cells;
        for (int i = 0; i + 1 < kNodes && cells.size() < 4096; ++i) {
            for (int j = 0; j + 1 < kNodes; ++j) {
                const std::array<double, 2>* c[4] = {
                    &node[(std::size_t)i * kNodes + j],
                    &node[(std::size_t)i * kNodes + j + 1],
                    &node[(std::size_t)(i + 1) * kNodes + j],
                    &node[(std::size_t)(i + 1) * kNodes + j + 1]};
                bool finite = true;
                double mn0 = 1e308, mx0 = -1e308, mn1 = 1e308, mx1 = -1e308;
                double best = 1e308;
                for (const auto* p : c) {
                    if (!std::isfinite((*p)[0]) || !std::isfinite((*p)[1])) {
                        finite = false;
                        break;
                    }
                    mn0 = std::min(mn0, (*p)[0]);
                    mx0 = std::max(mx0, (*p)[0]);
                    mn1 = std::min(mn1, (*p)[1]);
                    mx1 = std::max(mx1, (*p)[1]);
                    best = std::min(best, norm2(*p));
                }
                if (!finite || mn0 > 0 || mx0 < 0 || mn1 > 0 || mx1 < 0)
                    continue;
                cells.push_back({best, 0.5 * (coord[i] + coord[i + 1]),
                                 0.5 * (coord[j] + coord[j + 1])});
            }
        }
        if (cells.empty())
            throw InfeasibleMoments(
                "solve_dpln_moments: no valid parameters match the moments");
        std::sort(cells.begin(), cells.end(),
                  [](const Cell& x, const Cell& y) { return x.score < y.score; });
        for (std::size_t k = 0; k < cells.size() && k < 8; ++k) {
            double ta = cells[k].pa, tb = cells[k].pb;
            if (newton(ta, tb)) {
                pa = ta;
                pb = tb;
                converged = true;
                break;
            }
        }
        if (!converged)
            throw NonConvergence(
                "solve_dpln_moments: root finder did not converge");
    }

    const double a = 4.0 + std::exp(pa);
    const double b = std::exp(pb);
    double mu = 0, s2 = 0;
    residual(a, b, &mu, &s2);
    if (!(s2 > 0))
        throw InfeasibleMoments(
            "solve_dpln_moments: implied sigma^2 is not positive");
    return DplnParams{a, b, mu, std::sqrt(s2)};
}

DplnParams fit_dpln_moments(const std::vector<double>& values) {
    if (values.size() < 100)
        throw DomainError("fit_dpln_moments: need at least 100 values");
    std::array<double, 4> m{};
    for (double v : values) {
        if (!(v > 0) || !std::isfinite(v))
            throw DomainError("fit_dpln_moments: values must be positive");
        double x = v;
        m[0] += x;
        x *= v;
        m[1] += x;
        x *= v;
        m[2] += x;
        x *= v;
        m[3] += x;
    }
    for (auto& mm : m) mm /= static_cast<double>(values.size());
    return solve_dpln_moments(m);
}

// --- maximum likelihood fits -------------------------------------------

FitResult fit_zeta_mle(const TailSample& sample) {
    require_fittable(sample);
    const double* tail = sample.tail_data();
    const std::int64_t n = sample.n_tail();
    double sum_log = 0;
    for (std::int64_t i = 0; i < n; ++i) sum_log += std::log(tail[i]);
    const double nd = static_cast<double>(n);
    auto neg_ll = [&](double alpha) {
        return alpha * sum_log + nd * std::log(hurwitz_zeta(alpha, sample.xmin));
    };
    const auto r = detail::brent_min(neg_ll, 1.0 + 1e-4, 20.0, 1e-6);
    return make_fit(DistKind::Zeta, ZetaParams{r.x}, sample);
}

FitResult fit_lognormal_mle(const TailSample& sample) {
    require_fittable(sample);
    const double* tail = sample.tail_data();
    const std::int64_t n = sample.n_tail();
    double s1 = 0, s2 = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        const double lx = std::log(tail[i]);
        s1 += lx;
        s2 += lx * lx;
    }
    const double nd = static_cast<double>(n);
    const double mu0 = s1 / nd;
    const double var0 = std::max(s2 / nd - mu0 * mu0, 1e-12);
    const double lxmin = std::log(static_cast<double>(sample.xmin));
    // Truncated log-likelihood in O(1) per evaluation via the log-moment
    // sums; optimized over (mu, log sigma).
    auto neg_ll = [&](const std::vector<double>& q) {
        const double mu = q[0], sg = std::exp(q[1]);
        const double quad = s2 - 2.0 * mu * s1 + nd * mu * mu;
        const double ll = -nd * std::log(sg) - s1 - nd * kHalfLog2Pi -
                          0.5 * quad / (sg * sg) -
                          nd * log_normal_cdf(-(lxmin - mu) / sg);
        return -ll;
    };
    const auto best = detail::nelder_mead(neg_ll, {mu0, 0.5 * std::log(var0)},
                                          {0.1, 0.1}, 1e-13, 2000);
    return make_fit(DistKind::Lognormal,
                    LognormalParams{best[0], std::exp(best[1])}, sample);
}

FitResult fit_exponential_mle(const TailSample& sample) {
    require_fittable(sample);
    const double* tail = sample.tail_data();
    const std::int64_t n = sample.n_tail();
    double mean = 0;
    for (std::int64_t i = 0; i < n; ++i) mean += tail[i];
    mean /= static_cast<double>(n);
    const double shift = mean - static_cast<double>(sample.xmin);
    if (!(shift > 0))
        throw DegenerateSample("fit_exponential_mle: tail mean equals xmin");
    return make_fit(DistKind::Exponential, ExponentialParams{1.0 / shift},
                    sample);
}

FitResult make_fit(DistKind kind, const DistParams& params,
                   const TailSample& sample) {
    FitResult f;
    f.kind = kind;
    f.params = params;
    f.xmin = sample.xmin;
    f.n_tail = sample.n_tail();
    f.log_likelihood = log_likelihood(kind, params, sample);
    return f;
}

double log_density_at(DistKind kind, const DistParams& params, double x,
                      std::int64_t xmin) {
    if (xmin < 1) throw DomainError("log_density_at: xmin must be >= 1");
    if (!(x >= static_cast<double>(xmin)))
        throw DomainError("log_density_at: x must lie at or above xmin");
    switch (kind) {
        case DistKind::Exponential: {
            const auto& p = params_as<ExponentialParams>(params, "exponential");
            if (!(p.lambda > 0))
                throw DomainError("exponential: lambda must be positive");
            return std::log(p.lambda) -
                   p.lambda * (x - static_cast<double>(xmin));
        }
        case DistKind::Lognormal: {
            const auto& p = params_as<LognormalParams>(params, "lognormal");
            if (!(p.sigma > 0))
                throw DomainError("lognormal: sigma must be positive");
            const double lx = std::log(x);
            const double z = (lx - p.mu) / p.sigma;
            const double lxmin = std::log(static_cast<double>(xmin));
            return -0.5 * z * z - kHalfLog2Pi - std::log(p.sigma) - lx -
                   log_normal_cdf(-(lxmin - p.mu) / p.sigma);
        }
        case DistKind::Zeta: {
            const auto& p = params_as<ZetaParams>(params, "zeta");
            return -p.alpha * std::log(x) -
                   std::log(hurwitz_zeta(p.alpha, xmin));
        }
        case DistKind::Dpln: {
            const auto& p = params_as<DplnParams>(params, "dpln");
            const double denom =
                1.0 - dpln_cdf(static_cast<double>(xmin), p);
            if (!(denom > 0))
                throw DomainError("dpln: no tail mass at or above xmin");
            return log_dpln_pdf(x, p) - std::log(denom);
        }
    }
    throw DomainError("log_density_at: unknown distribution kind");
}

double log_likelihood(DistKind kind, const DistParams& params,
                      const TailSample& sample) {
    const double* tail = sample.tail_data();
    const std::int64_t n = sample.n_tail();
    const double nd = static_cast<double>(n);
    const double xmin = static_cast<double>(sample.xmin);
    switch (kind) {
        case DistKind::Exponential: {
            const auto& p = params_as<ExponentialParams>(params, "exponential");
            if (!(p.lambda > 0))
                throw DomainError("exponential: lambda must be positive");
            double shift_sum = 0;
            for (std::int64_t i = 0; i < n; ++i) shift_sum += tail[i] - xmin;
            return nd * std::log(p.lambda) - p.lambda * shift_sum;
        }
        case DistKind::Lognormal: {
            const auto& p = params_as<LognormalParams>(params, "lognormal");
            if (!(p.sigma > 0))
                throw DomainError("lognormal: sigma must be positive");
            const double lxmin = std::log(xmin);
            double acc = 0;
            for (std::int64_t i = 0; i < n; ++i) {
                const double lx = std::log(tail[i]);
                const double z = (lx - p.mu) / p.sigma;
                acc += -0.5 * z * z - lx;
            }
            return acc - nd * (kHalfLog2Pi + std::log(p.sigma)) -
                   nd * log_normal_cdf(-(lxmin - p.mu) / p.sigma);
        }
        case DistKind::Zeta: {
            const auto& p = params_as<ZetaParams>(params, "zeta");
            const double lh = std::log(hurwitz_zeta(p.alpha, sample.xmin));
            double sum_log = 0;
            for (std::int64_t i = 0; i < n; ++i) sum_log += std::log(tail[i]);
            return -p.alpha * sum_log - nd * lh;
        }
        case DistKind::Dpln: {
            const auto& p = params_as<DplnParams>(params, "dpln");
            const double denom = 1.0 - dpln_cdf(xmin, p);
            if (!(denom > 0))
                throw DomainError("dpln: no tail mass at or above xmin");
            const double lden = std::log(denom);
            double acc = 0;
            for (std::int64_t i = 0; i < n; ++i)
                acc += log_dpln_pdf(tail[i], p) - lden;
            return acc;
        }
    }
    throw DomainError("log_likelihood: unknown distribution kind");
}

// --- tail selection ----------------------------------------------------

double zeta_ks_distance(const std::vector<double>& values, double alpha,
                        std::int64_t xmin) {
    if (!(alpha > 1.0))
        throw DomainError("zeta_ks_distance: alpha must exceed 1");
    if (xmin < 1) throw DomainError("zeta_ks_distance: xmin must be >= 1");
    std::vector<std::int64_t> tail;
    tail.reserve(values.size());
    for (double v : values) {
        const std::int64_t iv = std::llround(v);
        if (iv >= xmin) tail.push_back(iv);
    }
    if (tail.empty()) throw DomainError("zeta_ks_distance: empty tail");
    std::sort(tail.begin(), tail.end());
    const double n = static_cast<double>(tail.size());
    const double h0 = hurwitz_zeta(alpha, xmin);
    double worst = 0;
    for (std::size_t i = 0; i < tail.size();) {
        std::size_t j = i;
        while (j < tail.size() && tail[j] == tail[i]) ++j;
        const double emp = static_cast<double>(tail.size() - i) / n;
        const double fit = hurwitz_zeta(alpha, tail[i]) / h0;
        worst = std::max(worst, std::fabs(emp - fit));
        i = j;
    }
    return worst;
}

XminEstimate estimate_xmin(const std::vector<double>& values) {
    if (values.empty()) throw DomainError("estimate_xmin: empty sample");
    std::vector<std::int64_t> iv;
    iv.reserve(values.size());
    for (double v : values) {
        if (!(v >= 1.0) || !std::isfinite(v))
            throw DomainError("estimate_xmin: values must be finite and >= 1");
        iv.push_back(std::llround(v));
    }
    std::sort(iv.begin(), iv.end());

    struct Cand {
        std::int64_t value;
        std::int64_t n_tail;
        std::int64_t distinct_tail;
    };
    std::vector<Cand> distinct;
    for (std::size_t i = 0; i < iv.size();) {
        std::size_t j = i;
        while (j < iv.size() && iv[j] == iv[i]) ++j;
        distinct.push_back({iv[i], static_cast<std::int64_t>(iv.size() - i), 0});
        i = j;
    }
    for (std::size_t k = 0; k < distinct.size(); ++k)
        distinct[k].distinct_tail =
            static_cast<std::int64_t>(distinct.size() - k);

    // Candidates keep at least 50 tail points when any candidate can;
    // otherwise every fittable cut is considered.
    std::vector<std::size_t> pool;
    for (std::size_t k = 0; k < distinct.size(); ++k)
        if (distinct[k].distinct_tail >= 2 && distinct[k].n_tail >= 50)
            pool.push_back(k);
    if (pool.empty())
        for (std::size_t k = 0; k < distinct.size(); ++k)
            if (distinct[k].distinct_tail >= 2) pool.push_back(k);
    if (pool.empty())
        throw DegenerateSample("estimate_xmin: no cut leaves a fittable tail");

    TailSample ts;
    ts.values.assign(iv.begin(), iv.end());
    std::vector<double> dv = ts.values;
    XminEstimate best;
    bool have = false;
    for (std::size_t k : pool) {
        ts.xmin = distinct[k].value;
        ts.tail_begin = static_cast<std::size_t>(
            std::lower_bound(ts.values.begin(), ts.values.end(),
                             static_cast<double>(ts.xmin)) -
            ts.values.begin());
        FitResult f = fit_zeta_mle(ts);
        const double alpha = std::get<ZetaParams>(f.params).alpha;
        const double ks = zeta_ks_distance(dv, alpha, ts.xmin);
        // Ascending scan plus strict inequality keeps the smallest xmin
        // on ties.
        if (!have || ks < best.ks_distance) {
            best = {ts.xmin, alpha, ks};
            have = true;
        }
    }
    return best;
}

// --- frequency tables --------------------------------------------------

std::vector<FreqRow> frequency_table(const std::vector<std::int64_t>& values) {
    std::map<std::int64_t, std::int64_t> counts;
    for (auto v : values) {
        if (v < 0) throw DomainError("frequency_table: values must be >= 0");
        ++counts[v];
    }
    const double n = static_cast<double>(values.size());
    std::vector<FreqRow> rows;
    rows.reserve(counts.size());
    for (const auto& [v, c] : counts)
        rows.push_back({v, c, static_cast<double>(c) / n, 0.0});
    std::int64_t run = 0;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        run += it->count;
        it->ccdf = static_cast<double>(run) / n;
    }
    return rows;
}

void write_frequency_csv(std::ostream& out, const std::vector<FreqRow>& rows) {
    out << "value,count,pmf,ccdf\n";
    char buf[64];
    for (const auto& r : rows) {
        out << r.value << ',' << r.count << ',';
        std::snprintf(buf, sizeof buf, "%.17g", r.pmf);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", r.ccdf);
        out << buf << '\n';
    }
}

}  // namespace sgraph
