#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

// Heavy-tailed distribution fitting for degree samples: zeta (discrete
// power law), shifted exponential, truncated lognormal, and the double
// Pareto-lognormal, plus tail selection and frequency tables.

namespace sgraph {

// Parameter or sample outside a function's domain.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Sample too small or too uniform to fit.
struct DegenerateSample : std::runtime_error {
    explicit DegenerateSample(const std::string& what)
        : std::runtime_error(what) {}
};

// Sample moments admit no valid double Pareto-lognormal parameters.
struct InfeasibleMoments : std::runtime_error {
    explicit InfeasibleMoments(const std::string& what)
        : std::runtime_error(what) {}
};

// An iterative solver failed to converge.
struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& what)
        : std::runtime_error(what) {}
};

enum class DistKind { Exponential, Lognormal, Zeta, Dpln };

const char* to_string(DistKind kind);

struct ExponentialParams {
    double lambda = 0;  // rate of the shifted exponential, > 0
    bool operator==(const ExponentialParams&) const = default;
};

struct LognormalParams {
    double mu = 0;
    double sigma = 0;  // > 0
    bool operator==(const LognormalParams&) const = default;
};

struct ZetaParams {
    double alpha = 0;  // exponent, > 1
    bool operator==(const ZetaParams&) const = default;
};

struct DplnParams {
    double alpha = 0;  // right tail exponent, > 0
    double beta = 0;   // left tail exponent, > 0
    double mu = 0;
    double sigma = 0;  // > 0
    bool operator==(const DplnParams&) const = default;
};

using DistParams =
    std::variant<ExponentialParams, LognormalParams, ZetaParams, DplnParams>;

// A sorted sample restricted to values >= xmin. `values` holds the whole
// positive sample; the tail is the suffix starting at `tail_begin`.
struct TailSample {
    std::vector<double> values;  // ascending, every element >= 1
    std::int64_t xmin = 1;
    std::size_t tail_begin = 0;

    std::int64_t n_tail() const {
        return static_cast<std::int64_t>(values.size() - tail_begin);
    }
    const double* tail_data() const { return values.data() + tail_begin; }
};

// Sorts `values`, drops nothing, and locates the tail. Throws DomainError
// if xmin < 1, any value < 1, or the tail is empty.
TailSample make_tail_sample(std::vector<double> values, std::int64_t xmin);

struct FitResult {
    DistKind kind = DistKind::Zeta;
    DistParams params;
    std::int64_t xmin = 1;
    std::int64_t n_tail = 0;
    double log_likelihood = 0;  // over the tail, tail-normalized density
};

// --- special functions -------------------------------------------------

// Sum over n >= xmin of n^(-alpha). Requires alpha > 1, xmin >= 1.
// Absolute error below 1e-10 for alpha in [1.0001, 20].
double hurwitz_zeta(double alpha, std::int64_t xmin);

// P(X = x) for the zeta distribution with support {xmin, xmin+1, ...}.
double zeta_pmf(std::int64_t x, double alpha, std::int64_t xmin);

// Standard normal CDF and complement; the complement stays accurate far
// into the upper tail.
double normal_cdf(double x);
double normal_cdf_upper(double x);

// log(normal_cdf(z)), valid for arbitrarily deep lower tails.
double log_normal_cdf(double z);

// --- double Pareto-lognormal -------------------------------------------

double dpln_pdf(double x, const DplnParams& p);
double log_dpln_pdf(double x, const DplnParams& p);
double dpln_cdf(double x, const DplnParams& p);

// Raw moment E[X^k]; finite only for k < alpha.
double dpln_moment(const DplnParams& p, int k);

// Deterministic sampler: exp(mu + sigma*Z + E1/alpha - E2/beta) with
// fixed generation order, identical output on every platform.
std::vector<double> dpln_sample(const DplnParams& p, std::size_t n,
                                std::uint64_t seed);

// Recovers parameters from the first four raw moments. Throws
// InfeasibleMoments when no valid parameter set matches (within the
// alpha > 4 region where all four moments exist), NonConvergence when the
// root finder stalls.
DplnParams solve_dpln_moments(const std::array<double, 4>& moments);

// Method-of-moments fit on a positive sample; requires n >= 100.
DplnParams fit_dpln_moments(const std::vector<double>& values);

// --- maximum likelihood fits -------------------------------------------

FitResult fit_zeta_mle(const TailSample& sample);
FitResult fit_lognormal_mle(const TailSample& sample);
FitResult fit_exponential_mle(const TailSample& sample);

// Wraps externally obtained parameters with the tail log-likelihood.
FitResult make_fit(DistKind kind, const DistParams& params,
                   const TailSample& sample);

// Log density (or log mass for zeta) at x, renormalized to [xmin, inf).
double log_density_at(DistKind kind, const DistParams& params, double x,
                      std::int64_t xmin);

// Sum of log_density_at over the tail of `sample`.
double log_likelihood(DistKind kind, const DistParams& params,
                      const TailSample& sample);

// --- tail selection ----------------------------------------------------

struct XminEstimate {
    std::int64_t xmin = 1;
    double alpha = 0;        // zeta MLE at the chosen xmin
    double ks_distance = 0;  // KS distance of that fit
};

// KS distance between the empirical tail CCDF of `values` restricted to
// [xmin, inf) and the fitted zeta CCDF, evaluated at observed points.
double zeta_ks_distance(const std::vector<double>& values, double alpha,
                        std::int64_t xmin);

// Scans distinct values as xmin candidates, fits a zeta tail to each, and
// returns the candidate minimizing the KS distance (smallest xmin on
// ties). Candidates keep at least 50 tail points when possible.
XminEstimate estimate_xmin(const std::vector<double>& values);

// --- frequency tables --------------------------------------------------

struct FreqRow {
    std::int64_t value = 0;
    std::int64_t count = 0;
    double pmf = 0;
    double ccdf = 0;  // P(X >= value)
};

// Frequency, pmf, and CCDF rows in ascending value order. Zeros allowed.
std::vector<FreqRow> frequency_table(const std::vector<std::int64_t>& values);

// Header: value,count,pmf,ccdf.
void write_frequency_csv(std::ostream& out, const std::vector<FreqRow>& rows);

}  // namespace sgraph
