#include "sgraph/modelselect.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace sgraph {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Per-point tail log densities; the zeta normalizer is hoisted out of
// the loop, the others are O(1) per point already.
std::vector<double> tail_log_densities(const FitResult& fit,
                                       const TailSample& sample) {
    const double* tail = sample.tail_data();
    const std::int64_t n = sample.n_tail();
    std::vector<double> out(static_cast<std::size_t>(n));
    if (fit.kind == DistKind::Zeta) {
        const auto& p = std::get<ZetaParams>(fit.params);
        if (!(p.alpha > 1)) throw DomainError("zeta: alpha must exceed 1");
        const double lh = std::log(hurwitz_zeta(p.alpha, sample.xmin));
        for (std::int64_t i = 0; i < n; ++i)
            out[static_cast<std::size_t>(i)] =
                -p.alpha * std::log(tail[i]) - lh;
        return out;
    }
    for (std::int64_t i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] =
            log_density_at(fit.kind, fit.params, tail[i], sample.xmin);
    return out;
}

}  // namespace

const char* to_string(Direction direction) {
    return direction == Direction::In ? "in" : "out";
}

LlrResult vuong_test(const TailSample& sample, const FitResult& first,
                     const FitResult& second, Direction direction) {
    if (first.xmin != sample.xmin || second.xmin != sample.xmin)
        throw DomainError("vuong_test: both fits must share the sample xmin");
    const auto la = tail_log_densities(first, sample);
    const auto lb = tail_log_densities(second, sample);
    const std::int64_t n = sample.n_tail();
    const double nd = static_cast<double>(n);
    double r = 0;
    for (std::size_t i = 0; i < la.size(); ++i) r += la[i] - lb[i];
    const double mean = r / nd;
    double ss = 0;
    for (std::size_t i = 0; i < la.size(); ++i) {
        const double c = la[i] - lb[i] - mean;
        ss += c * c;
    }
    const double sd = std::sqrt(ss / nd);
    double p;
    if (sd == 0.0) {
        // Identical pointwise densities carry no evidence either way.
        p = r == 0.0 ? 1.0 : 0.0;
    } else {
        const double v = r / (sd * std::sqrt(nd));
        p = std::erfc(std::fabs(v) * kInvSqrt2);  // 2 * Phi(-|v|)
    }
    LlrResult out;
    out.first = first.kind;
    out.second = second.kind;
    out.direction = direction;
    out.R = r;
    out.p_value = p;
    out.n_tail = n;
    return out;
}

bool rejects_null(const LlrResult& llr) { return llr.p_value < 0.05; }

std::string better_fit(const LlrResult& llr) {
    if (!rejects_null(llr)) return "neither";
    return to_string(llr.R > 0 ? llr.first : llr.second);
}

std::vector<LlrResult> compare_all(const TailSample& sample,
                                   const std::vector<FitResult>& fits,
                                   Direction direction) {
    auto find = [&fits](DistKind kind) -> const FitResult& {
        for (const auto& f : fits)
            if (f.kind == kind) return f;
        throw MissingFit(kind);
    };
    const std::pair<DistKind, DistKind> pairs[] = {
        {DistKind::Exponential, DistKind::Zeta},
        {DistKind::Lognormal, DistKind::Zeta},
        {DistKind::Lognormal, DistKind::Exponential},
        {DistKind::Dpln, DistKind::Zeta},
        {DistKind::Dpln, DistKind::Lognormal},
    };
    std::vector<LlrResult> out;
    out.reserve(5);
    for (const auto& [a, b] : pairs) {
        // Two find calls in one argument list would leave the missing-fit
        // report order unspecified.
        const FitResult& fa = find(a);
        const FitResult& fb = find(b);
        out.push_back(vuong_test(sample, fa, fb, direction));
    }
    return out;
}

void write_comparisons_csv(std::ostream& out,
                           const std::vector<LlrResult>& rows) {
    out << "direction,first,second,R,p_value,n_tail,better\n";
    char buf[64];
    for (const auto& r : rows) {
        out << to_string(r.direction) << ',' << to_string(r.first) << ','
            << to_string(r.second) << ',';
        std::snprintf(buf, sizeof buf, "%.17g", r.R);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", r.p_value);
        out << buf << ',' << r.n_tail << ',' << better_fit(r) << '\n';
    }
}

}  // namespace sgraph
