#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "sgraph/statfit.hpp"

// Pairwise likelihood-ratio model comparison over a shared tail sample.

namespace sgraph {

// compare_all needs one fit per distribution kind; thrown when one is
// absent, naming the missing kind.
struct MissingFit : std::runtime_error {
    explicit MissingFit(DistKind kind)
        : std::runtime_error(std::string("missing fit for ") + to_string(kind)),
          kind(kind) {}
    DistKind kind;
};

enum class Direction { In, Out };

const char* to_string(Direction direction);

struct LlrResult {
    DistKind first = DistKind::Zeta;
    DistKind second = DistKind::Zeta;
    Direction direction = Direction::In;
    double R = 0;        // summed log-likelihood ratio, first minus second
    double p_value = 1;  // two-sided normal p-value for R
    std::int64_t n_tail = 0;
};

// Vuong-style test between two fitted models on the tail of `sample`.
// Both fits must share the sample's xmin. A positive R favors `first`.
LlrResult vuong_test(const TailSample& sample, const FitResult& first,
                     const FitResult& second,
                     Direction direction = Direction::In);

// True when the comparison is significant at the 0.05 level.
bool rejects_null(const LlrResult& llr);

// Name of the favored model, or "neither" when not significant.
std::string better_fit(const LlrResult& llr);

// The five comparisons reported per direction, in fixed order:
// exponential/zeta, lognormal/zeta, lognormal/exponential, dpln/zeta,
// dpln/lognormal. `fits` may hold the four fits in any order.
std::vector<LlrResult> compare_all(const TailSample& sample,
                                   const std::vector<FitResult>& fits,
                                   Direction direction = Direction::In);

// Header: direction,first,second,R,p_value,n_tail,better.
void write_comparisons_csv(std::ostream& out,
                           const std::vector<LlrResult>& rows);

}  // namespace sgraph
