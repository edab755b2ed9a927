#include "sgraph/modelselect.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "support/samplers.hpp"

using namespace sgraph;

namespace {

TailSample lognormal_tail(std::uint64_t seed, std::size_t n) {
    return make_tail_sample(testlib::lognormal_sample(1.0, 0.5, n, seed, 1.0),
                            1);
}

std::vector<FitResult> four_fits(const TailSample& ts) {
    std::vector<FitResult> fits;
    fits.push_back(fit_exponential_mle(ts));
    fits.push_back(fit_lognormal_mle(ts));
    fits.push_back(fit_zeta_mle(ts));
    FitResult dpln;
    try {
        dpln = make_fit(DistKind::Dpln, fit_dpln_moments(ts.values), ts);
    } catch (const std::exception&) {
        // The comparison logic does not care how the parameters arose.
        dpln = make_fit(DistKind::Dpln, DplnParams{8.0, 6.0, 1.0, 0.5}, ts);
    }
    fits.push_back(dpln);
    return fits;
}

}  // namespace

TEST_CASE("swapping the models flips R and keeps the p-value") {
    const auto ts = lognormal_tail(51, 5000);
    const auto ln = fit_lognormal_mle(ts);
    const auto exp_fit = fit_exponential_mle(ts);

    const auto fwd = vuong_test(ts, ln, exp_fit, Direction::Out);
    const auto rev = vuong_test(ts, exp_fit, ln, Direction::Out);
    CHECK(fwd.R == doctest::Approx(-rev.R).epsilon(1e-12));
    CHECK(fwd.p_value == doctest::Approx(rev.p_value).epsilon(1e-12));
    CHECK(fwd.direction == Direction::Out);
    CHECK(fwd.n_tail == ts.n_tail());
    CHECK(fwd.first == DistKind::Lognormal);
    CHECK(fwd.second == DistKind::Exponential);
    CHECK(rev.first == DistKind::Exponential);

    CHECK(fwd.p_value >= 0.0);
    CHECK(fwd.p_value <= 1.0);
}

TEST_CASE("a model against itself is a perfect tie") {
    const auto ts = lognormal_tail(52, 2000);
    const auto ln = fit_lognormal_mle(ts);
    const auto tie = vuong_test(ts, ln, ln);
    CHECK(tie.R == 0.0);
    CHECK(tie.p_value == 1.0);
    CHECK_FALSE(rejects_null(tie));
    CHECK(better_fit(tie) == "neither");
}

TEST_CASE("lognormal data rejects the exponential model") {
    for (std::uint64_t seed : {51ull, 52ull, 53ull}) {
        const auto ts = lognormal_tail(seed, 20000);
        const auto r = vuong_test(ts, fit_lognormal_mle(ts),
                                  fit_exponential_mle(ts));
        CHECK(r.R > 0.0);
        CHECK(r.p_value < 0.05);
        CHECK(rejects_null(r));
        CHECK(better_fit(r) == "lognormal");
    }
}

TEST_CASE("R is the sum of pointwise log-density differences") {
    const auto ts = lognormal_tail(54, 1000);
    const auto ln = fit_lognormal_mle(ts);
    const auto exp_fit = fit_exponential_mle(ts);
    const auto r = vuong_test(ts, ln, exp_fit);

    double expect = 0.0;
    for (std::int64_t i = 0; i < ts.n_tail(); ++i) {
        const double x = ts.tail_data()[i];
        expect += log_density_at(DistKind::Lognormal, ln.params, x, ts.xmin) -
                  log_density_at(DistKind::Exponential, exp_fit.params, x,
                                 ts.xmin);
    }
    CHECK(r.R == doctest::Approx(expect).epsilon(1e-10));
    CHECK(r.R == doctest::Approx(ln.log_likelihood - exp_fit.log_likelihood)
                     .epsilon(1e-10));
}

TEST_CASE("mismatched truncation points are rejected") {
    const auto ts = lognormal_tail(55, 500);
    auto other = make_tail_sample(ts.values, 2);
    const auto ln = fit_lognormal_mle(ts);
    const auto wrong = fit_exponential_mle(other);
    CHECK_THROWS_AS(vuong_test(ts, ln, wrong), DomainError);
}

TEST_CASE("compare_all emits the five comparisons in fixed order") {
    const auto ts = lognormal_tail(51, 20000);
    const auto rows = compare_all(ts, four_fits(ts), Direction::In);
    REQUIRE(rows.size() == 5);

    const std::pair<DistKind, DistKind> expect[] = {
        {DistKind::Exponential, DistKind::Zeta},
        {DistKind::Lognormal, DistKind::Zeta},
        {DistKind::Lognormal, DistKind::Exponential},
        {DistKind::Dpln, DistKind::Zeta},
        {DistKind::Dpln, DistKind::Lognormal},
    };
    for (int i = 0; i < 5; ++i) {
        CHECK(rows[i].first == expect[i].first);
        CHECK(rows[i].second == expect[i].second);
        CHECK(rows[i].direction == Direction::In);
        CHECK(rows[i].p_value >= 0.0);
        CHECK(rows[i].p_value <= 1.0);
    }

    // Fit order must not matter.
    auto fits = four_fits(ts);
    std::swap(fits[0], fits[3]);
    std::swap(fits[1], fits[2]);
    const auto shuffled = compare_all(ts, fits, Direction::In);
    for (int i = 0; i < 5; ++i) {
        CHECK(shuffled[i].first == rows[i].first);
        CHECK(shuffled[i].R == doctest::Approx(rows[i].R).epsilon(1e-13));
    }
}

TEST_CASE("compare_all names the first missing fit") {
    const auto ts = lognormal_tail(56, 500);
    std::vector<FitResult> fits;
    fits.push_back(fit_lognormal_mle(ts));
    fits.push_back(fit_zeta_mle(ts));
    try {
        compare_all(ts, fits, Direction::In);
        FAIL("expected MissingFit");
    } catch (const MissingFit& e) {
        // The exponential/zeta row is evaluated first.
        CHECK(e.kind == DistKind::Exponential);
        CHECK(std::string(e.what()) == "missing fit for exponential");
    }
}

TEST_CASE("direction labels round-trip through to_string") {
    CHECK(std::string(to_string(Direction::In)) == "in");
    CHECK(std::string(to_string(Direction::Out)) == "out");
}

TEST_CASE("comparisons csv lists direction, models, and verdict") {
    const auto ts = lognormal_tail(51, 20000);
    const auto rows = compare_all(ts, four_fits(ts), Direction::Out);
    std::ostringstream out;
    write_comparisons_csv(out, rows);

    std::istringstream in(out.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "direction,first,second,R,p_value,n_tail,better");
    int body = 0;
    while (std::getline(in, line)) {
        CHECK(line.rfind("out,", 0) == 0);
        ++body;
    }
    CHECK(body == 5);
    // The lognormal/exponential row carries the seeded verdict.
    CHECK(out.str().find("lognormal,exponential") != std::string::npos);
}
