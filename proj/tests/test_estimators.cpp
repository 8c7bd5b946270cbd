#include "anosov/estimators.hpp"
#include "anosov/numerics.hpp"

#include "doctest.h"
#include "support.hpp"

using namespace anosov;
using namespace testsupport;

namespace {
const SurfaceGroup& G() {
    static const SurfaceGroup g = SurfaceGroup::standard_genus2();
    return g;
}

struct Setup {
    CircleAction rho;
    PullbackMeasure m;
    BundleFlow flow;
    explicit Setup(int k) : rho(G(), k), m(rho), flow(m) {}
};

// Two points on one horocycle at distance d0 stay on it under the flow;
// the horocyclic arc shrinks by e^{-t}, so d(t) = 2 asinh(sinh(d0/2) e^{-t}).
double horocycle_distance(double d0, double t) { return 2.0 * std::asinh(std::sinh(d0 / 2) * std::exp(-t)); }
}  // namespace

TEST_CASE("forward asymptoticity matches the horocycle closed form") {
    Setup S(1);
    const double d0_max = 1.0;
    AsymptoticityReport r = forward_asymptoticity(S.flow, 11, 60, d0_max, 10.0);
    CHECK(r.pairs == 60);
    // The fitted rate is worst for the largest initial distance.
    std::vector<double> ts, logs;
    for (double t = 1.0; t <= 10.0; t += 1.0) {
        ts.push_back(t);
        logs.push_back(std::log(horocycle_distance(d0_max, t)));
    }
    double worst = -fit_line(ts, logs).slope;
    CHECK(r.min_exponent >= worst - 1e-6);
    CHECK(r.min_exponent <= r.mean_exponent);
    CHECK(r.mean_exponent <= 1.0 + 1e-6);
    // d(t) / (d0 e^{-t}) lies in [1, 2 sinh(d0/2) / d0].
    CHECK(r.max_constant >= 1.0 - 1e-9);
    CHECK(r.max_constant <= 2.0 * std::sinh(d0_max / 2) / d0_max + 1e-6);
}

TEST_CASE("stable bound recovers unit rate and constant") {
    for (int k : {1, 2}) {
        Setup S(k);
        StableBoundReport r = stable_bound(S.flow, 12, 20, 8.0);
        CHECK(r.samples == 20);
        CHECK(r.k2 == doctest::Approx(1.0).epsilon(1e-4));
        CHECK(r.k1 == doctest::Approx(1.0).epsilon(1e-4));
    }
}

TEST_CASE("holonomy sweep respects the diameter bound and fits rate one") {
    for (int k : {1, 3}) {
        Setup S(k);
        HolonomyBoundReport r = holonomy_bound_sweep(S.flow, 13, 1000, -20.0);
        CHECK(r.segments == 1000);
        CHECK(r.worst_slack <= 1e-6);
        CHECK(r.fitted_exponent == doctest::Approx(1.0).epsilon(0.05));
        CHECK(r.r2 > 0.9);
    }
}

TEST_CASE("separation time grows by log 2 per halved gap") {
    Setup S(1);
    const std::vector<double> gaps{0.005, 0.04, 0.01, 0.02};
    SeparationReport r = separation_times(S.flow, 14, 60, 0.1, gaps);
    CHECK(r.pairs == 240);
    REQUIRE(r.rows.size() == 4);
    CHECK(r.finite);
    CHECK(r.monotone);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        CHECK(r.rows[i].pairs == 60);
        CHECK(r.rows[i].unseparated == 0);
        if (i > 0) {
            CHECK(r.rows[i].kappa == doctest::Approx(r.rows[i - 1].kappa / 2));
            // The visual gap seen from the lead point grows like e^{t}.
            CHECK(r.rows[i].t_mean - r.rows[i - 1].t_mean == doctest::Approx(std::log(2.0)).epsilon(0.2));
        }
    }
}

TEST_CASE("gaps already beyond eps separate at time zero") {
    Setup S(2);
    SeparationReport r = separation_times(S.flow, 15, 10, 0.1, {0.2});
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].t_max == 0.0);
    CHECK(r.finite);
}

TEST_CASE("too short a budget leaves pairs unseparated") {
    Setup S(1);
    SeparationReport r = separation_times(S.flow, 16, 10, 0.1, {0.005}, 0.5);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].unseparated == 10);
    CHECK_FALSE(r.finite);
}

TEST_CASE("estimators with no samples report zeros") {
    Setup S(1);
    CHECK(forward_asymptoticity(S.flow, 1, 0).min_exponent == 0.0);
    CHECK(stable_bound(S.flow, 1, 0).k2 == 0.0);
    CHECK(holonomy_bound_sweep(S.flow, 1, 0).worst_slack == 0.0);
    SeparationReport r = separation_times(S.flow, 1, 0, 0.1, {0.01});
    CHECK(r.pairs == 0);
}

TEST_CASE("estimators are reproducible from the seed") {
    Setup S(1);
    auto a = holonomy_bound_sweep(S.flow, 99, 50);
    auto b = holonomy_bound_sweep(S.flow, 99, 50);
    CHECK(a.worst_slack == b.worst_slack);
    CHECK(a.fitted_exponent == b.fitted_exponent);
}
