#include "anosov/measure.hpp"
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

// Visual mass of an arc as an integral of the Poisson kernel, independent of
// the Moebius-map formula used by the library.
double poisson_mass(HyperbolicPoint x, double th0, double len) {
    return adaptive_simpson([&](double th) { return poisson_kernel(x, BoundaryPoint(th)); }, th0,
                            th0 + len, 1e-12) /
           kTwoPi;
}
}  // namespace

TEST_CASE("nu_interval basics") {
    CircleAction r1(G(), 1), r2(G(), 2);
    PullbackMeasure m1(r1), m2(r2);
    CHECK(m1.nu_interval(CirclePoint(0.3, 1), CirclePoint(0.3, 1)) == 0.0);
    CHECK(m1.nu_arc(CirclePoint(0.3, 1), 1.0) == doctest::Approx(1.0));
    CHECK(m2.nu_arc(CirclePoint(1.7, 2), 1.0) == doctest::Approx(poisson_mass(kOrigin, 0, kTwoPi)).epsilon(1e-10));
    CHECK(m2.total_mass() == 2.0);
    CHECK_THROWS_AS(m2.nu_arc(CirclePoint(0.0, 2), 1.5), std::domain_error);
    // additivity over a partition of one base period
    double sum = 0;
    for (int i = 0; i < 10; ++i) sum += m2.nu_interval(CirclePoint(0.1 * i, 2), CirclePoint(0.1 * (i + 1), 2));
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("visual mass from other points agrees with Poisson quadrature") {
    CircleAction r1(G(), 1);
    PullbackMeasure m(r1);
    std::mt19937_64 rng(41);
    for (int i = 0; i < 40; ++i) {
        auto x = random_point(rng, 2.5);
        double a = uniform(rng, 0, 1), len = uniform(rng, 0, 1);
        CHECK(m.nu_from(x, a, len) == doctest::Approx(poisson_mass(x, kTwoPi * a, kTwoPi * len)).epsilon(1e-9));
    }
}

TEST_CASE("rn_derivative: identity, attracting fixed point, finite differences") {
    CircleAction rho(G(), 1);
    PullbackMeasure m(rho);
    CHECK(m.rn_derivative(Word{}, CirclePoint(0.4, 1)) == doctest::Approx(1.0).epsilon(1e-15));
    for_each_word(3, [&](const Word& w) {
        if (w.empty() || cyclic_reduce(w) != w) return;
        auto cls = classify_and_fixed_points(G().evaluate(w));
        CirclePoint p(cls.fixed[0].theta() / kTwoPi, 1);
        CHECK(m.rn_derivative(w, p) == doctest::Approx(std::exp(-cls.translation_length)).epsilon(1e-9));
        CirclePoint q(cls.fixed[1].theta() / kTwoPi, 1);
        CHECK(m.rn_derivative(w, q) == doctest::Approx(std::exp(cls.translation_length)).epsilon(1e-9));
    });
    std::mt19937_64 rng(42);
    auto words = enumerate_words(4);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    for (int i = 0; i < 300; ++i) {
        const Word& w = words[pick(rng)];
        double s = uniform(rng, 0, 1);
        double rn = m.rn_derivative(w, CirclePoint(s, 1));
        // initial step well inside the scale on which the derivative varies
        double e = 1e-6;
        double bend = std::abs(std::log(m.rn_derivative(w, CirclePoint(s + e, 1))) -
                               std::log(m.rn_derivative(w, CirclePoint(s - e, 1)))) / (2 * e);
        auto fd = ridders_derivative([&](double u) { return rho.lift(w, u); }, s, 0.05 / std::max(1.0, bend));
        CHECK(rel_err(fd.value, rn) < 1e-5);
    }
}

TEST_CASE("pushforward identity nu_o(rho(w^-1) I) = integral of the density") {
    CircleAction rho(G(), 2);
    PullbackMeasure m(rho);
    std::mt19937_64 rng(43);
    auto words = enumerate_words(3);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    for (int i = 0; i < 100; ++i) {
        const Word& w = words[pick(rng)];
        double a = uniform(rng, 0, 2), len = uniform(rng, 0.01, 0.9);
        CHECK(rel_err(m.integrate_pushforward(w, a, len), m.pulled_back_arc(w, a, len)) < 1e-6);
    }
}

TEST_CASE("rn_derivative is continuous in p") {
    CircleAction rho(G(), 1);
    PullbackMeasure m(rho);
    // Largest jump between neighbouring grid values halves with the step:
    // a Lipschitz modulus of continuity.
    Word w = Word::parse("a1 b2 A2");
    auto worst_jump = [&](int n) {
        double prev = m.rn_derivative(w, CirclePoint(0, 1)), worst = 0;
        for (int i = 1; i <= n; ++i) {
            double v = m.rn_derivative(w, CirclePoint(static_cast<double>(i) / n, 1));
            worst = std::max(worst, std::abs(v - prev));
            prev = v;
        }
        return worst;
    };
    double ratio = worst_jump(20000) / worst_jump(40000);
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("chart atlas") {
    CircleAction rho(G(), 3);
    PullbackMeasure m(rho);
    CirclePoint a(0.2, 3), b(0.45, 3);
    ChartAtlas atlas(m, {a, b});
    CHECK(atlas.chart_coordinate(a, a) == 0.0);
    CHECK_THROWS_AS(atlas.chart_coordinate(a, CirclePoint(1.5, 3)), ChartOutsideDomain);
    double first = atlas.chart_coordinate(a, CirclePoint(0.3, 3)) - atlas.chart_coordinate(b, CirclePoint(0.3, 3));
    double spread = 0, prev = -1;
    for (int i = 0; i < 100; ++i) {
        CirclePoint s(0.0 + 0.006 * i, 3);  // inside both chart arcs
        double za = atlas.chart_coordinate(a, s), zb = atlas.chart_coordinate(b, s);
        spread = std::max(spread, std::abs(za - zb - first));
        CHECK(za > prev);
        prev = za;
    }
    CHECK(spread < 1e-10);
    CHECK(atlas.transition(a, b, 0.1) == doctest::Approx(0.1 - 0.25).epsilon(1e-12));
}

TEST_CASE("fibre metric invariance and comparability") {
    CircleAction rho(G(), 2);
    PullbackMeasure m(rho);
    FiberMetric metric(m);
    std::mt19937_64 rng(44);
    auto words = enumerate_words(2);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    CHECK(metric.fiber_length({0.1, 0.1}, CirclePoint(0.3, 2), 0.2) == doctest::Approx(0.2).epsilon(1e-12));
    double r = G().domain().circumradius;
    for (int i = 0; i < 300; ++i) {
        auto x = random_point(rng, 2.0);
        double a = uniform(rng, 0, 2), len = uniform(rng, 0.001, 0.3);
        const Word& g = words[pick(rng)];
        auto gx = apply_isometry(G().evaluate(g), x);
        double ga = rho.lift(g, a), glen = rho.lift(g, a + len) - ga;
        double moved = metric.fiber_length(gx, CirclePoint(ga, 2), glen);
        double here = metric.fiber_length(x, CirclePoint(a, 2), len);
        CHECK(std::abs(moved - here) < 1e-9);
        // Against the visual measure seen from x itself.
        double visual = m.nu_from(x, a, len);
        CHECK(here / visual <= std::exp(r) * (1 + 1e-9));
        CHECK(here / visual >= std::exp(-r) * (1 - 1e-9));
    }
}
