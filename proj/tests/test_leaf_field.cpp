#include "anosov/leaf_field.hpp"
#include "anosov/mollifier.hpp"

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

const SmoothedLeafField& smoothed(int scale) {
    static const SmoothedLeafField f16(G(), 16), f128(G(), 128);
    return scale == 16 ? f16 : f128;
}

// Unit-speed geodesic direction written out from the disk automorphism
// T(z) = (z + x) / (1 + conj(x) z), whose derivative at 0 is 1 - |x|^2.
cplx geodesic_velocity(cplx x, cplx xi) {
    return 0.5 * (1.0 - std::norm(x)) * (xi - x) / (1.0 - std::conj(x) * xi);
}

HyperbolicPoint point_in_domain(std::mt19937_64& rng) {
    HyperbolicPoint y;
    do y = random_point(rng, G().domain().circumradius);
    while (!G().domain().contains(y));
    return y;
}
}  // namespace

TEST_CASE("unsmoothed gluing reproduces the geodesic field") {
    SmoothedLeafField glued(G(), 0);
    ExactLeafField exact;
    std::mt19937_64 rng(21);
    for (int i = 0; i < 500; ++i) {
        HyperbolicPoint y = random_point(rng, G().domain().circumradius + 0.5);
        BoundaryPoint th(uniform(rng, 0, kTwoPi));
        cplx want = geodesic_velocity(y.z(), th.z());
        CHECK(std::abs(exact.velocity(y, th) - want) < 1e-14);
        CHECK(std::abs(glued.velocity(y, th) - want) < 1e-12);
        CHECK(std::abs(glued.chart_velocity(y, th) - want) < 1e-12);
    }
}

TEST_CASE("smoothed field is equivariant under the deck group") {
    const SmoothedLeafField& f = smoothed(16);
    std::mt19937_64 rng(22);
    for (const Tile& tile : G().tiles_within(2.0 * G().domain().inradius + 0.1)) {
        for (int i = 0; i < 5; ++i) {
            HyperbolicPoint y = point_in_domain(rng);
            BoundaryPoint th(uniform(rng, 0, kTwoPi));
            HyperbolicPoint gy = apply_isometry(tile.g, y);
            if (hyperbolic_distance(kOrigin, gy) > G().domain().circumradius + 0.9) continue;
            // derivative of g at y by a central difference of the disk map
            const double h = 1e-6;
            cplx dg = (apply_disk(tile.g, y.z() + h) - apply_disk(tile.g, y.z() - h)) / (2 * h);
            cplx lhs = f.velocity(gy, apply_boundary(tile.g, th));
            CHECK(std::abs(lhs - dg * f.velocity(y, th)) < 1e-8);
        }
    }
}

TEST_CASE("series mollification agrees with grid quadrature") {
    const int k = 16;
    const SmoothedLeafField& f = smoothed(k);
    auto a = ChartSamples::sample(3, 2048, 2, -0.3, 0.3, 1.0, [](double x1, double x2, double s, double* o) {
        cplx v = geodesic_velocity({x1, x2}, std::polar(1.0, kTwoPi * s));
        o[0] = v.real();
        o[1] = v.imag();
    });
    MollifiedField m = mollify(a, k);
    double worst = 0.0;
    for (std::size_t i1 = 0; i1 < a.nx; ++i1)
        for (std::size_t i2 = 0; i2 < a.nx; ++i2)
            for (std::size_t j = 0; j < a.ny; j += 7) {
                cplx v = f.chart_velocity(HyperbolicPoint(a.x(i1), a.x(i2)), BoundaryPoint(kTwoPi * a.y(j)));
                worst = std::max(worst, std::abs(v - cplx(m.b.at(0, i1, i2, j), m.b.at(1, i1, i2, j))));
            }
    CHECK(worst < 1e-8);
}

TEST_CASE("C1 distance to X shrinks like 1/k^2 and picks the threshold scale") {
    ExactLeafField exact;
    std::vector<double> totals;
    for (int k : {16, 32, 64}) {
        SmoothedLeafField f(G(), k);
        totals.push_back(leafwise_c1_distance(f, exact, G(), 5, 150).total());
    }
    for (std::size_t i = 1; i < totals.size(); ++i) {
        CHECK(totals[i - 1] / totals[i] > 3.0);
        CHECK(totals[i - 1] / totals[i] < 5.0);
    }
    ScaleSelection sel = select_mollifier_scale(G(), 5, 150, 1.0, 0.1, {16, 32, 64, 128});
    REQUIRE(sel.found);
    CHECK(sel.tried.back().scale == sel.scale);
    CHECK(sel.tried.back().total() < sel.cap);
    for (std::size_t i = 0; i + 1 < sel.tried.size(); ++i) CHECK(sel.tried[i].total() >= sel.cap);
}

TEST_CASE("psi with the exact field matches phi") {
    Setup s(1);
    ExactLeafField exact;
    FieldFlow psi(s.flow, exact);
    std::mt19937_64 rng(23);
    for (int i = 0; i < 20; ++i) {
        BundlePoint pt = s.flow.make_point(random_point(rng, 2.0), CirclePoint(uniform(rng, 0, 1), 1));
        for (double t : {-5.0, 3.0, 20.0}) {
            double err = 0.0;
            BundlePoint a = psi.flow_psi(pt, t, nullptr, &err);
            BundlePoint b = s.flow.flow_phi(pt, t);
            CHECK(s.flow.distance(a, b) < 1e-8);
            CHECK(err < 1e-8);
            CHECK(a.p.s == pt.p.s);
        }
    }
}

TEST_CASE("psi group law and guards") {
    Setup s(2);
    FieldFlow psi(s.flow, smoothed(16));
    BundlePoint pt = s.flow.make_point(HyperbolicPoint(0.3, -0.1), CirclePoint(1.3, 2));
    OrbitSegment seg;
    BundlePoint whole = psi.flow_psi(pt, 4.0, &seg);
    BundlePoint split = psi.flow_psi(psi.flow_psi(pt, 1.5), 2.5);
    CHECK(s.flow.distance(whole, split) < 1e-10);
    CHECK(seg.samples.size() == 401);
    CHECK(seg.crossing_product() == pt.domain_word.inverse() * whole.domain_word);
    CHECK(psi.flow_psi(pt, 0.0).local.u == pt.local.u);
    CHECK_THROWS_AS(psi.flow_psi(pt, 101.0), FlowBudgetExceeded);
    FieldFlow strict(s.flow, smoothed(16), IntegratorOptions{1e-2, true, 1e-20});
    CHECK_THROWS_AS(strict.flow_psi(pt, 1.0), StepSizeFailure);
    FieldFlow coarse(s.flow, smoothed(16), IntegratorOptions{0.5, true, 1e-8});
    CHECK_THROWS_AS(coarse.flow_psi(pt, 5.0), StepSizeFailure);
}

TEST_CASE("perturbed orbits fellow-travel the geodesic toward f(p)") {
    Setup s(1);
    FieldFlow psi(s.flow, smoothed(128));
    QuasigeodesicReport rep = quasigeodesic_bound(psi, 24, 10, 20.0);
    CHECK(rep.R > 0.0);
    CHECK(rep.R < 0.01);
    CHECK(rep.time_constant < 1.05);
    // independent fellow-traveling oracle: phi-geodesic positions at the
    // Busemann-matched time stay within a few R
    BundlePoint pt = s.flow.make_point(HyperbolicPoint(-0.2, 0.35), CirclePoint(0.7, 1));
    BundlePoint a = psi.flow_psi(pt, 20.0);
    Isometry rel = G().evaluate(a.domain_word.inverse() * pt.domain_word);
    double progress = busemann(a.target, apply_isometry(rel, pt.local), a.local);
    BundlePoint b = s.flow.flow_phi(pt, progress);
    CHECK(s.flow.distance(a, b) < 3.0 * rep.R + 1e-9);
}

TEST_CASE("perturbed orbits on one leaf contract forward") {
    Setup s(1);
    FieldFlow psi(s.flow, smoothed(128));
    std::mt19937_64 rng(25);
    for (int i = 0; i < 5; ++i) {
        CirclePoint p(uniform(rng, 0, 1), 1);
        HyperbolicPoint x = random_point(rng, 1.5);
        BundlePoint a = s.flow.make_point(x, p);
        // partner on the horocycle through x based at f(p)
        Isometry to = Isometry::recentre(x);
        cplx dir = apply_disk(to, s.rho.f(p).z());
        double d0 = 0.5;
        cplx z = 0.5 + 0.5 * std::polar(1.0, std::numbers::pi - 2.0 * std::asin(std::tanh(d0 / 2)));
        BundlePoint b = s.flow.make_point(HyperbolicPoint(apply_disk(to.inverse(), z * dir)), p);
        REQUIRE(s.flow.distance(a, b) == doctest::Approx(d0).epsilon(1e-9));
        // distance from b to the orbit of a: minimise over a short time shift
        auto orbit_distance = [&](const BundlePoint& on, const BundlePoint& off) {
            auto d = [&](double tau) { return s.flow.distance(psi.flow_psi(on, tau), off); };
            double lo = -0.1, hi = 0.1;
            for (int it = 0; it < 60; ++it) {
                double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
                if (d(m1) < d(m2))
                    hi = m2;
                else
                    lo = m1;
            }
            return d(0.5 * (lo + hi));
        };
        for (int t = 1; t <= 10; ++t) {
            a = psi.flow_psi(a, 1.0);
            b = psi.flow_psi(b, 1.0);
            CHECK(orbit_distance(a, b) <= 2.0 * d0 * std::exp(-0.9 * t));
        }
    }
}

TEST_CASE("backward endpoint is the other end of the orbit geodesic") {
    std::mt19937_64 rng(26);
    for (int i = 0; i < 100; ++i) {
        HyperbolicPoint y = random_point(rng, 2.0);
        BoundaryPoint th(uniform(rng, 0, kTwoPi));
        BoundaryPoint neg = backward_endpoint(y, th);
        CHECK(distance_to_geodesic(y, {neg, th}) < 1e-7);
        HyperbolicPoint far = flow_toward(y, th, -30.0);
        CHECK(std::abs(angle_diff(std::arg(far.z()), neg.theta())) < 1e-6);
    }
}
