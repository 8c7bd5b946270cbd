#include "anosov/cone.hpp"

#include "anosov/numerics.hpp"
#include "anosov/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace anosov {

namespace {

constexpr int kConeDirections = 64;

double leaf_scale(HyperbolicPoint y) { return 2.0 / (1.0 - y.norm2()); }

// The same bundle point moved by dy in the leaf and ds in the frame's fibre chart.
BundlePoint perturbed(const BundleFlow& flow, const BundlePoint& pt, cplx dy, double ds) {
    BundlePoint out = pt;
    out.local = HyperbolicPoint(pt.local.z() + dy);
    out.target = BoundaryPoint(pt.target.theta() + kTwoPi * ds);
    if (ds != 0.0) {
        double s_local = flow.action().lift(pt.domain_word.inverse(), pt.p.s);
        out.p = CirclePoint(flow.action().lift(pt.domain_word, s_local + ds), pt.p.k);
    }
    out.x = apply_isometry(out.domain, out.local);
    return out;
}

std::array<double, 3> coordinates_in(const BundleFlow& flow, const BundlePoint& centre,
                                     const BundlePoint& q) {
    BundlePoint r = flow.reframe(q, centre.domain_word);
    return {r.local.u, r.local.v, angle_diff(centre.target.theta(), r.target.theta()) / kTwoPi};
}

double spectral_norm2(double a, double b, double c, double d) {
    double s = a * a + b * b + c * c + d * d;
    double det = a * d - b * c;
    return std::sqrt(0.5 * (s + std::sqrt(std::max(0.0, s * s - 4.0 * det * det))));
}

BundlePoint random_bundle_point(const BundleFlow& flow, std::mt19937_64& rng) {
    const int k = flow.action().k();
    HyperbolicPoint x = random_point(rng, 2.0);
    return flow.make_point(x, CirclePoint(uniform(rng, 0.0, k), k));
}

}  // namespace

double TangentMap::leaf_scale_start() const { return leaf_scale(start.local); }
double TangentMap::leaf_scale_end() const { return leaf_scale(end.local); }
double TangentMap::fiber_scale_start() const { return visual_fiber_density(start.local, start.target, delta); }
double TangentMap::fiber_scale_end() const { return visual_fiber_density(end.local, end.target, delta); }

double TangentMap::fiber_growth() const {
    return fiber_scale_end() * std::abs(J[2][2]) / fiber_scale_start();
}

double TangentMap::fiber_tilt() const {
    return leaf_scale_end() * std::hypot(J[0][2], J[1][2]) / (fiber_scale_end() * std::abs(J[2][2]));
}

double TangentMap::leaf_norm() const {
    return leaf_scale_end() / leaf_scale_start() * spectral_norm2(J[0][0], J[0][1], J[1][0], J[1][1]);
}

double TangentMap::leaf_leak() const {
    return fiber_scale_end() * std::max(std::abs(J[2][0]), std::abs(J[2][1])) / leaf_scale_start();
}

std::vector<TangentMap> tangent_maps(const FieldFlow& psi, const BundlePoint& pt,
                                     const std::vector<double>& times, double h) {
    const BundleFlow& flow = psi.bundle();
    IntegratorOptions plain = psi.options();
    plain.check_error = false;
    FieldFlow side(flow, psi.field(), plain);

    // Trajectory 0 is the centre (with the error check); 2j+1 / 2j+2 are the
    // +h / -h perturbations of coordinate j.
    std::array<BundlePoint, 7> cur;
    cur[0] = pt;
    for (int j = 0; j < 3; ++j)
        for (int sgn = 0; sgn < 2; ++sgn) {
            double e = sgn == 0 ? h : -h;
            cplx dy = j == 0 ? cplx(e, 0) : j == 1 ? cplx(0, e) : cplx(0, 0);
            cur[2 * j + 1 + sgn] = perturbed(flow, pt, dy, j == 2 ? e : 0.0);
        }
    std::vector<TangentMap> out;
    double prev = 0.0;
    for (double t : times) {
        if (!(t > prev)) throw std::invalid_argument("tangent map times must be positive and increasing");
        cur[0] = psi.flow_psi(cur[0], t - prev);
        for (int i = 1; i < 7; ++i) cur[i] = side.flow_psi(cur[i], t - prev);
        prev = t;
        TangentMap m;
        m.t = t;
        m.delta = flow.delta();
        m.start = pt;
        m.end = cur[0];
        for (int j = 0; j < 3; ++j) {
            auto plus = coordinates_in(flow, cur[0], cur[2 * j + 1]);
            auto minus = coordinates_in(flow, cur[0], cur[2 * j + 2]);
            for (int i = 0; i < 3; ++i) m.J[i][j] = (plus[i] - minus[i]) / (2.0 * h);
        }
        for (const auto& row : m.J)
            for (double v : row)
                if (!std::isfinite(v)) throw JacobianConditioning("non-finite tangent map entry");
        if (!(std::abs(m.J[2][2]) > 1e-12)) throw JacobianConditioning("fibre block of the tangent map degenerate");
        out.push_back(m);
    }
    return out;
}

namespace {

// Images of the cone axis and of 64 boundary directions, each as the slope
// (E^h part) / (U part) in g-units; the leaf part is written as a complex number.
std::vector<cplx> image_slopes(const TangentMap& m, double beta) {
    const double ls0 = m.leaf_scale_start(), fs0 = m.fiber_scale_start();
    const double ls1 = m.leaf_scale_end(), fs1 = m.fiber_scale_end();
    auto slope = [&](const std::array<double, 3>& v) {
        std::array<double, 3> img{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) img[i] += m.J[i][j] * v[j];
        return ls1 * cplx(img[0], img[1]) / (fs1 * img[2]);
    };
    std::vector<cplx> out{slope({0.0, 0.0, 1.0 / fs0})};
    for (int i = 0; i < kConeDirections; ++i) {
        double a = kTwoPi * i / kConeDirections;
        out.push_back(slope({beta * std::cos(a) / ls0, beta * std::sin(a) / ls0, 1.0 / fs0}));
    }
    return out;
}

}  // namespace

ConeCheck cone_check(const TangentMap& m, const ConeField& cone) {
    if (!(cone.beta > 0.0)) throw std::invalid_argument("cone angle must be positive");
    ConeCheck out;
    out.expansion = m.fiber_growth();
    // The axis u and the boundary circle |w| = beta |u| bound the closed cone.
    for (cplx sl : image_slopes(m, cone.beta)) out.worst_ratio = std::max(out.worst_ratio, std::abs(sl) / cone.beta);
    out.contained = out.worst_ratio < 1.0;
    return out;
}

ConeCheck cone_check(const FieldFlow& psi, const ConeField& cone, const BundlePoint& pt, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("cone check needs T > 0");
    return cone_check(tangent_maps(psi, pt, {T}).front(), cone);
}

ConeConstants measure_cone_constants(const FieldFlow& psi, std::uint64_t seed, std::size_t samples,
                                     double t_max) {
    std::mt19937_64 rng(seed);
    ConeConstants c;
    c.samples = samples;
    c.t_max = t_max;
    if (samples == 0) return c;
    std::vector<double> times;
    for (double t = 0.25; t <= t_max + 1e-12; t += 0.25) times.push_back(t);
    std::vector<BundlePoint> pts;
    std::vector<std::vector<TangentMap>> runs;
    double slope = INFINITY, c3 = 1.0;
    for (std::size_t i = 0; i < samples; ++i) {
        pts.push_back(random_bundle_point(psi.bundle(), rng));
        runs.push_back(tangent_maps(psi, pts.back(), times));
        std::vector<double> logs;
        for (const TangentMap& m : runs.back()) {
            logs.push_back(std::log(m.fiber_growth()));
            c3 = std::max(c3, m.leaf_norm());
        }
        slope = std::min(slope, fit_line(times, logs).slope);
    }
    c.c2 = 0.95 * slope;
    double pre = INFINITY;
    for (const auto& run : runs)
        for (const TangentMap& m : run) pre = std::min(pre, m.fiber_growth() * std::exp(-c.c2 * m.t));
    c.c1 = 0.9 * pre;
    c.c3 = 1.05 * c3;
    c.T = std::max(std::log(2.0 * c.c3 / c.c1) / c.c2, 0.0);
    if (!(c.T > 0.0)) c.T = 0.25;  // growth already beats 2 c3 at t = 0
    std::vector<double> window;
    for (int i = 0; i <= 8; ++i) window.push_back(c.T * (1.0 + i / 8.0));
    double c4 = 0.0;
    for (const BundlePoint& p : pts)
        for (const TangentMap& m : tangent_maps(psi, p, window)) c4 = std::max(c4, m.fiber_tilt());
    c.c4 = 1.05 * c4;
    c.beta = 2.5 * c.c4;
    return c;
}

ConeCertification certify_cone(const FieldFlow& psi, const ConeConstants& constants,
                               std::uint64_t seed, std::size_t points) {
    std::mt19937_64 rng(seed);
    ConeCertification out;
    out.points = points;
    out.worst_growth_slack = INFINITY;
    const ConeField cone{constants.beta};
    std::vector<double> times;
    for (int i = 0; i <= 4; ++i) times.push_back(constants.T * (1.0 + i / 4.0));
    for (std::size_t n = 0; n < points; ++n) {
        BundlePoint pt = random_bundle_point(psi.bundle(), rng);
        for (const TangentMap& m : tangent_maps(psi, pt, times)) {
            ConeCheck chk = cone_check(m, cone);
            ++out.checks;
            if (!chk.contained) ++out.failures;
            out.worst_ratio = std::max(out.worst_ratio, chk.worst_ratio);
            double slack = std::log(chk.expansion) - std::log(constants.c1) - constants.c2 * m.t;
            out.worst_growth_slack = std::min(out.worst_growth_slack, slack);
        }
    }
    if (points == 0) out.worst_growth_slack = 0.0;
    out.contained = points > 0 && out.failures == 0;
    out.expansion = points > 0 && out.worst_growth_slack > 0.0;
    return out;
}

UnstableDiagnostic cone_width_decay(const FieldFlow& psi, const ConeField& cone,
                                    const BundlePoint& pt, double T, int steps) {
    UnstableDiagnostic out;
    std::vector<double> times, logs;
    for (int n = 1; n <= steps; ++n) times.push_back(n * T);
    for (const TangentMap& m : tangent_maps(psi, pt, times)) {
        std::vector<cplx> sl = image_slopes(m, cone.beta);
        double w = 0.0;
        for (cplx a : sl)
            for (cplx b : sl) w = std::max(w, std::abs(a - b));
        out.widths.push_back(w);
        logs.push_back(std::log(w));
    }
    if (times.size() >= 2) out.decay_rate = fit_line(times, logs).slope;
    return out;
}

}  // namespace anosov
