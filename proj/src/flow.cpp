#include "anosov/flow.hpp"

#include "anosov/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace anosov {

namespace {

// The transversal must be small against e^{-l} for backward returns to
// reach the translate, so long words need many halvings of inj / 4.
constexpr int kMaxReturnRetries = 40;

// Signed circular offset b - a on R/kZ folded into (-k/2, k/2].
double fiber_offset(double a, double b, int k) {
    double d = std::fmod(b - a, static_cast<double>(k));
    if (d > 0.5 * k) d -= k;
    if (d <= -0.5 * k) d += k;
    return d;
}

}  // namespace

HyperbolicPoint axis_foot(const Geodesic& g) {
    double a = g.neg.theta(), b = g.pos.theta();
    double d = angle_diff(a, b);  // shorter arc from a to b, signed
    double gap = std::abs(d);
    double r = std::tan(std::numbers::pi / 4 - gap / 4);
    return HyperbolicPoint(std::polar(r, a + d / 2));
}

Word OrbitSegment::crossing_product() const {
    if (samples.empty()) return {};
    return samples.front().domain_word.inverse() * samples.back().domain_word;
}

BundleFlow::BundleFlow(const PullbackMeasure& m, double sample_dt) : m_(&m), dt_(sample_dt) {}

BundlePoint BundleFlow::make_point(HyperbolicPoint x, CirclePoint p) const {
    auto red = group().reduce_to_domain(x);
    BundlePoint pt;
    pt.x = x;
    pt.p = p;
    pt.domain_word = red.word;
    pt.domain = group().evaluate(red.word);
    pt.local = red.point;
    pt.target = apply_boundary(pt.domain.inverse(), action().f(p));
    return pt;
}

BundlePoint BundleFlow::reframe(const BundlePoint& pt, const Word& word) const {
    Isometry rel = group().evaluate(word.inverse() * pt.domain_word);
    BundlePoint out = pt;
    out.domain_word = word;
    out.domain = group().evaluate(word);
    out.local = apply_isometry(rel, pt.local);
    out.target = apply_boundary(rel, pt.target);
    return out;
}

HyperbolicPoint BundleFlow::position_in_frame(const BundlePoint& a, const BundlePoint& b) const {
    Isometry rel = group().evaluate(a.domain_word.inverse() * b.domain_word);
    return apply_isometry(rel, b.local);
}

double BundleFlow::distance(const BundlePoint& a, const BundlePoint& b) const {
    return hyperbolic_distance(a.local, position_in_frame(a, b));
}

BundlePoint BundleFlow::flow_phi(const BundlePoint& start, double t, OrbitSegment* segment) const {
    if (!(std::abs(t) <= kMaxTime)) throw FlowBudgetExceeded("flow time beyond the budget guard");
    const FundamentalDomain& D = group().domain();
    BundlePoint pt = start;
    auto record = [&](double time) {
        if (!segment) return;
        pt.x = apply_isometry(pt.domain, pt.local);
        segment->times.push_back(time);
        segment->samples.push_back(pt);
    };
    if (segment) {
        segment->times.clear();
        segment->samples.clear();
        segment->crossings.clear();
    }
    record(0.0);
    const double dir = t >= 0.0 ? 1.0 : -1.0;
    HyperbolicPoint frame_start = pt.local;
    double frame_t0 = 0.0, done = 0.0;
    int guard = 0;
    while (dir * (t - done) > 0.0) {
        if (++guard > 1000000) throw FlowBudgetExceeded("flow step guard tripped");
        double next = dir * std::min(dir * (t - done), dt_) + done;
        HyperbolicPoint cand = flow_toward(frame_start, pt.target, next - frame_t0);
        if (D.contains(cand)) {
            pt.local = cand;
            done = next;
            record(done);
            continue;
        }
        // Locate the exit time, then step a hair past it so the reduction
        // sees an unambiguous violation.
        double lo = done, hi = next;
        for (int i = 0; i < 80 && std::abs(hi - lo) > 1e-14; ++i) {
            double mid = 0.5 * (lo + hi);
            if (D.contains(flow_toward(frame_start, pt.target, mid - frame_t0)))
                lo = mid;
            else
                hi = mid;
        }
        double tc = hi + dir * 1e-11;
        if (dir * (tc - t) > 0.0) tc = t;
        HyperbolicPoint out = flow_toward(frame_start, pt.target, tc - frame_t0);
        auto red = group().reduce_to_domain(out);
        done = tc;
        if (red.word.empty()) {
            pt.local = out;
            record(done);
            continue;
        }
        Isometry step = group().evaluate(red.word);
        pt.domain_word = pt.domain_word * red.word;
        pt.domain = group().evaluate(pt.domain_word);
        pt.local = red.point;
        pt.target = apply_boundary(step.inverse(), pt.target);
        frame_start = pt.local;
        frame_t0 = done;
        if (segment) segment->crossings.push_back({done, pt.domain_word});
        record(done);
    }
    pt.x = apply_isometry(pt.domain, pt.local);
    return pt;
}

HolonomyRecord BundleFlow::holonomy_derivative(const BundlePoint& pt, double t) const {
    return holonomy_record(pt, flow_phi(pt, t), t);
}

HolonomyRecord BundleFlow::holonomy_record(const BundlePoint& pt, const BundlePoint& end, double t) const {
    Isometry delta_g = group().evaluate(pt.domain_word.inverse() * end.domain_word);
    HolonomyRecord rec;
    rec.t = t;
    // Use whichever frame sees the other endpoint far from the flow target,
    // where the Poisson kernel has no cancellation.
    double logp = t < 0.0 ? log_poisson_orbit(delta_g, pt.target)
                          : -log_poisson_orbit(delta_g.inverse(), end.target);
    rec.log_derivative = delta() * logp;
    rec.derivative = std::exp(rec.log_derivative);
    double slack = 2.0 * delta() * group().domain().diameter;
    rec.bound_check = t < 0.0 ? rec.log_derivative - (delta() * t + slack)
                              : (delta() * t - slack) - rec.log_derivative;
    return rec;
}

PeriodicOrbit BundleFlow::periodic_orbit(const Word& w, CirclePoint p) const {
    const int k = action().k();
    if (w.empty()) throw NotPeriodic("identity word has no periodic orbit");
    Isometry g = group().evaluate(w);
    auto cls = classify_and_fixed_points(g);
    if (cls.kind != IsometryClass::hyperbolic) throw NotPeriodic("word is not hyperbolic");
    // At a repelling point the residual is the location error times e^{l}.
    double slack = 1e-9 * std::max(1.0, measure().rn_derivative(w, p));
    if (std::abs(fiber_offset(p.s, action().act(w, p).s, k)) > slack)
        throw NotPeriodic("circle point is not fixed by the word");
    BoundaryPoint fp = action().f(p);
    bool attracting;
    if (std::abs(angle_diff(fp.theta(), cls.fixed[0].theta())) < 1e-7)
        attracting = true;
    else if (std::abs(angle_diff(fp.theta(), cls.fixed[1].theta())) < 1e-7)
        attracting = false;
    else
        throw NotPeriodic("f(p) is not an endpoint of the axis");

    auto [root, n] = primitive_root(w);
    double root_period = cls.translation_length / n;
    Geodesic axis{attracting ? cls.fixed[1] : cls.fixed[0], fp};
    // Nudge off the foot of the axis so the start is not on a tile side.
    HyperbolicPoint x0 = flow_toward(axis_foot(axis), fp, 0.0731);

    PeriodicOrbit out;
    out.word = w;
    out.p = p;
    out.toward_attracting = attracting;
    out.period = cls.translation_length;
    BundlePoint start = make_point(x0, p);
    OrbitSegment one;
    // One root period is flowed and then repeated by deck translation: the
    // local flow target is re-expressed at every crossing and forward flow
    // magnifies its rounding, so short pieces stay accurate.
    BundlePoint end = flow_phi(start, root_period, &one);
    Word g1 = end.domain_word * start.domain_word.inverse();
    OrbitSegment& seg = out.segment;
    seg = one;
    for (int c = 1; c < n; ++c) {
        Word shift = g1.power(c);
        for (std::size_t i = 1; i < one.samples.size(); ++i) {
            BundlePoint s = one.samples[i];
            s.domain_word = shift * s.domain_word;
            s.domain = group().evaluate(s.domain_word);
            s.x = apply_isometry(s.domain, s.local);
            seg.samples.push_back(s);
            seg.times.push_back(one.times[i] + c * root_period);
        }
        for (const auto& cr : one.crossings)
            seg.crossings.push_back({cr.t + c * root_period, shift * cr.word});
    }
    out.translation = g1.power(n);
    out.class_key = conjugacy_key(seg.crossing_product());
    out.closure_gap = hyperbolic_distance(start.local, end.local) +
                      std::abs(fiber_offset(p.s, action().act(out.translation, p).s, k));
    return out;
}

FirstReturnReport BundleFlow::first_return(const PeriodicOrbit& orbit, double transversal_radius,
                                           int iterations) const {
    const int k = action().k();
    const CirclePoint p = orbit.p;
    const Word gw = orbit.toward_attracting ? orbit.word : orbit.word.inverse();
    const Isometry G = group().evaluate(gw);
    auto cls = classify_and_fixed_points(G);
    const BoundaryPoint ahead = cls.fixed[0], behind = cls.fixed[1];
    const double ell = cls.translation_length;
    const HyperbolicPoint x0 = orbit.segment.samples.front().x;

    // Axis parameter: signed position of the orthogonal projection onto the
    // axis, zero at x0. Level sets are the geodesics orthogonal to the axis.
    auto tau = [&](HyperbolicPoint z) {
        return 0.5 * (busemann(ahead, x0, z) - busemann(behind, x0, z));
    };
    const Isometry to_x0 = Isometry::recentre(x0);
    const Isometry from_x0 = to_x0.inverse();
    const double axis_dir = std::arg(apply_disk(to_x0, ahead.z()));
    auto transversal_point = [&](double u) {
        double r = std::tanh(std::abs(u) / 2);
        double ang = axis_dir + (u >= 0.0 ? 0.5 : -0.5) * std::numbers::pi;
        return apply_isometry(from_x0, HyperbolicPoint(std::polar(r, ang)));
    };
    auto transversal_coordinate = [&](HyperbolicPoint y) {
        cplx z = apply_disk(to_x0, y.z()) * std::polar(1.0, -axis_dir);
        double d = 2.0 * std::atanh(std::min(std::abs(z), 1.0 - 1e-16));
        return z.imag() >= 0.0 ? d : -d;
    };
    // Time along the flow from y toward xi at which tau reaches level.
    auto hit_time = [&](HyperbolicPoint y, BoundaryPoint xi, double level, double lo,
                        double hi) -> std::optional<double> {
        double flo = tau(flow_toward(y, xi, lo)) - level, fhi = tau(flow_toward(y, xi, hi)) - level;
        if (!(flo <= 0.0 && fhi >= 0.0) && !(flo >= 0.0 && fhi <= 0.0)) return std::nullopt;
        bool lo_neg = flo < 0.0;
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            double fm = tau(flow_toward(y, xi, mid)) - level;
            if ((fm < 0.0) == lo_neg)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    struct State {
        HyperbolicPoint y;
        double s;
        bool ok;
        double level_error = 0.0;  // |tau + ell| at the preimage on G^{-1} T
    };
    // r^{-1}: flow back to the translate G^{-1} T, then carry it to T.
    auto inverse_return = [&](HyperbolicPoint y, double s) -> State {
        BoundaryPoint xi = action().f(s);
        auto th = hit_time(y, xi, -ell, -std::min(3.0 * ell + 2.0, 15.0), 0.0);
        if (!th) return {y, s, false};
        HyperbolicPoint back = flow_toward(y, xi, *th);
        // Measured before applying G: pulling G y back again would amplify
        // rounding by the derivative of G near the boundary.
        return {apply_isometry(G, back), CirclePoint(action().lift(gw, s), k).s, true,
                std::abs(tau(back) + ell)};
    };
    // Point of T on the F^v leaf of the orbit at fibre height s: on the
    // geodesic from the repelling end to f(s).
    auto leaf_point = [&](double s) -> std::optional<HyperbolicPoint> {
        BoundaryPoint xi = action().f(s);
        HyperbolicPoint z0 = axis_foot(Geodesic{behind, xi});
        auto th = hit_time(z0, xi, 0.0, -12.0, 12.0);
        if (!th) return std::nullopt;
        return flow_toward(z0, xi, *th);
    };

    FirstReturnReport rep;
    // Injectivity scale along the orbit: half the least displacement of an
    // orbit sample by a nontrivial deck transformation.
    // A generator gives an upper bound; any deck transformation beating it
    // moves o by at most that bound plus twice the circumradius.
    double inj = INFINITY;
    for (const auto& smp : orbit.segment.samples)
        for (int l = 0; l < kLetters; ++l)
            inj = std::min(inj, 0.5 * hyperbolic_distance(smp.local, apply_isometry(group().generator(l), smp.local)));
    auto tiles = group().tiles_within(2.0 * inj + 2.0 * group().domain().circumradius);
    for (const auto& smp : orbit.segment.samples)
        for (const auto& tile : tiles)
            if (!tile.word.empty())
                inj = std::min(inj, 0.5 * hyperbolic_distance(smp.local, apply_isometry(tile.g, smp.local)));
    auto fps = action().fixed_points(gw);
    double gap = k;
    for (const auto& q : fps) {
        double d = std::abs(fiber_offset(p.s, q.p.s, k));
        if (d > 1e-9) gap = std::min(gap, d);
    }
    rep.leaf_radius = transversal_radius > 0.0 ? transversal_radius : inj / 4;
    rep.fiber_halfwidth = gap / 4;

    for (rep.retries = 0; rep.retries < kMaxReturnRetries; ++rep.retries) {
        rep.table.clear();
        bool ok = true;
        for (int a = -2; a <= 2 && ok; ++a)
            for (int b = -2; b <= 2 && ok; ++b) {
                double u = 0.5 * a * rep.leaf_radius, ds = 0.5 * b * rep.fiber_halfwidth;
                State st = inverse_return(transversal_point(u), p.s + ds);
                ok = st.ok && st.level_error < 1e-8;
                if (ok)
                    rep.table.push_back({u, ds, transversal_coordinate(st.y), fiber_offset(p.s, st.s, k)});
            }
        if (ok) break;
        rep.leaf_radius /= 2;
        rep.fiber_halfwidth /= 2;
    }
    rep.defined = rep.table.size() == 25;
    if (!rep.defined) return rep;

    State fixed = inverse_return(x0, p.s);
    rep.fixed_fiber_residual = std::abs(fiber_offset(p.s, fixed.s, k)) +
                               std::abs(transversal_coordinate(fixed.y));
    double h0 = rep.fiber_halfwidth * 0.25;
    rep.derivative_fd =
        ridders_derivative([&](double s) { return inverse_return(x0, s).s; }, p.s, h0).value;
    rep.derivative_rn = measure().rn_derivative(gw, p);

    Geodesic axis{behind, ahead};
    double s = p.s + 0.5 * rep.fiber_halfwidth;
    auto y0 = leaf_point(s);
    if (!y0) return rep;
    HyperbolicPoint y = *y0;
    rep.monotone = true;
    for (int n = 0; n <= iterations; ++n) {
        rep.iterates.push_back(std::abs(fiber_offset(p.s, s, k)));
        rep.leaf_iterates.push_back(distance_to_geodesic(y, axis));
        if (n > 0) {
            double prev = rep.iterates[n - 1], cur = rep.iterates[n];
            // Below the resolution of p itself the sequence is noise.
            if (prev > 1e-12 && !(cur < prev)) rep.monotone = false;
        }
        if (n == iterations) break;
        State st = inverse_return(y, s);
        if (!st.ok) {
            rep.monotone = false;
            break;
        }
        // r^{-1} preserves the F^v leaf, whose trace on T is the curve
        // leaf_point(.); projecting back removes rounding that the expanding
        // leaf direction would otherwise amplify.
        s = st.s;
        auto on_leaf = leaf_point(s);
        if (!on_leaf) {
            rep.monotone = false;
            break;
        }
        rep.leaf_drift = std::max(rep.leaf_drift, hyperbolic_distance(st.y, *on_leaf));
        y = *on_leaf;
    }
    return rep;
}

}  // namespace anosov
