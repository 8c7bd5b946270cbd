#include "anosov/measure.hpp"

#include "anosov/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace anosov {

PullbackMeasure::PullbackMeasure(const CircleAction& action, double delta)
    : action_(&action), delta_(delta) {}

double PullbackMeasure::nu_interval(CirclePoint a, CirclePoint b) const {
    double len = CirclePoint(b.s - a.s, k()).s;
    return nu_arc(a, len);
}

double PullbackMeasure::nu_arc(CirclePoint a, double length) const {
    if (length < 0.0) throw std::invalid_argument("negative interval length");
    if (length > 1.0 + 1e-12)
        throw std::domain_error("interval longer than one period of f: multiplicity ambiguous");
    return visual_arc_measure(kOrigin, kTwoPi * a.s, kTwoPi * std::min(length, 1.0));
}

double PullbackMeasure::nu_from(HyperbolicPoint x, double a, double length) const {
    if (length < 0.0 || length > 1.0 + 1e-12) throw std::domain_error("arc length outside [0, 1]");
    return visual_arc_measure(x, kTwoPi * a, kTwoPi * std::min(length, 1.0));
}

double PullbackMeasure::rn_derivative(const Word& w, CirclePoint p) const {
    Isometry g_inv = action_->group().evaluate(w).inverse();
    return std::exp(-delta_ * busemann_orbit(action_->f(p), g_inv, Isometry{}));
}

double PullbackMeasure::pushforward_density(const Word& w, CirclePoint p) const {
    Isometry g = action_->group().evaluate(w);
    return std::exp(-delta_ * busemann_orbit(action_->f(p), g, Isometry{}));
}

double PullbackMeasure::pulled_back_arc(const Word& w, double a, double length) const {
    Word inv = w.inverse();
    return action_->lift(inv, a + length) - action_->lift(inv, a);
}

double PullbackMeasure::integrate_pushforward(const Word& w, double a, double length,
                                              double tol) const {
    Isometry g = action_->group().evaluate(w);
    auto density = [&](double s) {
        return std::exp(-delta_ * busemann_orbit(action_->f(s), g, Isometry{}));
    };
    return adaptive_simpson(density, a, a + length, tol);
}

ChartAtlas::ChartAtlas(const PullbackMeasure& m, std::vector<CirclePoint> anchors)
    : m_(&m), anchors_(std::move(anchors)) {}

namespace {
// Signed offset from a to s inside the chart arc, or NaN outside.
double chart_offset(int k, CirclePoint a, CirclePoint s) {
    double d = CirclePoint(s.s - a.s, k).s;
    if (d < 0.5) return d;
    if (d > k - 0.5) return d - k;
    return NAN;
}
}  // namespace

bool ChartAtlas::in_domain(CirclePoint a, CirclePoint s) const {
    return !std::isnan(chart_offset(m_->k(), a, s));
}

double ChartAtlas::chart_coordinate(CirclePoint a, CirclePoint s) const {
    double d = chart_offset(m_->k(), a, s);
    if (std::isnan(d)) throw ChartOutsideDomain("point outside chart domain");
    if (d >= 0.0) return m_->nu_arc(a, d);
    return -m_->nu_arc(s, -d);
}

double ChartAtlas::transition(CirclePoint a, CirclePoint b, double z) const {
    return chart_coordinate(b, CirclePoint(a.s + z, m_->k()));
}

double FiberMetric::fiber_length(HyperbolicPoint x, CirclePoint a, double length) const {
    auto red = m_->action().group().reduce_to_domain(x);
    return m_->pulled_back_arc(red.word, a.s, length);
}

double visual_fiber_density(HyperbolicPoint x, BoundaryPoint xi, double delta) {
    return std::pow(poisson_kernel(x, xi), delta);
}

}  // namespace anosov
