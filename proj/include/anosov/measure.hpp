#pragma once
// Pullback of the visual measure at the origin to R/kZ, its chart atlas and
// the fibre metrics built from it.
//
// mu_o is the visual probability measure, so nu_o is Lebesgue measure in the
// coordinate s (total mass k) and every chart zeta_a is a translate of s.

#include "anosov/circle_action.hpp"

#include <vector>

namespace anosov {

class PullbackMeasure {
public:
    explicit PullbackMeasure(const CircleAction& action, double delta = 1.0);

    const CircleAction& action() const { return *action_; }
    int k() const { return action_->k(); }
    double delta() const { return delta_; }
    double total_mass() const { return k(); }

    // Mass of the positively oriented interval from a to b.
    double nu_interval(CirclePoint a, CirclePoint b) const;
    // Mass of [a, a + length]; lengths above one base period are rejected
    // because f is not injective there.
    double nu_arc(CirclePoint a, double length) const;
    // Visual mass of f([a, a + length]) seen from x, i.e. nu_x.
    double nu_from(HyperbolicPoint x, double a, double length) const;

    // Derivative of act(w, .) at p in nu_o coordinates:
    // exp(-delta b_{f(p)}(w^{-1} o, o)).
    double rn_derivative(const Word& w, CirclePoint p) const;
    // Density of rho(w)_* nu_o against nu_o at p: exp(-delta b_{f(p)}(w o, o)).
    double pushforward_density(const Word& w, CirclePoint p) const;
    // nu_o(rho(w^{-1}) [a, a + length]) read off from the lift.
    double pulled_back_arc(const Word& w, double a, double length) const;
    // Same quantity integrated from pushforward_density.
    double integrate_pushforward(const Word& w, double a, double length, double tol = 1e-10) const;

private:
    const CircleAction* action_;
    double delta_;
};

class ChartOutsideDomain : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Charts zeta_a(s) = signed nu_o mass from a to s, defined on the open arc of
// half a base period either side of a.
class ChartAtlas {
public:
    ChartAtlas(const PullbackMeasure& m, std::vector<CirclePoint> anchors);

    const std::vector<CirclePoint>& anchors() const { return anchors_; }
    bool in_domain(CirclePoint a, CirclePoint s) const;
    double chart_coordinate(CirclePoint a, CirclePoint s) const;
    // Transition zeta_b o zeta_a^{-1} evaluated at chart value z.
    double transition(CirclePoint a, CirclePoint b, double z) const;

private:
    const PullbackMeasure* m_;
    std::vector<CirclePoint> anchors_;
};

// Piecewise fibre length: above a point of gamma D an interval I has length
// nu_o(rho(gamma^{-1}) I).
class FiberMetric {
public:
    explicit FiberMetric(const PullbackMeasure& m) : m_(&m) {}

    double fiber_length(HyperbolicPoint x, CirclePoint a, double length) const;

private:
    const PullbackMeasure* m_;
};

// Density of the continuous invariant fibre metric g against nu_o: the visual
// measure seen from the footpoint, P(x, f(p))^delta.
double visual_fiber_density(HyperbolicPoint x, BoundaryPoint xi, double delta = 1.0);

}  // namespace anosov
