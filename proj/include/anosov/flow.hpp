#pragma once
// The geodesic-type flow on (disk x R/kZ): a point (x, p) moves at unit speed
// toward f(p) with p fixed. Positions are tracked in the frame of the tile
// containing them, so long orbits never leave the well-conditioned region
// around the origin; the upstairs point is kept only as a convenience.
#include "anosov/measure.hpp"

#include <stdexcept>
#include <vector>

namespace anosov {

struct BundlePoint {
    HyperbolicPoint x;       // upstairs; saturates once |x| rounds to 1
    CirclePoint p;
    Word domain_word;        // x lies in evaluate(domain_word) D
    Isometry domain;         // evaluate(domain_word)
    HyperbolicPoint local;   // domain^{-1} x, inside D
    BoundaryPoint target;    // domain^{-1} f(p): the flow direction in the local frame
};

struct Crossing {
    double t = 0.0;
    Word word;  // domain word after the crossing
};

struct OrbitSegment {
    std::vector<double> times;
    std::vector<BundlePoint> samples;
    std::vector<Crossing> crossings;
    // Product of the single crossing steps: start_word^{-1} end_word.
    Word crossing_product() const;
};

struct HolonomyRecord {
    double t = 0.0;
    double derivative = 1.0;
    double log_derivative = 0.0;
    // <= 0 when the two-sided diameter bound holds; see holonomy_derivative.
    double bound_check = 0.0;
};

class FlowBudgetExceeded : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotPeriodic : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct PeriodicOrbit {
    Word word;            // w as requested
    CirclePoint p;
    bool toward_attracting = true;  // f(p) is the attracting end of w
    double period = 0.0;
    OrbitSegment segment;
    Word translation;     // g with end = g * start upstairs; w or w^{-1}
    Word class_key;       // conjugacy key of the crossing product
    double closure_gap = 0.0;
};

struct ReturnSample {
    double leaf_offset = 0.0;   // signed distance along the transversal geodesic
    double fiber_offset = 0.0;  // s - p
    double image_leaf = 0.0;
    double image_fiber = 0.0;
};

struct FirstReturnReport {
    double leaf_radius = 0.0;
    double fiber_halfwidth = 0.0;
    int retries = 0;
    bool defined = false;           // every sample returned
    double fixed_fiber_residual = 0.0;
    double derivative_fd = 0.0;     // fibre derivative of r^{-1} at the orbit point
    double derivative_rn = 0.0;     // rn_derivative of the translation at p
    std::vector<double> iterates;   // |s_n - p| for r^{-n}(c), n = 0..
    std::vector<double> leaf_iterates;  // distance of r^{-n}(c) to the axis
    // Largest distance between a computed image and the F^v leaf; images are
    // projected back each step because the leaf direction expands under r^{-1}.
    double leaf_drift = 0.0;
    bool monotone = false;  // fibre offsets strictly decrease down to 1e-12
    std::vector<ReturnSample> table;
};

class BundleFlow {
public:
    explicit BundleFlow(const PullbackMeasure& m, double sample_dt = 0.05);
    const CircleAction& action() const { return m_->action(); }
    const SurfaceGroup& group() const { return m_->action().group(); }
    const PullbackMeasure& measure() const { return *m_; }
    double delta() const { return m_->delta(); }

    BundlePoint make_point(HyperbolicPoint x, CirclePoint p) const;
    // Same point described from a different tile word: local frame rebuilt.
    BundlePoint reframe(const BundlePoint& pt, const Word& word) const;

    BundlePoint flow_phi(const BundlePoint& pt, double t, OrbitSegment* segment = nullptr) const;

    // Transverse holonomy along [0, t]: exp(-delta b_{f(p)}(beta o, alpha o)).
    // bound_check is log d - (delta t + 2 delta diam D) for t < 0 and
    // (delta t - 2 delta diam D) - log d for t >= 0.
    HolonomyRecord holonomy_derivative(const BundlePoint& pt, double t) const;
    // The same record when end = flow_phi(pt, t) is already known.
    HolonomyRecord holonomy_record(const BundlePoint& pt, const BundlePoint& end, double t) const;

    PeriodicOrbit periodic_orbit(const Word& w, CirclePoint p) const;

    // Return map of the transversal through the orbit point at the axis
    // point nearest o; reports r^{-1} on points of the F^v leaf of the orbit.
    FirstReturnReport first_return(const PeriodicOrbit& orbit, double transversal_radius = 0.0,
                                   int iterations = 10) const;

    // Hyperbolic distance of b's position measured in a's frame.
    double distance(const BundlePoint& a, const BundlePoint& b) const;
    // Position of b expressed in a's local frame.
    HyperbolicPoint position_in_frame(const BundlePoint& a, const BundlePoint& b) const;

    static constexpr double kMaxTime = 100.0;

private:
    const PullbackMeasure* m_;
    double dt_;
};

// Point of the geodesic (neg -> pos) nearest the origin.
HyperbolicPoint axis_foot(const Geodesic& g);

}  // namespace anosov
