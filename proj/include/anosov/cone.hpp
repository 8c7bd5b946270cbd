#pragma once
// Cone-field certification for psi^t on the bundle.
//
// Tangent coordinates at a point (y, target) of a tile frame are (y1, y2, s)
// with y Euclidean disk coordinates and s = target / 2 pi, the nu_o chart of
// the fibre in that frame. The splitting is U = d/ds (fibre) and E^h = the
// y-plane (leaf). Norms: hyperbolic on E^h, P(y, target) |ds| on U, which is
// the visual density and is invariant under the deck group.
#include "anosov/leaf_field.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace anosov {

class JacobianConditioning : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TangentMap {
    double t = 0.0;
    double delta = 1.0;
    BundlePoint start, end;
    // J[i][j] = d(end coordinate i) / d(start coordinate j), coordinates (y1, y2, s),
    // end coordinates in the frame of the central trajectory.
    std::array<std::array<double, 3>, 3> J{};

    double leaf_scale_start() const;   // hyperbolic length of a unit Euclidean leaf vector
    double leaf_scale_end() const;
    double fiber_scale_start() const;  // g-length of ds = 1
    double fiber_scale_end() const;
    // |pi_U D psi^t u|_g / |u|_g for u in U.
    double fiber_growth() const;
    // |w_t|_g / |u_t|_g where D psi^t u = u_t + w_t.
    double fiber_tilt() const;
    // Operator norm of D psi^t on E^h in the g-metric.
    double leaf_norm() const;
    // Largest fibre component produced from a unit leaf vector (zero exactly
    // when E^h is invariant).
    double leaf_leak() const;
};

// Central differences over 7 trajectories; one map per requested time
// (times must be positive and increasing).
std::vector<TangentMap> tangent_maps(const FieldFlow& psi, const BundlePoint& pt,
                                     const std::vector<double>& times, double h = 1e-6);

struct ConeField {
    double beta = 1.0;
};

// Measured on calibration samples, then widened for use on fresh points:
// c2 is 0.95 of the worst fitted growth rate, c1 is 0.9 of the worst
// prefactor at that rate, c3 and c4 are 1.05 of the observed suprema.
struct ConeConstants {
    std::size_t samples = 0;
    double c1 = 0.0, c2 = 0.0;  // |pi_U D psi^t v|_g >= c1 e^{c2 t} |v|_g
    double c3 = 0.0;            // |D psi^t w|_g <= c3 |w|_g on E^h
    double c4 = 0.0;            // |w_t| <= c4 |u_t| on [T, 2T]
    double T = 0.0;             // c1 e^{c2 t} >= 2 c3 for t >= T
    double beta = 0.0;          // chosen as 2.5 c4
    double t_max = 0.0;         // calibration horizon for c1, c2, c3
};

ConeConstants measure_cone_constants(const FieldFlow& psi, std::uint64_t seed, std::size_t samples,
                                     double t_max = 10.0);

struct ConeCheck {
    bool contained = false;
    double expansion = 0.0;     // fibre growth at time T
    double worst_ratio = 0.0;   // max over the cone boundary of |E^h part| / (beta |U part|)
};

// Image of the closed beta-cone around U under D psi^T, tested on 64
// boundary directions.
ConeCheck cone_check(const TangentMap& map, const ConeField& cone);
ConeCheck cone_check(const FieldFlow& psi, const ConeField& cone, const BundlePoint& pt, double T);

struct ConeCertification {
    std::size_t points = 0;
    std::size_t checks = 0;          // (point, time) pairs
    std::size_t failures = 0;
    double worst_ratio = 0.0;        // < 1 means every image is inside the cone
    double worst_growth_slack = 0.0; // min of log(growth) - log(c1 e^{c2 t})
    bool contained = false;
    bool expansion = false;
};

// Fresh points, times T, 1.25T, ..., 2T.
ConeCertification certify_cone(const FieldFlow& psi, const ConeConstants& constants,
                               std::uint64_t seed, std::size_t points);

struct UnstableDiagnostic {
    // Diameter of the image cone's slopes |E^h| / |U| after time n T.
    std::vector<double> widths;
    double decay_rate = 0.0;     // fitted slope of log width per unit time
};

// Nested images of the cone along one orbit; a truncated view of the
// unstable bundle, not the bundle itself.
UnstableDiagnostic cone_width_decay(const FieldFlow& psi, const ConeField& cone,
                                    const BundlePoint& pt, double T, int steps);

}  // namespace anosov
