#pragma once
// Leafwise vector fields on (disk x R/kZ) and the flows they generate.
//
// A field is evaluated in the local frame of a tile: velocity(y, target)
// gives the Euclidean components at y on the leaf whose flow target, seen
// from that frame, is `target`. Every field here is equivariant,
// Y(g y, g target) = g'(y) Y(y, target), so any frame gives the same flow.
#include "anosov/flow.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace anosov {

class LeafField {
public:
    virtual ~LeafField() = default;
    virtual cplx velocity(HyperbolicPoint y, BoundaryPoint target) const = 0;
    virtual std::string name() const = 0;
};

// X: unit speed toward the target.
class ExactLeafField final : public LeafField {
public:
    cplx velocity(HyperbolicPoint y, BoundaryPoint target) const override;
    std::string name() const override { return "exact"; }
};

// X_k: X mollified along the fibre at scale 1/k in the nu_o coordinate of
// each tile chart, glued by a partition of unity over the tiles.
//
// In the chart of D the mollified field has the closed series
//   V_k(y, z) = (1 - |y|^2)/2 [-y + (1 - |y|^2) sum_{n>=1} m_n conj(y)^{n-1} z^n],
// m_n = int zeta(v) cos(2 pi n v / k) dv, z = e^{i target}; m_n = 1 gives X.
// The glued field is
//   Y(x) = sum_g phi(d(g o, x)) g'(g^{-1} x) V_k(g^{-1} x, g^{-1} target) / sum_g phi(d(g o, x)),
// with phi a smooth bump of radius circumradius(D) + 0.3. Scale 0 means no
// smoothing (all m_n = 1), which reproduces X and tests the gluing.
class SmoothedLeafField final : public LeafField {
public:
    SmoothedLeafField(const SurfaceGroup& group, int scale);

    cplx velocity(HyperbolicPoint y, BoundaryPoint target) const override;
    std::string name() const override;

    int scale() const { return scale_; }
    // Mollified field in the chart of D alone (no gluing).
    cplx chart_velocity(HyperbolicPoint y, BoundaryPoint target) const;
    double cutoff_radius() const { return cutoff_; }
    std::size_t series_terms() const { return m_.size(); }

private:
    struct Piece {
        cplx alpha, beta;         // g^{-1} in disk form
        double centre_distance;   // d(o, g o)
    };
    int scale_;
    double cutoff_;        // hyperbolic radius of the partition bump
    double cutoff_rho_;    // tanh(cutoff / 2)
    double reach_;         // tiles listed up to this distance from o
    std::vector<double> m_;
    std::vector<Piece> pieces_;
};

struct FieldDistance {
    int scale = 0;
    double c0 = 0.0;  // sup of the hyperbolic length of Y - X
    double c1 = 0.0;  // sup of its first derivatives per unit hyperbolic length
    double total() const { return c0 + c1; }
};

// Leafwise C^1 distance between two fields on samples of D x circle.
FieldDistance leafwise_c1_distance(const LeafField& a, const LeafField& b,
                                   const SurfaceGroup& group, std::uint64_t seed,
                                   std::size_t samples);

struct ScaleSelection {
    bool found = false;
    int scale = 0;
    double margin = 0.0;  // hyperbolicity margin of X
    double cap = 0.0;     // allowed C^1 distance
    std::vector<FieldDistance> tried;
};

// Smallest scale among the candidates whose C^1 distance to X stays below
// ratio * margin.
ScaleSelection select_mollifier_scale(const SurfaceGroup& group, std::uint64_t seed,
                                      std::size_t samples, double margin, double ratio = 0.1,
                                      const std::vector<int>& candidates = {8, 16, 32, 64, 128});

class StepSizeFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct IntegratorOptions {
    double step = 1e-2;
    bool check_error = true;   // Richardson estimate at every step
    double tolerance = 1e-8;   // local error allowed per step
};

// psi^t: classical RK4 on the leafwise field in the local frame, reframing
// whenever the point leaves D. With check_error each step is also taken as
// two half steps; their difference / 15 is the local error estimate and the
// half-step result is kept.
class FieldFlow {
public:
    FieldFlow(const BundleFlow& flow, const LeafField& field, IntegratorOptions opt = {});

    const BundleFlow& bundle() const { return *flow_; }
    const LeafField& field() const { return *field_; }
    const IntegratorOptions& options() const { return opt_; }

    BundlePoint flow_psi(const BundlePoint& pt, double t, OrbitSegment* segment = nullptr,
                         double* worst_error = nullptr) const;

private:
    HyperbolicPoint rk4(HyperbolicPoint y, BoundaryPoint target, double h) const;
    const BundleFlow* flow_;
    const LeafField* field_;
    IntegratorOptions opt_;
};

struct QuasigeodesicReport {
    std::size_t leaves = 0;
    double t_max = 0.0;
    double R = 0.0;              // sup distance to the geodesic toward f(p)
    double R_first = 0.0;        // sup over the first half of the leaves
    double R_second = 0.0;       // sup over the second half
    double spread = 0.0;         // |R_first - R_second| / R
    bool uniform = false;        // spread <= 0.1
    double time_constant = 1.0;  // c with Busemann progress s in [t/c, c t] for t >= 1
    std::vector<double> per_leaf;
};

// psi-orbits from random points, compared with the phi-geodesic through the
// start point toward f(p).
QuasigeodesicReport quasigeodesic_bound(const FieldFlow& psi, std::uint64_t seed,
                                        std::size_t leaves, double t_max = 20.0);

// Backward endpoint of the geodesic through y toward target.
BoundaryPoint backward_endpoint(HyperbolicPoint y, BoundaryPoint target);

}  // namespace anosov
