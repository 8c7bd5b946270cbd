#pragma once
// Hyperbolic plane kernel. Points live in the Poincare disk; isometries are
// SL(2,R) matrices acting on the upper half plane and are conjugated to the
// disk by the fixed Cayley map w = (z - i) / (z + i).

#include <complex>
#include <numbers>
#include <vector>

namespace anosov {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct HyperbolicPoint {
    double u = 0.0;
    double v = 0.0;

    HyperbolicPoint() = default;
    HyperbolicPoint(double u_, double v_) : u(u_), v(v_) {}
    explicit HyperbolicPoint(cplx z) : u(z.real()), v(z.imag()) {}

    cplx z() const { return {u, v}; }
    double norm2() const { return u * u + v * v; }
};

inline const HyperbolicPoint kOrigin{0.0, 0.0};

// Angle on the circle at infinity, canonical in [0, 2pi).
class BoundaryPoint {
public:
    BoundaryPoint() = default;
    explicit BoundaryPoint(double theta);
    static BoundaryPoint from_complex(cplx w) { return BoundaryPoint(std::arg(w)); }

    double theta() const { return theta_; }
    cplx z() const { return std::polar(1.0, theta_); }

private:
    double theta_ = 0.0;
};

// Signed circular difference b - a folded into (-pi, pi].
double angle_diff(double a, double b);

class Isometry {
public:
    Isometry() = default;  // identity
    // Any real matrix of positive determinant; scaled to det 1 and sign fixed.
    static Isometry from_matrix(double a, double b, double c, double d);
    // Disk form z -> (alpha z + beta) / (conj(beta) z + conj(alpha)).
    static Isometry from_disk(cplx alpha, cplx beta);
    static Isometry rotation(double angle);          // z -> e^{i angle} z
    static Isometry translation(double distance);    // along the real diameter
    // Disk automorphism sending x to the origin: z -> (z - x) / (1 - conj(x) z).
    static Isometry recentre(HyperbolicPoint x);

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }
    double trace() const { return a_ + d_; }

    cplx alpha() const { return {0.5 * (a_ + d_), 0.5 * (b_ - c_)}; }
    cplx beta() const { return {0.5 * (a_ - d_), -0.5 * (b_ + c_)}; }

    Isometry operator*(const Isometry& o) const;
    Isometry inverse() const;

    // Max entry difference after sign canonicalisation (PSL identification).
    double distance_to(const Isometry& o) const;
    bool is_identity(double tol = 1e-9) const;

private:
    Isometry(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {}
    void normalise();
    double a_ = 1.0, b_ = 0.0, c_ = 0.0, d_ = 1.0;
};

struct Geodesic {
    BoundaryPoint neg;
    BoundaryPoint pos;
};

enum class IsometryClass { identity, elliptic, parabolic, hyperbolic };

struct Classification {
    IsometryClass kind = IsometryClass::identity;
    std::vector<BoundaryPoint> fixed;  // hyperbolic: {attracting, repelling}
    double translation_length = 0.0;
};

HyperbolicPoint apply_isometry(const Isometry& g, HyperbolicPoint x);
cplx apply_disk(const Isometry& g, cplx z);
BoundaryPoint apply_boundary(const Isometry& g, BoundaryPoint xi);
// |d/dtheta| of the boundary map at xi.
double boundary_derivative(const Isometry& g, BoundaryPoint xi);

double hyperbolic_distance(HyperbolicPoint x, HyperbolicPoint y);
// Hyperbolic length of the Euclidean tangent vector v at x.
double hyperbolic_norm(HyperbolicPoint x, cplx v);

// Poisson kernel (1 - |x|^2) / |xi - x|^2, the density of mu_x against mu_o.
double poisson_kernel(HyperbolicPoint x, BoundaryPoint xi);
// log P(g o, xi) computed from the matrix entries without forming g o.
double log_poisson_orbit(const Isometry& g, BoundaryPoint xi);

// b_xi(x, y) = log P(y, xi) - log P(x, xi); positive when y is nearer xi.
double busemann(BoundaryPoint xi, HyperbolicPoint x, HyperbolicPoint y);
// b_xi(g o, h o) via the matrix form.
double busemann_orbit(BoundaryPoint xi, const Isometry& g, const Isometry& h);

double visual_density_ratio(HyperbolicPoint x, HyperbolicPoint y, BoundaryPoint xi,
                            double delta = 1.0);

HyperbolicPoint flow_toward(HyperbolicPoint x, BoundaryPoint xi, double t);
// Unit tangent (Euclidean components) of the geodesic through x toward xi,
// scaled to hyperbolic length 1.
cplx unit_direction(HyperbolicPoint x, BoundaryPoint xi);

// Visual probability mass of the positively oriented arc [theta, theta + len]
// seen from x.
double visual_arc_measure(HyperbolicPoint x, double theta, double len);

// Hyperbolic distance from z to the geodesic with the given endpoints.
double distance_to_geodesic(HyperbolicPoint z, const Geodesic& g);

Classification classify_and_fixed_points(const Isometry& g);

// True when (a, b, c) are in counter-clockwise cyclic order.
bool cyclically_ordered(double a, double b, double c);

}  // namespace anosov
