#include "anosov/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anosov {

namespace {

double wrap_angle(double t) {
    double r = std::fmod(t, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

// z -> (z - x) / (1 - conj(x) z)
cplx recentre_map(cplx x, cplx z) { return (z - x) / (1.0 - std::conj(x) * z); }
cplx uncentre_map(cplx x, cplx w) { return (w + x) / (1.0 + std::conj(x) * w); }

}  // namespace

BoundaryPoint::BoundaryPoint(double theta) : theta_(wrap_angle(theta)) {}

double angle_diff(double a, double b) {
    double d = std::fmod(b - a, kTwoPi);
    if (d > std::numbers::pi) d -= kTwoPi;
    if (d <= -std::numbers::pi) d += kTwoPi;
    return d;
}

Isometry Isometry::from_matrix(double a, double b, double c, double d) {
    double det = a * d - b * c;
    if (!(det > 0.0)) throw std::invalid_argument("isometry matrix must have positive determinant");
    double s = 1.0 / std::sqrt(det);
    Isometry g(a * s, b * s, c * s, d * s);
    g.normalise();
    return g;
}

Isometry Isometry::from_disk(cplx alpha, cplx beta) {
    return from_matrix(alpha.real() + beta.real(), alpha.imag() - beta.imag(),
                       -alpha.imag() - beta.imag(), alpha.real() - beta.real());
}

Isometry Isometry::rotation(double angle) { return from_disk(std::polar(1.0, angle / 2), 0.0); }

Isometry Isometry::translation(double distance) {
    return from_matrix(std::exp(distance / 2), 0.0, 0.0, std::exp(-distance / 2));
}

Isometry Isometry::recentre(HyperbolicPoint x) {
    double s = 1.0 / std::sqrt(1.0 - x.norm2());
    return from_disk(s, -s * x.z());
}

void Isometry::normalise() {
    // Rescaling by a determinant that is itself rounding noise injects a scale
    // error, so drift is corrected only when it is real and resolvable.
    double det = a_ * d_ - b_ * c_;
    double size = std::abs(a_ * d_) + std::abs(b_ * c_);
    double s = det > 0.0 && size < 1e4 && std::abs(det - 1.0) > 1e-9 ? 1.0 / std::sqrt(det) : 1.0;
    a_ *= s;
    b_ *= s;
    c_ *= s;
    d_ *= s;
    double lead = a_ != 0.0 ? a_ : (b_ != 0.0 ? b_ : c_);
    if (lead < 0.0) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
        d_ = -d_;
    }
}

Isometry Isometry::operator*(const Isometry& o) const {
    Isometry g(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
               c_ * o.b_ + d_ * o.d_);
    g.normalise();
    return g;
}

Isometry Isometry::inverse() const {
    Isometry g(d_, -b_, -c_, a_);
    g.normalise();
    return g;
}

double Isometry::distance_to(const Isometry& o) const {
    double same = std::max({std::abs(a_ - o.a_), std::abs(b_ - o.b_), std::abs(c_ - o.c_),
                            std::abs(d_ - o.d_)});
    double flip = std::max({std::abs(a_ + o.a_), std::abs(b_ + o.b_), std::abs(c_ + o.c_),
                            std::abs(d_ + o.d_)});
    return std::min(same, flip);
}

bool Isometry::is_identity(double tol) const { return distance_to(Isometry{}) <= tol; }

cplx apply_disk(const Isometry& g, cplx z) {
    cplx al = g.alpha(), be = g.beta();
    return (al * z + be) / (std::conj(be) * z + std::conj(al));
}

HyperbolicPoint apply_isometry(const Isometry& g, HyperbolicPoint x) {
    return HyperbolicPoint(apply_disk(g, x.z()));
}

BoundaryPoint apply_boundary(const Isometry& g, BoundaryPoint xi) {
    return BoundaryPoint::from_complex(apply_disk(g, xi.z()));
}

double boundary_derivative(const Isometry& g, BoundaryPoint xi) {
    return 1.0 / std::norm(std::conj(g.beta()) * xi.z() + std::conj(g.alpha()));
}

double hyperbolic_distance(HyperbolicPoint x, HyperbolicPoint y) {
    double r = std::abs(x.z() - y.z()) / std::abs(1.0 - std::conj(x.z()) * y.z());
    return 2.0 * std::atanh(std::min(r, 1.0));
}

double hyperbolic_norm(HyperbolicPoint x, cplx v) { return 2.0 * std::abs(v) / (1.0 - x.norm2()); }

double poisson_kernel(HyperbolicPoint x, BoundaryPoint xi) {
    return (1.0 - x.norm2()) / std::norm(xi.z() - x.z());
}

double log_poisson_orbit(const Isometry& g, BoundaryPoint xi) {
    return -std::log(std::norm(g.alpha() - std::conj(g.beta()) * xi.z()));
}

double busemann(BoundaryPoint xi, HyperbolicPoint x, HyperbolicPoint y) {
    return std::log(poisson_kernel(y, xi)) - std::log(poisson_kernel(x, xi));
}

double busemann_orbit(BoundaryPoint xi, const Isometry& g, const Isometry& h) {
    return log_poisson_orbit(h, xi) - log_poisson_orbit(g, xi);
}

double visual_density_ratio(HyperbolicPoint x, HyperbolicPoint y, BoundaryPoint xi, double delta) {
    return std::exp(-delta * busemann(xi, x, y));
}

HyperbolicPoint flow_toward(HyperbolicPoint x, BoundaryPoint xi, double t) {
    cplx target = recentre_map(x.z(), xi.z());
    return HyperbolicPoint(uncentre_map(x.z(), std::tanh(t / 2) * target));
}

cplx unit_direction(HyperbolicPoint x, BoundaryPoint xi) {
    return 0.5 * (1.0 - x.norm2()) * recentre_map(x.z(), xi.z());
}

double visual_arc_measure(HyperbolicPoint x, double theta, double len) {
    if (len < 0.0 || len > kTwoPi + 1e-12) throw std::invalid_argument("arc length outside [0, 2pi]");
    if (len == 0.0) return 0.0;
    if (len >= kTwoPi - 1e-13) return 1.0;
    double a = std::arg(recentre_map(x.z(), std::polar(1.0, theta)));
    double b = std::arg(recentre_map(x.z(), std::polar(1.0, theta + len)));
    double m = std::fmod(b - a, kTwoPi);
    if (m < 0.0) m += kTwoPi;
    return m / kTwoPi;
}

double distance_to_geodesic(HyperbolicPoint z, const Geodesic& g) {
    double a = std::arg(recentre_map(z.z(), g.neg.z()));
    double b = std::arg(recentre_map(z.z(), g.pos.z()));
    double gap = std::abs(angle_diff(a, b));
    if (gap <= 0.0) return INFINITY;
    // sinh d = cot(gap / 2); stays accurate for points near the geodesic
    return std::asinh(std::abs(std::cos(gap / 2)) / std::sin(gap / 2));
}

Classification classify_and_fixed_points(const Isometry& g) {
    Classification out;
    if (g.is_identity(1e-12)) return out;
    double tr = std::abs(g.trace());
    cplx al = g.alpha(), be = g.beta();
    if (tr < 2.0 - 1e-9) {
        out.kind = IsometryClass::elliptic;
        return out;
    }
    if (tr <= 2.0 + 1e-9) {
        out.kind = IsometryClass::parabolic;
        out.fixed.push_back(BoundaryPoint::from_complex(cplx(0.0, al.imag()) / std::conj(be)));
        return out;
    }
    out.kind = IsometryClass::hyperbolic;
    out.translation_length = 2.0 * std::acosh(tr / 2);
    double root = std::sqrt(al.real() * al.real() - 1.0);
    BoundaryPoint p1 = BoundaryPoint::from_complex((cplx(0.0, al.imag()) + root) / std::conj(be));
    BoundaryPoint p2 = BoundaryPoint::from_complex((cplx(0.0, al.imag()) - root) / std::conj(be));
    if (boundary_derivative(g, p1) < 1.0)
        out.fixed = {p1, p2};
    else
        out.fixed = {p2, p1};
    return out;
}

bool cyclically_ordered(double a, double b, double c) {
    double ab = BoundaryPoint(b - a).theta();
    double ac = BoundaryPoint(c - a).theta();
    return ab > 0.0 && ab < ac;
}

}  // namespace anosov
