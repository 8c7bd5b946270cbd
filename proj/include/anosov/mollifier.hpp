#pragma once
// Transverse mollification of leafwise fields sampled on a product chart
// (x1, x2) x y, with y periodic: b_k(x, y) = int a(x, y - t) k zeta(k t) dt.
#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace anosov {

// zeta(v) = C exp(-1 / (1 - v^2)) on (-1, 1), unit mass.
class Bump {
public:
    static const Bump& standard();
    double operator()(double v) const;
    double derivative(double v) const;
    double support() const { return 1.0; }
    // int zeta(v) cos(2 pi omega v) dv; zeta is even so this is its Fourier
    // transform at omega.
    double fourier(double omega) const;
    double second_moment() const { return m2_; }  // int v^2 zeta
    double first_abs_moment() const { return m1_; }  // int |v| zeta

private:
    Bump();
    double c_ = 1.0, m1_ = 0.0, m2_ = 0.0;
};

class RefinementDemand : public std::invalid_argument {
public:
    RefinementDemand(const char* what, std::size_t cells)
        : std::invalid_argument(what), required_cells(cells) {}
    std::size_t required_cells;
};

// Uniform samples of an m-component field on [lo, hi]^2 x [0, period).
struct ChartSamples {
    std::size_t nx = 0, ny = 0;
    int components = 1;
    double lo = 0.0, hi = 1.0, period = 1.0;
    std::vector<double> values;  // index ((c * nx + i1) * nx + i2) * ny + j

    using Fn = std::function<void(double x1, double x2, double y, double* out)>;
    static ChartSamples sample(std::size_t nx, std::size_t ny, int components, double lo, double hi,
                               double period, const Fn& fn);
    ChartSamples like() const;  // same shape, zero values

    double x(std::size_t i) const { return nx > 1 ? lo + (hi - lo) * i / (nx - 1) : lo; }
    double y(std::size_t j) const { return period * j / ny; }
    double dy() const { return period / ny; }
    double& at(int c, std::size_t i1, std::size_t i2, std::size_t j) {
        return values[((c * nx + i1) * nx + i2) * ny + j];
    }
    double at(int c, std::size_t i1, std::size_t i2, std::size_t j) const {
        return values[((c * nx + i1) * nx + i2) * ny + j];
    }
    // Central differences in x1 or x2 (one-sided on the edges).
    ChartSamples x_partial(int dir) const;
    double sup_distance(const ChartSamples& o) const;
};

struct MollifiedField {
    int k = 1;
    ChartSamples a, b;
    ChartSamples db_dy;            // differentiated-kernel formula
    std::array<ChartSamples, 2> da_dx, db_dx;  // partials of a, and mollified partials
};

// Quadrature on the y grid against the discrete kernel k zeta(k t); the
// kernel weights are normalised to unit sum so y-constant data are kept
// exactly. Demands refinement when the support 2/k spans fewer than
// min_cells grid cells.
MollifiedField mollify(const ChartSamples& a, int k, std::size_t min_cells = 16);

}  // namespace anosov
