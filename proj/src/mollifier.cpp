#include "anosov/mollifier.hpp"

#include "anosov/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace anosov {

namespace {
double raw_bump(double v) { return std::abs(v) < 1.0 ? std::exp(-1.0 / (1.0 - v * v)) : 0.0; }
}  // namespace

Bump::Bump() {
    double mass = adaptive_simpson(raw_bump, -1.0, 1.0, 1e-15);
    c_ = 1.0 / mass;
    m1_ = 2.0 * c_ * adaptive_simpson([](double v) { return v * raw_bump(v); }, 0.0, 1.0, 1e-15);
    m2_ = 2.0 * c_ * adaptive_simpson([](double v) { return v * v * raw_bump(v); }, 0.0, 1.0, 1e-15);
}

const Bump& Bump::standard() {
    static const Bump b;
    return b;
}

double Bump::operator()(double v) const { return c_ * raw_bump(v); }

double Bump::derivative(double v) const {
    if (std::abs(v) >= 1.0) return 0.0;
    double q = 1.0 - v * v;
    return c_ * raw_bump(v) * (-2.0 * v / (q * q));
}

double Bump::fourier(double omega) const {
    auto f = [&](double v) { return c_ * raw_bump(v) * std::cos(2.0 * std::numbers::pi * omega * v); };
    // Split so the oscillation is resolved at every depth.
    int pieces = std::max(1, static_cast<int>(std::ceil(4.0 * std::abs(omega))));
    double sum = 0.0;
    for (int i = 0; i < pieces; ++i)
        sum += adaptive_simpson(f, static_cast<double>(i) / pieces, static_cast<double>(i + 1) / pieces, 1e-16);
    return 2.0 * sum;
}

ChartSamples ChartSamples::sample(std::size_t nx, std::size_t ny, int components, double lo,
                                  double hi, double period, const Fn& fn) {
    ChartSamples s;
    s.nx = nx;
    s.ny = ny;
    s.components = components;
    s.lo = lo;
    s.hi = hi;
    s.period = period;
    s.values.assign(components * nx * nx * ny, 0.0);
    std::vector<double> out(components);
    for (std::size_t i1 = 0; i1 < nx; ++i1)
        for (std::size_t i2 = 0; i2 < nx; ++i2)
            for (std::size_t j = 0; j < ny; ++j) {
                fn(s.x(i1), s.x(i2), s.y(j), out.data());
                for (int c = 0; c < components; ++c) s.at(c, i1, i2, j) = out[c];
            }
    return s;
}

ChartSamples ChartSamples::like() const {
    ChartSamples s = *this;
    std::fill(s.values.begin(), s.values.end(), 0.0);
    return s;
}

ChartSamples ChartSamples::x_partial(int dir) const {
    ChartSamples d = like();
    if (nx < 2) return d;
    const double h = (hi - lo) / (nx - 1);
    for (int c = 0; c < components; ++c)
        for (std::size_t i1 = 0; i1 < nx; ++i1)
            for (std::size_t i2 = 0; i2 < nx; ++i2)
                for (std::size_t j = 0; j < ny; ++j) {
                    std::size_t i = dir == 0 ? i1 : i2;
                    std::size_t a = i == 0 ? 0 : i - 1, b = i + 1 == nx ? i : i + 1;
                    auto val = [&](std::size_t m) {
                        return dir == 0 ? at(c, m, i2, j) : at(c, i1, m, j);
                    };
                    d.at(c, i1, i2, j) = (val(b) - val(a)) / (h * static_cast<double>(b - a));
                }
    return d;
}

double ChartSamples::sup_distance(const ChartSamples& o) const {
    double m = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) m = std::max(m, std::abs(values[i] - o.values[i]));
    return m;
}

namespace {

// Periodic convolution along y with the given weights at offsets -r..r cells.
ChartSamples convolve(const ChartSamples& a, const std::vector<double>& w, int r) {
    ChartSamples out = a.like();
    const auto ny = static_cast<long>(a.ny);
    for (int c = 0; c < a.components; ++c)
        for (std::size_t i1 = 0; i1 < a.nx; ++i1)
            for (std::size_t i2 = 0; i2 < a.nx; ++i2)
                for (long j = 0; j < ny; ++j) {
                    double s = 0.0;
                    for (int m = -r; m <= r; ++m) {
                        long jj = ((j - m) % ny + ny) % ny;  // a(y - t) with t = m dy
                        s += w[m + r] * a.at(c, i1, i2, static_cast<std::size_t>(jj));
                    }
                    out.at(c, i1, i2, static_cast<std::size_t>(j)) = s;
                }
    return out;
}

}  // namespace

MollifiedField mollify(const ChartSamples& a, int k, std::size_t min_cells) {
    if (k < 1) throw std::invalid_argument("mollifier scale must be a positive integer");
    const Bump& z = Bump::standard();
    const double dy = a.dy();
    const double support = 2.0 * z.support() / k;
    if (support / dy < static_cast<double>(min_cells)) {
        auto need = static_cast<std::size_t>(std::ceil(min_cells * a.period / support));
        throw RefinementDemand("chart grid too coarse for the mollifier scale", need);
    }
    if (support >= a.period) throw std::invalid_argument("mollifier support exceeds the period");
    const int r = static_cast<int>(std::floor(z.support() / (k * dy)));
    std::vector<double> w(2 * r + 1), dw(2 * r + 1);
    double sum = 0.0;
    for (int m = -r; m <= r; ++m) {
        double t = m * dy;
        w[m + r] = k * z(k * t) * dy;
        // d/dy of a(y - t) k zeta(k t) integrated by parts: a(y - t) k^2 zeta'(k t)
        dw[m + r] = static_cast<double>(k) * k * z.derivative(k * t) * dy;
        sum += w[m + r];
    }
    for (double& v : w) v /= sum;
    for (double& v : dw) v /= sum;

    MollifiedField out;
    out.k = k;
    out.a = a;
    out.b = convolve(a, w, r);
    out.db_dy = convolve(a, dw, r);
    for (int dir = 0; dir < 2; ++dir) {
        out.da_dx[dir] = a.x_partial(dir);
        out.db_dx[dir] = convolve(out.da_dx[dir], w, r);
    }
    return out;
}

}  // namespace anosov
