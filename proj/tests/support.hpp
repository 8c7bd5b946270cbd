#pragma once
#include "anosov/geometry.hpp"

#include <cmath>
#include <random>

namespace testsupport {

using namespace anosov;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline HyperbolicPoint random_point(std::mt19937_64& rng, double max_dist) {
    double r = std::tanh(uniform(rng, 0.0, max_dist) / 2);
    return HyperbolicPoint(std::polar(r, uniform(rng, 0.0, kTwoPi)));
}

inline Isometry random_isometry(std::mt19937_64& rng, double max_shift = 3.0) {
    return Isometry::rotation(uniform(rng, 0, kTwoPi)) *
           Isometry::translation(uniform(rng, 0.05, max_shift)) *
           Isometry::rotation(uniform(rng, 0, kTwoPi));
}

// Upper half plane route: Cayley to H, real Moebius map, Cayley back.
inline cplx via_half_plane(const Isometry& g, cplx w) {
    const cplx i(0, 1);
    cplx z = i * (1.0 + w) / (1.0 - w);
    cplx gz = (g.a() * z + g.b()) / (g.c() * z + g.d());
    return (gz - i) / (gz + i);
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testsupport
