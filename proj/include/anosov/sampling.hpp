#pragma once
// Random configurations shared by the sampled sweeps.
#include "anosov/geometry.hpp"

#include <cmath>
#include <random>

namespace anosov {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Point at hyperbolic distance uniform in [0, max_dist] from o, uniform angle.
inline HyperbolicPoint random_point(std::mt19937_64& rng, double max_dist) {
    double r = std::tanh(uniform(rng, 0.0, max_dist) / 2);
    return HyperbolicPoint(std::polar(r, uniform(rng, 0.0, kTwoPi)));
}

}  // namespace anosov
