#pragma once
// Sampled estimators for the topological and tangent-level hyperbolicity of
// the flow: forward asymptoticity on horizontal leaves, the holonomy bound,
// and separation along vertical leaves.
#include "anosov/flow.hpp"

#include <cstdint>
#include <vector>

namespace anosov {

struct AsymptoticityReport {
    std::size_t pairs = 0;
    double min_exponent = 0.0;   // worst fitted decay rate of log distance
    double mean_exponent = 0.0;
    double max_constant = 0.0;   // sup_t d(t) / (d(0) e^{-t})
};

// Pairs on one leaf and one horocycle (so no reparametrisation is needed),
// initial distance up to d0_max, distances sampled at t = 1..t_max.
AsymptoticityReport forward_asymptoticity(const BundleFlow& flow, std::uint64_t seed,
                                          std::size_t pairs, double d0_max = 1.0,
                                          double t_max = 10.0);

struct StableBoundReport {
    std::size_t samples = 0;
    double k1 = 0.0;  // ||phi^t_* v|| <= k1 e^{-k2 t} ||v||
    double k2 = 0.0;
};

// Tangent vectors along the strong stable direction, by a 1e-4 horocyclic
// difference; k2 is the worst fitted rate, k1 the constant that makes the
// bound hold at every sampled time.
StableBoundReport stable_bound(const BundleFlow& flow, std::uint64_t seed, std::size_t samples,
                               double t_max = 10.0);

struct HolonomyBoundReport {
    std::size_t segments = 0;
    double worst_slack = 0.0;     // max of log d - (delta t + 2 delta diam)
    double fitted_exponent = 0.0; // least-squares slope of log d against t
    double r2 = 0.0;
};

HolonomyBoundReport holonomy_bound_sweep(const BundleFlow& flow, std::uint64_t seed,
                                         std::size_t segments, double t_min = -20.0);

struct SeparationRow {
    double kappa = 0.0;
    std::size_t pairs = 0;
    std::size_t unseparated = 0;
    double t_max = 0.0;   // empirical uniform time t(kappa)
    double t_mean = 0.0;
};

struct SeparationReport {
    double eps = 0.0;
    std::vector<SeparationRow> rows;  // kappa decreasing
    std::size_t pairs = 0;
    bool finite = false;
    bool monotone = false;  // t(kappa) nondecreasing as kappa shrinks
};

// Pairs on one vertical leaf with initial fibre gap in [kappa, 2 kappa],
// measured by the visual measure of the lead point. The gap seen from the
// lead orbit bounds the distance below for every reparametrisation of the
// partner; t(kappa) is the largest time any pair needs to push it past eps.
// Vertical leaves are weak-unstable, so separation happens in forward time.
SeparationReport separation_times(const BundleFlow& flow, std::uint64_t seed,
                                  std::size_t pairs_per_kappa, double eps,
                                  const std::vector<double>& kappas, double t_budget = 40.0);

}  // namespace anosov
