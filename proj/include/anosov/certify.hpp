#pragma once
// The full property sweep behind `verify`: every section reports its measured
// constants and, for each asserted inequality, the measured value, the bound
// and the slack (positive when the inequality holds).
#include "anosov/census.hpp"
#include "anosov/cone.hpp"
#include "anosov/estimators.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace anosov {

struct Tolerances {
    double busemann = 1e-9;          // cocycle, equivariance, density ratio
    double rn_relative = 1e-5;       // rn_derivative vs finite differences
    double period_holonomy = 1e-6;   // one-period holonomy vs e^{-delta l}
    double holonomy_bound = 1e-6;    // additive slack in the diameter bound
    double exponent_relative = 0.05; // fitted holonomy exponent vs delta
    double growth_relative = 0.1;    // k2 vs delta
    double decay_min = 0.9;          // forward asymptoticity and k2'
    double mollifier_halving = 0.2;  // error ratio 2 +- this per doubling
    double mollifier_exact = 1e-10;  // y-constant reproduction
    double c2_min = 0.5;
    double quasigeodesic_spread = 0.1;
    double integrator = 1e-8;        // Richardson local error per step
    double period = 1e-7;            // census periods vs j l
};

struct CertifyConfig {
    std::optional<std::uint64_t> seed;  // mandatory for the sampled sections
    std::string group = "genus2-octagon";
    int k = 1;
    std::size_t busemann_samples = 10000;
    std::size_t rn_samples = 1000;
    int rn_word_len = 4;
    int periodic_word_len = 3;
    std::size_t holonomy_segments = 1000;
    std::size_t asymptotic_pairs = 200;
    std::size_t stable_samples = 200;
    std::size_t separation_pairs = 250;  // per fibre gap
    double separation_eps = 0.1;
    std::vector<double> separation_gaps{0.04, 0.02, 0.01, 0.005};
    std::size_t c1_samples = 150;        // leafwise C1 distance for the scale choice
    int mollifier_scale = 0;             // 0: choose by the C1 cap
    std::size_t cone_calibration = 6;
    double cone_t_max = 6.0;
    std::size_t cone_points = 1000;
    std::size_t quasigeodesic_leaves = 100;
    int census_word_len = 4;
    int census_max_k = 4;
    unsigned threads = 0;
    Tolerances tol;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws ConfigError when a budget is outside the module guards.
void validate(const CertifyConfig& config);

struct Inequality {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool upper = true;  // measured <= bound; otherwise measured >= bound
    double slack() const { return upper ? bound - measured : measured - bound; }
    bool holds() const { return slack() >= 0.0; }
};

struct Constant {
    std::string name;
    double value = 0.0;
};

struct PropertyResult {
    std::string id;
    std::string title;
    std::size_t samples = 0;
    bool insufficient = false;  // too few samples for the inequalities to mean anything
    std::vector<Inequality> checks;
    std::vector<Constant> constants;
    std::vector<std::string> notes;
    std::string error;          // a sub-check budget failure, recorded instead of thrown
    double seconds = 0.0;       // wall time; not part of the formatted report
    bool pass() const;
};

struct SeparationTableRow {
    double gap = 0.0;
    std::size_t pairs = 0;
    std::size_t unseparated = 0;
    double t_max = 0.0;
    double t_mean = 0.0;
};

struct CensusScalingRow {
    int k = 1;
    bool free_group_lift = false;
    std::size_t classes = 0;
    std::size_t orbits = 0;
    std::size_t scaling_mismatches = 0;  // classes whose count is not k times the k = 1 count
    std::size_t min_count = 0;           // least count over the surveyed classes
    std::size_t relator_rewritten = 0;
    double factor = 0.0;                 // orbits / orbits at k = 1
};

struct CertificationReport {
    CertifyConfig config;
    std::vector<PropertyResult> properties;
    std::vector<SeparationTableRow> separation;
    std::vector<CensusScalingRow> census;
    bool all_pass() const;
    const PropertyResult* find(const std::string& id) const;
};

// Section ids in report order: busemann, rn_derivative, periodic_holonomy,
// holonomy_bound, topological_anosov, mollifier, cone_field, census.
CertificationReport certify(const CertifyConfig& config);

// Individual sections, as run by certify.
PropertyResult busemann_suite(std::uint64_t seed, std::size_t samples, double tol);
PropertyResult rn_suite(const PullbackMeasure& m, std::uint64_t seed, std::size_t samples,
                        int word_len, double tol);
PropertyResult periodic_holonomy_suite(const BundleFlow& flow, int word_len, double tol);
PropertyResult holonomy_bound_suite(const BundleFlow& flow, std::uint64_t seed, std::size_t segments,
                                    const Tolerances& tol);
PropertyResult topological_anosov_suite(const BundleFlow& flow, const CertifyConfig& config,
                                        std::uint64_t seed, std::vector<SeparationTableRow>* table);
PropertyResult mollifier_suite(const Tolerances& tol);
PropertyResult cone_suite(const BundleFlow& flow, const CertifyConfig& config, std::uint64_t seed);
PropertyResult census_suite(const SurfaceGroup& group, const CertifyConfig& config,
                            std::vector<CensusScalingRow>* table);

}  // namespace anosov
