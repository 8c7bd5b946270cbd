#include "anosov/certify.hpp"

#include "anosov/mollifier.hpp"
#include "anosov/numerics.hpp"
#include "anosov/sampling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace anosov {

namespace {

// Independent stream per section, so changing one budget leaves the others alone.
std::uint64_t section_seed(std::uint64_t seed, std::uint32_t section) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), section};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

Inequality at_most(std::string name, double measured, double bound) {
    return {std::move(name), measured, bound, true};
}

Inequality at_least(std::string name, double measured, double bound) {
    return {std::move(name), measured, bound, false};
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// mu_x / mu_y on the arc of half-width h around xi, Richardson-extrapolated
// twice in h: a density ratio that never touches the Poisson kernel. The
// densities vary on the scale of the distance of x, y to the circle.
double arc_density_ratio(HyperbolicPoint x, HyperbolicPoint y, double theta) {
    auto ratio = [&](double h) {
        return visual_arc_measure(x, theta - h, 2 * h) / visual_arc_measure(y, theta - h, 2 * h);
    };
    const double h = 0.02 * std::min(1.0 - std::abs(x.z()), 1.0 - std::abs(y.z()));
    double r1 = ratio(h), r2 = ratio(h / 2), r4 = ratio(h / 4);
    double e1 = (4.0 * r2 - r1) / 3.0, e2 = (4.0 * r4 - r2) / 3.0;
    return (16.0 * e2 - e1) / 15.0;
}

template <class F>
PropertyResult timed(F&& run) {
    auto t0 = std::chrono::steady_clock::now();
    PropertyResult r;
    try {
        r = run();
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace

bool PropertyResult::pass() const {
    if (insufficient || !error.empty() || checks.empty()) return false;
    return std::all_of(checks.begin(), checks.end(), [](const Inequality& c) { return c.holds(); });
}

bool CertificationReport::all_pass() const {
    return !properties.empty() &&
           std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.pass(); });
}

const PropertyResult* CertificationReport::find(const std::string& id) const {
    for (const PropertyResult& p : properties)
        if (p.id == id) return &p;
    return nullptr;
}

void validate(const CertifyConfig& c) {
    if (c.k < 1 || c.k > 8) throw ConfigError("k must be in 1..8");
    if (c.census_max_k < 1 || c.census_max_k > 8) throw ConfigError("census max_k must be in 1..8");
    if (c.census_word_len < 0 || c.census_word_len > 6) throw ConfigError("census word length must be in 0..6");
    if (c.rn_word_len < 1 || c.rn_word_len > 6) throw ConfigError("rn word length must be in 1..6");
    if (c.periodic_word_len < 1 || c.periodic_word_len > 4)
        throw ConfigError("periodic word length must be in 1..4");
    if (!(c.separation_eps > 0.0)) throw ConfigError("separation eps must be positive");
    for (double g : c.separation_gaps)
        if (!(g > 0.0 && g < c.k)) throw ConfigError("separation gaps must lie in (0, k)");
    if (c.mollifier_scale < 0) throw ConfigError("mollifier scale must be >= 0");
    if (!(c.cone_t_max > 0.0 && c.cone_t_max <= 20.0)) throw ConfigError("cone t_max must be in (0, 20]");
    const double tols[] = {c.tol.busemann, c.tol.rn_relative, c.tol.period_holonomy, c.tol.holonomy_bound,
                           c.tol.exponent_relative, c.tol.growth_relative, c.tol.mollifier_halving,
                           c.tol.mollifier_exact, c.tol.quasigeodesic_spread, c.tol.integrator, c.tol.period};
    for (double t : tols)
        if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("tolerances must be finite and >= 0");
}

PropertyResult busemann_suite(std::uint64_t seed, std::size_t samples, double tol) {
    PropertyResult r;
    r.id = "busemann";
    r.title = "Busemann cocycle, equivariance, visual density ratio";
    r.samples = samples;
    r.insufficient = samples == 0;
    std::mt19937_64 rng(seed);
    double cocycle = 0.0, equivariance = 0.0, density = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        HyperbolicPoint x = random_point(rng, 3.0), y = random_point(rng, 3.0), z = random_point(rng, 3.0);
        BoundaryPoint xi(uniform(rng, 0.0, kTwoPi));
        Isometry g = Isometry::rotation(uniform(rng, 0, kTwoPi)) * Isometry::translation(uniform(rng, 0, 3)) *
                     Isometry::rotation(uniform(rng, 0, kTwoPi));
        double bxy = busemann(xi, x, y);
        cocycle = std::max(cocycle, std::abs(bxy + busemann(xi, y, z) - busemann(xi, x, z)));
        double moved = busemann(apply_boundary(g, xi), apply_isometry(g, x), apply_isometry(g, y));
        equivariance = std::max(equivariance, std::abs(moved - bxy));
        density = std::max(density, rel_err(visual_density_ratio(x, y, xi), arc_density_ratio(x, y, xi.theta())));
    }
    r.checks = {at_most("cocycle_error", cocycle, tol), at_most("equivariance_error", equivariance, tol),
                at_most("density_ratio_error", density, tol)};
    return r;
}

PropertyResult rn_suite(const PullbackMeasure& m, std::uint64_t seed, std::size_t samples, int word_len,
                        double tol) {
    PropertyResult r;
    r.id = "rn_derivative";
    r.title = "Radon-Nikodym derivative vs finite differences of the circle action";
    r.samples = samples;
    r.insufficient = samples == 0;
    const CircleAction& rho = m.action();
    const int k = rho.k();
    std::vector<Word> words;
    for (Word& w : enumerate_words(word_len))
        if (!w.empty()) words.push_back(std::move(w));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const Word& w = words[pick(rng)];
        double s = uniform(rng, 0.0, k);
        double rn = m.rn_derivative(w, CirclePoint(s, k));
        // initial step well inside the scale on which the derivative varies
        const double e = 1e-6;
        double bend = std::abs(std::log(m.rn_derivative(w, CirclePoint(s + e, k))) -
                               std::log(m.rn_derivative(w, CirclePoint(s - e, k)))) / (2 * e);
        Derivative fd = ridders_derivative([&](double u) { return rho.lift(w, u); }, s, 0.05 / std::max(1.0, bend));
        worst = std::max(worst, rel_err(fd.value, rn));
    }
    r.checks = {at_most("worst_relative_error", worst, tol)};
    r.constants = {{"words", static_cast<double>(words.size())}, {"max_word_len", static_cast<double>(word_len)}};
    return r;
}

PropertyResult periodic_holonomy_suite(const BundleFlow& flow, int word_len, double tol) {
    PropertyResult r;
    r.id = "periodic_holonomy";
    r.title = "One-period holonomy e^{-delta l} and backward first-return contraction";
    const CircleAction& rho = flow.action();
    std::set<Word> keys;
    for_each_word(word_len, [&](const Word& w) {
        if (!w.empty()) keys.insert(conjugacy_key(w));
    });
    double worst = 0.0, forward = 0.0;
    std::size_t undefined = 0, non_monotone = 0, skipped = 0;
    for (const Word& key : keys) {
        auto fps = rho.fixed_points(key);
        if (fps.empty()) ++skipped;
        double ell = classify_and_fixed_points(flow.group().evaluate(key)).translation_length;
        for (const CircleFixedPoint& fp : fps) {
            PeriodicOrbit orb = flow.periodic_orbit(key, fp.p);
            ++r.samples;
            const BundlePoint& start = orb.segment.samples.front();
            BundlePoint end = flow.flow_phi(start, orb.period);
            worst = std::max(worst, rel_err(flow.holonomy_derivative(end, -orb.period).derivative,
                                            std::exp(-flow.delta() * ell)));
            forward = std::max(forward, rel_err(flow.holonomy_derivative(start, orb.period).derivative,
                                                std::exp(flow.delta() * ell)));
            FirstReturnReport fr = flow.first_return(orb);
            if (!fr.defined) ++undefined;
            if (!fr.monotone) ++non_monotone;
        }
    }
    r.insufficient = r.samples == 0;
    r.checks = {at_most("backward_period_relative_error", worst, tol),
                at_most("forward_period_relative_error", forward, tol),
                at_most("first_return_undefined", static_cast<double>(undefined), 0.0),
                at_most("first_return_not_monotone", static_cast<double>(non_monotone), 0.0)};
    r.constants = {{"classes", static_cast<double>(keys.size())},
                   {"classes_without_fixed_points", static_cast<double>(skipped)}};
    if (skipped > 0) r.notes.push_back("classes whose rotation displacement is not divisible by k have no orbit");
    return r;
}

PropertyResult holonomy_bound_suite(const BundleFlow& flow, std::uint64_t seed, std::size_t segments,
                                    const Tolerances& tol) {
    PropertyResult r;
    r.id = "holonomy_bound";
    r.title = "Holonomy contraction bound e^{2 delta diam(D)} e^{delta t} and expansion constants";
    r.samples = segments;
    r.insufficient = segments < 2;
    const double delta = flow.delta();
    HolonomyBoundReport back = holonomy_bound_sweep(flow, seed, segments);
    // Forward expansion |D hol| >= k1 e^{k2 t} on fresh segments, t in [0, 20].
    std::mt19937_64 rng(section_seed(seed, 1));
    const int k = flow.action().k();
    std::vector<double> ts, logs;
    double forward_slack = -INFINITY;
    for (std::size_t i = 0; i < segments; ++i) {
        BundlePoint pt = flow.make_point(random_point(rng, 2.5), CirclePoint(uniform(rng, 0.0, k), k));
        double t = uniform(rng, 0.0, 20.0);
        HolonomyRecord rec = flow.holonomy_derivative(pt, t);
        forward_slack = std::max(forward_slack, rec.bound_check);
        ts.push_back(t);
        logs.push_back(rec.log_derivative);
    }
    double k2 = segments >= 2 ? fit_line(ts, logs).slope : 0.0;
    double log_k1 = INFINITY;
    for (std::size_t i = 0; i < ts.size(); ++i) log_k1 = std::min(log_k1, logs[i] - k2 * ts[i]);
    const double diam = flow.group().domain().diameter;
    r.checks = {at_most("backward_bound_excess", back.worst_slack, tol.holonomy_bound),
                at_most("backward_exponent_relative_error", std::abs(back.fitted_exponent - delta) / delta,
                        tol.exponent_relative),
                at_most("forward_bound_excess", forward_slack, tol.holonomy_bound),
                at_most("k2_relative_error", std::abs(k2 - delta) / delta, tol.growth_relative)};
    r.constants = {{"diam_D", diam},
                   {"backward_fitted_exponent", back.fitted_exponent},
                   {"backward_r2", back.r2},
                   {"k1", segments ? std::exp(log_k1) : 0.0},
                   {"k2", k2},
                   {"k1_bound", std::exp(-2.0 * delta * diam)}};
    return r;
}

PropertyResult topological_anosov_suite(const BundleFlow& flow, const CertifyConfig& c, std::uint64_t seed,
                                        std::vector<SeparationTableRow>* table) {
    PropertyResult r;
    r.id = "topological_anosov";
    r.title = "Forward asymptoticity on F^h, stable bound, separation on F^v in uniform time";
    AsymptoticityReport asym = forward_asymptoticity(flow, section_seed(seed, 1), c.asymptotic_pairs);
    StableBoundReport stable = stable_bound(flow, section_seed(seed, 2), c.stable_samples);
    SeparationReport sep =
        separation_times(flow, section_seed(seed, 3), c.separation_pairs, c.separation_eps, c.separation_gaps);
    r.samples = asym.pairs + stable.samples + sep.pairs;
    r.insufficient = asym.pairs == 0 || stable.samples == 0 || sep.rows.size() < 2 || c.separation_pairs == 0;
    std::size_t unseparated = 0;
    double t_worst = 0.0;
    for (const SeparationRow& row : sep.rows) {
        unseparated += row.unseparated;
        t_worst = std::max(t_worst, row.t_max);
        if (table) table->push_back({row.kappa, row.pairs, row.unseparated, row.t_max, row.t_mean});
    }
    r.checks = {at_least("asymptotic_decay_exponent", asym.min_exponent, c.tol.decay_min),
                at_least("k2_prime", stable.k2, c.tol.decay_min),
                at_most("unseparated_pairs", static_cast<double>(unseparated), 0.0),
                at_least("t_monotone_in_inverse_gap", sep.monotone ? 1.0 : 0.0, 1.0)};
    r.constants = {{"asymptotic_mean_exponent", asym.mean_exponent},
                   {"asymptotic_constant", asym.max_constant},
                   {"k1_prime", stable.k1},
                   {"k2_prime", stable.k2},
                   {"eps", sep.eps},
                   {"delta_sep", sep.rows.empty() ? 0.0 : sep.rows.back().kappa},
                   {"separation_pairs", static_cast<double>(sep.pairs)},
                   {"t_uniform", sep.finite ? t_worst : INFINITY}};
    return r;
}

PropertyResult mollifier_suite(const Tolerances& tol) {
    PropertyResult r;
    r.id = "mollifier";
    r.title = "Transverse mollification: exactness, Lipschitz halving, leafwise partials";
    auto tri = [](double y) { return std::abs(2.0 * (y - std::floor(y)) - 1.0); };
    // y-constant data are reproduced exactly
    auto flat = ChartSamples::sample(5, 256, 2, -0.5, 0.5, 1.0, [](double x1, double x2, double, double* o) {
        o[0] = std::sin(x1) + x2 * x2;
        o[1] = std::exp(x1 * x2);
    });
    double exact = 0.0;
    for (int k : {4, 8, 16}) exact = std::max(exact, mollify(flat, k).b.sup_distance(flat));
    // Lipschitz data: sup error halves per doubling of k
    auto lip = ChartSamples::sample(1, 8192, 1, 0, 0, 1.0, [&](double, double, double y, double* o) { o[0] = tri(y); });
    std::vector<double> errs;
    for (int k : {8, 16, 32, 64}) errs.push_back(mollify(lip, k).b.sup_distance(lip));
    double ratio_dev = 0.0, ratio_min = INFINITY, ratio_max = 0.0;
    for (std::size_t i = 1; i < errs.size(); ++i) {
        double q = errs[i - 1] / errs[i];
        ratio_min = std::min(ratio_min, q);
        ratio_max = std::max(ratio_max, q);
        ratio_dev = std::max(ratio_dev, std::abs(q / 2.0 - 1.0));
    }
    // leafwise partials of b converge to those of a
    auto mixed = ChartSamples::sample(5, 2048, 1, -0.5, 0.5, 1.0, [&](double x1, double x2, double y, double* o) {
        o[0] = std::sin(3 * x1) * std::cos(x2) * (1 + tri(y));
    });
    std::vector<std::array<double, 2>> perrs;
    for (int k : {8, 16, 32}) {
        MollifiedField m = mollify(mixed, k);
        perrs.push_back({m.db_dx[0].sup_distance(m.da_dx[0]), m.db_dx[1].sup_distance(m.da_dx[1])});
    }
    double partial_dev = 0.0;
    for (std::size_t i = 1; i < perrs.size(); ++i)
        for (int d = 0; d < 2; ++d) partial_dev = std::max(partial_dev, std::abs(perrs[i - 1][d] / perrs[i][d] / 2.0 - 1.0));
    r.samples = 3 + errs.size() + perrs.size();
    r.checks = {at_most("y_constant_error", exact, tol.mollifier_exact),
                at_most("halving_ratio_deviation", ratio_dev, tol.mollifier_halving),
                at_most("partials_ratio_deviation", partial_dev, tol.mollifier_halving)};
    r.constants = {{"sup_error_k8", errs[0]},     {"sup_error_k64", errs[3]},
                   {"min_halving_ratio", ratio_min}, {"max_halving_ratio", ratio_max},
                   {"partials_error_k32", std::max(perrs.back()[0], perrs.back()[1])}};
    return r;
}

PropertyResult cone_suite(const BundleFlow& flow, const CertifyConfig& c, std::uint64_t seed) {
    PropertyResult r;
    r.id = "cone_field";
    r.title = "Cone-field invariance and fibre growth for psi, uniform quasigeodesics";
    const SurfaceGroup& group = flow.group();
    // The hyperbolicity margin of X is its measured leafwise contraction rate.
    StableBoundReport margin = stable_bound(flow, section_seed(seed, 10), std::max<std::size_t>(c.stable_samples, 1));
    int scale = c.mollifier_scale;
    double cap = 0.1 * margin.k2, distance = 0.0;
    if (scale == 0) {
        ScaleSelection sel = select_mollifier_scale(group, section_seed(seed, 11), c.c1_samples, margin.k2);
        if (!sel.found) {
            r.error = "no candidate mollifier scale meets the C1 cap";
            return r;
        }
        scale = sel.scale;
        distance = sel.tried.back().total();
    } else {
        SmoothedLeafField probe(group, scale);
        distance = leafwise_c1_distance(probe, ExactLeafField{}, group, section_seed(seed, 11), c.c1_samples).total();
    }
    SmoothedLeafField field(group, scale);
    IntegratorOptions opt;
    opt.tolerance = c.tol.integrator;
    FieldFlow psi(flow, field, opt);

    ConeConstants cc = measure_cone_constants(psi, section_seed(seed, 12), c.cone_calibration, c.cone_t_max);
    ConeCertification cert = certify_cone(psi, cc, section_seed(seed, 13), c.cone_points);
    QuasigeodesicReport qg = quasigeodesic_bound(psi, section_seed(seed, 14), c.quasigeodesic_leaves);
    // Local error of the integrator along a few orbits
    double worst_step = 0.0;
    {
        std::mt19937_64 rng(section_seed(seed, 15));
        const int k = flow.action().k();
        for (int i = 0; i < 5; ++i) {
            BundlePoint pt = flow.make_point(random_point(rng, 2.0), CirclePoint(uniform(rng, 0.0, k), k));
            double err = 0.0;
            psi.flow_psi(pt, 10.0, nullptr, &err);
            worst_step = std::max(worst_step, err);
        }
    }
    r.samples = cert.points;
    r.insufficient = cc.samples == 0 || cert.points == 0 || qg.leaves < 2;
    r.checks = {at_most("mollifier_c1_distance", distance, cap),
                at_least("beta_over_2c4", cc.c4 > 0.0 ? cc.beta / (2.0 * cc.c4) : 0.0, 1.0),
                at_most("cone_failures", static_cast<double>(cert.failures), 0.0),
                at_most("worst_cone_ratio", cert.worst_ratio, 1.0),
                at_least("growth_log_slack", cert.worst_growth_slack, 0.0),
                at_least("c2", cc.c2, c.tol.c2_min),
                at_most("quasigeodesic_spread", qg.spread, c.tol.quasigeodesic_spread),
                at_most("integrator_local_error", worst_step, c.tol.integrator)};
    r.constants = {{"mollifier_scale", static_cast<double>(scale)},
                   {"hyperbolicity_margin", margin.k2},
                   {"c1", cc.c1},
                   {"c2", cc.c2},
                   {"c3", cc.c3},
                   {"c4", cc.c4},
                   {"beta", cc.beta},
                   {"T", cc.T},
                   {"calibration_samples", static_cast<double>(cc.samples)},
                   {"cone_checks", static_cast<double>(cert.checks)},
                   {"R", qg.R},
                   {"R_first", qg.R_first},
                   {"R_second", qg.R_second},
                   {"quasigeodesic_time_constant", qg.time_constant},
                   {"leaves", static_cast<double>(qg.leaves)}};
    return r;
}

PropertyResult census_suite(const SurfaceGroup& group, const CertifyConfig& c,
                            std::vector<CensusScalingRow>* table) {
    PropertyResult r;
    r.id = "census";
    r.title = "Closed orbits per free homotopy class scale as m k";
    std::set<int> covers;
    for (int k = 1; k <= c.census_max_k; ++k) covers.insert(k);
    covers.insert(c.k);
    std::map<Word, std::size_t> base;
    std::size_t base_orbits = 0, mismatches = 0, pairing = 0, alternation = 0, unresolved = 0;
    double period_error = 0.0;
    for (int k : covers) {
        std::vector<CensusEntry> entries = orbit_census(group, k, c.census_word_len, c.threads);
        CensusScalingRow row;
        row.k = k;
        row.classes = entries.size();
        row.min_count = entries.empty() ? 0 : SIZE_MAX;
        for (const CensusEntry& e : entries) {
            row.free_group_lift = e.free_group_lift;
            row.orbits += e.count;
            row.min_count = std::min(row.min_count, e.count);
            row.relator_rewritten += e.relator_rewritten;
            if (k == 1) base[e.key] = e.count;
            auto it = base.find(e.key);
            if (it == base.end() || e.count != it->second * static_cast<std::size_t>(k)) ++row.scaling_mismatches;
            if (!e.alternating) ++alternation;
            if (e.in_class + e.in_inverse_class != e.count) unresolved += e.count - e.in_class - e.in_inverse_class;
            period_error = std::max(period_error, e.worst_period_error);
        }
        if (k == 1) base_orbits = row.orbits;
        row.factor = base_orbits ? static_cast<double>(row.orbits) / base_orbits : 0.0;
        for (const OrbitPair& p : homotopic_inverse_pairs(group, entries))
            if (!p.classes_inverse || !p.matrices_inverse) ++pairing;
        mismatches += row.scaling_mismatches;
        r.samples += row.orbits;
        if (table) table->push_back(row);
    }
    r.insufficient = base_orbits == 0;
    r.checks = {at_most("scaling_mismatches", static_cast<double>(mismatches), 0.0),
                at_most("inverse_pairing_failures", static_cast<double>(pairing), 0.0),
                at_most("non_alternating_classes", static_cast<double>(alternation), 0.0),
                at_most("unresolved_orbit_classes", static_cast<double>(unresolved), 0.0),
                at_most("worst_period_error", period_error, c.tol.period)};
    r.constants = {{"word_len", static_cast<double>(c.census_word_len)},
                   {"classes", static_cast<double>(base.size())}};
    r.notes.push_back("the least count over classes is reported for the surveyed word length only");
    return r;
}

CertificationReport certify(const CertifyConfig& config) {
    validate(config);
    if (!config.seed) throw ConfigError("a seed is required for the sampled checks");
    const std::uint64_t seed = *config.seed;
    CertificationReport rep;
    rep.config = config;
    SurfaceGroup group = SurfaceGroup::preset(config.group);
    CircleAction rho(group, config.k);
    PullbackMeasure m(rho);
    BundleFlow flow(m);
    const Tolerances& tol = config.tol;

    rep.properties.push_back(timed([&] { return busemann_suite(section_seed(seed, 100), config.busemann_samples, tol.busemann); }));
    rep.properties.push_back(timed([&] {
        return rn_suite(m, section_seed(seed, 200), config.rn_samples, config.rn_word_len, tol.rn_relative);
    }));
    rep.properties.push_back(timed([&] { return periodic_holonomy_suite(flow, config.periodic_word_len, tol.period_holonomy); }));
    rep.properties.push_back(timed([&] { return holonomy_bound_suite(flow, section_seed(seed, 400), config.holonomy_segments, tol); }));
    rep.properties.push_back(timed([&] {
        return topological_anosov_suite(flow, config, section_seed(seed, 500), &rep.separation);
    }));
    rep.properties.push_back(timed([&] { return mollifier_suite(tol); }));
    rep.properties.push_back(timed([&] { return cone_suite(flow, config, section_seed(seed, 700)); }));
    rep.properties.push_back(timed([&] { return census_suite(group, config, &rep.census); }));

    // A failure inside a section leaves its id and title unset.
    const char* ids[] = {"busemann", "rn_derivative", "periodic_holonomy", "holonomy_bound",
                         "topological_anosov", "mollifier", "cone_field", "census"};
    for (std::size_t i = 0; i < rep.properties.size(); ++i)
        if (rep.properties[i].id.empty()) rep.properties[i].id = ids[i];
    return rep;
}

}  // namespace anosov
