#include "anosov/census.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

namespace anosov {

namespace {

// Equality in PSL(2,R) relative to the size of the entries; long words have
// entries of size e^{l/2}.
bool same_element(const Isometry& a, const Isometry& b) {
    double scale = std::max({1.0, std::abs(a.a()), std::abs(a.b()), std::abs(a.c()), std::abs(a.d())});
    return a.distance_to(b) < 1e-9 * scale;
}

bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

CensusEntry census_entry(const BundleFlow& flow, const Word& key) {
    const CircleAction& rho = flow.action();
    const int k = rho.k();
    CensusEntry e;
    e.key = key;
    e.k = k;
    e.free_group_lift = !rho.descends_to_surface_group();
    e.translation_length = classify_and_fixed_points(flow.group().evaluate(key)).translation_length;
    // Search the exponent rather than assume it divides k.
    e.exponent = 0;
    for (int j = 1; j <= k && e.exponent == 0; ++j)
        if (rho.rotation_displacement(key.power(j)) % k == 0) e.exponent = j;
    if (e.exponent == 0) return e;
    const Word wj = key.power(e.exponent);
    const Word in_key = conjugacy_key(wj), out_key = conjugacy_key(wj.inverse());
    const Isometry g_in = flow.group().evaluate(wj), g_out = g_in.inverse();
    for (const CircleFixedPoint& fp : rho.fixed_points(wj)) {
        PeriodicOrbit orb = flow.periodic_orbit(wj, fp.p);
        CensusOrbit o{fp.p, fp.kind, orb.period, orb.class_key, orb.translation, orb.closure_gap};
        e.worst_period_error =
            std::max(e.worst_period_error, std::abs(orb.period - e.exponent * e.translation_length));
        e.worst_closure_gap = std::max(e.worst_closure_gap, orb.closure_gap);
        if (conjugacy_key(orb.translation) == orb.class_key) {
            Isometry t = flow.group().evaluate(orb.translation);
            if (same_element(t, g_in))
                o.relation = OrbitClass::key;
            else if (same_element(t, g_out))
                o.relation = OrbitClass::inverse;
        }
        o.free_key_match = o.class_key == (o.relation == OrbitClass::inverse ? out_key : in_key);
        if (o.relation == OrbitClass::key) ++e.in_class;
        if (o.relation == OrbitClass::inverse) ++e.in_inverse_class;
        if (o.relation != OrbitClass::unresolved && !o.free_key_match) ++e.relator_rewritten;
        e.orbits.push_back(std::move(o));
    }
    e.count = e.orbits.size();
    e.distinct_orbits = e.count / static_cast<std::size_t>(e.exponent);
    e.alternating = e.count % 2 == 0;
    for (std::size_t i = 0; i < e.count; ++i)
        if (e.orbits[i].kind == e.orbits[(i + 1) % e.count].kind) e.alternating = false;
    return e;
}

}  // namespace

std::vector<CensusEntry> orbit_census(const SurfaceGroup& group, int k, int max_word_len,
                                      unsigned threads) {
    if (max_word_len > 6) throw CensusBudgetExceeded("census word length budget is 6");
    if (k < 1 || k > 8) throw CensusBudgetExceeded("census cover index must be in 1..8");
    std::set<Word> seen;
    std::vector<Word> keys;
    if (max_word_len >= 1)
        for_each_word(max_word_len, [&](const Word& w) {
            if (w.empty()) return;
            Word key = conjugacy_key(w);
            if (seen.insert(key).second) keys.push_back(key);
        });
    std::sort(keys.begin(), keys.end(), shortlex_less);

    CircleAction rho(group, k);
    PullbackMeasure measure(rho);
    BundleFlow flow(measure);
    std::vector<CensusEntry> out(keys.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(keys.size(), 1)));
    // Each worker fills a fixed stride of slots, so the result is independent
    // of scheduling.
    auto work = [&](unsigned id) {
        for (std::size_t i = id; i < keys.size(); i += threads) out[i] = census_entry(flow, keys[i]);
    };
    if (threads <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned id = 0; id < threads; ++id) pool.emplace_back(work, id);
        for (auto& th : pool) th.join();
    }
    return out;
}

std::vector<OrbitPair> homotopic_inverse_pairs(const SurfaceGroup& group,
                                               const std::vector<CensusEntry>& census) {
    std::vector<OrbitPair> pairs;
    for (const CensusEntry& e : census)
        for (std::size_t i = 0; i + 1 < e.orbits.size(); i += 2) {
            const CensusOrbit& a = e.orbits[i];
            const CensusOrbit& b = e.orbits[i + 1];
            OrbitPair pr{e.key, i, i + 1, false, false, false};
            pr.keys_inverse = a.class_key == conjugacy_key(b.class_key.inverse());
            pr.classes_inverse = (a.relation == OrbitClass::key && b.relation == OrbitClass::inverse) ||
                                 (a.relation == OrbitClass::inverse && b.relation == OrbitClass::key);
            pr.matrices_inverse =
                same_element(group.evaluate(a.translation), group.evaluate(b.translation).inverse());
            pairs.push_back(pr);
        }
    return pairs;
}

}  // namespace anosov
