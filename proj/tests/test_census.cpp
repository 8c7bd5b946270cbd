#include "anosov/census.hpp"

#include "doctest.h"
#include "support.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

using namespace anosov;
using namespace testsupport;

namespace {
const SurfaceGroup& G() {
    static const SurfaceGroup g = SurfaceGroup::standard_genus2();
    return g;
}

const std::vector<CensusEntry>& census(int k) {
    static std::map<int, std::vector<CensusEntry>> cache;
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, orbit_census(G(), k, 3, 1)).first;
    return it->second;
}

// Conjugacy classes of nonempty words by brute force: all letter sequences
// that are cyclically reduced, identified up to rotation.
std::size_t class_count(int max_len) {
    std::set<std::vector<int>> classes;
    std::vector<int> w;
    auto cyclic_ok = [](const std::vector<int>& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[(i + 1) % v.size()] == inverse_letter(v[i]) && v.size() > 1) return false;
        return true;
    };
    std::function<void()> grow = [&] {
        if (!w.empty() && cyclic_ok(w)) {
            std::vector<int> best = w, r = w;
            for (std::size_t i = 1; i < w.size(); ++i) {
                std::rotate(r.begin(), r.begin() + 1, r.end());
                best = std::min(best, r);
            }
            classes.insert(best);
        }
        if (static_cast<int>(w.size()) == max_len) return;
        for (int l = 0; l < kLetters; ++l) {
            w.push_back(l);
            grow();
            w.pop_back();
        }
    };
    grow();
    return classes.size();
}

// Fixed points of s -> lift(w, s) mod k by sign changes around the circle.
// The grid is offset so that symmetric fixed points do not sit on nodes.
std::size_t fixed_point_oracle(const CircleAction& rho, const Word& w) {
    const int k = rho.k();
    const int n = 20000;
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) {
        double s = k * (i + 0.5 * (std::sqrt(5.0) - 1.0)) / n;
        double g = rho.lift(w, s) - s;
        r[i] = g - k * std::floor(g / k + 0.5);  // signed distance to kZ
    }
    std::size_t changes = 0;
    for (int i = 0; i < n; ++i) {
        double a = r[i], b = r[(i + 1) % n];
        if ((a > 0) != (b > 0) && std::abs(a - b) < 0.5 * k) ++changes;
    }
    return changes;
}

double trace_length(const Word& w) {
    Isometry g = G().evaluate(w);
    return 2.0 * std::acosh(std::abs(g.a() + g.d()) / 2.0);
}
}  // namespace

TEST_CASE("census has one entry per conjugacy class, in shortlex order") {
    const auto& c = census(1);
    CHECK(c.size() == class_count(3));
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        CHECK(c[i].key.size() <= c[i + 1].key.size());
        if (c[i].key.size() == c[i + 1].key.size()) CHECK(c[i].key < c[i + 1].key);
    }
    for (const CensusEntry& e : c) CHECK(conjugacy_key(e.key) == e.key);
}

TEST_CASE("closed orbits per class number 2k in every cover") {
    for (int k : {1, 2, 3}) {
        CircleAction rho(G(), k);
        for (const CensusEntry& e : census(k)) {
            REQUIRE(e.exponent >= 1);
            CHECK(e.count == static_cast<std::size_t>(2 * k));
            CHECK(e.distinct_orbits * e.exponent == e.count);
            CHECK(rho.rotation_displacement(e.key.power(e.exponent)) % k == 0);
            for (int j = 1; j < e.exponent; ++j) CHECK(rho.rotation_displacement(e.key.power(j)) % k != 0);
            if (e.key.size() <= 2) CHECK(fixed_point_oracle(rho, e.key.power(e.exponent)) == e.count);
        }
    }
}

TEST_CASE("doubling the cover doubles the orbit count") {
    const auto& one = census(1);
    const auto& two = census(2);
    REQUIRE(one.size() == two.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].key == two[i].key);
        CHECK(two[i].count == 2 * one[i].count);
    }
}

TEST_CASE("orbits close with period j times the translation length") {
    for (int k : {1, 2, 3}) {
        for (const CensusEntry& e : census(k)) {
            double ell = trace_length(e.key);
            CHECK(e.translation_length == doctest::Approx(ell).epsilon(1e-9));
            for (const CensusOrbit& o : e.orbits) CHECK(rel_err(o.period, e.exponent * ell) < 1e-7);
            CHECK(e.worst_closure_gap < 1e-8);
        }
    }
}

TEST_CASE("attracting and repelling orbits alternate and lie in inverse classes") {
    for (int k : {1, 2, 3}) {
        for (const CensusEntry& e : census(k)) {
            CHECK(e.alternating);
            CHECK(e.in_class == e.count / 2);
            CHECK(e.in_inverse_class == e.count / 2);
            for (const CensusOrbit& o : e.orbits) {
                CHECK(o.relation != OrbitClass::unresolved);
                CHECK((o.relation == e.orbits[0].relation) == (o.kind == e.orbits[0].kind));
            }
        }
        auto pairs = homotopic_inverse_pairs(G(), census(k));
        std::size_t orbits = 0;
        for (const CensusEntry& e : census(k)) orbits += e.count;
        CHECK(pairs.size() * 2 == orbits);
        for (const OrbitPair& p : pairs) {
            CHECK(p.classes_inverse);
            CHECK(p.matrices_inverse);
        }
    }
}

TEST_CASE("free-group keys can differ from the class by the relator") {
    // a1 b1 A1 B1 equals (a2 b2 A2 B2)^{-1} in the group, so the crossing
    // word of an orbit may be either form.
    Word w = Word::parse("a1 b1 A1 B1");
    Word v = Word::parse("a2 b2 A2 B2").inverse();
    CHECK(conjugacy_key(w) != conjugacy_key(v));
    CHECK(G().evaluate(w).distance_to(G().evaluate(v)) < 1e-9);
    auto c = orbit_census(G(), 1, 4, 1);
    auto it = std::find_if(c.begin(), c.end(), [&](const CensusEntry& e) { return e.key == conjugacy_key(w); });
    REQUIRE(it != c.end());
    CHECK(it->in_class + it->in_inverse_class == it->count);
    std::size_t rewritten = 0;
    for (const CensusEntry& e : c) rewritten += e.relator_rewritten;
    CHECK(rewritten > 0);
}

TEST_CASE("thread count does not change the census") {
    auto a = orbit_census(G(), 2, 2, 1);
    auto b = orbit_census(G(), 2, 2, 3);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].key == b[i].key);
        REQUIRE(a[i].orbits.size() == b[i].orbits.size());
        for (std::size_t j = 0; j < a[i].orbits.size(); ++j) {
            CHECK(a[i].orbits[j].p.s == b[i].orbits[j].p.s);
            CHECK(a[i].orbits[j].period == b[i].orbits[j].period);
            CHECK(a[i].orbits[j].class_key == b[i].orbits[j].class_key);
        }
    }
}

TEST_CASE("lifts beyond the surface group are flagged") {
    CHECK_FALSE(census(1).front().free_group_lift);
    CHECK_FALSE(census(2).front().free_group_lift);
    CHECK(census(3).front().free_group_lift);
}

TEST_CASE("census budgets") {
    CHECK(orbit_census(G(), 1, 0, 1).empty());
    CHECK_THROWS_AS(orbit_census(G(), 1, 7, 1), CensusBudgetExceeded);
    CHECK_THROWS_AS(orbit_census(G(), 0, 2, 1), CensusBudgetExceeded);
    CHECK_THROWS_AS(orbit_census(G(), 9, 2, 1), CensusBudgetExceeded);
}
