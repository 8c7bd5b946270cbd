#include "anosov/surface_group.hpp"

#include "doctest.h"
#include "support.hpp"

#include <set>

using namespace anosov;
using namespace testsupport;

namespace {
const SurfaceGroup& G() {
    static const SurfaceGroup g = SurfaceGroup::standard_genus2();
    return g;
}

// Interior angle of the octagon at vertex i, from the tangent directions of
// the two incident sides.
double interior_angle(const FundamentalDomain& D, int i) {
    HyperbolicPoint v = D.vertices[i];
    Isometry to_v = Isometry::recentre(v);
    cplx a = apply_disk(to_v, D.vertices[(i + 1) % 8].z());
    cplx b = apply_disk(to_v, D.vertices[(i + 7) % 8].z());
    return std::abs(angle_diff(std::arg(a), std::arg(b)));
}
}  // namespace

TEST_CASE("relator and generators") {
    CHECK(G().evaluate(G().relator()).is_identity(1e-8));
    CHECK(G().relator().str() == "a1b1A1B1a2b2A2B2");
    double len0 = classify_and_fixed_points(G().generator(0)).translation_length;
    for (int l = 0; l < kLetters; ++l) {
        auto c = classify_and_fixed_points(G().generator(l));
        CHECK(c.kind == IsometryClass::hyperbolic);
        CHECK(c.translation_length == doctest::Approx(len0).epsilon(1e-12));
    }
    // Pairing adjacent-but-one sides of the octagon: cosh(l/2) = 1 + 1/sqrt2.
    CHECK(std::cosh(len0 / 2) == doctest::Approx(1 + 1 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("octagon geometry: angles, radii, side pairing") {
    const auto& D = G().domain();
    double total = 0;
    for (int i = 0; i < 8; ++i) {
        double a = interior_angle(D, i);
        CHECK(a == doctest::Approx(std::numbers::pi / 4).epsilon(1e-12));
        total += a;
    }
    CHECK(total == doctest::Approx(kTwoPi).epsilon(1e-12));
    for (int i = 0; i < 8; ++i) {
        CHECK(hyperbolic_distance(kOrigin, D.vertices[i]) == doctest::Approx(D.circumradius).epsilon(1e-12));
        // neighbour tiles sit at twice the inradius
        CHECK(hyperbolic_distance(kOrigin, D.neighbour_centres[i]) ==
              doctest::Approx(2 * D.inradius).epsilon(1e-12));
    }
    // Every generator maps vertices to vertices.
    for (int l = 0; l < kLetters; ++l) {
        int hits = 0;
        for (int i = 0; i < 8; ++i) {
            auto img = apply_isometry(G().generator(l), D.vertices[i]);
            for (int j = 0; j < 8; ++j) hits += hyperbolic_distance(img, D.vertices[j]) < 1e-9;
        }
        CHECK(hits == 2);  // the two endpoints of the paired side
    }
    CHECK(D.contains(kOrigin));
    CHECK(D.diameter == doctest::Approx(2 * D.circumradius));
}

TEST_CASE("diameter is stable under boundary refinement") {
    const auto& D = G().domain();
    double d1 = D.sampled_diameter(32), d2 = D.sampled_diameter(64);
    CHECK(std::abs(d1 - d2) < 1e-6);
    CHECK(std::abs(d2 - D.diameter) < 1e-6);
}

TEST_CASE("side letters: g(D) lies across the recorded side") {
    const auto& D = G().domain();
    for (int s = 0; s < 8; ++s) {
        double th = s * std::numbers::pi / 4;
        auto c = D.neighbour_centres[s];
        CHECK(std::abs(angle_diff(std::arg(c.z()), th)) < 1e-12);
    }
    std::set<int> letters(D.side_letter.begin(), D.side_letter.end());
    CHECK(letters.size() == 8);
}

TEST_CASE("evaluate is a homomorphism") {
    CHECK(G().evaluate(Word{}).is_identity(0));
    auto norm = [](const Isometry& g) {
        return std::max({std::abs(g.a()), std::abs(g.b()), std::abs(g.c()), std::abs(g.d())});
    };
    auto words = enumerate_words(5);
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    for (int i = 0; i < 500; ++i) {
        Word a = words[pick(rng)] * words[pick(rng)], b = words[pick(rng)] * words[pick(rng)];
        Isometry A = G().evaluate(a), B = G().evaluate(b);
        // rounding scales with the factor norms, not with the product
        CHECK(G().evaluate(a * b).distance_to(A * B) < 1e-10 * norm(A) * norm(B));
        CHECK(G().evaluate(a * a.inverse()).is_identity(1e-10));
        CHECK((a * a.inverse()).empty());
    }
}

TEST_CASE("enumerate_words counts and guards") {
    CHECK(enumerate_words(0).size() == 1);
    CHECK(enumerate_words(1).size() == 9);
    CHECK(enumerate_words(2).size() == 1 + 8 + 56);
    for (int L = 0; L <= 5; ++L) {
        auto ws = enumerate_words(L);
        CHECK(ws.size() == free_word_count(L));
        std::set<Word> uniq(ws.begin(), ws.end());
        CHECK(uniq.size() == ws.size());
    }
    CHECK_THROWS(enumerate_words(7));
    CHECK_THROWS(enumerate_words(15, true));
}

TEST_CASE("reduce_to_domain") {
    auto r = G().reduce_to_domain({0.1, -0.2});
    CHECK(r.word.empty());
    CHECK(r.point.u == 0.1);
    for (int l = 0; l < kLetters; ++l) {
        auto t = G().reduce_to_domain(apply_isometry(G().generator(l), kOrigin));
        CHECK(t.word == Word::letter(l));
        CHECK(std::abs(t.point.z()) < 1e-12);
    }
    std::mt19937_64 rng(22);
    for (int i = 0; i < 2000; ++i) {
        auto x = random_point(rng, 6.0);
        auto red = G().reduce_to_domain(x);
        CHECK(G().domain().contains(red.point, 1e-8));
        auto back = apply_isometry(G().evaluate(red.word), red.point);
        CHECK(std::abs(back.z() - x.z()) < 1e-8);
    }
}

TEST_CASE("conjugacy keys") {
    Word ab = Word::parse("a1 b1"), ba = Word::parse("b1a1");
    CHECK(conjugacy_key(ab) == conjugacy_key(ba));
    Word g = Word::parse("B2 a2");
    CHECK(conjugacy_key(g * ab * g.inverse()) == conjugacy_key(ab));
    CHECK(conjugacy_key(ab) != conjugacy_key(ab.inverse()));
    CHECK(conjugacy_key(Word::parse("a1 a1 b1 A1")) == Word::parse("a1b1"));
    CHECK(primitive_root(Word::parse("a1b1a1b1")).second == 2);
    CHECK(primitive_root(Word::parse("a1b1a1")).second == 1);
    CHECK(Word::parse("a1 B2 e").str() == "a1B2");
    CHECK_THROWS(Word::parse("a3"));
}

TEST_CASE("short cyclically reduced words are hyperbolic") {
    int checked = 0;
    for_each_word(6, [&](const Word& w) {
        if (w.empty() || cyclic_reduce(w) != w) return;
        auto c = classify_and_fixed_points(G().evaluate(w));
        CHECK(c.kind == IsometryClass::hyperbolic);
        ++checked;
    });
    CHECK(checked > 100000);
}

TEST_CASE("tiles within a radius") {
    auto tiles = G().tiles_within(2 * G().domain().inradius + 1e-6);
    CHECK(tiles.size() == 9);  // D and its eight side neighbours
    auto more = G().tiles_within(5.0);
    for (std::size_t i = 0; i < more.size(); ++i)
        for (std::size_t j = i + 1; j < more.size(); ++j)
            CHECK(hyperbolic_distance(more[i].centre, more[j].centre) > 1.0);
}
