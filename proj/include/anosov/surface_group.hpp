#pragma once
// Genus-2 surface group realised as the side pairings of the regular
// octagon with interior angles pi/4, centred at the disk origin.

#include "anosov/geometry.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace anosov {

// Letters 0..7 are a1 b1 a2 b2 A1 B1 A2 B2; capitals are inverses.
inline constexpr int kLetters = 8;
inline int inverse_letter(int l) { return (l + 4) % kLetters; }
std::string_view letter_name(int l);

class Word {
public:
    Word() = default;
    explicit Word(const std::vector<int>& letters);  // freely reduces
    static Word letter(int l) { return Word(std::vector<int>{l}); }
    // Accepts "a1 B2 b1", "a1B2b1" or "" / "e" for the identity.
    static Word parse(std::string_view text);

    void push_back(int l);  // appends with free cancellation
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    int operator[](std::size_t i) const { return letters_[i]; }
    const std::vector<std::int8_t>& letters() const { return letters_; }

    Word inverse() const;
    Word power(int n) const;
    Word operator*(const Word& o) const;

    std::string str() const;  // "e" for the identity

    auto operator<=>(const Word&) const = default;
    bool operator==(const Word&) const = default;

private:
    std::vector<std::int8_t> letters_;
};

Word cyclic_reduce(const Word& w);
// Lexicographically least rotation of the cyclic reduction.
Word conjugacy_key(const Word& w);
// Largest n with w = v^n literally (as a word); returns v.
std::pair<Word, int> primitive_root(const Word& w);

struct FundamentalDomain {
    std::array<HyperbolicPoint, 8> vertices{};
    // Centre of the neighbouring tile across side s and the letter producing it.
    std::array<HyperbolicPoint, 8> neighbour_centres{};
    std::array<int, 8> side_letter{};
    double circumradius = 0.0;
    double inradius = 0.0;
    double diameter = 0.0;

    // Dirichlet test: no neighbour centre is closer than the origin.
    // Positive slack tolerates points slightly outside.
    bool contains(HyperbolicPoint x, double slack = 1e-12) const;
    // Largest amount by which some Dirichlet inequality is violated.
    double violation(HyperbolicPoint x) const;
    // Diameter estimate from samples along the boundary (closure of D).
    double sampled_diameter(int samples_per_side) const;
    std::vector<HyperbolicPoint> boundary_samples(int samples_per_side) const;
};

struct Tile {
    Word word;
    Isometry g;
    HyperbolicPoint centre;
    double distance = 0.0;  // from the origin
};

class DomainEscape : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SurfaceGroup {
public:
    static SurfaceGroup standard_genus2();
    static SurfaceGroup preset(std::string_view name);  // "genus2-octagon"

    const Isometry& generator(int l) const { return gens_[l]; }
    const Word& relator() const { return relator_; }
    const FundamentalDomain& domain() const { return domain_; }

    Isometry evaluate(const Word& w) const;

    struct Reduced {
        HyperbolicPoint point;  // in the closed octagon
        Word word;              // x = evaluate(word) * point
    };
    Reduced reduce_to_domain(HyperbolicPoint x, int max_steps = 10000) const;

    // All translates g D with d(o, g o) <= radius, shortest words first.
    std::vector<Tile> tiles_within(double radius) const;

private:
    std::array<Isometry, kLetters> gens_{};
    Word relator_;
    FundamentalDomain domain_;
};

// Freely reduced words of length <= max_len in shortlex order.
// Lengths above 6 need allow_large; above 14 always throw.
std::vector<Word> enumerate_words(int max_len, bool allow_large = false);
void for_each_word(int max_len, const std::function<void(const Word&)>& visit,
                   bool allow_large = false);
std::size_t free_word_count(int max_len);

}  // namespace anosov
