#pragma once
// Closed-orbit census over free homotopy classes for the k-fold fibre covers.
#include "anosov/flow.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace anosov {

class CensusBudgetExceeded : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class OrbitClass { key, inverse, unresolved };

struct CensusOrbit {
    CirclePoint p;
    FixedKind kind = FixedKind::attracting;
    double period = 0.0;
    Word class_key;       // conjugacy key of the crossing word over one period
    Word translation;     // deck transformation closing the orbit: key^{+-j}
    double closure_gap = 0.0;
    // The crossing word is freely conjugate to `translation`, and the
    // translation equals key^{+-j} in the group (matrix identity). Free keys
    // alone can disagree: the crossing word may differ by the relator.
    OrbitClass relation = OrbitClass::unresolved;
    bool free_key_match = false;  // class_key is literally the key of key^{+-j}
};

struct CensusEntry {
    Word key;                  // class representative: a conjugacy key
    int k = 1;
    int exponent = 1;          // least j <= k with fixed points of rho_k(key^j); 0 if none
    std::size_t count = 0;     // fixed points of rho_k(key^j) = closed orbits found
    std::size_t in_class = 0;  // of which freely homotopic to key^j
    std::size_t in_inverse_class = 0;  // and to key^{-j}
    std::size_t relator_rewritten = 0; // certified orbits whose free key differs
    // Fixed points on one rho_k(key)-cycle give the same closed orbit
    // downstairs, so this many are geometrically distinct.
    std::size_t distinct_orbits = 0;
    double translation_length = 0.0;   // of key
    double worst_period_error = 0.0;   // |period - j l| over the orbits
    double worst_closure_gap = 0.0;
    bool alternating = false;          // kinds alternate around the circle
    bool free_group_lift = false;      // k does not divide the relator translation
    std::vector<CensusOrbit> orbits;   // sorted by fibre coordinate
};

// One entry per conjugacy key of nonempty words up to max_word_len, in
// shortlex order of the keys. Budgets: max_word_len <= 6, 1 <= k <= 8.
// `threads` = 0 uses the hardware concurrency; results do not depend on it.
std::vector<CensusEntry> orbit_census(const SurfaceGroup& group, int k, int max_word_len,
                                      unsigned threads = 0);

struct OrbitPair {
    Word key;
    std::size_t first = 0, second = 0;  // indices into the entry's orbits
    bool keys_inverse = false;      // free-group keys of the crossing words are mutually inverse
    bool classes_inverse = false;   // certified classes are key^j and key^{-j} in some order
    bool matrices_inverse = false;  // the two translations multiply to the identity
};

// Consecutive fixed points (0,1), (2,3), ... of every entry.
std::vector<OrbitPair> homotopic_inverse_pairs(const SurfaceGroup& group,
                                               const std::vector<CensusEntry>& census);

}  // namespace anosov
