#pragma once
// Boundary action of the surface group unrolled to R, and its quotients on
// R/kZ. The circle coordinate s has period 1 upstairs of the base circle:
// f_k(s) = 2 pi (s mod 1).
//
// The lifted relator [a1,b1][a2,b2] is translation by +2 (Euler number of the
// boundary action), so only k = 1, 2 give actions of the surface group.
// For other k the lifts still define an action of the free group on the four
// generators, which is what word-level computations use.

#include "anosov/surface_group.hpp"

#include <vector>

namespace anosov {

struct CirclePoint {
    double s = 0.0;
    int k = 1;

    CirclePoint() = default;
    CirclePoint(double s_, int k_);
};

enum class FixedKind { attracting, repelling };

struct CircleFixedPoint {
    CirclePoint p;
    FixedKind kind;
};

struct MinimalityProbe {
    double max_gap = 0.0;  // radians of the base circle
    bool pass = false;
    std::size_t orbit_size = 0;
};

class CircleAction {
public:
    CircleAction(SurfaceGroup group, int k);

    int k() const { return k_; }
    const SurfaceGroup& group() const { return group_; }

    double lift_letter(int l, double s) const;
    // Words act right to left: lift(w1 w2, s) = lift(w1, lift(w2, s)).
    double lift(const Word& w, double s) const;
    CirclePoint act(const Word& w, CirclePoint p) const;

    BoundaryPoint f(double s) const { return BoundaryPoint(kTwoPi * s); }
    BoundaryPoint f(CirclePoint p) const { return f(p.s); }

    int rotation_displacement(const Word& w) const;
    // Fixed points of the k-cover action, sorted by s. Empty when the
    // displacement is not divisible by k.
    std::vector<CircleFixedPoint> fixed_points(const Word& w) const;

    int relator_translation() const;
    bool descends_to_surface_group() const { return relator_translation() % k_ == 0; }

    MinimalityProbe minimality_probe(CirclePoint p0, int word_len, double eps) const;

private:
    struct LetterLift {
        cplx alpha, ratio;  // ratio = beta / alpha
        double base = 0.0;  // arg(alpha)/pi - integer offset
    };
    SurfaceGroup group_;
    int k_;
    std::array<LetterLift, kLetters> lifts_{};
};

}  // namespace anosov
