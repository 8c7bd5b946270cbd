#include "anosov/circle_action.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anosov {

CirclePoint::CirclePoint(double s_, int k_) : k(k_) {
    if (k_ < 1) throw std::invalid_argument("cover index must be positive");
    s = std::fmod(s_, static_cast<double>(k_));
    if (s < 0.0) s += k_;
    if (s >= k_) s = 0.0;
}

CircleAction::CircleAction(SurfaceGroup group, int k) : group_(std::move(group)), k_(k) {
    if (k < 1) throw std::invalid_argument("cover index must be positive");
    for (int l = 0; l < kLetters; ++l) {
        const Isometry& g = group_.generator(l);
        LetterLift& L = lifts_[l];
        L.alpha = g.alpha();
        L.ratio = g.beta() / g.alpha();
        L.base = std::arg(L.alpha) / std::numbers::pi;
        // The lift is pinned by fixing the lifts of the fixed points of g.
        double s_fix = classify_and_fixed_points(g).fixed.at(0).theta() / kTwoPi;
        double raw = lift_letter(l, s_fix) - s_fix;
        L.base -= std::round(raw);
    }
}

double CircleAction::lift_letter(int l, double s) const {
    // g(e^{i th}) = e^{i th} u / conj(u) with u = alpha (1 + ratio e^{-i th})
    const LetterLift& L = lifts_[static_cast<std::size_t>(l)];
    cplx u = 1.0 + L.ratio * std::polar(1.0, -kTwoPi * s);
    return s + L.base + std::arg(u) / std::numbers::pi;
}

double CircleAction::lift(const Word& w, double s) const {
    const auto& L = w.letters();
    for (auto it = L.rbegin(); it != L.rend(); ++it) s = lift_letter(*it, s);
    return s;
}

CirclePoint CircleAction::act(const Word& w, CirclePoint p) const {
    if (p.k != k_) throw std::invalid_argument("circle point from another cover");
    return CirclePoint(lift(w, p.s), k_);
}

int CircleAction::rotation_displacement(const Word& w) const {
    if (w.empty()) return 0;
    Isometry g = group_.evaluate(w);
    auto cls = classify_and_fixed_points(g);
    if (cls.kind == IsometryClass::identity) return static_cast<int>(std::lround(lift(w, 0.0)));
    if (cls.kind == IsometryClass::elliptic)
        throw std::invalid_argument("elliptic element in a surface group word");
    double s = cls.fixed.at(0).theta() / kTwoPi;
    return static_cast<int>(std::lround(lift(w, s) - s));
}

std::vector<CircleFixedPoint> CircleAction::fixed_points(const Word& w) const {
    if (w.empty()) throw std::invalid_argument("fixed_points needs a nonempty word");
    int n = rotation_displacement(w);
    std::vector<CircleFixedPoint> out;
    if (n % k_ != 0) return out;
    auto G = [&](double s) { return lift(w, s) - s - n; };
    const int per_unit = 2048;
    const int cells = per_unit * k_;
    const double h = 1.0 / per_unit;
    // The grid is shifted off the symmetric angles where fixed points of this
    // group like to sit; zero counts as positive.
    const double shift = 0.3819660112501051 * h;
    double s0 = shift, g0 = G(s0);
    for (int i = 1; i <= cells; ++i) {
        double s1 = shift + i * h, g1 = G(s1);
        if ((g0 >= 0.0) != (g1 >= 0.0)) {
            double lo = s0, hi = s1;
            bool lo_pos = g0 >= 0.0;
            for (int it = 0; it < 64; ++it) {
                double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                if ((G(mid) >= 0.0) == lo_pos)
                    lo = mid;
                else
                    hi = mid;
            }
            out.push_back({CirclePoint(0.5 * (lo + hi), k_),
                           lo_pos ? FixedKind::attracting : FixedKind::repelling});
        }
        s0 = s1;
        g0 = g1;
    }
    std::sort(out.begin(), out.end(),
              [](const CircleFixedPoint& a, const CircleFixedPoint& b) { return a.p.s < b.p.s; });
    return out;
}

int CircleAction::relator_translation() const {
    return static_cast<int>(std::lround(lift(group_.relator(), 0.0)));
}

MinimalityProbe CircleAction::minimality_probe(CirclePoint p0, int word_len, double eps) const {
    if (word_len > 8) throw std::invalid_argument("minimality probe word length cap is 8");
    std::vector<double> orbit;
    for_each_word(word_len, [&](const Word& w) { orbit.push_back(act(w, p0).s); }, true);
    std::sort(orbit.begin(), orbit.end());
    MinimalityProbe r;
    r.orbit_size = orbit.size();
    double gap = orbit.front() + k_ - orbit.back();
    for (std::size_t i = 1; i < orbit.size(); ++i) gap = std::max(gap, orbit[i] - orbit[i - 1]);
    r.max_gap = kTwoPi * gap;
    r.pass = r.max_gap < eps;
    return r;
}

}  // namespace anosov
