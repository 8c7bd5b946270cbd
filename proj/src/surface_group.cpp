#include "anosov/surface_group.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>

namespace anosov {

namespace {

constexpr std::array<std::string_view, kLetters> kNames = {"a1", "b1", "a2", "b2",
                                                           "A1", "B1", "A2", "B2"};

// Map sending side j of the octagon onto side k (sides at angles s * pi/4).
Isometry side_pairing(int j, int k, double inradius) {
    double tj = j * std::numbers::pi / 4, tk = k * std::numbers::pi / 4;
    return Isometry::rotation(tk) * Isometry::translation(2 * inradius) *
           Isometry::rotation(std::numbers::pi - tj);
}

}  // namespace

std::string_view letter_name(int l) { return kNames.at(static_cast<std::size_t>(l)); }

Word::Word(const std::vector<int>& letters) {
    for (int l : letters) push_back(l);
}

Word Word::parse(std::string_view text) {
    Word w;
    std::size_t i = 0;
    while (i < text.size()) {
        char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == '.' || ch == '*') {
            ++i;
            continue;
        }
        if (ch == 'e' && (i + 1 == text.size() || !std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            ++i;
            continue;
        }
        if (i + 1 >= text.size()) throw std::invalid_argument("bad word: " + std::string(text));
        std::string_view tok = text.substr(i, 2);
        auto it = std::find(kNames.begin(), kNames.end(), tok);
        if (it == kNames.end()) throw std::invalid_argument("bad letter '" + std::string(tok) + "'");
        w.push_back(static_cast<int>(it - kNames.begin()));
        i += 2;
    }
    return w;
}

void Word::push_back(int l) {
    if (l < 0 || l >= kLetters) throw std::invalid_argument("letter out of range");
    if (!letters_.empty() && letters_.back() == inverse_letter(l))
        letters_.pop_back();
    else
        letters_.push_back(static_cast<std::int8_t>(l));
}

Word Word::inverse() const {
    Word w;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.push_back(inverse_letter(*it));
    return w;
}

Word Word::power(int n) const {
    Word base = n >= 0 ? *this : inverse();
    Word w;
    for (int i = 0; i < std::abs(n); ++i) w = w * base;
    return w;
}

Word Word::operator*(const Word& o) const {
    Word w = *this;
    for (auto l : o.letters_) w.push_back(l);
    return w;
}

std::string Word::str() const {
    if (letters_.empty()) return "e";
    std::string s;
    for (auto l : letters_) s += kNames[static_cast<std::size_t>(l)];
    return s;
}

Word cyclic_reduce(const Word& w) {
    const auto& L = w.letters();
    std::size_t lo = 0, hi = L.size();
    while (hi - lo >= 2 && L[lo] == inverse_letter(L[hi - 1])) {
        ++lo;
        --hi;
    }
    std::vector<int> mid(L.begin() + static_cast<long>(lo), L.begin() + static_cast<long>(hi));
    return Word(mid);
}

Word conjugacy_key(const Word& w) {
    Word c = cyclic_reduce(w);
    const auto& L = c.letters();
    std::size_t n = L.size();
    if (n == 0) return c;
    std::vector<std::int8_t> best = L, rot(n);
    for (std::size_t s = 1; s < n; ++s) {
        for (std::size_t i = 0; i < n; ++i) rot[i] = L[(s + i) % n];
        if (rot < best) best = rot;
    }
    return Word(std::vector<int>(best.begin(), best.end()));
}

std::pair<Word, int> primitive_root(const Word& w) {
    const auto& L = w.letters();
    std::size_t n = L.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p != 0) continue;
        bool ok = true;
        for (std::size_t i = p; i < n && ok; ++i) ok = L[i] == L[i - p];
        if (ok) return {Word(std::vector<int>(L.begin(), L.begin() + static_cast<long>(p))),
                        static_cast<int>(n / p)};
    }
    return {w, n == 0 ? 0 : 1};
}

double FundamentalDomain::violation(HyperbolicPoint x) const {
    double worst = -INFINITY;
    for (const auto& c : neighbour_centres) {
        cplx d = x.z() - c.z();
        worst = std::max(worst, x.norm2() - std::norm(d) / (1.0 - c.norm2()));
    }
    return worst;
}

bool FundamentalDomain::contains(HyperbolicPoint x, double slack) const {
    return x.norm2() < 1.0 && violation(x) <= slack;
}

std::vector<HyperbolicPoint> FundamentalDomain::boundary_samples(int samples_per_side) const {
    std::vector<HyperbolicPoint> pts;
    for (int s = 0; s < 8; ++s) {
        HyperbolicPoint v0 = vertices[s], v1 = vertices[(s + 1) % 8];
        Isometry to0 = Isometry::recentre(v0), back = to0.inverse();
        cplx w = apply_disk(to0, v1.z());
        for (int i = 0; i < samples_per_side; ++i) {
            double lam = static_cast<double>(i) / samples_per_side;
            pts.emplace_back(apply_disk(back, lam * w));
        }
    }
    return pts;
}

double FundamentalDomain::sampled_diameter(int samples_per_side) const {
    auto pts = boundary_samples(samples_per_side);
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, hyperbolic_distance(pts[i], pts[j]));
    return best;
}

SurfaceGroup SurfaceGroup::standard_genus2() {
    SurfaceGroup G;
    const double pi8 = std::numbers::pi / 8;
    double cot = 1.0 / std::tan(pi8);
    auto& D = G.domain_;
    D.circumradius = std::acosh(cot * cot);
    D.inradius = std::acosh(cot);
    D.diameter = 2.0 * D.circumradius;
    double re = std::tanh(D.circumradius / 2);
    for (int s = 0; s < 8; ++s) D.vertices[s] = HyperbolicPoint(std::polar(re, (2 * s + 1) * pi8));

    // a1: side 2 -> 0, b1: 1 -> 3, a2: 6 -> 4, b2: 5 -> 7. With this choice
    // a1 b1 A1 B1 a2 b2 A2 B2 is the identity.
    const std::array<std::pair<int, int>, 4> pairs = {{{2, 0}, {1, 3}, {6, 4}, {5, 7}}};
    for (int i = 0; i < 4; ++i) {
        auto [from, to] = pairs[i];
        G.gens_[i] = side_pairing(from, to, D.inradius);
        G.gens_[i + 4] = G.gens_[i].inverse();
        D.side_letter[to] = i;
        D.side_letter[from] = i + 4;
    }
    for (int s = 0; s < 8; ++s)
        D.neighbour_centres[s] = apply_isometry(G.gens_[D.side_letter[s]], kOrigin);
    G.relator_ = Word(std::vector<int>{0, 1, 4, 5, 2, 3, 6, 7});
    return G;
}

SurfaceGroup SurfaceGroup::preset(std::string_view name) {
    if (name == "genus2-octagon") return standard_genus2();
    throw std::invalid_argument("unknown group preset '" + std::string(name) + "'");
}

Isometry SurfaceGroup::evaluate(const Word& w) const {
    Isometry g;
    for (auto l : w.letters()) g = g * gens_[static_cast<std::size_t>(l)];
    return g;
}

SurfaceGroup::Reduced SurfaceGroup::reduce_to_domain(HyperbolicPoint x, int max_steps) const {
    Reduced r{x, Word{}};
    for (int step = 0;; ++step) {
        if (!(r.point.norm2() < 1.0 - 1e-15))
            throw DomainEscape("point too close to the circle at infinity");
        int best_side = -1;
        double best = 1e-14;
        for (int s = 0; s < 8; ++s) {
            const auto& c = domain_.neighbour_centres[s];
            double q = r.point.norm2() - std::norm(r.point.z() - c.z()) / (1.0 - c.norm2());
            bool better = q > best || (best_side >= 0 && q == best &&
                                       domain_.side_letter[s] < domain_.side_letter[best_side]);
            if (better) {
                best = q;
                best_side = s;
            }
        }
        if (best_side < 0) return r;
        if (step >= max_steps) throw DomainEscape("reduce_to_domain exceeded step budget");
        int l = domain_.side_letter[best_side];
        r.point = apply_isometry(gens_[inverse_letter(l)], r.point);
        r.word.push_back(l);
    }
}

std::vector<Tile> SurfaceGroup::tiles_within(double radius) const {
    // Tiles met by the segment from o to a centre within `radius` have centres
    // within radius + circumradius, so the search region below is connected.
    const double search = radius + domain_.circumradius + 1e-6;
    std::vector<Tile> all{{Word{}, Isometry{}, kOrigin, 0.0}};
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        for (int l = 0; l < kLetters; ++l) {
            Isometry g = all[i].g * gens_[l];
            HyperbolicPoint c = apply_isometry(g, kOrigin);
            double dist = hyperbolic_distance(kOrigin, c);
            if (dist > search) continue;
            bool seen = std::any_of(all.begin(), all.end(), [&](const Tile& t) {
                return std::abs(t.distance - dist) < 1e-6 && hyperbolic_distance(t.centre, c) < 1e-6;
            });
            if (seen) continue;
            Word w = all[i].word;
            w.push_back(l);
            all.push_back({w, g, c, dist});
            queue.push_back(all.size() - 1);
        }
    }
    std::vector<Tile> out;
    for (auto& t : all)
        if (t.distance <= radius) out.push_back(std::move(t));
    return out;
}

std::size_t free_word_count(int max_len) {
    std::size_t total = 1, level = 8;
    for (int L = 1; L <= max_len; ++L) {
        total += level;
        level *= 7;
    }
    return total;
}

void for_each_word(int max_len, const std::function<void(const Word&)>& visit, bool allow_large) {
    if (max_len < 0) throw std::invalid_argument("negative word length");
    if (max_len > 14) throw std::invalid_argument("word length cap is 14");
    if (max_len > 6 && !allow_large)
        throw std::invalid_argument("word lengths above 6 need explicit opt-in");
    visit(Word{});
    for (int L = 1; L <= max_len; ++L) {
        std::vector<int> cur(static_cast<std::size_t>(L), 0);
        // odometer over letters, skipping non-reduced sequences
        std::function<void(int)> rec = [&](int pos) {
            if (pos == L) {
                visit(Word(cur));
                return;
            }
            for (int l = 0; l < kLetters; ++l) {
                if (pos > 0 && l == inverse_letter(cur[static_cast<std::size_t>(pos - 1)])) continue;
                cur[static_cast<std::size_t>(pos)] = l;
                rec(pos + 1);
            }
        };
        rec(0);
    }
}

std::vector<Word> enumerate_words(int max_len, bool allow_large) {
    std::vector<Word> out;
    for_each_word(max_len, [&](const Word& w) { out.push_back(w); }, allow_large);
    return out;
}

}  // namespace anosov
