#include "anosov/leaf_field.hpp"

#include "anosov/mollifier.hpp"
#include "anosov/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace anosov {

namespace {

double conformal_factor(HyperbolicPoint y) { return 2.0 / (1.0 - y.norm2()); }

}  // namespace

BoundaryPoint backward_endpoint(HyperbolicPoint y, BoundaryPoint target) {
    Isometry to = Isometry::recentre(y);
    cplx dir = apply_disk(to, target.z());
    return BoundaryPoint::from_complex(apply_disk(to.inverse(), -dir));
}

cplx ExactLeafField::velocity(HyperbolicPoint y, BoundaryPoint target) const {
    return unit_direction(y, target);
}

SmoothedLeafField::SmoothedLeafField(const SurfaceGroup& group, int scale) : scale_(scale) {
    if (scale < 0) throw std::invalid_argument("mollifier scale must be >= 0");
    const FundamentalDomain& D = group.domain();
    cutoff_ = D.circumradius + 0.3;
    cutoff_rho_ = std::tanh(cutoff_ / 2);
    // Points up to one unit outside D are served (RK4 stages before a reframe).
    reach_ = D.circumradius + 1.0 + cutoff_;
    // |g^{-1} x| < cutoff_rho_ for contributing tiles, so this many terms
    // bring the series tail below 1e-17.
    auto terms = static_cast<std::size_t>(std::ceil(std::log(1e-17) / std::log(cutoff_rho_)));
    m_.resize(terms);
    for (std::size_t n = 1; n <= terms; ++n)
        m_[n - 1] = scale == 0 ? 1.0 : Bump::standard().fourier(static_cast<double>(n) / scale);
    for (const Tile& t : group.tiles_within(reach_)) {
        Isometry inv = t.g.inverse();
        pieces_.push_back({inv.alpha(), inv.beta(), t.distance});
    }
}

std::string SmoothedLeafField::name() const {
    return scale_ == 0 ? "glued-exact" : "mollified-k" + std::to_string(scale_);
}

cplx SmoothedLeafField::chart_velocity(HyperbolicPoint y, BoundaryPoint target) const {
    const cplx z = y.z(), zeta = target.z();
    const double q = 1.0 - y.norm2();
    const cplx w = std::conj(z) * zeta;
    cplx s = 0.0;
    for (std::size_t n = m_.size(); n-- > 0;) s = s * w + m_[n];
    return 0.5 * q * (-z + q * zeta * s);
}

cplx SmoothedLeafField::velocity(HyperbolicPoint y, BoundaryPoint target) const {
    const double dy = 2.0 * std::atanh(std::sqrt(y.norm2()));
    if (dy + cutoff_ > reach_) throw std::domain_error("point too far from the fundamental domain");
    const cplx x = y.z(), theta = target.z();
    cplx sum = 0.0;
    double weight = 0.0;
    for (const Piece& pc : pieces_) {
        if (pc.centre_distance > dy + cutoff_) continue;
        // g^{-1} as z -> (alpha z + beta) / (conj(beta) z + conj(alpha))
        cplx den = std::conj(pc.beta) * x + std::conj(pc.alpha);
        cplx z = (pc.alpha * x + pc.beta) / den;
        double v = std::norm(z) / (cutoff_rho_ * cutoff_rho_);
        if (v >= 1.0) continue;
        double phi = std::exp(-1.0 / (1.0 - v));
        cplx zt = (pc.alpha * theta + pc.beta) / (std::conj(pc.beta) * theta + std::conj(pc.alpha));
        // push forward by g: g'(g^{-1} x) = 1 / (g^{-1})'(x) = den^2
        cplx vk = chart_velocity(HyperbolicPoint(z), BoundaryPoint::from_complex(zt));
        sum += phi * den * den * vk;
        weight += phi;
    }
    return sum / weight;
}

FieldDistance leafwise_c1_distance(const LeafField& a, const LeafField& b,
                                   const SurfaceGroup& group, std::uint64_t seed,
                                   std::size_t samples) {
    std::mt19937_64 rng(seed);
    const FundamentalDomain& D = group.domain();
    const double h = 1e-5;
    FieldDistance out;
    auto diff = [&](HyperbolicPoint y, BoundaryPoint th) {
        return conformal_factor(y) * (a.velocity(y, th) - b.velocity(y, th));
    };
    for (std::size_t i = 0; i < samples; ++i) {
        HyperbolicPoint y;
        do y = random_point(rng, D.circumradius);
        while (!D.contains(y));
        BoundaryPoint th(uniform(rng, 0.0, kTwoPi));
        out.c0 = std::max(out.c0, std::abs(diff(y, th)));
        for (cplx e : {cplx(1, 0), cplx(0, 1)}) {
            cplx d = (diff(HyperbolicPoint(y.z() + h * e), th) - diff(HyperbolicPoint(y.z() - h * e), th)) /
                     (2.0 * h);
            out.c1 = std::max(out.c1, std::abs(d) / conformal_factor(y));
        }
    }
    return out;
}

ScaleSelection select_mollifier_scale(const SurfaceGroup& group, std::uint64_t seed,
                                      std::size_t samples, double margin, double ratio,
                                      const std::vector<int>& candidates) {
    ScaleSelection sel;
    sel.margin = margin;
    sel.cap = ratio * margin;
    ExactLeafField exact;
    std::vector<int> sorted = candidates;
    std::sort(sorted.begin(), sorted.end());
    for (int k : sorted) {
        SmoothedLeafField field(group, k);
        FieldDistance d = leafwise_c1_distance(field, exact, group, seed, samples);
        d.scale = k;
        sel.tried.push_back(d);
        if (d.total() < sel.cap) {
            sel.found = true;
            sel.scale = k;
            break;
        }
    }
    return sel;
}

FieldFlow::FieldFlow(const BundleFlow& flow, const LeafField& field, IntegratorOptions opt)
    : flow_(&flow), field_(&field), opt_(opt) {
    if (!(opt_.step > 0.0)) throw std::invalid_argument("integrator step must be positive");
}

HyperbolicPoint FieldFlow::rk4(HyperbolicPoint y, BoundaryPoint target, double h) const {
    auto f = [&](cplx z) { return field_->velocity(HyperbolicPoint(z), target); };
    cplx z = y.z();
    cplx k1 = f(z);
    cplx k2 = f(z + 0.5 * h * k1);
    cplx k3 = f(z + 0.5 * h * k2);
    cplx k4 = f(z + h * k3);
    return HyperbolicPoint(z + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

BundlePoint FieldFlow::flow_psi(const BundlePoint& start, double t, OrbitSegment* segment,
                                double* worst_error) const {
    if (!(std::abs(t) <= BundleFlow::kMaxTime)) throw FlowBudgetExceeded("flow time beyond the budget guard");
    const SurfaceGroup& G = flow_->group();
    BundlePoint pt = start;
    if (segment) {
        segment->times.assign(1, 0.0);
        segment->samples.assign(1, pt);
        segment->crossings.clear();
    }
    if (worst_error) *worst_error = 0.0;
    const auto steps = static_cast<long>(std::ceil(std::abs(t) / opt_.step - 1e-9));
    const double h = steps ? t / steps : 0.0;
    for (long i = 1; i <= steps; ++i) {
        HyperbolicPoint next = rk4(pt.local, pt.target, h);
        if (opt_.check_error) {
            HyperbolicPoint half = rk4(rk4(pt.local, pt.target, h / 2), pt.target, h / 2);
            double err = conformal_factor(half) * std::abs(half.z() - next.z()) / 15.0;
            if (worst_error) *worst_error = std::max(*worst_error, err);
            if (!(err <= opt_.tolerance))
                throw StepSizeFailure("local error estimate " + std::to_string(err) + " above tolerance");
            next = half;
        }
        pt.local = next;
        const double now = h * i;
        if (!G.domain().contains(pt.local)) {
            auto red = G.reduce_to_domain(pt.local);
            if (!red.word.empty()) {
                Isometry step = G.evaluate(red.word);
                pt.domain_word = pt.domain_word * red.word;
                pt.domain = G.evaluate(pt.domain_word);
                pt.target = apply_boundary(step.inverse(), pt.target);
                if (segment) segment->crossings.push_back({now, pt.domain_word});
            }
            pt.local = red.point;
        }
        if (segment) {
            pt.x = apply_isometry(pt.domain, pt.local);
            segment->times.push_back(now);
            segment->samples.push_back(pt);
        }
    }
    pt.x = apply_isometry(pt.domain, pt.local);
    return pt;
}

QuasigeodesicReport quasigeodesic_bound(const FieldFlow& psi, std::uint64_t seed,
                                        std::size_t leaves, double t_max) {
    std::mt19937_64 rng(seed);
    const BundleFlow& flow = psi.bundle();
    const int k = flow.action().k();
    QuasigeodesicReport rep;
    rep.leaves = leaves;
    rep.t_max = t_max;
    for (std::size_t i = 0; i < leaves; ++i) {
        BundlePoint start = flow.make_point(random_point(rng, 2.0), CirclePoint(uniform(rng, 0.0, k), k));
        BoundaryPoint neg0 = backward_endpoint(start.local, start.target);
        OrbitSegment seg;
        psi.flow_psi(start, t_max, &seg);
        double r = 0.0;
        for (std::size_t j = 0; j < seg.samples.size(); ++j) {
            const BundlePoint& cur = seg.samples[j];
            Isometry rel = flow.group().evaluate(cur.domain_word.inverse() * start.domain_word);
            r = std::max(r, distance_to_geodesic(cur.local, {apply_boundary(rel, neg0), cur.target}));
            double t = seg.times[j];
            if (t >= 1.0) {
                double s = busemann(cur.target, apply_isometry(rel, start.local), cur.local);
                double c = s > 0.0 ? std::max(s / t, t / s) : INFINITY;
                rep.time_constant = std::max(rep.time_constant, c);
            }
        }
        rep.per_leaf.push_back(r);
        rep.R = std::max(rep.R, r);
        double& half = i < leaves / 2 ? rep.R_first : rep.R_second;
        half = std::max(half, r);
    }
    rep.spread = rep.R > 0.0 ? std::abs(rep.R_first - rep.R_second) / rep.R : 0.0;
    rep.uniform = leaves >= 2 && rep.spread <= 0.1;
    return rep;
}

}  // namespace anosov
