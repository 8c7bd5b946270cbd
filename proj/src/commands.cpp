#include "anosov/commands.hpp"

#include "anosov/leaf_field.hpp"

#include <fmt/format.h>

#include <cmath>
#include <filesystem>
#include <ostream>
#include <utility>

namespace anosov {

namespace {

std::string out_path(const RunConfig& c, const std::string& name) {
    std::filesystem::create_directories(c.out_dir);
    return (std::filesystem::path(c.out_dir) / name).string();
}

void emit(const RunConfig& c, const std::string& name, const std::string& content, std::ostream& log) {
    std::string path = out_path(c, name);
    write_file(path, content);
    log << "wrote " << path << "\n";
}

// Fixed colour cycle so that renders are byte-stable.
const char* palette(int i) {
    static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
    return colours[i % 8];
}

}  // namespace

int cmd_verify(const RunConfig& config, std::ostream& log, CertificationReport* report) {
    CertificationReport r = certify(config.certify);
    emit(config, "report.txt", report_text(r), log);
    emit(config, "report_checks.csv", report_checks_csv(r), log);
    emit(config, "report_constants.csv", report_constants_csv(r), log);
    emit(config, "separation.csv", separation_csv(r), log);
    emit(config, "census_scaling.csv", census_scaling_csv(r), log);
    for (const PropertyResult& p : r.properties)
        log << fmt::format("{:<20} {}\n", p.id, p.pass() ? "PASS" : (p.insufficient ? "FAIL (insufficient samples)" : "FAIL"));
    const bool ok = r.all_pass();
    if (report) *report = std::move(r);
    return ok ? 0 : 1;
}

TraceResult run_trace(const RunConfig& config) {
    const TraceOptions& o = config.trace;
    const int k = config.certify.k;
    SurfaceGroup group = SurfaceGroup::preset(config.certify.group);
    CircleAction rho(group, k);
    PullbackMeasure m(rho);
    BundleFlow flow(m);

    TraceResult res;
    BundlePoint start;
    double t = o.t;
    if (!o.word.empty()) {
        Word w = Word::parse(o.word);
        auto fps = rho.fixed_points(w);
        if (fps.empty()) throw ConfigError("trace word " + o.word + " has no fixed points for this k");
        if (o.fixed_point < 0 || o.fixed_point >= static_cast<int>(fps.size()))
            throw ConfigError(fmt::format("trace fixed_point must be in 0..{}", fps.size() - 1));
        PeriodicOrbit orb = flow.periodic_orbit(w, fps[static_cast<std::size_t>(o.fixed_point)].p);
        start = orb.segment.samples.front();
        res.periodic = true;
        res.period = orb.period;
        if (o.one_period) t = orb.period;
    } else {
        if (!(o.x * o.x + o.y * o.y < 1.0)) throw ConfigError("trace start must lie inside the unit disk");
        if (!(o.s >= 0.0 && o.s < k)) throw ConfigError("trace fibre coordinate must lie in [0, k)");
        start = flow.make_point(HyperbolicPoint(o.x, o.y), CirclePoint(o.s, k));
    }

    OrbitSegment seg;
    const bool exact = o.field == "exact";
    if (exact) {
        flow.flow_phi(start, t, &seg);
    } else {
        SmoothedLeafField field(group, o.scale);
        FieldFlow psi(flow, field);
        psi.flow_psi(start, t, &seg);
    }
    for (std::size_t i = 0; i < seg.samples.size(); ++i) {
        const BundlePoint& pt = seg.samples[i];
        TraceRow row;
        row.t = seg.times[i];
        row.x = pt.x.u;
        row.y = pt.x.v;
        row.local_x = pt.local.u;
        row.local_y = pt.local.v;
        row.s = pt.p.s;
        row.k = k;
        row.domain_word = pt.domain_word.str();
        row.derivative = row.bound_slack = NAN;
        if (exact) {
            HolonomyRecord rec = flow.holonomy_record(start, pt, row.t);
            row.derivative = rec.derivative;
            row.bound_slack = rec.bound_check;
        }
        res.rows.push_back(row);
    }
    if (res.periodic && o.one_period && !seg.samples.empty())
        res.closure_gap = hyperbolic_distance(seg.samples.front().local, seg.samples.back().local);

    SvgCanvas svg;
    svg.boundary_circle();
    svg.domain(group.domain(), "#444444", 1.5);
    std::vector<cplx> upstairs;
    for (const BundlePoint& pt : seg.samples) upstairs.push_back(pt.x.z());
    svg.polyline(upstairs, "#bbbbbb", 1.0);
    // The orbit on the surface, drawn in D one tile visit at a time; a
    // periodic orbit closes up here.
    std::vector<cplx> piece;
    for (std::size_t i = 0; i < seg.samples.size(); ++i) {
        if (i > 0 && !(seg.samples[i].domain_word == seg.samples[i - 1].domain_word)) {
            svg.polyline(piece, "#1f77b4", 2.0);
            piece.clear();
        }
        piece.push_back(seg.samples[i].local.z());
    }
    svg.polyline(piece, "#1f77b4", 2.0);
    BoundaryPoint target = rho.f(start.p);
    svg.dot(target.z(), 7.0, "#d62728");
    svg.text(1.06 * target.z(), "f(p)");
    svg.dot(start.x.z(), 5.0, "#2ca02c");
    res.svg = svg.str();
    return res;
}

int cmd_trace(const RunConfig& config, std::ostream& log) {
    TraceResult r = run_trace(config);
    emit(config, "trace.csv", trace_csv(r.rows), log);
    emit(config, "trace.svg", r.svg, log);
    log << fmt::format("samples {}\n", r.rows.size());
    if (r.periodic) log << fmt::format("period {} closure_gap {}\n", format_real(r.period), format_real(r.closure_gap));
    return 0;
}

int cmd_census(const RunConfig& config, std::ostream& log) {
    SurfaceGroup group = SurfaceGroup::preset(config.certify.group);
    auto entries = orbit_census(group, config.certify.k, config.certify.census_word_len, config.certify.threads);
    emit(config, "census.csv", census_csv(entries), log);
    std::size_t orbits = 0;
    for (const CensusEntry& e : entries) orbits += e.count;
    log << fmt::format("classes {} orbits {}\n", entries.size(), orbits);
    return 0;
}

int cmd_measure_charts(const RunConfig& config, std::ostream& log) {
    const ChartOptions& o = config.charts;
    if (o.anchors < 1 || o.samples < 1) throw ConfigError("charts need at least one anchor and one sample");
    if (o.rn_word_len < 1 || o.rn_word_len > 3) throw ConfigError("charts rn_word_len must be in 1..3");
    const int k = config.certify.k;
    SurfaceGroup group = SurfaceGroup::preset(config.certify.group);
    CircleAction rho(group, k);
    PullbackMeasure m(rho);
    std::vector<CirclePoint> anchors;
    for (int i = 0; i < o.anchors * k; ++i) anchors.emplace_back(static_cast<double>(i) / o.anchors, k);
    ChartAtlas atlas(m, anchors);
    emit(config, "charts.csv", chart_csv(atlas, m, o.samples), log);
    emit(config, "rn.csv", rn_csv(m, o.rn_word_len, o.samples), log);
    return 0;
}

std::string render_leaves_svg(const RunConfig& config) {
    const RenderOptions& o = config.render;
    if (o.leaves < 1 || o.rays < 1) throw ConfigError("render needs at least one leaf and one ray");
    if (!(o.tile_radius >= 0.0 && o.tile_radius <= 4.0)) throw ConfigError("render tile_radius must be in [0, 4]");
    const int k = config.certify.k;
    SurfaceGroup group = SurfaceGroup::preset(config.certify.group);
    CircleAction rho(group, k);
    SvgCanvas svg;
    svg.boundary_circle();
    const auto side = group.domain().boundary_samples(16);
    for (const Tile& tile : group.tiles_within(o.tile_radius)) {
        std::vector<cplx> pts;
        for (const HyperbolicPoint& p : side) pts.push_back(apply_isometry(tile.g, p).z());
        svg.polyline(pts, tile.word.empty() ? "#444444" : "#dddddd", tile.word.empty() ? 1.5 : 0.8, true);
    }
    // Each leaf (disk x {p}) is foliated by the geodesics pointing toward f(p).
    for (int i = 0; i < o.leaves; ++i) {
        CirclePoint p((i + 0.5) * k / o.leaves, k);
        BoundaryPoint xi = rho.f(p);
        for (int j = 0; j < o.rays; ++j) {
            // feet spread along the diameter orthogonal to the direction of xi
            double u = -0.9 + 1.8 * (j + 0.5) / o.rays;
            cplx foot = u * xi.z() * cplx(0, 1);
            HyperbolicPoint far = flow_toward(HyperbolicPoint(foot), xi, 8.0);
            HyperbolicPoint back = flow_toward(HyperbolicPoint(foot), xi, -8.0);
            svg.geodesic_arc(back.z(), far.z(), palette(i), 0.7);
        }
        svg.dot(xi.z(), 6.0, palette(i));
        svg.text(1.05 * xi.z(), fmt::format("f({:.3f})", p.s));
    }
    return svg.str();
}

int cmd_render(const RunConfig& config, std::ostream& log) {
    emit(config, "render.svg", render_leaves_svg(config), log);
    return 0;
}

}  // namespace anosov
