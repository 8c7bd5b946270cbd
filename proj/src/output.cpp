#include "anosov/output.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace anosov {

namespace {

constexpr double kViewport = 1000.0;
constexpr double kDiskRadius = 420.0;

const char* yes_no(bool b) { return b ? "true" : "false"; }

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double read_real(const std::string& s, int line) {
    if (s.empty()) return NAN;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) throw std::runtime_error(fmt::format("trace line {}: bad number '{}'", line, s));
    return v;
}

}  // namespace

std::string format_real(double v) {
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{}", v);
}

std::string report_text(const CertificationReport& r) {
    const CertifyConfig& c = r.config;
    std::string o;
    o += "anosov certification report\n";
    o += fmt::format("seed {}\ngroup {}\nk {}\n", c.seed ? std::to_string(*c.seed) : "none", c.group, c.k);
    o += fmt::format("overall {}\n", r.all_pass() ? "PASS" : "FAIL");
    for (const PropertyResult& p : r.properties) {
        o += fmt::format("\n[{}] {}\n", p.id, p.title);
        o += fmt::format("  status {}\n", p.pass() ? "PASS" : "FAIL");
        o += fmt::format("  samples {}\n", p.samples);
        if (p.insufficient) o += "  insufficient samples\n";
        if (!p.error.empty()) o += fmt::format("  error {}\n", p.error);
        for (const Inequality& q : p.checks)
            o += fmt::format("  check {} measured {} {} {} slack {} {}\n", q.name, format_real(q.measured),
                             q.upper ? "<=" : ">=", format_real(q.bound), format_real(q.slack()),
                             q.holds() ? "ok" : "VIOLATED");
        for (const Constant& k : p.constants) o += fmt::format("  constant {} {}\n", k.name, format_real(k.value));
        for (const std::string& n : p.notes) o += fmt::format("  note {}\n", n);
    }
    if (!r.separation.empty()) {
        o += "\n[t(kappa)] uniform separation time by initial fibre gap\n";
        for (const SeparationTableRow& s : r.separation)
            o += fmt::format("  gap {} pairs {} unseparated {} t_max {} t_mean {}\n", format_real(s.gap), s.pairs,
                             s.unseparated, format_real(s.t_max), format_real(s.t_mean));
    }
    if (!r.census.empty()) {
        o += "\n[census scaling] closed orbits per class against the k = 1 count\n";
        for (const CensusScalingRow& s : r.census)
            o += fmt::format("  k {} classes {} orbits {} factor {} mismatches {} min_count {}{}\n", s.k, s.classes,
                             s.orbits, format_real(s.factor), s.scaling_mismatches, s.min_count,
                             s.free_group_lift ? " (free-group lift only)" : "");
    }
    return o;
}

std::string report_checks_csv(const CertificationReport& r) {
    std::string o = "property,check,measured,bound,relation,slack,holds\n";
    for (const PropertyResult& p : r.properties)
        for (const Inequality& q : p.checks)
            o += fmt::format("{},{},{},{},{},{},{}\n", p.id, q.name, format_real(q.measured), format_real(q.bound),
                             q.upper ? "le" : "ge", format_real(q.slack()), yes_no(q.holds()));
    return o;
}

std::string report_constants_csv(const CertificationReport& r) {
    std::string o = "property,name,value\n";
    for (const PropertyResult& p : r.properties) {
        o += fmt::format("{},samples,{}\n", p.id, p.samples);
        o += fmt::format("{},insufficient_samples,{}\n", p.id, p.insufficient ? 1 : 0);
        for (const Constant& k : p.constants) o += fmt::format("{},{},{}\n", p.id, k.name, format_real(k.value));
    }
    return o;
}

std::string separation_csv(const CertificationReport& r) {
    std::string o = "gap,pairs,unseparated,t_max,t_mean\n";
    for (const SeparationTableRow& s : r.separation)
        o += fmt::format("{},{},{},{},{}\n", format_real(s.gap), s.pairs, s.unseparated, format_real(s.t_max),
                         format_real(s.t_mean));
    return o;
}

std::string census_scaling_csv(const CertificationReport& r) {
    std::string o = "k,free_group_lift,classes,orbits,factor,scaling_mismatches,min_count,relator_rewritten\n";
    for (const CensusScalingRow& s : r.census)
        o += fmt::format("{},{},{},{},{},{},{},{}\n", s.k, yes_no(s.free_group_lift), s.classes, s.orbits,
                         format_real(s.factor), s.scaling_mismatches, s.min_count, s.relator_rewritten);
    return o;
}

std::string trace_csv(const std::vector<TraceRow>& rows) {
    std::string o = "t,x,y,local_x,local_y,s,k,domain_word,derivative,bound_slack\n";
    for (const TraceRow& r : rows)
        o += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", format_real(r.t), format_real(r.x), format_real(r.y),
                         format_real(r.local_x), format_real(r.local_y), format_real(r.s), r.k, r.domain_word,
                         format_real(r.derivative), format_real(r.bound_slack));
    return o;
}

std::vector<TraceRow> read_trace_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int n = 0;
    if (!std::getline(in, line) || split_csv_line(line).size() != 10 || split_csv_line(line)[0] != "t")
        throw std::runtime_error("trace line 1: missing trace header");
    ++n;
    std::vector<TraceRow> rows;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 10) throw std::runtime_error(fmt::format("trace line {}: expected 10 fields", n));
        TraceRow r;
        r.t = read_real(f[0], n);
        r.x = read_real(f[1], n);
        r.y = read_real(f[2], n);
        r.local_x = read_real(f[3], n);
        r.local_y = read_real(f[4], n);
        r.s = read_real(f[5], n);
        r.k = static_cast<int>(read_real(f[6], n));
        r.domain_word = f[7];
        r.derivative = read_real(f[8], n);
        r.bound_slack = read_real(f[9], n);
        rows.push_back(r);
    }
    return rows;
}

std::string census_csv(const std::vector<CensusEntry>& entries) {
    std::string o =
        "key,k,exponent,count,in_class,in_inverse_class,distinct_orbits,translation_length,worst_period_error,"
        "alternating,free_group_lift,relator_rewritten\n";
    for (const CensusEntry& e : entries)
        o += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", e.key.str(), e.k, e.exponent, e.count, e.in_class,
                         e.in_inverse_class, e.distinct_orbits, format_real(e.translation_length),
                         format_real(e.worst_period_error), yes_no(e.alternating), yes_no(e.free_group_lift),
                         e.relator_rewritten);
    return o;
}

std::string chart_csv(const ChartAtlas& atlas, const PullbackMeasure& m, int samples_per_unit) {
    std::string o = "anchor,s,chart_coordinate\n";
    const int k = m.k();
    for (const CirclePoint& a : atlas.anchors())
        for (int i = 0; i < samples_per_unit * k; ++i) {
            CirclePoint s(static_cast<double>(i) / samples_per_unit, k);
            if (!atlas.in_domain(a, s)) continue;
            o += fmt::format("{},{},{}\n", format_real(a.s), format_real(s.s),
                             format_real(atlas.chart_coordinate(a, s)));
        }
    return o;
}

std::string rn_csv(const PullbackMeasure& m, int word_len, int samples_per_unit) {
    std::string o = "word,s,rn_derivative,pushforward_density\n";
    const int k = m.k();
    for (const Word& w : enumerate_words(word_len)) {
        if (w.empty()) continue;
        for (int i = 0; i < samples_per_unit * k; ++i) {
            CirclePoint p(static_cast<double>(i) / samples_per_unit, k);
            o += fmt::format("{},{},{},{}\n", w.str(), format_real(p.s), format_real(m.rn_derivative(w, p)),
                             format_real(m.pushforward_density(w, p)));
        }
    }
    return o;
}

SvgCanvas::SvgCanvas() = default;

cplx SvgCanvas::to_view(cplx z) {
    return {kViewport / 2 + kDiskRadius * z.real(), kViewport / 2 - kDiskRadius * z.imag()};
}

void SvgCanvas::boundary_circle() {
    items_.push_back(fmt::format(R"(<circle cx="{}" cy="{}" r="{}" fill="none" stroke="black" stroke-width="1.5"/>)",
                                 kViewport / 2, kViewport / 2, kDiskRadius));
}

void SvgCanvas::polyline(const std::vector<cplx>& pts, const std::string& stroke, double width, bool closed) {
    if (pts.empty()) return;
    std::string p;
    for (const cplx& z : pts) {
        cplx v = to_view(z);
        p += fmt::format("{:.3f},{:.3f} ", v.real(), v.imag());
    }
    p.pop_back();
    items_.push_back(fmt::format(R"(<{} points="{}" fill="none" stroke="{}" stroke-width="{}"/>)",
                                 closed ? "polygon" : "polyline", p, stroke, width));
}

void SvgCanvas::geodesic_arc(cplx a, cplx b, const std::string& stroke, double width) {
    Isometry to = Isometry::recentre(HyperbolicPoint(a));
    Isometry from = to.inverse();
    cplx tip = apply_disk(to, b);
    std::vector<cplx> pts;
    const int n = 48;
    for (int i = 0; i <= n; ++i) {
        // equal hyperbolic steps along the ray from 0 to tip
        double r = std::tanh(i * std::atanh(std::min(std::abs(tip), 1.0 - 1e-12)) / n);
        pts.push_back(apply_disk(from, std::polar(r, std::arg(tip))));
    }
    polyline(pts, stroke, width);
}

void SvgCanvas::dot(cplx z, double radius, const std::string& fill) {
    cplx v = to_view(z);
    items_.push_back(fmt::format(R"(<circle cx="{:.3f}" cy="{:.3f}" r="{}" fill="{}"/>)", v.real(), v.imag(), radius, fill));
}

void SvgCanvas::text(cplx z, const std::string& label) {
    cplx v = to_view(z);
    // Labels left of centre grow leftwards so they stay on the canvas.
    const char* anchor = z.real() < -0.2 ? "end" : (z.real() > 0.2 ? "start" : "middle");
    items_.push_back(fmt::format(
        R"(<text x="{:.3f}" y="{:.3f}" font-size="16" font-family="sans-serif" text-anchor="{}">{}</text>)", v.real(),
        v.imag(), anchor, label));
}

void SvgCanvas::domain(const FundamentalDomain& d, const std::string& stroke, double width) {
    std::vector<cplx> pts;
    for (const HyperbolicPoint& p : d.boundary_samples(32)) pts.push_back(p.z());
    polyline(pts, stroke, width, true);
}

std::string SvgCanvas::str() const {
    std::string o = fmt::format(
        R"(<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">)"
        "\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
        kViewport);
    for (const std::string& item : items_) o += item + "\n";
    o += "</svg>\n";
    return o;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed for " + path);
}

}  // namespace anosov
