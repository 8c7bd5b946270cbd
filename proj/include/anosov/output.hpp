#pragma once
// Deterministic text, CSV and SVG emitters. Reals are written in the
// shortest form that reads back to the same double.
#include "anosov/certify.hpp"
#include "anosov/flow.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace anosov {

std::string format_real(double v);

// ---- certification report ----
std::string report_text(const CertificationReport& r);
// property,check,measured,bound,relation,slack,holds
std::string report_checks_csv(const CertificationReport& r);
// property,name,value
std::string report_constants_csv(const CertificationReport& r);
// gap,pairs,unseparated,t_max,t_mean
std::string separation_csv(const CertificationReport& r);
// k,free_group_lift,classes,orbits,factor,scaling_mismatches,min_count,relator_rewritten
std::string census_scaling_csv(const CertificationReport& r);

// ---- orbit traces ----
struct TraceRow {
    double t = 0.0;
    double x = 0.0, y = 0.0;            // upstairs disk coordinates
    double local_x = 0.0, local_y = 0.0; // position in the fundamental domain
    double s = 0.0;                      // fibre coordinate p
    int k = 1;
    std::string domain_word;             // tile containing the point ("e" for D)
    double derivative = 0.0;             // holonomy derivative over [0, t]; NaN if not computed
    double bound_slack = 0.0;            // bound_check of that record; NaN if not computed
    bool operator==(const TraceRow&) const = default;
};

// t,x,y,local_x,local_y,s,k,domain_word,derivative,bound_slack
std::string trace_csv(const std::vector<TraceRow>& rows);
// Throws std::runtime_error naming the line on malformed input.
std::vector<TraceRow> read_trace_csv(const std::string& text);

// ---- census ----
// key,k,exponent,count,in_class,in_inverse_class,distinct_orbits,translation_length,
// worst_period_error,alternating,free_group_lift,relator_rewritten
std::string census_csv(const std::vector<CensusEntry>& entries);

// ---- charts ----
// anchor,s,chart_coordinate
std::string chart_csv(const ChartAtlas& atlas, const PullbackMeasure& m, int samples_per_unit);
// word,s,rn_derivative,pushforward_density
std::string rn_csv(const PullbackMeasure& m, int word_len, int samples_per_unit);

// ---- SVG ----
// Disk model on a 1000 x 1000 viewport, disk radius 420.
class SvgCanvas {
public:
    SvgCanvas();
    void boundary_circle();
    void polyline(const std::vector<cplx>& pts, const std::string& stroke, double width, bool closed = false);
    void geodesic_arc(cplx a, cplx b, const std::string& stroke, double width);  // points inside the disk
    void dot(cplx z, double radius, const std::string& fill);
    void text(cplx z, const std::string& label);
    void domain(const FundamentalDomain& d, const std::string& stroke, double width);
    std::string str() const;
    static cplx to_view(cplx z);  // disk -> pixel coordinates

private:
    std::vector<std::string> items_;
};

void write_file(const std::string& path, const std::string& content);

}  // namespace anosov
