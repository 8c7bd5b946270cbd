#pragma once
// Run configuration: one key/value file with [sections], e.g.
//
//   [run]
//   seed = 7
//   k = 1
//   [samples]
//   cone_points = 1000
//
// Every value error names the file line it came from.
#include "anosov/certify.hpp"

#include <string>
#include <vector>

namespace anosov {

struct TraceOptions {
    double x = 0.1, y = 0.2;     // start point in the disk
    double s = 0.3;              // fibre coordinate in [0, k)
    double t = 10.0;
    std::string field = "exact"; // "exact" (phi) or "smoothed" (psi)
    int scale = 64;              // mollifier scale for the smoothed field
    std::string word;            // nonempty: start on the periodic orbit of this word
    int fixed_point = 0;         // which fixed point of the word
    bool one_period = true;      // with `word`, trace exactly one period
};

struct ChartOptions {
    int anchors = 8;    // per unit of fibre coordinate
    int samples = 64;   // per unit of fibre coordinate
    int rn_word_len = 2;
};

struct RenderOptions {
    int leaves = 6;        // fibre heights drawn
    int rays = 40;         // geodesics per leaf
    double tile_radius = 3.0;
};

struct RunConfig {
    CertifyConfig certify;
    std::string out_dir = "out";
    TraceOptions trace;
    ChartOptions charts;
    RenderOptions render;
};

// `source` names the file in diagnostics ("<file>:<line>: message").
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

// The configuration the defaults describe, as a file.
std::string default_config_text(std::uint64_t seed);

}  // namespace anosov
