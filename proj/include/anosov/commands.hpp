#pragma once
// Subcommands behind the anosov-lab tool. Each writes its files into
// config.out_dir and returns the process exit status: 0 pass, 1 check
// failure. Configuration and usage errors are thrown as ConfigError (or
// std::invalid_argument for budget guards) and map to status 2.
#include "anosov/config.hpp"
#include "anosov/output.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace anosov {

// `report`, when given, receives the sweep including section wall times.
int cmd_verify(const RunConfig& config, std::ostream& log, CertificationReport* report = nullptr);

struct TraceResult {
    std::vector<TraceRow> rows;
    bool periodic = false;
    double period = 0.0;
    double closure_gap = 0.0;  // periodic start: distance between the first and last positions in D
    std::string svg;
};

TraceResult run_trace(const RunConfig& config);
int cmd_trace(const RunConfig& config, std::ostream& log);

// Census for config.k at census.max_word_len.
int cmd_census(const RunConfig& config, std::ostream& log);

// Chart coordinates of the atlas and rn-derivative tables.
int cmd_measure_charts(const RunConfig& config, std::ostream& log);

// Leaves of the horizontal foliation: geodesics toward f(p) for several p.
std::string render_leaves_svg(const RunConfig& config);
int cmd_render(const RunConfig& config, std::ostream& log);

}  // namespace anosov
